"""Shared builders for region fixtures."""

from __future__ import annotations

from mvee.asm import parse_asm_file
from mvee.regions import MarkedRegion, extract_region


def wrap_sections(sections: dict[str, str]) -> str:
    """One .s text with a marked region per section, in dict order."""
    lines = ["\t.text", "bench:", "\tpushq\t%rbp"]
    for sid, body in sections.items():
        lines.append(f"\tcall\tmvee_begin_{sid}")
        lines.append(body.rstrip("\n"))
        lines.append(f"\tcall\tmvee_end_{sid}")
    lines += ["\tpopq\t%rbp", "\tret", ""]
    return "\n".join(lines)


def make_region(body: str, section: str = "S", build: str = "b0") -> MarkedRegion:
    text = wrap_sections({section: body})
    return extract_region(parse_asm_file(text, build), section)


def region_of(text: str, section: str, build: str = "b0") -> MarkedRegion:
    return extract_region(parse_asm_file(text, build), section)
