"""Typed model of GNU-assembler x86-64 text (AT&T syntax, as emitted by gcc -S).

Parses a whole .s file into classified lines, structures instruction
operands, and tags every instruction with its control-flow behavior.
Unknown mnemonics are accepted as-is; only the jump/call/ret families
get special control classification.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum


class ParseError(Exception):
    """Raised when an operand token matches no operand grammar."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


# ---------------------------------------------------------------------------
# Operands


class Operand:
    """Base class; concrete operands expose a verbatim .raw token."""

    raw: str


@dataclass(frozen=True)
class Register(Operand):
    name: str  # without the % sigil
    raw: str


@dataclass(frozen=True)
class Immediate(Operand):
    value: int
    raw: str  # keeps hex vs decimal spelling


@dataclass(frozen=True)
class Memory(Operand):
    raw: str
    segment: str | None = None
    displacement: str | None = None  # verbatim; may be symbolic
    disp_value: int | None = None  # parsed when displacement is numeric
    base: str | None = None
    index: str | None = None
    scale: int | None = None  # one of 1, 2, 4, 8


@dataclass(frozen=True)
class LabelRef(Operand):
    name: str
    raw: str  # may carry a $ or * prefix


# ---------------------------------------------------------------------------
# Control flow classification


class ControlKind(Enum):
    FALLTHROUGH = "fallthrough"
    CONDITIONAL_JUMP = "conditional_jump"
    UNCONDITIONAL_JUMP = "unconditional_jump"
    INDIRECT_JUMP = "indirect_jump"
    CALL = "call"
    INDIRECT_CALL = "indirect_call"
    RETURN = "return"


@dataclass(frozen=True)
class ControlFlow:
    kind: ControlKind
    target: str | None = None  # label or symbol for direct jumps/calls


_UNCOND_JUMPS = {"jmp", "jmpq", "jmpl", "jmpw"}

_COND_JUMPS = {
    "ja", "jae", "jb", "jbe", "jc", "je", "jg", "jge", "jl", "jle",
    "jna", "jnae", "jnb", "jnbe", "jnc", "jne", "jng", "jnge", "jnl",
    "jnle", "jno", "jnp", "jns", "jnz", "jo", "jp", "jpe", "jpo", "js",
    "jz", "jcxz", "jecxz", "jrcxz", "loop", "loope", "loopne", "loopz",
    "loopnz",
}

_CALLS = {"call", "callq", "lcall"}

_RETURNS = {"ret", "retq", "retl", "lret", "lretq", "iret", "iretq", "iretd"}

_PREFIXES = {"rep", "repz", "repnz", "repe", "repne", "lock", "notrack", "bnd", "data16"}


def classify_control(mnemonic: str, operands: tuple[Operand, ...]) -> ControlFlow:
    """Control behavior from mnemonic family and operand shape. Total function."""
    base = mnemonic.split()[-1]
    first = operands[0] if operands else None
    direct = isinstance(first, LabelRef) and not first.raw.startswith("*")
    if base in _UNCOND_JUMPS:
        if direct:
            return ControlFlow(ControlKind.UNCONDITIONAL_JUMP, first.name)
        return ControlFlow(ControlKind.INDIRECT_JUMP)
    if base in _COND_JUMPS:
        if direct:
            return ControlFlow(ControlKind.CONDITIONAL_JUMP, first.name)
        return ControlFlow(ControlKind.INDIRECT_JUMP)
    if base in _CALLS:
        if direct:
            return ControlFlow(ControlKind.CALL, first.name)
        return ControlFlow(ControlKind.INDIRECT_CALL)
    if base in _RETURNS:
        return ControlFlow(ControlKind.RETURN)
    return ControlFlow(ControlKind.FALLTHROUGH)


# ---------------------------------------------------------------------------
# Lines and files


@dataclass(frozen=True)
class Instruction:
    mnemonic: str
    operands: tuple[Operand, ...]
    control: ControlFlow

    def render(self) -> str:
        if not self.operands:
            return self.mnemonic
        return self.mnemonic + "\t" + ", ".join(op.raw for op in self.operands)


class LineKind(Enum):
    INSTRUCTION = "instruction"
    LABEL = "label"
    DIRECTIVE = "directive"
    COMMENT = "comment"
    BLANK = "blank"


@dataclass(frozen=True)
class AsmLine:
    index: int
    kind: LineKind
    text: str  # original line, recoverable for display
    instruction: Instruction | None = None
    label: str | None = None


@dataclass(frozen=True)
class AsmFile:
    build_id: str
    lines: tuple[AsmLine, ...]
    labels: dict[str, int] = field(default_factory=dict)  # name -> first defining line
    duplicate_labels: frozenset[str] = frozenset()
    path: str | None = None

    def instructions(self):
        for line in self.lines:
            if line.kind is LineKind.INSTRUCTION:
                yield line


# ---------------------------------------------------------------------------
# Parsing

_REGISTER_RE = re.compile(r"^%[A-Za-z0-9_.]+(\(\d\))?$")
_LABELDEF_RE = re.compile(r"^([^\s:]+):\s*(.*)$")
_MEMORY_RE = re.compile(
    r"^(?:(%[A-Za-z0-9]+):)?"  # segment
    r"([^(),]*)"  # displacement, possibly symbolic or empty
    r"\((?:(%[A-Za-z0-9_.]+))?"  # base
    r"(?:,\s*(%[A-Za-z0-9_.]+)?"  # index
    r"(?:,\s*([0-9]+))?)?\)$"  # scale
)


def _parse_int(token: str) -> int | None:
    t = token.strip()
    try:
        return int(t, 0)
    except ValueError:
        pass
    # GNU as treats a bare leading zero as octal, which int(x, 0) rejects.
    if re.fullmatch(r"-?0[0-7]+", t):
        return int(t, 8)
    return None


def parse_operand(token: str, line: int = 0) -> Operand:
    raw = token.strip()
    if not raw:
        raise ParseError(line, "empty operand")
    body = raw[1:] if raw.startswith("*") else raw

    if _REGISTER_RE.match(body):
        return Register(name=body[1:], raw=raw)

    if body.startswith("$"):
        payload = body[1:]
        value = _parse_int(payload)
        if value is not None:
            return Immediate(value=value, raw=raw)
        # a symbolic immediate ($.LC0) references a label; a digit-leading
        # token that fails numeric parsing is just malformed
        if payload and not payload[0].isdigit() and payload[0] not in "+-":
            return LabelRef(name=payload, raw=raw)
        raise ParseError(line, f"malformed immediate {raw!r}")

    seg = re.match(r"^(%[A-Za-z0-9]+):([^():]+)$", body)
    if seg and "(" not in body:
        # Segment-relative absolute address, e.g. %fs:40 (stack protector).
        disp = seg.group(2)
        return Memory(
            raw=raw,
            segment=seg.group(1)[1:],
            displacement=disp,
            disp_value=_parse_int(disp),
        )

    if "(" in body:
        m = _MEMORY_RE.match(body)
        if not m:
            raise ParseError(line, f"malformed memory operand {raw!r}")
        segment, disp, base, index, scale = m.groups()
        scale_val = int(scale) if scale is not None else None
        if scale_val is not None and scale_val not in (1, 2, 4, 8):
            raise ParseError(line, f"memory scale must be 1, 2, 4 or 8, got {scale_val}")
        disp = disp.strip() or None
        return Memory(
            raw=raw,
            segment=segment[1:] if segment else None,
            displacement=disp,
            disp_value=_parse_int(disp) if disp else None,
            base=base[1:] if base else None,
            index=index[1:] if index else None,
            scale=scale_val,
        )

    value = _parse_int(body)
    if value is not None:
        # Bare numeric operand is absolute addressing.
        return Memory(raw=raw, displacement=body, disp_value=value)

    if re.fullmatch(r"[A-Za-z0-9_.$@+\-]+", body):
        return LabelRef(name=body, raw=raw)

    raise ParseError(line, f"unrecognized operand {raw!r}")


def _split_operands(text: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return [p.strip() for p in parts if p.strip()]


def parse_instruction(text: str, line: int = 0) -> Instruction:
    """Parse one instruction statement (no label, no directive)."""
    stripped = text.strip()
    tokens = stripped.split(None, 1)
    mnemonic = tokens[0].lower()
    rest = tokens[1] if len(tokens) > 1 else ""
    # Fold prefix mnemonics (rep ret, lock addl ...) into a compound mnemonic.
    while mnemonic.split()[-1] in _PREFIXES and rest:
        nxt = rest.split(None, 1)
        mnemonic = mnemonic + " " + nxt[0].lower()
        rest = nxt[1] if len(nxt) > 1 else ""
    operands = tuple(parse_operand(tok, line) for tok in _split_operands(rest))
    return Instruction(mnemonic, operands, classify_control(mnemonic, operands))


def _strip_comment(line: str) -> str:
    """Drop a trailing # comment, ignoring # inside double-quoted strings."""
    in_quote = False
    for i, ch in enumerate(line):
        if ch == '"' and (i == 0 or line[i - 1] != "\\"):
            in_quote = not in_quote
        elif ch == "#" and not in_quote:
            return line[:i]
    return line


def parse_asm_file(text: str, build_id: str, path: str | None = None) -> AsmFile:
    """Parse full assembler text into classified, indexed lines."""
    lines: list[AsmLine] = []
    labels: dict[str, int] = {}
    duplicates: set[str] = set()

    for index, rawline in enumerate(text.splitlines()):
        stripped = _strip_comment(rawline).strip()
        if not stripped:
            kind = LineKind.COMMENT if rawline.strip() else LineKind.BLANK
            lines.append(AsmLine(index, kind, rawline))
            continue

        m = _LABELDEF_RE.match(stripped)
        if m and not m.group(2):
            name = m.group(1)
            if name in labels:
                duplicates.add(name)
            else:
                labels[name] = index
            lines.append(AsmLine(index, LineKind.LABEL, rawline, label=name))
            continue
        if m and m.group(2):
            raise ParseError(index, f"label and code on one line: {stripped!r}")

        if stripped.startswith("."):
            lines.append(AsmLine(index, LineKind.DIRECTIVE, rawline))
            continue

        instr = parse_instruction(stripped, index)
        lines.append(AsmLine(index, LineKind.INSTRUCTION, rawline, instruction=instr))

    return AsmFile(
        build_id=build_id,
        lines=tuple(lines),
        labels=labels,
        duplicate_labels=frozenset(duplicates),
        path=path,
    )
