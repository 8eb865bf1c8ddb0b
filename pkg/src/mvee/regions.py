"""Marked-region extraction from parsed assembly.

Locates begin/end marker calls, builds the file's control flow graph,
traverses it between the markers of a section, and partitions the visited
instructions into fallthrough-groups: runs that contain no unconditional
jump, call or return before their last instruction. Conditional jumps may
sit mid-group since execution can fall through them.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from enum import Enum

from .asm import AsmFile, ControlKind, Instruction, LineKind, parse_instruction


class MarkerError(Exception):
    pass


class UnmatchedMarker(MarkerError):
    def __init__(self, section_id: str):
        super().__init__(f"marker pair for section {section_id!r} is incomplete")
        self.section_id = section_id


class DuplicateMarker(MarkerError):
    def __init__(self, section_id: str):
        super().__init__(f"section {section_id!r} is marked more than once")
        self.section_id = section_id


class CfgError(Exception):
    pass


class UnknownLabelError(CfgError):
    def __init__(self, name: str, line: int):
        super().__init__(f"jump at line {line} targets undefined label {name!r}")
        self.name = name
        self.line = line


@dataclass(frozen=True)
class MarkerConvention:
    begin_prefix: str = "mvee_begin_"
    end_prefix: str = "mvee_end_"

    def __post_init__(self):
        if not self.begin_prefix or not self.end_prefix:
            raise ValueError("marker prefixes must be non-empty")
        if self.begin_prefix == self.end_prefix:
            raise ValueError("marker prefixes must be distinct")

    def classify_call(self, target: str) -> tuple[str, str] | None:
        """Return ('begin'|'end', section_id) if target is a marker symbol."""
        sym = target.split("@", 1)[0]  # calls may be suffixed with @PLT
        if sym.startswith(self.begin_prefix):
            return "begin", sym[len(self.begin_prefix):]
        if sym.startswith(self.end_prefix):
            return "end", sym[len(self.end_prefix):]
        return None


@dataclass(frozen=True)
class MarkerPair:
    section_id: str
    begin_line: int
    end_line: int


def find_markers(file: AsmFile, convention: MarkerConvention | None = None) -> list[MarkerPair]:
    """All begin/end marker call pairs, matched by section id, in begin-line order."""
    convention = convention or MarkerConvention()
    begins: dict[str, list[int]] = {}
    ends: dict[str, list[int]] = {}
    for line in file.instructions():
        ctl = line.instruction.control
        if ctl.kind is not ControlKind.CALL or ctl.target is None:
            continue
        hit = convention.classify_call(ctl.target)
        if hit is None:
            continue
        side, section_id = hit
        (begins if side == "begin" else ends).setdefault(section_id, []).append(line.index)

    pairs = []
    for section_id in sorted(set(begins) | set(ends)):
        b, e = begins.get(section_id, []), ends.get(section_id, [])
        if len(b) > 1 or len(e) > 1:
            raise DuplicateMarker(section_id)
        if len(b) != 1 or len(e) != 1:
            raise UnmatchedMarker(section_id)
        pairs.append(MarkerPair(section_id, b[0], e[0]))
    pairs.sort(key=lambda p: p.begin_line)
    return pairs


# ---------------------------------------------------------------------------
# Control flow graph

_BLOCK_ENDERS = {
    ControlKind.CONDITIONAL_JUMP,
    ControlKind.UNCONDITIONAL_JUMP,
    ControlKind.INDIRECT_JUMP,
    ControlKind.CALL,
    ControlKind.INDIRECT_CALL,
    ControlKind.RETURN,
}

# Group cuts happen after these; conditional jumps fall through mid-group.
_GROUP_ENDERS = {
    ControlKind.UNCONDITIONAL_JUMP,
    ControlKind.INDIRECT_JUMP,
    ControlKind.CALL,
    ControlKind.INDIRECT_CALL,
    ControlKind.RETURN,
}


@dataclass(frozen=True)
class BasicBlock:
    index: int
    labels: tuple[tuple[str, int], ...]  # (name, defining line)
    instruction_lines: tuple[int, ...]


@dataclass
class CFG:
    file: AsmFile
    blocks: list[BasicBlock]
    successors: list[tuple[int, ...]]
    block_of_line: dict[int, int]
    label_block: dict[str, int]
    jump_targets: frozenset[str]


def build_cfg(file: AsmFile) -> CFG:
    """Basic blocks delimited at labels and control transfers, plus direct edges.

    Indirect jumps contribute no edges; call edges are not followed into the
    callee, the block simply falls through to the next one.
    """
    blocks: list[BasicBlock] = []
    pending_labels: list[tuple[str, int]] = []
    cur_lines: list[int] = []
    cur_labels: tuple[tuple[str, int], ...] = ()

    def close():
        nonlocal cur_lines, cur_labels
        if cur_lines or cur_labels:
            blocks.append(BasicBlock(len(blocks), cur_labels, tuple(cur_lines)))
        cur_lines, cur_labels = [], ()

    for line in file.lines:
        if line.kind is LineKind.LABEL:
            if cur_lines:
                close()
            pending_labels.append((line.label, line.index))
        elif line.kind is LineKind.INSTRUCTION:
            if pending_labels:
                close()
                cur_labels = tuple(pending_labels)
                pending_labels = []
            cur_lines.append(line.index)
            if line.instruction.control.kind in _BLOCK_ENDERS:
                close()
    if pending_labels:
        close()
        cur_labels = tuple(pending_labels)
    close()

    block_of_line: dict[int, int] = {}
    label_block: dict[str, int] = {}
    for b in blocks:
        for ln in b.instruction_lines:
            block_of_line[ln] = b.index
        for name, _ in b.labels:
            label_block.setdefault(name, b.index)

    jump_targets = set()
    successors: list[tuple[int, ...]] = []
    for b in blocks:
        succ: list[int] = []
        nxt = b.index + 1 if b.index + 1 < len(blocks) else None
        if not b.instruction_lines:
            successors.append((nxt,) if nxt is not None else ())
            continue
        last = file.lines[b.instruction_lines[-1]].instruction
        kind = last.control.kind
        if kind in (ControlKind.CONDITIONAL_JUMP, ControlKind.UNCONDITIONAL_JUMP):
            target = last.control.target
            jump_targets.add(target)
            if target in label_block:
                succ.append(label_block[target])
            elif target.startswith(".") and "@" not in target:
                # Assembler-local labels must resolve; anything else is a
                # tail transfer out of the compilation unit (jmp func@PLT).
                raise UnknownLabelError(target, b.instruction_lines[-1])
            if kind is ControlKind.CONDITIONAL_JUMP and nxt is not None:
                succ.append(nxt)
        elif kind in (ControlKind.CALL, ControlKind.INDIRECT_CALL, ControlKind.FALLTHROUGH):
            if nxt is not None:
                succ.append(nxt)
        # INDIRECT_JUMP and RETURN contribute no edges.
        successors.append(tuple(succ))

    return CFG(file, blocks, successors, block_of_line, label_block, frozenset(jump_targets))


# ---------------------------------------------------------------------------
# Fallthrough groups and marked regions


class GroupTerminator(Enum):
    UNCONDITIONAL_JUMP = "unconditional_jump"
    RETURN = "return"
    CALL = "call"
    REGION_END = "region_end"


_TERMINATOR_OF = {
    ControlKind.UNCONDITIONAL_JUMP: GroupTerminator.UNCONDITIONAL_JUMP,
    ControlKind.INDIRECT_JUMP: GroupTerminator.UNCONDITIONAL_JUMP,
    ControlKind.CALL: GroupTerminator.CALL,
    ControlKind.INDIRECT_CALL: GroupTerminator.CALL,
    ControlKind.RETURN: GroupTerminator.RETURN,
}


@dataclass(frozen=True)
class FallthroughGroup:
    leading_labels: tuple[str, ...]
    label_lines: tuple[int, ...]
    instructions: tuple[Instruction, ...]
    instruction_lines: tuple[int, ...]
    terminator: GroupTerminator

    @property
    def group_fingerprint(self) -> str:
        h = hashlib.blake2b(digest_size=16)
        for name in self.leading_labels:
            h.update(b"L" + name.encode())
        for instr in self.instructions:
            h.update(b"I" + instr.render().encode())
        h.update(self.terminator.value.encode())
        return h.hexdigest()

    def can_fall_through(self) -> bool:
        """True when execution may continue past the group's end into whatever
        follows it positionally (calls return; a region-end cut means the last
        instruction was an ordinary or conditional one)."""
        return self.terminator in (GroupTerminator.CALL, GroupTerminator.REGION_END)


@dataclass(frozen=True)
class MarkedRegion:
    section_id: str
    build_id: str
    groups: tuple[FallthroughGroup, ...]
    entry_group: int = 0
    end_reached: bool = True

    @property
    def source_spans(self) -> dict[tuple[int, int], int]:
        """(group index, instruction index) -> original file line."""
        spans = {}
        for gi, g in enumerate(self.groups):
            for ii, ln in enumerate(g.instruction_lines):
                spans[(gi, ii)] = ln
        return spans

    def instruction_count(self) -> int:
        return sum(len(g.instructions) for g in self.groups)


def extract_region(
    file: AsmFile,
    section_id: str,
    convention: MarkerConvention | None = None,
) -> MarkedRegion:
    """Depth-first CFG traversal from the begin mark, each path stopping at the
    end mark, partitioned into fallthrough-groups in file order. The marker
    call instructions themselves never appear in any group."""
    convention = convention or MarkerConvention()
    pair = next((p for p in find_markers(file, convention) if p.section_id == section_id), None)
    if pair is None:
        raise UnmatchedMarker(section_id)

    cfg = build_cfg(file)

    def is_marker_call(instr: Instruction) -> bool:
        ctl = instr.control
        return (
            ctl.kind is ControlKind.CALL
            and ctl.target is not None
            and convention.classify_call(ctl.target) is not None
        )

    entry_line = next(
        (ln.index for ln in file.instructions() if ln.index > pair.begin_line),
        None,
    )
    visited_lines: set[int] = set()
    visited_blocks: set[int] = set()
    end_reached = False

    if entry_line is not None and entry_line != pair.end_line:
        stack = [cfg.block_of_line[entry_line]]
        while stack:
            bi = stack.pop()
            if bi in visited_blocks:
                continue
            visited_blocks.add(bi)
            block = cfg.blocks[bi]
            stop_here = False
            for ln in block.instruction_lines:
                if bi == cfg.block_of_line.get(entry_line) and ln < entry_line:
                    continue  # partial entry block: skip lines before the mark
                if ln == pair.end_line:
                    stop_here = True
                    end_reached = True
                    break
                instr = file.lines[ln].instruction
                if not is_marker_call(instr):
                    visited_lines.add(ln)
            if not stop_here:
                stack.extend(s for s in cfg.successors[bi] if s not in visited_blocks)
    elif entry_line == pair.end_line:
        end_reached = True

    groups = _partition(file, cfg, visited_lines, visited_blocks)

    entry_group = 0
    for gi, g in enumerate(groups):
        if entry_line in g.instruction_lines:
            entry_group = gi
            break

    return MarkedRegion(
        section_id=section_id,
        build_id=file.build_id,
        groups=tuple(groups),
        entry_group=entry_group,
        end_reached=end_reached,
    )


def _partition(
    file: AsmFile,
    cfg: CFG,
    visited_lines: set[int],
    visited_blocks: set[int],
) -> list[FallthroughGroup]:
    # Items in file order: visited instructions plus labels of visited blocks.
    visited_label_lines = {}
    for bi in visited_blocks:
        for name, ln in cfg.blocks[bi].labels:
            visited_label_lines[ln] = name

    groups: list[FallthroughGroup] = []
    labels: list[tuple[str, int]] = []
    instrs: list[tuple[Instruction, int]] = []
    cut_pending = False

    def close():
        nonlocal labels, instrs
        if instrs:
            last_kind = instrs[-1][0].control.kind
            term = _TERMINATOR_OF.get(last_kind, GroupTerminator.REGION_END)
            groups.append(
                FallthroughGroup(
                    leading_labels=tuple(n for n, _ in labels),
                    label_lines=tuple(l for _, l in labels),
                    instructions=tuple(i for i, _ in instrs),
                    instruction_lines=tuple(l for _, l in instrs),
                    terminator=term,
                )
            )
            labels, instrs = [], []
        # Labels with no following visited instruction are dropped.

    for line in file.lines:
        ln = line.index
        is_label = ln in visited_label_lines
        is_instr = line.kind is LineKind.INSTRUCTION and ln in visited_lines
        if not (is_label or is_instr):
            # Unvisited instructions and label lines break contiguity.
            if line.kind in (LineKind.INSTRUCTION, LineKind.LABEL) and instrs:
                cut_pending = True
            continue
        if cut_pending:
            close()
            cut_pending = False
        if is_label:
            if instrs:
                close()  # a label landing mid-flow starts a new group
            labels.append((visited_label_lines[ln], ln))
        else:
            instrs.append((line.instruction, ln))
            if line.instruction.control.kind in _GROUP_ENDERS:
                close()
    close()
    return groups


# ---------------------------------------------------------------------------
# Snapshot serialization (used by the version graph and the HTTP API)


def region_to_dict(region: MarkedRegion) -> dict:
    return {
        "section": region.section_id,
        "build": region.build_id,
        "entryGroup": region.entry_group,
        "endReached": region.end_reached,
        "groups": [
            {
                "labels": [
                    {"name": n, "line": l}
                    for n, l in zip(g.leading_labels, g.label_lines)
                ],
                "instructions": [
                    {"text": i.render(), "line": l}
                    for i, l in zip(g.instructions, g.instruction_lines)
                ],
                "terminator": g.terminator.value,
            }
            for g in region.groups
        ],
    }


def region_from_dict(data: dict) -> MarkedRegion:
    groups = []
    for g in data["groups"]:
        labels = tuple(e["name"] for e in g["labels"])
        label_lines = tuple(e["line"] for e in g["labels"])
        instrs = tuple(parse_instruction(e["text"], e["line"]) for e in g["instructions"])
        instr_lines = tuple(e["line"] for e in g["instructions"])
        groups.append(
            FallthroughGroup(labels, label_lines, instrs, instr_lines,
                             GroupTerminator(g["terminator"]))
        )
    return MarkedRegion(
        section_id=data["section"],
        build_id=data["build"],
        groups=tuple(groups),
        entry_group=data.get("entryGroup", 0),
        end_reached=data.get("endReached", True),
    )
