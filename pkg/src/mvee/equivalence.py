"""Classification of edit scripts against the code-equivalence rules.

Two regions are equivalent when no classified edit is violating. The rules:
inserted or deleted instructions, operands or labels violate; changed
immediates or memory references violate; register renames never violate;
label renames are fine only when they form a bijection applied to every
occurrence; whole fallthrough-groups may be reordered freely unless the
reorder changes which code a fall-through-capable group runs into next;
reordered single instructions or operands always violate.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from . import asm
from .regions import MarkedRegion
from .treediff import (
    GROUP,
    INSTRUCTION,
    LABEL_DEF,
    MNEMONIC,
    OP_IMMEDIATE,
    OP_LABEL_REF,
    OP_REGISTER,
    Delete,
    Edit,
    EditScript,
    Insert,
    Move,
    TreeNode,
    UpdateLiteral,
    build_tree,
    diff,
    is_memory_part,
    memory_part_of,
)


class EditCategory(Enum):
    STRUCTURAL_VIOLATION = "StructuralViolation"
    IMMEDIATE_CHANGED = "ImmediateChanged"
    MEMORY_REF_CHANGED = "MemoryRefChanged"
    LABEL_RENAME_CONSISTENT = "LabelRenameConsistent"
    LABEL_RENAME_INCONSISTENT = "LabelRenameInconsistent"
    REGISTER_RENAMED = "RegisterRenamed"
    GROUP_REORDER = "GroupReorder"
    INTRA_GROUP_REORDER = "IntraGroupReorder"


VIOLATING_CATEGORIES = frozenset({
    EditCategory.STRUCTURAL_VIOLATION,
    EditCategory.IMMEDIATE_CHANGED,
    EditCategory.MEMORY_REF_CHANGED,
    EditCategory.LABEL_RENAME_INCONSISTENT,
    EditCategory.INTRA_GROUP_REORDER,
})


@dataclass
class ClassifiedEdit:
    edit: Edit
    category: EditCategory
    source_line: int | None = None
    target_line: int | None = None
    detail: str = ""

    @property
    def violating(self) -> bool:
        return self.category in VIOLATING_CATEGORIES

    @property
    def display_color_key(self) -> str:
        return self.category.value


@dataclass
class Verdict:
    result: str  # "equivalent" | "anomaly"
    classified_edits: list[ClassifiedEdit]
    section_id: str
    source_build_id: str
    target_build_id: str

    @property
    def equivalent(self) -> bool:
        return self.result == "equivalent"


def _describe(node: TreeNode) -> str:
    if node.kind == INSTRUCTION:
        mnem = node.children[0].literal if node.children else "?"
        ops = ", ".join(c.literal or "" for c in node.children[1:])
        return f"{mnem} {ops}".strip()
    if node.kind == GROUP:
        n = sum(1 for c in node.children if c.kind == INSTRUCTION)
        return f"group of {n} instructions"
    return f"{node.kind} {node.literal or ''}".strip()


def check_structural(
    script: EditScript, source: TreeNode, target: TreeNode
) -> list[ClassifiedEdit]:
    """Inserts and deletes of any node, plus mnemonic changes, are structural
    violations: the regions no longer hold the same instructions and labels."""
    out = []
    src_nodes = {n.node_id: n for n in source.walk()}
    tgt_lines = {n.node_id: n.line for n in target.walk()}
    for e in script:
        if isinstance(e, Insert):
            out.append(ClassifiedEdit(
                e, EditCategory.STRUCTURAL_VIOLATION,
                target_line=e.node.line,
                detail=f"inserted {_describe(e.node)}",
            ))
        elif isinstance(e, Delete):
            node = src_nodes[e.node_id]
            out.append(ClassifiedEdit(
                e, EditCategory.STRUCTURAL_VIOLATION,
                source_line=node.line,
                detail=f"deleted {_describe(node)}",
            ))
        elif isinstance(e, UpdateLiteral):
            node = src_nodes[e.node_id]
            if node.kind == MNEMONIC:
                out.append(ClassifiedEdit(
                    e, EditCategory.STRUCTURAL_VIOLATION,
                    source_line=node.line,
                    target_line=tgt_lines.get(e.target_node_id),
                    detail=f"mnemonic {e.old} -> {e.new}",
                ))
    return out


def check_updates(
    script: EditScript, source: TreeNode, target: TreeNode
) -> list[ClassifiedEdit]:
    """Literal updates: immediates and memory displacement/scale/segment
    changes violate; register renames (including memory base/index) do not;
    label updates must rename bijectively across every occurrence."""
    out = []
    src_nodes = {n.node_id: n for n in source.walk()}
    tgt_lines = {n.node_id: n.line for n in target.walk()}

    label_updates: list[UpdateLiteral] = []
    for e in script:
        if not isinstance(e, UpdateLiteral):
            continue
        node = src_nodes[e.node_id]
        lines = dict(source_line=node.line, target_line=tgt_lines.get(e.target_node_id))
        if node.kind == OP_IMMEDIATE:
            out.append(ClassifiedEdit(
                e, EditCategory.IMMEDIATE_CHANGED,
                detail=f"immediate {e.old} -> {e.new}", **lines))
        elif node.kind == OP_REGISTER:
            out.append(ClassifiedEdit(
                e, EditCategory.REGISTER_RENAMED,
                detail=f"register {e.old} -> {e.new}", **lines))
        elif is_memory_part(node.kind):
            part = memory_part_of(node.kind)
            if part in ("base", "index"):
                out.append(ClassifiedEdit(
                    e, EditCategory.REGISTER_RENAMED,
                    detail=f"memory {part} register {e.old} -> {e.new}", **lines))
            else:
                out.append(ClassifiedEdit(
                    e, EditCategory.MEMORY_REF_CHANGED,
                    detail=f"memory {part} {e.old} -> {e.new}", **lines))
        elif node.kind in (LABEL_DEF, OP_LABEL_REF):
            label_updates.append(e)

    if label_updates:
        out.extend(_classify_label_renames(
            label_updates, source, target, src_nodes, tgt_lines))
    return out


def _label_occurrences(tree: TreeNode) -> dict[str, int]:
    occurrences: dict[str, int] = {}
    for n in tree.walk():
        if n.kind in (LABEL_DEF, OP_LABEL_REF):
            occurrences[n.literal] = occurrences.get(n.literal, 0) + 1
    return occurrences


def _classify_label_renames(updates, source, target, src_nodes, tgt_lines):
    src_occurrences = _label_occurrences(source)
    tgt_occurrences = _label_occurrences(target)

    renames: dict[str, set[str]] = {}
    update_count: dict[str, int] = {}
    for e in updates:
        renames.setdefault(e.old, set()).add(e.new)
        update_count[e.old] = update_count.get(e.old, 0) + 1

    new_names: dict[str, int] = {}
    for news in renames.values():
        for nn in news:
            new_names[nn] = new_names.get(nn, 0) + 1

    def consistent(old: str) -> bool:
        news = renames[old]
        if len(news) != 1:
            return False
        new = next(iter(news))
        if new_names[new] > 1:
            return False  # two labels collapse into one name
        if update_count[old] != src_occurrences.get(old, 0):
            return False  # some occurrence kept the old name
        # the new name must owe every target occurrence to this rename,
        # otherwise the rename folds into a label that already existed
        return tgt_occurrences.get(new, 0) == update_count[old]

    out = []
    for e in updates:
        cat = (EditCategory.LABEL_RENAME_CONSISTENT if consistent(e.old)
               else EditCategory.LABEL_RENAME_INCONSISTENT)
        node = src_nodes[e.node_id]
        out.append(ClassifiedEdit(
            e, cat,
            source_line=node.line,
            target_line=tgt_lines.get(e.target_node_id),
            detail=f"label {e.old} -> {e.new}",
        ))
    return out


def _group_falls_through(group: TreeNode) -> bool:
    """Whether execution can leave the group past its end: the last instruction
    is a call (which returns), a conditional jump, or an ordinary instruction
    cut off by a label boundary or the region end."""
    instrs = [c for c in group.children if c.kind == INSTRUCTION]
    if not instrs:
        return True
    last = instrs[-1]
    mnemonic = last.children[0].literal if last.children else ""
    op_kinds = [c.kind for c in last.children[1:]]
    operands: tuple[asm.Operand, ...] = ()
    if op_kinds:
        if op_kinds[0] == OP_LABEL_REF:
            operands = (asm.LabelRef("x", "x"),)
        else:
            operands = (asm.Register("r", "%r"),)
    kind = asm.classify_control(mnemonic, operands).kind
    return kind in (
        asm.ControlKind.FALLTHROUGH,
        asm.ControlKind.CONDITIONAL_JUMP,
        asm.ControlKind.CALL,
        asm.ControlKind.INDIRECT_CALL,
    )


def _broken_fallthrough_groups(script: EditScript, source: TreeNode, target: TreeNode):
    """Matched groups whose fall-through successor differs between the source
    and target orders, together with the successors involved."""
    matched = script.matched
    reverse = {t: s for s, t in matched.items()}
    src_groups = source.children
    tgt_groups = target.children

    def src_succ(i):
        if i + 1 < len(src_groups):
            return ("node", src_groups[i + 1].node_id)
        return ("end", None)

    tgt_succ_of_src: dict[int, tuple] = {}
    for k, tg in enumerate(tgt_groups):
        s_id = reverse.get(tg.node_id)
        if s_id is None:
            continue
        if k + 1 < len(tgt_groups):
            nxt = tgt_groups[k + 1]
            nxt_src = reverse.get(nxt.node_id)
            tgt_succ_of_src[s_id] = (
                ("node", nxt_src) if nxt_src is not None else ("inserted", nxt.node_id)
            )
        else:
            tgt_succ_of_src[s_id] = ("end", None)

    broken: set[int] = set()
    involved: set[int] = set()
    for i, g in enumerate(src_groups):
        if g.node_id not in matched or not _group_falls_through(g):
            continue
        before = src_succ(i)
        after = tgt_succ_of_src.get(g.node_id)
        if after is None or before != after:
            broken.add(g.node_id)
            for succ in (before, after or ("end", None)):
                if succ[0] == "node" and succ[1] is not None:
                    involved.add(succ[1])

    # The begin mark falls through into the first group, so a different group
    # at the front means execution enters different code.
    if src_groups and tgt_groups:
        first_src = src_groups[0].node_id
        first_tgt_src = reverse.get(tgt_groups[0].node_id)
        if first_src != first_tgt_src:
            involved.add(first_src)
            if first_tgt_src is not None:
                involved.add(first_tgt_src)
    return broken, involved


def check_reorders(
    script: EditScript, source: TreeNode, target: TreeNode
) -> list[ClassifiedEdit]:
    """Moves of whole groups are harmless reorders unless they disturb a
    fall-through chain; moves of anything smaller change control flow."""
    src_nodes = {n.node_id: n for n in source.walk()}
    tgt_lines = {n.node_id: n.line for n in target.walk()}
    broken, involved = _broken_fallthrough_groups(script, source, target)

    out = []
    for e in script:
        if not isinstance(e, Move):
            continue
        node = src_nodes[e.node_id]
        target_line = tgt_lines.get(script.matched.get(e.node_id))
        if node.kind == GROUP:
            if e.node_id in broken or e.node_id in involved:
                out.append(ClassifiedEdit(
                    e, EditCategory.INTRA_GROUP_REORDER,
                    source_line=node.line, target_line=target_line,
                    detail=f"reorder of {_describe(node)} changes its fall-through successor",
                ))
            else:
                out.append(ClassifiedEdit(
                    e, EditCategory.GROUP_REORDER,
                    source_line=node.line, target_line=target_line,
                    detail=f"reordered {_describe(node)}",
                ))
        else:
            out.append(ClassifiedEdit(
                e, EditCategory.INTRA_GROUP_REORDER,
                source_line=node.line, target_line=target_line,
                detail=f"reordered {_describe(node)}",
            ))
    return out


def compare_regions(a: MarkedRegion, b: MarkedRegion) -> Verdict:
    """Full pipeline: trees, diff, all three checks, verdict."""
    if a.section_id != b.section_id:
        raise ValueError(f"section mismatch: {a.section_id!r} vs {b.section_id!r}")
    source = build_tree(a)
    target = build_tree(b)
    script = diff(source, target)
    classified = (
        check_structural(script, source, target)
        + check_updates(script, source, target)
        + check_reorders(script, source, target)
    )
    result = "equivalent" if not any(c.violating for c in classified) else "anomaly"
    return Verdict(
        result=result,
        classified_edits=classified,
        section_id=a.section_id,
        source_build_id=a.build_id,
        target_build_id=b.build_id,
    )


def verdict_to_dict(verdict: Verdict) -> dict:
    return {
        "section": verdict.section_id,
        "sourceBuild": verdict.source_build_id,
        "targetBuild": verdict.target_build_id,
        "result": verdict.result,
        "edits": [
            {
                "category": c.category.value,
                "violating": c.violating,
                "sourceLine": c.source_line,
                "targetLine": c.target_line,
                "detail": c.detail,
            }
            for c in verdict.classified_edits
        ],
    }
