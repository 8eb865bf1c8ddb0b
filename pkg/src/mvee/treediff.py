"""Structural diffing of marked regions encoded as typed trees.

Regions become trees (region -> groups -> labels/instructions -> mnemonic and
operand leaves). Diffing hashes every subtree over both structure and literals,
reuses equal subtrees between source and target (whole groups first, then
instructions), aligns what remains positionally, and emits a compact edit
script of insert/delete/update/move operations. Each node is deleted or moved
at most once, and matching is hash-indexed, so runtime stays linear in the
node count.
"""

from __future__ import annotations

import copy
import hashlib
from dataclasses import dataclass, field
from typing import NamedTuple

from .asm import Immediate, LabelRef, Memory, Operand, Register
from .regions import MarkedRegion

# Node kinds
REGION = "region"
GROUP = "group"
LABEL_DEF = "label_def"
INSTRUCTION = "instruction"
MNEMONIC = "mnemonic"
OP_REGISTER = "operand_register"
OP_IMMEDIATE = "operand_immediate"
OP_LABEL_REF = "operand_label_ref"
OP_MEMORY_PART = "operand_memory_part"  # kind is suffixed ":<part>"


def memory_part_kind(part: str) -> str:
    return f"{OP_MEMORY_PART}:{part}"


def is_memory_part(kind: str) -> bool:
    return kind.startswith(OP_MEMORY_PART)


def memory_part_of(kind: str) -> str:
    return kind.split(":", 1)[1]


@dataclass(eq=False)
class TreeNode:
    # eq=False: nodes compare by identity so list surgery never grabs a twin
    node_id: int
    kind: str
    literal: str | None = None
    children: list[TreeNode] = field(default_factory=list)
    line: int | None = None  # provenance for display; never hashed

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()


class SubtreeHash(NamedTuple):
    structure_hash: bytes  # over kinds and shape only
    full_hash: bytes  # over kinds, shape and literals


def subtree_hashes(root: TreeNode) -> dict[int, SubtreeHash]:
    """Bottom-up structure and full hashes for every node of the tree.

    Child digests are fixed-width, so concatenating them stays unambiguous;
    the kind and literal are separated by a byte that appears in neither.
    """
    out: dict[int, SubtreeHash] = {}
    blake = hashlib.blake2b

    def rec(node: TreeNode) -> SubtreeHash:
        kind = node.kind.encode()
        literal = (node.literal or "").encode()
        if node.children:
            child_hashes = [rec(c) for c in node.children]
            structure = blake(
                kind + b"\x00" + b"".join(h.structure_hash for h in child_hashes),
                digest_size=16).digest()
            full = blake(
                kind + b"\x00" + literal + b"\x00"
                + b"".join(h.full_hash for h in child_hashes),
                digest_size=16).digest()
        else:
            structure = blake(kind, digest_size=16).digest()
            full = blake(kind + b"\x00" + literal, digest_size=16).digest()
        sh = SubtreeHash(structure, full)
        out[node.node_id] = sh
        return sh

    rec(root)
    return out


# ---------------------------------------------------------------------------
# Region -> tree


def _operand_nodes(op: Operand, new_id, line: int) -> list[TreeNode]:
    if isinstance(op, Register):
        return [TreeNode(new_id(), OP_REGISTER, op.raw, line=line)]
    if isinstance(op, Immediate):
        return [TreeNode(new_id(), OP_IMMEDIATE, op.raw, line=line)]
    if isinstance(op, LabelRef):
        return [TreeNode(new_id(), OP_LABEL_REF, op.name, line=line)]
    if isinstance(op, Memory):
        nodes = []
        for part, value in (
            ("segment", op.segment),
            ("displacement", op.displacement),
            ("base", op.base),
            ("index", op.index),
            ("scale", str(op.scale) if op.scale is not None else None),
        ):
            if value is None:
                continue
            if part == "displacement" and op.disp_value is None:
                # Symbolic displacement (.LC0(%rip), sym@GOTPCREL(%rip)):
                # a label reference, subject to the rename-consistency rule.
                nodes.append(TreeNode(new_id(), OP_LABEL_REF, value, line=line))
            else:
                nodes.append(TreeNode(new_id(), memory_part_kind(part), value, line=line))
        return nodes
    raise TypeError(f"unknown operand type {type(op).__name__}")


def build_tree(region: MarkedRegion) -> TreeNode:
    """Deterministic tree with pre-order node ids."""
    counter = iter(range(1 << 30))

    def new_id() -> int:
        return next(counter)

    root = TreeNode(new_id(), REGION)
    for group in region.groups:
        first_line = min(group.label_lines + group.instruction_lines, default=None)
        gnode = TreeNode(new_id(), GROUP, line=first_line)
        for name, gline in zip(group.leading_labels, group.label_lines):
            gnode.children.append(TreeNode(new_id(), LABEL_DEF, name, line=gline))
        for instr, iline in zip(group.instructions, group.instruction_lines):
            inode = TreeNode(new_id(), INSTRUCTION, line=iline)
            inode.children.append(TreeNode(new_id(), MNEMONIC, instr.mnemonic, line=iline))
            for op in instr.operands:
                inode.children.extend(_operand_nodes(op, new_id, iline))
            gnode.children.append(inode)
        root.children.append(gnode)
    return root


# ---------------------------------------------------------------------------
# Edits


@dataclass
class Insert:
    node: TreeNode  # whole inserted subtree (target-side ids)
    parent_id: int
    position: int


@dataclass
class Delete:
    node_id: int


@dataclass
class UpdateLiteral:
    node_id: int
    old: str
    new: str
    target_node_id: int


@dataclass
class Move:
    node_id: int
    parent_id: int
    position: int


Edit = Insert | Delete | UpdateLiteral | Move


@dataclass
class EditScript:
    edits: list[Edit]
    # source node id -> target node id for every reused or aligned node
    matched: dict[int, int] = field(default_factory=dict)

    def __len__(self):
        return len(self.edits)

    def __iter__(self):
        return iter(self.edits)


def script_to_dict(script: EditScript) -> dict:
    """JSON form; whole-subtree inserts are flattened to one record per node."""
    records = []
    for e in script.edits:
        if isinstance(e, Insert):
            def flatten(node: TreeNode, parent_id: int, position: int):
                records.append({
                    "op": "insert",
                    "nodeId": node.node_id,
                    "parentId": parent_id,
                    "position": position,
                    "kind": node.kind,
                    "literal": node.literal,
                })
                for i, c in enumerate(node.children):
                    flatten(c, node.node_id, i)
            flatten(e.node, e.parent_id, e.position)
        elif isinstance(e, Delete):
            records.append({"op": "delete", "nodeId": e.node_id})
        elif isinstance(e, UpdateLiteral):
            records.append({
                "op": "update",
                "nodeId": e.node_id,
                "oldLiteral": e.old,
                "newLiteral": e.new,
            })
        else:
            records.append({
                "op": "move",
                "nodeId": e.node_id,
                "parentId": e.parent_id,
                "position": e.position,
            })
    return {"edits": records}


# ---------------------------------------------------------------------------
# Diff

_HASH_MATCH_KINDS = (GROUP, INSTRUCTION)


class _TreeIndex:
    def __init__(self, root: TreeNode):
        self.root = root
        self.hashes = subtree_hashes(root)
        self.nodes: dict[int, TreeNode] = {}
        self.parent: dict[int, TreeNode] = {}
        for node in root.walk():
            self.nodes[node.node_id] = node
            for c in node.children:
                self.parent[c.node_id] = node


class _Matching:
    def __init__(self):
        self.s2t: dict[int, int] = {}
        self.t_ids: set[int] = set()

    def add(self, s_id: int, t_id: int):
        self.s2t[s_id] = t_id
        self.t_ids.add(t_id)

    def __contains__(self, s_id: int) -> bool:
        return s_id in self.s2t


def _pair_whole_subtree(s: TreeNode, t: TreeNode, m: _Matching):
    m.add(s.node_id, t.node_id)
    for sc, tc in zip(s.children, t.children):
        _pair_whole_subtree(sc, tc, m)


def _hash_match(
    src_nodes: list[TreeNode],
    tgt_nodes: list[TreeNode],
    si: _TreeIndex,
    ti: _TreeIndex,
    m: _Matching,
):
    """Order-preserving pairing of equal full-hash subtrees."""
    by_hash: dict[bytes, list[TreeNode]] = {}
    for n in src_nodes:
        by_hash.setdefault(si.hashes[n.node_id].full_hash, []).append(n)
    for t in tgt_nodes:
        bucket = by_hash.get(ti.hashes[t.node_id].full_hash)
        if bucket:
            _pair_whole_subtree(bucket.pop(0), t, m)


def diff(source: TreeNode, target: TreeNode) -> EditScript:
    si, ti = _TreeIndex(source), _TreeIndex(target)
    m = _Matching()
    m.add(source.node_id, target.node_id)
    updates: list[UpdateLiteral] = []

    # Whole-group reuse first, then instruction reuse inside surviving groups,
    # then positional alignment of the remainder.
    src_groups = list(source.children)
    tgt_groups = list(target.children)
    _hash_match(src_groups, tgt_groups, si, ti, m)

    rest_s = [g for g in src_groups if g.node_id not in m]
    rest_t = [g for g in tgt_groups if g.node_id not in m.t_ids]
    group_pairs = list(zip(rest_s, rest_t))
    for gs, gt in group_pairs:
        m.add(gs.node_id, gt.node_id)

    paired_src_groups = {gs.node_id for gs, _ in group_pairs}
    cand_s = [
        n for g in src_groups if g.node_id in paired_src_groups
        for n in g.children
        if n.kind == INSTRUCTION and n.node_id not in m
    ]
    cand_t = [
        n for g in tgt_groups if g.node_id in m.t_ids
        for n in g.children
        if n.kind == INSTRUCTION and n.node_id not in m.t_ids
    ]
    _hash_match(cand_s, cand_t, si, ti, m)

    def _pair_structurally(s: TreeNode, t: TreeNode):
        m.add(s.node_id, t.node_id)
        if s.literal != t.literal:
            updates.append(UpdateLiteral(s.node_id, s.literal, t.literal, t.node_id))
        for sc, tc in zip(s.children, t.children):
            _pair_structurally(sc, tc)

    # Positional alignment of the unmatched remainder under each group pair:
    # same kind and same structure hash pair up, their literal diffs become
    # updates; everything else falls through to delete plus insert.
    for gs, gt in group_pairs:
        rest_sc = [c for c in gs.children if c.node_id not in m]
        rest_tc = [c for c in gt.children if c.node_id not in m.t_ids]
        for sc, tc in zip(rest_sc, rest_tc):
            if sc.kind != tc.kind:
                continue
            if si.hashes[sc.node_id].structure_hash != ti.hashes[tc.node_id].structure_hash:
                continue
            _pair_structurally(sc, tc)

    matched = m.s2t
    reverse = {t: s for s, t in matched.items()}

    # Deletes: unmatched source subtrees rooted under a matched parent.
    edits: list[Edit] = list(updates)
    delete_roots = []

    def collect_deletes(node: TreeNode):
        for c in node.children:
            if c.node_id not in matched:
                delete_roots.append(c)
            else:
                collect_deletes(c)

    collect_deletes(source)
    edits.extend(Delete(d.node_id) for d in delete_roots)

    # Move detection: matched across parents always moves; under the same
    # parent pair, a child moves when its rank among the staying children
    # differs between source and target order.
    moved: set[int] = set()
    for s_id, t_id in matched.items():
        if s_id == source.node_id:
            continue
        sp, tp = si.parent[s_id], ti.parent[t_id]
        if matched.get(sp.node_id) != tp.node_id:
            moved.add(s_id)
    seen_parents: set[int] = set()
    for s_id, t_id in matched.items():
        if s_id == source.node_id or s_id in moved:
            continue
        sp, tp = si.parent[s_id], ti.parent[t_id]
        if sp.node_id in seen_parents:
            continue
        seen_parents.add(sp.node_id)
        sp_child_ids = {c.node_id for c in sp.children}
        tp_child_ids = {c.node_id for c in tp.children}
        stay_t_rank: dict[int, int] = {}
        for c in tp.children:
            if reverse.get(c.node_id) in sp_child_ids:
                stay_t_rank[c.node_id] = len(stay_t_rank)
        rank = 0
        for c in sp.children:
            tid = matched.get(c.node_id)
            if tid is None or tid not in tp_child_ids or c.node_id in moved:
                continue
            if stay_t_rank[tid] != rank:
                moved.add(c.node_id)
            rank += 1

    # Reconcile each matched parent's children toward target order, simulating
    # application state so every emitted position is valid when applied.
    current_children: dict[int, list] = {}
    current_parent: dict[int, int] = {}
    for node in source.walk():
        current_children[node.node_id] = list(node.children)
        for c in node.children:
            current_parent[c.node_id] = node.node_id
    for d in delete_roots:
        current_children[current_parent[d.node_id]].remove(d)

    for tp in target.walk():
        sp_id = reverse.get(tp.node_id)
        if sp_id is None or not tp.children:
            continue
        cur = current_children[sp_id]
        for j, tc in enumerate(tp.children):
            sc_id = reverse.get(tc.node_id)
            if sc_id is None:
                edits.append(Insert(tc, sp_id, j))
                cur.insert(j, ("inserted", tc.node_id))
                continue
            sc = si.nodes[sc_id]
            in_place = j < len(cur) and cur[j] is sc
            if in_place and sc_id not in moved:
                continue
            edits.append(Move(sc_id, sp_id, j))
            current_children[current_parent[sc_id]].remove(sc)
            cur = current_children[sp_id]
            cur.insert(j, sc)
            current_parent[sc_id] = sp_id

    return EditScript(edits=edits, matched=matched)


# ---------------------------------------------------------------------------
# Apply (verification oracle for script validity)


class ApplyError(Exception):
    pass


class DanglingNodeId(ApplyError):
    def __init__(self, node_id: int):
        super().__init__(f"edit references unknown node id {node_id}")
        self.node_id = node_id


def apply_script(source: TreeNode, script: EditScript) -> TreeNode:
    """Apply edits in order to a copy of source; returns the edited tree."""
    root = copy.deepcopy(source)
    registry: dict[int, TreeNode] = {}
    parent_of: dict[int, TreeNode] = {}
    for node in root.walk():
        registry[node.node_id] = node
        for c in node.children:
            parent_of[c.node_id] = node

    def resolve(node_id: int) -> TreeNode:
        if node_id not in registry:
            raise DanglingNodeId(node_id)
        return registry[node_id]

    def detach(node: TreeNode):
        parent = parent_of.get(node.node_id)
        if parent is not None:
            parent.children.remove(node)
            del parent_of[node.node_id]

    for e in script.edits:
        if isinstance(e, UpdateLiteral):
            resolve(e.node_id).literal = e.new
        elif isinstance(e, Delete):
            node = resolve(e.node_id)
            detach(node)
            for n in node.walk():
                registry.pop(n.node_id, None)
        elif isinstance(e, Move):
            node = resolve(e.node_id)
            parent = resolve(e.parent_id)
            detach(node)
            parent.children.insert(e.position, node)
            parent_of[node.node_id] = parent
        else:  # Insert; payload ids live in the target id space, never re-referenced
            parent = resolve(e.parent_id)
            subtree = copy.deepcopy(e.node)
            parent.children.insert(e.position, subtree)
    return root


def isomorphic(a: TreeNode, b: TreeNode) -> bool:
    """Equality of kind, literal and child order, ignoring node ids."""
    if a.kind != b.kind or a.literal != b.literal or len(a.children) != len(b.children):
        return False
    return all(isomorphic(x, y) for x, y in zip(a.children, b.children))
