"""PQ-trees over a finite ground set.

A PQ-tree represents the family of orderings of its leaves reachable by
permuting children of P-nodes and reversing Q-nodes.  `reduce_tree`
restricts the tree so a given subset of leaves stays consecutive in
every represented ordering, failing with None when no such ordering
exists.  The implementation rebuilds nodes recursively instead of using
the classical template automaton; at the scale this package targets
that is fast enough and much easier to audit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial


@dataclass
class Leaf:
    value: int


@dataclass
class PNode:
    children: list = field(default_factory=list)


@dataclass
class QNode:
    children: list = field(default_factory=list)


Node = Leaf | PNode | QNode


def leaf_values(node: Node) -> frozenset[int]:
    if isinstance(node, Leaf):
        return frozenset((node.value,))
    out: set[int] = set()
    for c in node.children:
        out |= leaf_values(c)
    return frozenset(out)


def frontier(node: Node) -> list[int]:
    if isinstance(node, Leaf):
        return [node.value]
    out: list[int] = []
    for c in node.children:
        out.extend(frontier(c))
    return out


def initial_tree(values) -> Node:
    vals = sorted(values)
    if len(vals) == 1:
        return Leaf(vals[0])
    return PNode([Leaf(v) for v in vals])


def _normalize(node: Node) -> Node:
    if isinstance(node, Leaf):
        return node
    kids = [_normalize(c) for c in node.children]
    if len(kids) == 1:
        return kids[0]
    if isinstance(node, QNode) and len(kids) == 2:
        return PNode(kids)
    node.children = kids
    return node


def _group(kids: list[Node]) -> list[Node]:
    """Zero, one, or a fresh P-node bundling several siblings."""
    if not kids:
        return []
    if len(kids) == 1:
        return [kids[0]]
    return [PNode(list(kids))]


def _classify(node: Node, s: frozenset[int]) -> str:
    lv = leaf_values(node)
    if lv <= s:
        return "full"
    if lv & s:
        return "partial"
    return "empty"


def _make_chain(node: Node, s: frozenset[int]) -> list[Node] | None:
    """Flatten a partial node into a sibling chain for a Q-node, full
    leaves packed at the left end."""
    if isinstance(node, Leaf):
        return None  # a leaf is never partial
    if isinstance(node, PNode):
        full, empty, partial = [], [], []
        for c in node.children:
            cls = _classify(c, s)
            (full if cls == "full" else empty if cls == "empty"
             else partial).append(c)
        if len(partial) > 1:
            return None
        mid: list[Node] = []
        if partial:
            sub = _make_chain(partial[0], s)
            if sub is None:
                return None
            mid = sub
        return _group(full) + mid + _group(empty)
    # Q-node: children must read full* partial? empty* in one orientation
    for kids in (list(node.children), list(reversed(node.children))):
        cls = [_classify(c, s) for c in kids]
        i = 0
        while i < len(kids) and cls[i] == "full":
            i += 1
        out = list(kids[:i])
        j = i
        if j < len(kids) and cls[j] == "partial":
            sub = _make_chain(kids[j], s)
            if sub is None:
                continue
            out.extend(sub)
            j += 1
        if all(c == "empty" for c in cls[j:]):
            out.extend(kids[j:])
            return out
    return None


def _apply_root(node: Node, s: frozenset[int]) -> Node | None:
    """Restructure the pertinent root so the leaves of s can sit
    consecutively."""
    if isinstance(node, Leaf):
        return node
    if isinstance(node, PNode):
        full, empty, partial = [], [], []
        for c in node.children:
            cls = _classify(c, s)
            (full if cls == "full" else empty if cls == "empty"
             else partial).append(c)
        if len(partial) == 0:
            if not empty or not full:
                return node
            return PNode(empty + _group(full))
        if len(partial) == 1:
            chain = _make_chain(partial[0], s)
            if chain is None:
                return None
            seq = _group(full) + chain
            q = QNode(seq)
            return PNode(empty + [q]) if empty else q
        if len(partial) == 2:
            c1 = _make_chain(partial[0], s)
            c2 = _make_chain(partial[1], s)
            if c1 is None or c2 is None:
                return None
            seq = list(reversed(c1)) + _group(full) + c2
            q = QNode(seq)
            return PNode(empty + [q]) if empty else q
        return None
    # Q-node root: children must read empty* partial? full* partial? empty*
    for kids in (list(node.children), list(reversed(node.children))):
        cls = [_classify(c, s) for c in kids]
        out: list[Node] = []
        i = 0
        while i < len(kids) and cls[i] == "empty":
            out.append(kids[i])
            i += 1
        ok = True
        if i < len(kids) and cls[i] == "partial":
            sub = _make_chain(kids[i], s)
            if sub is None:
                ok = False
            else:
                out.extend(reversed(sub))
                i += 1
        if ok:
            while i < len(kids) and cls[i] == "full":
                out.append(kids[i])
                i += 1
            if i < len(kids) and cls[i] == "partial":
                sub = _make_chain(kids[i], s)
                if sub is None:
                    ok = False
                else:
                    out.extend(sub)
                    i += 1
            if ok and all(c == "empty" for c in cls[i:]):
                out.extend(kids[i:])
                return QNode(out)
    return None


def _reduce_at(node: Node, s: frozenset[int]) -> Node | None:
    """Descend to the deepest node covering s, restructure there."""
    if not isinstance(node, Leaf):
        for idx, c in enumerate(node.children):
            if s <= leaf_values(c):
                sub = _reduce_at(c, s)
                if sub is None:
                    return None
                node.children[idx] = sub
                return node
    return _apply_root(node, s)


def reduce_tree(root: Node, s) -> Node | None:
    """Constrain the tree so the leaves of s are consecutive in every
    represented ordering.  None when the constraint is unsatisfiable."""
    s = frozenset(s)
    if len(s) <= 1:
        return root
    if not s <= leaf_values(root):
        raise ValueError("constraint mentions unknown leaves")
    out = _reduce_at(root, s)
    return None if out is None else _normalize(out)


def count_orderings(root: Node) -> int:
    """Number of distinct represented leaf orderings."""
    def walk(node: Node) -> int:
        if isinstance(node, Leaf):
            return 1
        inner = 1
        for c in node.children:
            inner *= walk(c)
        if isinstance(node, PNode):
            return inner * factorial(len(node.children))
        return inner * 2

    return walk(root)


def all_frontiers(root: Node) -> set[tuple[int, ...]]:
    """Every represented ordering, materialized.  Exponential; only for
    small trees in tests."""
    from itertools import permutations

    def walk(node: Node) -> list[tuple[int, ...]]:
        if isinstance(node, Leaf):
            return [(node.value,)]
        child_opts = [walk(c) for c in node.children]
        outs: set[tuple[int, ...]] = set()
        if isinstance(node, PNode):
            orders = permutations(range(len(child_opts)))
        else:
            idx = list(range(len(child_opts)))
            orders = [tuple(idx), tuple(reversed(idx))]
        for perm in orders:
            def build(i: int, acc: tuple[int, ...]):
                if i == len(perm):
                    outs.add(acc)
                    return
                for opt in child_opts[perm[i]]:
                    build(i + 1, acc + opt)
            build(0, ())
        return sorted(outs)

    return set(walk(root))
