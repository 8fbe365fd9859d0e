"""Interval graphs: recognition, MPQ-trees, symbolic automorphism
groups, unit-interval classification, and group-preserving conversions
to and from trees.

The pipeline is: chordality by LexBFS, maximal cliques from the
elimination ordering, consecutive arrangement by PQ-tree reduction,
then per-node vertex sections (the MPQ-tree).  Twin classes live in
sections; the automorphism group assembles bottom-up over the tree.
Class-membership failures return None throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .graph import Graph, connected_components, induced_subgraph, is_tree
from .groups import (Cyc, Direct, Sym, Term, TRIVIAL, Wreath, direct,
                     jordan_assemble, normalize, wreath)
from . import pqtree
from .trees import tree_center

UNIT_INTERVAL = "UnitInterval"
INTERVAL_NOT_UNIT = "IntervalNotUnit"
NOT_INTERVAL = "NotInterval"


# ----------------------------------------------------------------------
# chordality and maximal cliques

def lexbfs_order(g: Graph) -> list[int]:
    n = g.n
    labels: list[list[int]] = [[] for _ in range(n)]
    visited = [False] * n
    out: list[int] = []
    for step in range(n):
        best = -1
        for u in range(n):
            if visited[u]:
                continue
            if best == -1 or labels[u] > labels[best]:
                best = u
        visited[best] = True
        out.append(best)
        for w in g.neighbors(best):
            if not visited[w]:
                labels[w].append(n - step)
    return out


def perfect_elimination_order(g: Graph) -> list[int] | None:
    """Elimination order certifying chordality, or None."""
    order = lexbfs_order(g)
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        earlier = [u for u in g.neighbors(v) if pos[u] < pos[v]]
        if not earlier:
            continue
        p = max(earlier, key=lambda u: pos[u])
        if not (set(earlier) - {p}) <= g.neighbors(p):
            return None
    return list(reversed(order))


def _chordal_cliques(g: Graph) -> list[frozenset[int]] | None:
    if g.n == 0:
        return []
    order = lexbfs_order(g)
    pos = {v: i for i, v in enumerate(order)}
    cands: list[frozenset[int]] = []
    for v in order:
        earlier = [u for u in g.neighbors(v) if pos[u] < pos[v]]
        if earlier:
            p = max(earlier, key=lambda u: pos[u])
            if not (set(earlier) - {p}) <= g.neighbors(p):
                return None
        cands.append(frozenset(earlier) | {v})
    cands.sort(key=len, reverse=True)
    maximal: list[frozenset[int]] = []
    for c in cands:
        if not any(c <= m for m in maximal):
            maximal.append(c)
    maximal.sort(key=lambda c: sorted(c))
    return maximal


def _clique_tree(g: Graph):
    """(cliques, reduced PQ-tree) or None when g is not interval."""
    cliques = _chordal_cliques(g)
    if cliques is None:
        return None
    if not cliques:
        return [], None
    tree = pqtree.initial_tree(range(len(cliques)))
    member: dict[int, list[int]] = {v: [] for v in range(g.n)}
    for i, c in enumerate(cliques):
        for v in c:
            member[v].append(i)
    for v in range(g.n):
        if len(member[v]) < 2:
            continue
        tree = pqtree.reduce_tree(tree, member[v])
        if tree is None:
            return None
    return cliques, tree


def maximal_cliques_interval(g: Graph) -> list[frozenset[int]] | None:
    """Maximal cliques in one consecutive order, or None if not
    interval.  Doubles as the recognizer."""
    ct = _clique_tree(g)
    if ct is None:
        return None
    cliques, tree = ct
    if tree is None:
        return []
    return [cliques[i] for i in pqtree.frontier(tree)]


def is_interval(g: Graph) -> bool:
    return _clique_tree(g) is not None


# ----------------------------------------------------------------------
# MPQ-tree

@dataclass
class MpqLeaf:
    index: int                      # clique position
    sec: tuple[int, ...]            # vertices only in this clique


@dataclass
class MpqP:
    children: list
    sec: tuple[int, ...]            # vertices in every clique below


@dataclass
class MpqQ:
    children: list
    # vertices spanning children i..j, keyed by the run (i, j), i < j
    runs: dict[tuple[int, int], tuple[int, ...]]


MpqNode = MpqLeaf | MpqP | MpqQ


def _convert(node) -> MpqNode:
    if isinstance(node, pqtree.Leaf):
        return MpqLeaf(node.value, ())
    kids = [_convert(c) for c in node.children]
    if isinstance(node, pqtree.PNode):
        return MpqP(kids, ())
    return MpqQ(kids, {})


def mpq_leafset(node: MpqNode) -> frozenset[int]:
    if isinstance(node, MpqLeaf):
        return frozenset((node.index,))
    out: set[int] = set()
    for c in node.children:
        out |= mpq_leafset(c)
    return frozenset(out)


def _assign(node: MpqNode, v: int, s: frozenset[int],
            pending: dict[int, list[int]]) -> None:
    while True:
        if isinstance(node, MpqLeaf):
            pending.setdefault(id(node), []).append(v)
            return
        nxt = None
        for c in node.children:
            if s <= mpq_leafset(c):
                nxt = c
                break
        if nxt is not None:
            node = nxt
            continue
        if isinstance(node, MpqP):
            assert s == mpq_leafset(node), "section does not fill the node"
            pending.setdefault(id(node), []).append(v)
            return
        sets = [mpq_leafset(c) for c in node.children]
        touch = [i for i, ls in enumerate(sets) if ls & s]
        i, j = touch[0], touch[-1]
        assert i < j
        got = frozenset().union(*sets[i:j + 1])
        assert got == s, "run is not a consecutive stretch"
        key = (i, j)
        node.runs.setdefault(key, ())
        pending.setdefault(id(node), []).append((key, v))
        return


def build_mpq(g: Graph) -> MpqNode | None:
    """The canonical MPQ-tree of g, or None when g is not interval."""
    ct = _clique_tree(g)
    if ct is None:
        return None
    cliques, tree = ct
    if tree is None:
        return MpqP([], ())
    root = _convert(tree)
    member: dict[int, frozenset[int]] = {}
    for i, c in enumerate(cliques):
        for v in c:
            member.setdefault(v, frozenset())
    for v in range(g.n):
        member[v] = frozenset(i for i, c in enumerate(cliques) if v in c)
    pending: dict[int, list] = {}
    for v in range(g.n):
        _assign(root, v, member[v], pending)

    def settle(node: MpqNode) -> None:
        entries = pending.get(id(node), [])
        if isinstance(node, MpqLeaf):
            node.sec = tuple(sorted(entries))
        elif isinstance(node, MpqP):
            node.sec = tuple(sorted(entries))
            for c in node.children:
                settle(c)
        else:
            by_run: dict[tuple[int, int], list[int]] = {}
            for key, v in entries:
                by_run.setdefault(key, []).append(v)
            node.runs = {k: tuple(sorted(vs)) for k, vs in sorted(by_run.items())}
            for c in node.children:
                settle(c)

    settle(root)
    return root


# ----------------------------------------------------------------------
# canonical codes and counting

def _q_code_oriented(node: MpqQ, flipped: bool):
    kids = list(node.children)
    m = len(kids)
    runs = node.runs
    if flipped:
        kids = kids[::-1]
        runs = {(m - 1 - j, m - 1 - i): vs for (i, j), vs in runs.items()}
    return ("Q", tuple(mpq_code(c) for c in kids),
            tuple(sorted((i, j, len(vs)) for (i, j), vs in runs.items())))


def mpq_code(node: MpqNode):
    """Canonical code: equal codes mean isomorphic represented graphs."""
    if isinstance(node, MpqLeaf):
        return ("L", len(node.sec))
    if isinstance(node, MpqP):
        return ("P", len(node.sec),
                tuple(sorted(mpq_code(c) for c in node.children)))
    return min(_q_code_oriented(node, False), _q_code_oriented(node, True))


def count_consecutive_orderings(m: MpqNode) -> int:
    """Number of consecutive orderings of the maximal cliques."""
    if isinstance(m, MpqLeaf):
        return 1
    inner = 1
    for c in m.children:
        inner *= count_consecutive_orderings(c)
    if isinstance(m, MpqP):
        return inner * factorial(len(m.children))
    return inner * 2


# ----------------------------------------------------------------------
# group assembly

@dataclass(frozen=True)
class MpqAutData:
    full: Term      # automorphism group of the represented graph
    kernel: Term    # pointwise clique-structure stabilizer (twin classes)


def _mpq_full(node: MpqNode) -> Term:
    if isinstance(node, MpqLeaf):
        return normalize(Sym(len(node.sec)))
    if isinstance(node, MpqP):
        by_code: dict = {}
        for c in node.children:
            by_code.setdefault(mpq_code(c), []).append(c)
        classes = [(_mpq_full(members[0]), len(members))
                   for code, members in sorted(by_code.items())]
        return direct(jordan_assemble(classes),
                      normalize(Sym(len(node.sec))))
    m = len(node.children)
    if _q_code_oriented(node, False) != _q_code_oriented(node, True):
        parts = [_mpq_full(c) for c in node.children]
        parts += [normalize(Sym(len(vs))) for vs in node.runs.values()]
        return direct(*parts)
    h = m // 2
    left = [_mpq_full(node.children[i]) for i in range(h)]
    left += [normalize(Sym(len(vs))) for (i, j), vs in node.runs.items()
             if i + j < m - 1]
    middle: list[Term] = []
    if m % 2:
        middle.append(_mpq_full(node.children[h]))
    middle += [normalize(Sym(len(vs))) for (i, j), vs in node.runs.items()
               if i + j == m - 1]
    return direct(wreath(direct(*left), Sym(2)), *middle)


def _collect_twin_sizes(node: MpqNode, out: list[int]) -> None:
    if isinstance(node, MpqLeaf):
        out.append(len(node.sec))
        return
    if isinstance(node, MpqP):
        out.append(len(node.sec))
    else:
        out.extend(len(vs) for vs in node.runs.values())
    for c in node.children:
        _collect_twin_sizes(c, out)


def mpq_automorphism_data(m: MpqNode) -> MpqAutData:
    sizes: list[int] = []
    _collect_twin_sizes(m, sizes)
    kernel = direct(*[Sym(s) for s in sizes if s >= 2])
    return MpqAutData(full=_mpq_full(m), kernel=kernel)


def interval_group(g: Graph) -> Term | None:
    """Symbolic automorphism group of an interval graph, else None."""
    if g.n == 0:
        return TRIVIAL
    by_code: dict = {}
    for comp in connected_components(g):
        sub, _ = induced_subgraph(g, comp)
        root = build_mpq(sub)
        if root is None:
            return None
        by_code.setdefault(mpq_code(root), []).append(root)
    classes = [(_mpq_full(members[0]), len(members))
               for code, members in sorted(by_code.items())]
    return jordan_assemble(classes)


def is_prime_interval_check(g: Graph) -> bool:
    """Validation hook for prime interval graphs: two consecutive
    orderings at most, automorphism group of order at most two."""
    root = build_mpq(g)
    if root is None:
        return False
    cnt = count_consecutive_orderings(root)
    term = interval_group(g)
    return cnt in (1, 2) and term is not None and term.order() <= 2


# ----------------------------------------------------------------------
# unit interval graphs

def is_claw_free(g: Graph) -> bool:
    for v in range(g.n):
        nb = sorted(g.neighbors(v))
        for ai in range(len(nb)):
            for bi in range(ai + 1, len(nb)):
                if g.has_edge(nb[ai], nb[bi]):
                    continue
                for ci in range(bi + 1, len(nb)):
                    if (not g.has_edge(nb[ai], nb[ci])
                            and not g.has_edge(nb[bi], nb[ci])):
                        return False
    return True


def classify_unit_interval(g: Graph) -> str:
    """UnitInterval, IntervalNotUnit, or NotInterval.  Unit interval
    means interval with no induced claw."""
    if not is_interval(g):
        return NOT_INTERVAL
    return UNIT_INTERVAL if is_claw_free(g) else INTERVAL_NOT_UNIT


def _sym_atom(t: Term) -> bool:
    return isinstance(t, (Sym, Cyc)) and (not isinstance(t, Cyc) or t.k == 2)


def _direct_of_syms(t: Term) -> bool:
    if isinstance(t, Direct):
        return all(_sym_atom(m) for m in t.members)
    return isinstance(t, type(TRIVIAL)) or _sym_atom(t)


def caterpillar_group_shape(t: Term) -> bool:
    """Shape of connected unit-interval automorphism groups: a direct
    product of symmetric factors with at most one block of the form
    (direct product of symmetric factors) wr Cyc(2)."""
    t = normalize(t)
    members = list(t.members) if isinstance(t, Direct) else [t]
    wreaths = [m for m in members if isinstance(m, Wreath)]
    plain = [m for m in members if not isinstance(m, Wreath)]
    if len(wreaths) > 1:
        return False
    for w in wreaths:
        if not (isinstance(w.top, Cyc) and w.top.k == 2):
            return False
        if not _direct_of_syms(w.base):
            return False
    return all(_sym_atom(m) or isinstance(m, type(TRIVIAL)) for m in plain)


# ----------------------------------------------------------------------
# MPQ export

def mpq_to_json(node: MpqNode):
    if isinstance(node, MpqLeaf):
        return {"kind": "leaf", "clique": node.index, "sec": list(node.sec)}
    if isinstance(node, MpqP):
        return {"kind": "P", "sec": list(node.sec),
                "children": [mpq_to_json(c) for c in node.children]}
    return {"kind": "Q",
            "runs": [{"span": list(k), "vertices": list(vs)}
                     for k, vs in sorted(node.runs.items())],
            "children": [mpq_to_json(c) for c in node.children]}


def mpq_to_dot(node: MpqNode, name: str = "MPQ") -> str:
    lines = [f"graph {name} {{", "  node [fontsize=10];"]
    counter = [0]

    def emit(nd: MpqNode) -> int:
        my = counter[0]
        counter[0] += 1
        if isinstance(nd, MpqLeaf):
            sec = ",".join(map(str, nd.sec))
            lines.append(f'  n{my} [shape=ellipse, label="C{nd.index}: {sec}"];')
            return my
        if isinstance(nd, MpqP):
            sec = ",".join(map(str, nd.sec))
            lines.append(f'  n{my} [shape=circle, label="P [{sec}]"];')
        else:
            runs = " ".join(f"{k}:{','.join(map(str, vs))}"
                            for k, vs in sorted(nd.runs.items()))
            lines.append(f'  n{my} [shape=box, label="Q {runs}"];')
        for c in nd.children:
            cid = emit(c)
            lines.append(f"  n{my} -- n{cid};")
        return my

    emit(node)
    lines.append("}")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# interval graph -> tree with the same automorphism group

class _RT:
    """Mutable rooted tree used while assembling the output tree."""

    __slots__ = ("children",)

    def __init__(self, children=()):
        self.children = list(children)


def _rt_code(t: _RT) -> str:
    return "(" + "".join(sorted(_rt_code(c) for c in t.children)) + ")"


def _rt_height(t: _RT) -> int:
    return 0 if not t.children else 1 + max(_rt_height(c) for c in t.children)


def _rt_star(s: int) -> _RT:
    return _RT([_RT() for _ in range(s)])


def _rt_chain(k: int) -> _RT:
    node = _RT()
    for _ in range(k):
        node = _RT([node])
    return node


def _separate(classes: list[tuple[str, list[_RT], bool]]) -> None:
    """Wrap whole branch classes in stems until branches of distinct
    classes have distinct codes.  Branches inside one class stay
    mutually isomorphic; frozen classes are never wrapped (a frozen
    pair may intentionally coincide)."""
    guard = 0
    while True:
        guard += 1
        assert guard < 500, "branch separation failed to converge"
        codes = [ _rt_code(branches[0]) for _, branches, _ in classes ]
        target = None
        for a in range(len(classes)):
            for b in range(a + 1, len(classes)):
                if codes[a] != codes[b]:
                    continue
                ka, _, fa = classes[a]
                kb, _, fb = classes[b]
                if fa and fb:
                    continue
                if fa:
                    target = b
                elif fb:
                    target = a
                else:
                    target = b if kb > ka else a
                break
            if target is not None:
                break
        if target is None:
            return
        _, branches, _ = classes[target]
        branches[:] = [_RT([br]) for br in branches]


def _canonical_q(node: MpqQ):
    """Children and runs in the canonical orientation; symmetry flag."""
    fwd = _q_code_oriented(node, False)
    bwd = _q_code_oriented(node, True)
    m = len(node.children)
    if bwd < fwd:
        kids = list(reversed(node.children))
        runs = {(m - 1 - j, m - 1 - i): vs for (i, j), vs in node.runs.items()}
    else:
        kids = list(node.children)
        runs = dict(node.runs)
    return kids, runs, fwd == bwd


def _make_run_gadget(width: int, size: int) -> _RT:
    g = _rt_star(size)
    for _ in range(width - 1):
        g = _RT([g])
    return g


def _build_arm(slots: list[tuple[_RT, list[tuple[int, _RT]]]]) -> _RT:
    """slots[0] is nearest the root; each slot carries the hosted child
    tree and its run gadgets."""
    cont: _RT | None = None
    for child_rt, gadgets in reversed(slots):
        classes: list[tuple[str, list[_RT], bool]] = []
        if cont is not None:
            classes.append(("0cont", [cont], True))
        classes.append(("1child", [child_rt], False))
        for wd, grt in sorted(gadgets, key=lambda x: x[0]):
            classes.append((f"2run{wd:04d}", [grt], False))
        _separate(classes)
        cont = _RT([b for _, bs, _ in classes for b in bs])
    assert cont is not None
    return cont


def _rt_of(node: MpqNode) -> _RT:
    if isinstance(node, MpqLeaf):
        return _rt_star(len(node.sec))
    if isinstance(node, MpqP):
        by_code: dict = {}
        for c in node.children:
            by_code.setdefault(mpq_code(c), []).append(c)
        classes: list[tuple[str, list[_RT], bool]] = []
        for idx, (code, members) in enumerate(sorted(by_code.items())):
            branches = [_rt_of(m) for m in members]
            assert len({_rt_code(b) for b in branches}) == 1
            classes.append((f"c{idx:04d}", branches, False))
        if node.sec:
            classes.append(("zsec", [_RT([_rt_star(len(node.sec))])], False))
        _separate(classes)
        return _RT([b for _, bs, _ in classes for b in bs])
    kids, runs, symmetric = _canonical_q(node)
    m = len(kids)
    h = m // 2
    left_slots: list[tuple[_RT, list[tuple[int, _RT]]]] = []
    right_slots: list[tuple[_RT, list[tuple[int, _RT]]]] = []
    for t in range(1, h + 1):
        left_slots.append((_rt_of(kids[h - t]), []))
        right_child = h - 1 + t if m % 2 == 0 else h + t
        right_slots.append((_rt_of(kids[right_child]), []))
    mid_gadgets: list[tuple[int, _RT]] = []
    for (i, j), vs in sorted(runs.items()):
        wd, size = j - i + 1, len(vs)
        grt = _make_run_gadget(wd, size)
        if i + j < m - 1:
            left_slots[h - i - 1][1].append((wd, grt))
        elif i + j > m - 1:
            pos = j - h + 1 if m % 2 == 0 else j - h
            right_slots[pos - 1][1].append((wd, grt))
        else:
            mid_gadgets.append((wd, grt))
    arm_l = _build_arm(left_slots)
    arm_r = _build_arm(right_slots)
    if symmetric:
        assert _rt_code(arm_l) == _rt_code(arm_r)
    elif _rt_code(arm_l) == _rt_code(arm_r):
        arm_r = _RT([arm_r])
    classes = [("0L", [arm_l], True), ("0R", [arm_r], True)]
    if m % 2:
        classes.append(("1mid", [_rt_of(kids[h])], False))
    for wd, grt in mid_gadgets:
        classes.append((f"2srun{wd:04d}", [grt], False))
    _separate(classes)
    return _RT([b for _, bs, _ in classes for b in bs])


def _rt_to_graph(rt: _RT) -> Graph:
    edges: list[tuple[int, int]] = []
    counter = [0]

    def walk(node: _RT) -> int:
        my = counter[0]
        counter[0] += 1
        for c in node.children:
            edges.append((my, walk(c)))
        return my

    walk(rt)
    return Graph(counter[0], edges)


def interval_to_tree(g: Graph) -> Graph | None:
    """A tree whose automorphism group matches the interval graph's.
    None when g is not interval."""
    if g.n == 0:
        return Graph(1)
    root = build_mpq(g)
    if root is None:
        return None
    rt = _rt_of(root)
    depth = _rt_height(rt)
    rt.children.append(_rt_chain(depth + 1))
    rt.children.append(_rt_chain(depth + 2))
    return _rt_to_graph(rt)


# ----------------------------------------------------------------------
# tree -> interval graph with the same automorphism group

_SPIDER_EDGES = ((0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6))


def tree_to_interval(t: Graph, root: int | None = None) -> Graph | None:
    """An interval graph whose automorphism group matches the tree's:
    the containment graph of the rooted tree (rooted at the center,
    subdividing a central edge first) with an asymmetric 7-vertex
    gadget breaking the chain twins at every single-child vertex.
    None when t is not a tree."""
    if not is_tree(t):
        return None
    if t.n == 1:
        return Graph(1)
    edges = t.edges()
    n = t.n
    if root is None:
        center = tree_center(t, list(range(n)))
        if len(center) == 2:
            a, b = center
            mid = n
            n += 1
            edges = [e for e in edges if set(e) != {a, b}]
            edges += [(a, mid), (mid, b)]
            root = mid
        else:
            root = center[0]
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    parent: list[int | None] = [None] * n
    order = [root]
    seen = {root}
    for u in order:
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                parent[w] = u
                order.append(w)
    anc: list[list[int]] = [[] for _ in range(n)]
    for u in order:
        if parent[u] is not None:
            anc[u] = anc[parent[u]] + [parent[u]]
    out_edges: list[tuple[int, int]] = []
    for u in range(n):
        for a in anc[u]:
            out_edges.append((a, u))
    nxt = n
    for u in range(n):
        kids = sum(1 for w in adj[u] if parent[w] == u)
        if kids != 1:
            continue
        base = nxt
        nxt += 7
        out_edges += [(base + a, base + b) for a, b in _SPIDER_EDGES]
        for k in range(7):
            out_edges.append((base + k, u))
            for a in anc[u]:
                out_edges.append((base + k, a))
    return Graph(nxt, out_edges)
