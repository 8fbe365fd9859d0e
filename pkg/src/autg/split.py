"""Split decomposition and automorphism groups of connected circle graphs.

A split tree keeps the original vertices plus marker pairs; each marker
pair is a tree edge joining two nodes.  uv is an edge of the represented
graph exactly when an alternating path (normal edge, tree edge, normal
edge, ...) joins u to v.  Groups are assembled bottom-up from the center
node, one symbolic term per subtree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import (Graph, connected_components, induced_subgraph,
                    is_complete, is_connected, star_center)
from .groups import (TRIVIAL, Cyc, Dih, Term, direct, jordan_assemble,
                     klein, normalize, semidirect)
from .oracle import (DEFAULT_CAP, GroupClass, PermGroup, automorphism_group,
                     classify_small_group, isomorphic_graphs, perm_order,
                     point_stabilizer)

PRIME = "prime"
CLIQUE = "clique"
STAR = "star"


@dataclass
class SplitNode:
    vertices: tuple[int, ...]
    kind: str


@dataclass
class SplitTree:
    """Vertices 0..n-1 are original, n..total-1 are markers."""

    n: int
    total: int
    nodes: list[SplitNode]
    node_of: dict[int, int]
    adj: dict[int, frozenset[int]]   # normal edges, within nodes
    partner: dict[int, int]          # tree edges, marker to marker

    def is_marker(self, v: int) -> bool:
        return v >= self.n

    def markers_of(self, i: int) -> list[int]:
        return [v for v in self.nodes[i].vertices if v >= self.n]

    def tree_edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a, b in sorted(self.partner.items()) if a < b]

    def node_graph(self, i: int) -> tuple[Graph, list[int]]:
        """The node's own graph (normal edges only) plus its vertex ids."""
        vs = list(self.nodes[i].vertices)
        idx = {v: j for j, v in enumerate(vs)}
        edges = [(idx[u], idx[w]) for u in vs for w in self.adj[u]
                 if w in idx and u < w]
        return Graph(len(vs), edges), vs


def find_split(g: Graph) -> tuple[frozenset[int], ...] | None:
    """A split (A, B, A2, B2): sides A|A2 and B|B2 each of size at least
    two, cross edges exactly the complete bipartite A x B.  None when no
    split exists (prime or too small)."""
    if not is_connected(g):
        raise ValueError("split search needs a connected graph")
    n = g.n
    if n < 4:
        return None
    full = (1 << n) - 1
    for side in range(1, full, 2):      # subsets containing vertex 0
        k = side.bit_count()
        if k < 2 or n - k < 2:
            continue
        other = full ^ side
        b_mask = 0
        a_list = []
        for v in range(n):
            if side >> v & 1:
                cross = g.mask(v) & other
                if cross:
                    a_list.append(v)
                    b_mask |= cross
        if not b_mask:
            continue
        if any(g.mask(v) & other != b_mask for v in a_list):
            continue
        a_mask = sum(1 << v for v in a_list)
        b_list = [w for w in range(n) if b_mask >> w & 1]
        if any(g.mask(w) & side != a_mask for w in b_list):
            continue
        a = frozenset(a_list)
        b = frozenset(b_list)
        side_set = {v for v in range(n) if side >> v & 1}
        other_set = {v for v in range(n) if other >> v & 1}
        return a, b, frozenset(side_set - a), frozenset(other_set - b)
    return None


def build_split_tree(g: Graph) -> SplitTree:
    """Minimal split decomposition: greedy splitting, then merging of
    clique-clique and star center-to-leaf tree neighbors."""
    if not is_connected(g):
        raise ValueError("split decomposition needs a connected graph")
    n = g.n
    adj: dict[int, set[int]] = {v: set(g.neighbors(v)) for v in range(n)}
    partner: dict[int, int] = {}
    next_id = n
    pieces: list[list[int]] = []
    work = [sorted(range(n))]
    while work:
        piece = work.pop()
        split = None
        if len(piece) >= 4:
            idx = {v: i for i, v in enumerate(piece)}
            local = Graph(len(piece), [(idx[u], idx[w]) for u in piece
                                       for w in adj[u] if w in idx and u < w])
            found = find_split(local)
            if found is not None:
                split = tuple(sorted(piece[i] for i in part) for part in found)
        if split is None:
            pieces.append(piece)
            continue
        a, b, a2, b2 = split
        m1, m2 = next_id, next_id + 1
        next_id += 2
        partner[m1] = m2
        partner[m2] = m1
        for u in a:
            adj[u] -= set(b)
            adj[u].add(m1)
        for w in b:
            adj[w] -= set(a)
            adj[w].add(m2)
        adj[m1] = set(a)
        adj[m2] = set(b)
        work.append(sorted(a + a2) + [m1])
        work.append(sorted(b + b2) + [m2])

    node_verts: list[set[int]] = [set(p) for p in pieces]
    alive = [True] * len(node_verts)
    node_of = {v: i for i, vs in enumerate(node_verts) for v in vs}

    def local_kind(i: int) -> tuple[str, int | None]:
        vs = sorted(node_verts[i])
        idx = {v: j for j, v in enumerate(vs)}
        lg = Graph(len(vs), [(idx[u], idx[w]) for u in vs
                             for w in adj[u] if w in idx and u < w])
        if is_complete(lg):
            return CLIQUE, None
        c = star_center(lg)
        if c is not None:
            return STAR, vs[c]
        return PRIME, None

    merged = True
    while merged:
        merged = False
        for m1 in sorted(partner):
            m2 = partner[m1]
            if m1 > m2:
                continue
            i, j = node_of[m1], node_of[m2]
            ki, ci = local_kind(i)
            kj, cj = local_kind(j)
            if ki == CLIQUE and kj == CLIQUE:
                pass
            elif ki == STAR and kj == STAR and (ci == m1) != (cj == m2):
                pass
            else:
                continue
            nb1 = sorted(adj[m1])
            nb2 = sorted(adj[m2])
            for u in nb1:
                adj[u].discard(m1)
            for w in nb2:
                adj[w].discard(m2)
            for u in nb1:
                for w in nb2:
                    adj[u].add(w)
                    adj[w].add(u)
            del adj[m1], adj[m2], partner[m1], partner[m2]
            node_verts[i].discard(m1)
            node_verts[j].discard(m2)
            node_verts[i] |= node_verts[j]
            for v in node_verts[j]:
                node_of[v] = i
            node_verts[j] = set()
            alive[j] = False
            merged = True
            break

    marker_ids = sorted(partner)
    remap = {v: v for v in range(n)}
    for k, mid in enumerate(marker_ids):
        remap[mid] = n + k
    nodes: list[SplitNode] = []
    node_of2: dict[int, int] = {}
    for i, vs in enumerate(node_verts):
        if not alive[i]:
            continue
        kind, _ = local_kind(i)
        mapped = tuple(sorted(remap[v] for v in vs))
        for v in mapped:
            node_of2[v] = len(nodes)
        nodes.append(SplitNode(mapped, kind))
    adj2 = {remap[v]: frozenset(remap[w] for w in nb)
            for v, nb in adj.items()}
    partner2 = {remap[a]: remap[b] for a, b in partner.items()}
    return SplitTree(n, n + len(marker_ids), nodes, node_of2, adj2, partner2)


def reconstructed_neighbors(s: SplitTree, v: int,
                            allowed: set[int] | None = None) -> set[int]:
    """Original vertices reachable from v by an alternating path.  Each
    node is entered once; a step inside a node is one normal edge, then a
    marker forces its tree edge.  `allowed` restricts the node set."""
    res: set[int] = set()
    seen = {s.node_of[v]}
    stack = [v]
    while stack:
        p = stack.pop()
        for q in s.adj[p]:
            if q < s.n:
                res.add(q)
                continue
            r = s.partner[q]
            ni = s.node_of[r]
            if ni in seen or (allowed is not None and ni not in allowed):
                continue
            seen.add(ni)
            stack.append(r)
    res.discard(v)
    return res


def _side_nodes(s: SplitTree, root_marker: int) -> set[int]:
    """Node indices on root_marker's side of its tree edge."""
    start = s.node_of[root_marker]
    seen = {start}
    stack = [start]
    while stack:
        i = stack.pop()
        for v in s.nodes[i].vertices:
            if v < s.n or v == root_marker:
                continue
            j = s.node_of[s.partner[v]]
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return seen


def subtree_expansion(s: SplitTree, root_marker: int) -> Graph:
    """Graph represented by root_marker's side of the tree, the marker
    itself included as a vertex of color 1."""
    allowed = _side_nodes(s, root_marker)
    originals = sorted(v for i in allowed for v in s.nodes[i].vertices
                       if v < s.n)
    verts = originals + [root_marker]
    idx = {v: j for j, v in enumerate(verts)}
    eset = set()
    for v in verts:
        for w in reconstructed_neighbors(s, v, allowed):
            if w in idx:
                a, b = idx[v], idx[w]
                eset.add((min(a, b), max(a, b)))
    colors = [0] * len(originals) + [1]
    return Graph(len(verts), sorted(eset), colors)


def split_tree_tagged_graph(s: SplitTree) -> Graph:
    """Plain graph carrying the full tree structure: originals color 0,
    markers color 1, and a color-2 midpoint on every tree edge."""
    edges = [(v, w) for v in range(s.total) for w in s.adj[v] if v < w]
    colors = [0] * s.n + [1] * (s.total - s.n)
    nxt = s.total
    for a, b in s.tree_edges():
        edges += [(a, nxt), (nxt, b)]
        colors.append(2)
        nxt += 1
    return Graph(nxt, edges, colors)


def split_tree_to_dot(s: SplitTree) -> str:
    out = ["graph splittree {", "  node [style=filled];"]
    for i, nd in enumerate(s.nodes):
        out.append(f"  subgraph cluster_{i} {{")
        out.append(f'    label="{nd.kind}";')
        for v in nd.vertices:
            fill = "white" if v >= s.n else "lightgrey"
            shape = "square" if v >= s.n else "circle"
            out.append(f'    v{v} [label="{v}", fillcolor={fill}, '
                       f'shape={shape}];')
        for v in nd.vertices:
            for w in s.adj[v]:
                if v < w:
                    out.append(f"    v{v} -- v{w};")
        out.append("  }")
    for a, b in s.tree_edges():
        out.append(f"  v{a} -- v{b} [style=dashed];")
    out.append("}")
    return "\n".join(out)


# ----------------------------------------------------------------------
# group assembly

def _class_term(cls: GroupClass) -> Term:
    if cls.kind == "trivial":
        return TRIVIAL
    if cls.kind == "cyclic":
        return normalize(Cyc(cls.param))
    if cls.kind == "dihedral":
        return normalize(Dih(cls.param))
    if cls.kind == "klein4":
        return klein()
    raise ValueError(
        f"group of order {cls.param} is outside the dihedral family")


class _Analysis:
    """Memoized bottom-up assembly over a split tree."""

    def __init__(self, s: SplitTree, cap: int):
        self.s = s
        self.cap = cap
        self._expansion: dict[int, Graph] = {}
        self._classes: dict[tuple[int, int | None], list[list[int]]] = {}
        self._terms: dict[tuple[int, int | None], Term] = {}

    def expansion(self, root_marker: int) -> Graph:
        g = self._expansion.get(root_marker)
        if g is None:
            g = subtree_expansion(self.s, root_marker)
            self._expansion[root_marker] = g
        return g

    def child_entries(self, node_idx: int, root_marker: int | None) -> list[int]:
        s = self.s
        return [s.partner[q] for q in s.nodes[node_idx].vertices
                if q >= s.n and q != root_marker]

    def classes(self, node_idx: int, root_marker: int | None) -> list[list[int]]:
        """Child entry markers grouped by subtree isomorphism."""
        key = (node_idx, root_marker)
        got = self._classes.get(key)
        if got is not None:
            return got
        classes: list[list[int]] = []
        for e in self.child_entries(node_idx, root_marker):
            ge = self.expansion(e)
            for cls in classes:
                gr = self.expansion(cls[0])
                if ge.n == gr.n and ge.m == gr.m and isomorphic_graphs(
                        ge, gr, cap=max(self.cap, ge.n)):
                    cls.append(e)
                    break
            else:
                classes.append([e])
        self._classes[key] = classes
        return classes

    def colored_node_graph(self, node_idx: int,
                           root_marker: int | None) -> tuple[Graph, list[int]]:
        """Node graph with the root marker colored 1, originals 0, and the
        other markers colored by subtree class."""
        s = self.s
        lg, vs = s.node_graph(node_idx)
        color_of: dict[int, int] = {}
        for ci, cls in enumerate(self.classes(node_idx, root_marker)):
            for e in cls:
                color_of[s.partner[e]] = 2 + ci
        colors = [1 if v == root_marker else color_of.get(v, 0) for v in vs]
        return lg.with_colors(colors), vs

    def term(self, node_idx: int, root_marker: int | None) -> Term:
        key = (node_idx, root_marker)
        got = self._terms.get(key)
        if got is not None:
            return got
        s = self.s
        node = s.nodes[node_idx]
        child_term = {e: self.term(s.node_of[e], e)
                      for e in self.child_entries(node_idx, root_marker)}
        classes = self.classes(node_idx, root_marker)
        for cls in classes:
            assert len({child_term[e] for e in cls}) == 1

        if node.kind == PRIME:
            t = self._prime_term(node_idx, root_marker, child_term)
        else:
            t = self._degenerate_term(node_idx, root_marker, child_term,
                                      classes)
        self._terms[key] = t
        return t

    def _degenerate_term(self, node_idx: int, root_marker: int | None,
                         child_term: dict[int, Term],
                         classes: list[list[int]]) -> Term:
        s = self.s
        node = s.nodes[node_idx]
        center = None
        if node.kind == STAR:
            lg, vs = s.node_graph(node_idx)
            center = vs[star_center(lg)]
        parts = []
        for cls in classes:
            movable = [e for e in cls if s.partner[e] != center]
            if movable:
                parts.append((child_term[movable[0]], len(movable)))
        free_originals = sum(1 for v in node.vertices
                             if v < s.n and v != center)
        if free_originals:
            parts.append((TRIVIAL, free_originals))
        body = jordan_assemble(parts)
        if center is not None and center != root_marker and center >= s.n:
            return direct(child_term[s.partner[center]], body)
        return body

    def _prime_term(self, node_idx: int, root_marker: int | None,
                    child_term: dict[int, Term]) -> Term:
        s = self.s
        lg, vs = self.colored_node_graph(node_idx, root_marker)
        grp = automorphism_group(lg, cap=self.cap)
        top = _class_term(classify_small_group(grp))
        factors = []
        for orb in grp.orbits():
            gverts = [vs[i] for i in orb]
            if root_marker in gverts or any(v < s.n for v in gverts):
                continue
            terms = {child_term[s.partner[q]] for q in gverts}
            assert len(terms) == 1
            factors.append((terms.pop(), len(gverts)))
        return semidirect(factors, top)


def node_stabilizer_group(s: SplitTree, node: int,
                          root_marker: int | None,
                          cap: int = DEFAULT_CAP) -> tuple[PermGroup, Term]:
    """Color-preserving automorphism group of the node graph with the
    root marker pinned (vertices in sorted-id order), plus the symbolic
    group of the whole subtree hanging off that root."""
    ana = _Analysis(s, cap)
    lg, _ = ana.colored_node_graph(node, root_marker)
    return automorphism_group(lg, cap=cap), ana.term(node, root_marker)


def _node_tree_adjacency(s: SplitTree) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {i: set() for i in range(len(s.nodes))}
    for a, b in s.tree_edges():
        i, j = s.node_of[a], s.node_of[b]
        adj[i].add(j)
        adj[j].add(i)
    return adj


def split_tree_center(s: SplitTree) -> tuple[int, ...]:
    """Center of the contracted node tree: one node index, or two when
    the center falls on a tree edge."""
    adj = _node_tree_adjacency(s)
    while len(adj) > 2:
        leaves = [i for i, ns in adj.items() if len(ns) <= 1]
        for leaf in leaves:
            for x in adj[leaf]:
                adj[x].discard(leaf)
            del adj[leaf]
    return tuple(sorted(adj))


def _insert_center_markers(s: SplitTree, i: int, j: int) -> tuple[SplitTree, int]:
    """Drop a two-marker clique node into the middle of the tree edge
    joining nodes i and j, keeping path alternation intact."""
    m1 = next(m for m in s.markers_of(i)
              if s.node_of[s.partner[m]] == j)
    m2 = s.partner[m1]
    x, y = s.total, s.total + 1
    partner = dict(s.partner)
    partner[m1] = x
    partner[x] = m1
    partner[m2] = y
    partner[y] = m2
    adj = dict(s.adj)
    adj[x] = frozenset({y})
    adj[y] = frozenset({x})
    nodes = list(s.nodes) + [SplitNode((x, y), CLIQUE)]
    node_of = dict(s.node_of)
    node_of[x] = node_of[y] = len(s.nodes)
    return (SplitTree(s.n, s.total + 2, nodes, node_of, adj, partner),
            len(nodes) - 1)


def circle_group(g: Graph, cap: int = DEFAULT_CAP) -> Term:
    """Symbolic automorphism group of a connected circle graph via its
    split tree.  The caller vouches for circle-ness; a prime node whose
    group falls outside the dihedral family raises ValueError."""
    if not is_connected(g):
        raise ValueError("circle analysis needs a connected graph")
    if g.n == 1:
        return TRIVIAL
    if g.n <= 3:
        return _class_term(classify_small_group(automorphism_group(g, cap=cap)))
    s = build_split_tree(g)
    center = split_tree_center(s)
    if len(center) == 2:
        s, ci = _insert_center_markers(s, *center)
    else:
        ci = center[0]
    return _Analysis(s, cap).term(ci, None)


def circle_group_components(g: Graph, cap: int = DEFAULT_CAP) -> Term:
    """Disconnected extension: components grouped by isomorphism, then a
    wreath with the full symmetric group per class."""
    comps = connected_components(g)
    subs = [induced_subgraph(g, c)[0] for c in comps]
    classes: list[list[int]] = []
    for k, sub in enumerate(subs):
        for cls in classes:
            rep = subs[cls[0]]
            if sub.n == rep.n and sub.m == rep.m and isomorphic_graphs(
                    sub, rep, cap=max(cap, sub.n)):
                cls.append(k)
                break
        else:
            classes.append([k])
    return jordan_assemble(
        [(circle_group(subs[cls[0]], cap=cap), len(cls)) for cls in classes])


def validate_circle_prime_node(node_graph: Graph,
                               cap: int = DEFAULT_CAP) -> bool:
    """Sanity gate for prime pieces: the full group must sit in the
    dihedral family and every vertex stabilizer must have order at most 4
    and exponent at most 2."""
    grp = automorphism_group(node_graph, cap=max(cap, node_graph.n))
    if classify_small_group(grp).kind not in (
            "trivial", "cyclic", "dihedral", "klein4"):
        return False
    for v in range(node_graph.n):
        stab = point_stabilizer(grp, v)
        if stab.order() > 4:
            return False
        if any(perm_order(p) > 2 for p in stab.elements(10)):
            return False
    return True
