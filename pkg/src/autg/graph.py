"""Core undirected graph type, edge-list parsing, and structural queries.

Vertices are dense integers 0..n-1.  Graphs are immutable after
construction; every module in the package shares this one type.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


class EdgeListParseError(ValueError):
    """Malformed edge-list input.  `line` is the 1-based offending line."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class Graph:
    """Simple undirected graph with optional small-integer vertex colors.

    The adjacency relation is symmetric and irreflexive.  Colors default
    to 0 everywhere and are respected by the automorphism machinery.
    """

    __slots__ = ("n", "colors", "_adj", "_masks")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (),
                 colors: Iterable[int] | None = None):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__  # slots; plain assignment below
        self.n = n
        self._adj = tuple(frozenset(s) for s in adj)
        self._masks = tuple(sum(1 << w for w in s) for s in self._adj)
        if colors is None:
            self.colors = (0,) * n
        else:
            cols = tuple(int(c) for c in colors)
            if len(cols) != n:
                raise ValueError("colors length mismatch")
            self.colors = cols

    # ------------------------------------------------------------------
    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def mask(self, v: int) -> int:
        """Adjacency row of v as a bitmask."""
        return self._masks[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n)
                for v in sorted(self._adj[u]) if u < v]

    @property
    def m(self) -> int:
        return sum(len(a) for a in self._adj) // 2

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return self._adj[v] | {v}

    def with_colors(self, colors: Iterable[int]) -> "Graph":
        return Graph(self.n, self.edges(), colors)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Graph) and self.n == other.n
                and self._adj == other._adj and self.colors == other.colors)

    def __hash__(self) -> int:
        return hash((self.n, self._adj, self.colors))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class TwinPartition:
    """Partition of the vertex set into twin classes.

    A class is closed (clique, N[x] = N[y]) or open (independent,
    N(x) = N(y)); singletons count as both.
    """

    classes: tuple[tuple[int, ...], ...]

    def class_of(self, v: int) -> tuple[int, ...]:
        for c in self.classes:
            if v in c:
                return c
        raise KeyError(v)


# ----------------------------------------------------------------------
# parsing / serialization

def parse_edge_list(source) -> Graph:
    """Parse the plain edge-list format: a header line "n m" followed by
    m lines "u v".  Lines starting with '#' are ignored, CRLF is fine.
    """
    text = source.read() if hasattr(source, "read") else source
    n = m = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    count = 0
    last_line = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        last_line = line_no
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2:
                raise EdgeListParseError("header must be 'n m'", line_no)
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise EdgeListParseError("header must hold two integers", line_no)
            if n < 0 or m < 0:
                raise EdgeListParseError("negative count in header", line_no)
            continue
        if len(parts) != 2:
            raise EdgeListParseError("edge line must be 'u v'", line_no)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError("edge line must hold two integers", line_no)
        if count >= m:
            raise EdgeListParseError(f"more than {m} edges", line_no)
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeListParseError(f"vertex out of range 0..{n - 1}", line_no)
        if u == v:
            raise EdgeListParseError(f"self-loop at {u}", line_no)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise EdgeListParseError(f"duplicate edge {key[0]} {key[1]}", line_no)
        seen.add(key)
        edges.append(key)
        count += 1
    if n is None:
        raise EdgeListParseError("missing header", last_line + 1)
    if count != m:
        raise EdgeListParseError(f"expected {m} edges, found {count}", last_line + 1)
    return Graph(n, edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def to_dot(g: Graph, name: str = "G") -> str:
    out = [f"graph {name} {{"]
    for v in range(g.n):
        label = f"v{v}"
        out.append(f'  {v} [label="{label}"];')
    for u, v in g.edges():
        out.append(f"  {u} -- {v};")
    out.append("}")
    return "\n".join(out) + "\n"


# ----------------------------------------------------------------------
# structural queries

def complement(g: Graph) -> Graph:
    edges = [(u, v) for u in range(g.n) for v in range(u + 1, g.n)
             if not g.has_edge(u, v)]
    return Graph(g.n, edges, g.colors)


def connected_components(g: Graph) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by least vertex."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in g.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph plus the old->new vertex map."""
    vs = sorted(set(vertices))
    remap = {v: i for i, v in enumerate(vs)}
    edges = [(remap[u], remap[v]) for u in vs for v in g.neighbors(u)
             if v in remap and u < v]
    colors = [g.colors[v] for v in vs]
    return Graph(len(vs), edges, colors), remap


def twin_partition(g: Graph) -> TwinPartition:
    """Group vertices by equal closed or open neighborhoods."""
    classes: list[list[int]] = []
    assigned = [False] * g.n
    for v in range(g.n):
        if assigned[v]:
            continue
        cls = [v]
        assigned[v] = True
        for w in range(v + 1, g.n):
            if assigned[w]:
                continue
            closed = g.closed_neighborhood(v) == g.closed_neighborhood(w)
            open_ = g.neighbors(v) == g.neighbors(w)
            if closed or open_:
                cls.append(w)
                assigned[w] = True
        classes.append(cls)
    return TwinPartition(tuple(tuple(c) for c in classes))


def is_module(g: Graph, mod: Iterable[int]) -> bool:
    """True when every outside vertex sees all of `mod` or none of it."""
    ms = set(mod)
    if not ms:
        raise ValueError("module must be non-empty")
    for w in range(g.n):
        if w in ms:
            continue
        inter = len(g.neighbors(w) & ms)
        if inter not in (0, len(ms)):
            return False
    return True


def is_complete(g: Graph) -> bool:
    return all(g.degree(v) == g.n - 1 for v in range(g.n))


def is_edgeless(g: Graph) -> bool:
    return g.m == 0


def is_clique(g: Graph, vs: Iterable[int]) -> bool:
    lst = list(vs)
    return all(g.has_edge(lst[i], lst[j])
               for i in range(len(lst)) for j in range(i + 1, len(lst)))


def star_center(g: Graph) -> int | None:
    """Center vertex if g is a star K_{1,k} with k >= 2, else None."""
    if g.n < 3 or g.m != g.n - 1:
        return None
    degs = [g.degree(v) for v in range(g.n)]
    if sorted(degs) != [1] * (g.n - 1) + [g.n - 1]:
        return None
    return degs.index(g.n - 1)


def is_cycle_graph(g: Graph) -> bool:
    return (g.n >= 3 and is_connected(g)
            and all(g.degree(v) == 2 for v in range(g.n)))


def is_forest(g: Graph) -> bool:
    return g.m == g.n - len(connected_components(g))


def is_tree(g: Graph) -> bool:
    return is_connected(g) and g.m == g.n - 1


def bipartition(g: Graph) -> tuple[set[int], set[int]] | None:
    """A 2-coloring (side containing the least vertex of each component
    goes left), or None if an odd cycle exists."""
    color: list[int | None] = [None] * g.n
    for s in range(g.n):
        if color[s] is not None:
            continue
        color[s] = 0
        queue = [s]
        while queue:
            u = queue.pop()
            for w in g.neighbors(u):
                if color[w] is None:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    side_a = {v for v in range(g.n) if color[v] == 0}
    return side_a, set(range(g.n)) - side_a
