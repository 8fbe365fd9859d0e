"""Brute-force permutation-group machinery used as ground truth.

The search enumerates a strong generating set for the (color-preserving)
automorphism group of a graph by backtracking over partial vertex maps.
Orders are exact big integers via a Schreier-Sims transversal chain.

Everything here is deliberately independent of the symbolic pipeline so
the two can check each other.
"""

from __future__ import annotations

import os
from typing import Iterable, NamedTuple

from .graph import Graph

DEFAULT_CAP = 16


class OracleCapError(RuntimeError):
    """Graph too large for the brute-force oracle at the given cap."""


Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """Apply q first, then p."""
    return tuple(p[q[i]] for i in range(len(p)))


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def perm_order(p: Perm) -> int:
    seen = [False] * len(p)
    from math import lcm
    out = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        ln, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            ln += 1
        out = lcm(out, ln)
    return out


def apply_perm(g: Graph, p: Perm) -> Graph:
    """Relabel g by p (vertex v becomes p[v])."""
    edges = [(p[u], p[v]) for u, v in g.edges()]
    colors = [0] * g.n
    for v in range(g.n):
        colors[p[v]] = g.colors[v]
    return Graph(g.n, edges, colors)


# ----------------------------------------------------------------------
# refinement invariants

def _wl_invariants(g: Graph, rounds: int = 3) -> list[int]:
    """Cheap Weisfeiler-Leman style vertex invariants for pruning."""
    inv = [hash((g.colors[v], g.degree(v))) for v in range(g.n)]
    for _ in range(rounds):
        nxt = []
        for v in range(g.n):
            sig = sorted(inv[w] for w in g.neighbors(v))
            nxt.append(hash((inv[v], tuple(sig))))
        inv = nxt
    return inv


# ----------------------------------------------------------------------
# Schreier-Sims chain for exact orders and stabilizers

class _Chain:
    """One level of a stabilizer chain: transversal at `point`."""

    def __init__(self, point: int, n: int, base_hint: tuple[int, ...]):
        self.point = point
        self.n = n
        self.base_hint = base_hint
        self.gens: list[Perm] = []
        self.transversal: dict[int, Perm] = {point: identity(n)}
        self.down: _Chain | None = None

    def _next_point(self, gens: list[Perm]) -> int | None:
        for b in self.base_hint:
            if any(p[b] != b for p in gens):
                return b
        for b in range(self.n):
            if any(p[b] != b for p in gens):
                return b
        return None

    def all_gens(self) -> list[Perm]:
        """Generators of this level's group: own plus every deeper level's
        (deeper ones fix earlier base points yet can still grow orbits)."""
        out = list(self.gens)
        if self.down is not None:
            out.extend(self.down.all_gens())
        return out

    def sift(self, p: Perm) -> Perm | None:
        """Strip p through the chain; None means p is in the group."""
        level: _Chain | None = self
        while level is not None:
            img = p[level.point]
            rep = level.transversal.get(img)
            if rep is None:
                return p
            p = compose(inverse(rep), p)
            level = level.down
        return p if any(p[i] != i for i in range(len(p))) else None

    def add(self, p: Perm) -> None:
        residue = self.sift(p)
        if residue is None:
            return
        path: list[_Chain] = []
        level = self
        while residue[level.point] == level.point:
            path.append(level)
            if level.down is None:
                nxt = level._next_point([residue])
                assert nxt is not None
                level.down = _Chain(nxt, self.n, self.base_hint)
            level = level.down
        level.gens.append(residue)
        level._rebuild_orbit()
        for anc in reversed(path):
            anc._rebuild_orbit()

    def _rebuild_orbit(self) -> None:
        while True:
            gens = self.all_gens()
            frontier = list(self.transversal)
            while frontier:
                nf = []
                for x in frontier:
                    rep = self.transversal[x]
                    for gen in gens:
                        y = gen[x]
                        if y not in self.transversal:
                            self.transversal[y] = compose(gen, rep)
                            nf.append(y)
                frontier = nf
            # every Schreier generator must sift to identity below
            dirty = False
            for x in list(self.transversal):
                rep = self.transversal[x]
                for gen in gens:
                    schreier = compose(inverse(self.transversal[gen[x]]),
                                       compose(gen, rep))
                    if all(schreier[i] == i for i in range(self.n)):
                        continue
                    if self.down is None:
                        nxt = self._next_point([schreier])
                        self.down = _Chain(nxt, self.n, self.base_hint)
                    if self.down.sift(schreier) is not None:
                        self.down.add(schreier)
                        dirty = True
            if not dirty:
                return

    def order(self) -> int:
        out = len(self.transversal)
        if self.down is not None:
            out *= self.down.order()
        return out


class PermGroup:
    """Permutation group on 0..n-1 given by generators."""

    def __init__(self, n: int, gens: Iterable[Perm] = (),
                 base_hint: tuple[int, ...] = ()):
        self.n = n
        self.gens: list[Perm] = []
        self._chain: _Chain | None = None
        self._base_hint = base_hint
        for p in gens:
            self.add_generator(p)

    def add_generator(self, p: Perm) -> None:
        if all(p[i] == i for i in range(self.n)):
            return
        if self._chain is None:
            first = next((b for b in self._base_hint if p[b] != b), None)
            if first is None:
                first = next(i for i in range(self.n) if p[i] != i)
            self._chain = _Chain(first, self.n, self._base_hint)
        if self._chain.sift(p) is not None:
            self.gens.append(p)
            self._chain.add(p)

    def order(self) -> int:
        return 1 if self._chain is None else self._chain.order()

    def contains(self, p: Perm) -> bool:
        if all(p[i] == i for i in range(self.n)):
            return True
        return self._chain is not None and self._chain.sift(p) is None

    def orbits(self) -> list[list[int]]:
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for p in self.gens:
            for i in range(self.n):
                a, b = find(i), find(p[i])
                if a != b:
                    parent[a] = b
        groups: dict[int, list[int]] = {}
        for i in range(self.n):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())

    def elements(self, limit: int = 200000) -> list[Perm]:
        if self.order() > limit:
            raise OracleCapError(f"group order {self.order()} over limit")
        out = {identity(self.n)}
        frontier = [identity(self.n)]
        while frontier:
            nf = []
            for e in frontier:
                for gen in self.gens:
                    c = compose(gen, e)
                    if c not in out:
                        out.add(c)
                        nf.append(c)
            frontier = nf
        return sorted(out)


# ----------------------------------------------------------------------
# automorphism search

def _search_map(g: Graph, g2: Graph, fixed: list[int], src: int, dst: int,
                inv1: list[int], inv2: list[int]) -> Perm | None:
    """Extend the partial map fixed[i] (i < len(fixed)) with src->dst to a
    full isomorphism g -> g2, or report None."""
    n = g.n
    image = [-1] * n
    used = [False] * n
    assigned_mask = 0
    for i, t in enumerate(fixed):
        image[i] = t
        used[t] = True
        assigned_mask |= 1 << t
    if image[src] != -1 or used[dst]:
        return None

    def assign_ok(s: int, t: int) -> bool:
        if inv1[s] != inv2[t] or g.colors[s] != g2.colors[t]:
            return False
        req = 0
        for w in g.neighbors(s):
            if image[w] != -1:
                req |= 1 << image[w]
        return (g2.mask(t) & assigned_mask) == req

    if not assign_ok(src, dst):
        return None
    image[src] = dst
    used[dst] = True
    assigned_mask |= 1 << dst

    order = [v for v in range(n) if image[v] == -1]

    def pick_next(remaining: list[int]) -> int:
        best, best_score = remaining[0], -1
        for s in remaining:
            score = sum(1 for w in g.neighbors(s) if image[w] != -1)
            if score > best_score:
                best, best_score = s, score
        return best

    def backtrack(remaining: list[int]) -> bool:
        nonlocal assigned_mask
        if not remaining:
            return True
        s = pick_next(remaining)
        rest = [x for x in remaining if x != s]
        for t in range(n):
            if used[t]:
                continue
            if not assign_ok(s, t):
                continue
            image[s] = t
            used[t] = True
            assigned_mask |= 1 << t
            if backtrack(rest):
                return True
            image[s] = -1
            used[t] = False
            assigned_mask &= ~(1 << t)
        return False

    if backtrack(order):
        return tuple(image)
    return None


def automorphism_group(g: Graph, cap: int = DEFAULT_CAP) -> PermGroup:
    """Color-preserving automorphism group, exact, via backtracking."""
    if g.n > cap:
        raise OracleCapError(f"n={g.n} exceeds oracle cap {cap}")
    inv = _wl_invariants(g)
    group = PermGroup(g.n, base_hint=tuple(range(g.n)))
    for i in range(g.n):
        fixed = list(range(i))
        for v in range(i + 1, g.n):
            if inv[i] != inv[v] or g.colors[i] != g.colors[v]:
                continue
            p = _search_map(g, g, fixed, i, v, inv, inv)
            if p is not None:
                group.add_generator(p)
    return group


def point_stabilizer(group: PermGroup, v: int) -> PermGroup:
    """Subgroup fixing vertex v."""
    chain = _Chain(v, group.n, (v,) + tuple(range(group.n)))
    for p in group.gens:
        chain.add(p)
    stab = PermGroup(group.n)
    level = chain.down
    # generators below the top level all fix v
    while level is not None:
        for p in level.gens:
            stab.add_generator(p)
        level = level.down
    # top-level gens that happen to fix v too
    for p in group.gens:
        if p[v] == v:
            stab.add_generator(p)
    return stab


class GroupClass(NamedTuple):
    kind: str   # trivial | cyclic | dihedral | klein4 | symmetric | other
    param: int


def classify_small_group(group: PermGroup, limit: int = 20000) -> GroupClass:
    """Identify small abstract group types by element inspection."""
    order = group.order()
    if order == 1:
        return GroupClass("trivial", 1)
    els = group.elements(limit)
    max_ord = max(perm_order(p) for p in els)
    if max_ord == order:
        return GroupClass("cyclic", order)
    if order == 4 and max_ord == 2:
        return GroupClass("klein4", 4)
    if order % 2 == 0 and max_ord == order // 2:
        k = order // 2
        for r in els:
            if perm_order(r) != k:
                continue
            for s in els:
                if perm_order(s) != 2:
                    continue
                if compose(s, compose(r, s)) == inverse(r):
                    return GroupClass("dihedral", k)
            break  # any one k-cycle suffices; all are conjugate targets
    return GroupClass("other", order)


def isomorphic_graphs(g: Graph, h: Graph, cap: int = DEFAULT_CAP) -> bool:
    """Color-respecting isomorphism test by backtracking."""
    if g.n != h.n or g.m != h.m:
        return False
    if sorted(g.colors) != sorted(h.colors):
        return False
    if g.n > cap:
        raise OracleCapError(f"n={g.n} exceeds oracle cap {cap}")
    if g.n == 0:
        return True
    inv1 = _wl_invariants(g)
    inv2 = _wl_invariants(h)
    if sorted(inv1) != sorted(inv2):
        return False
    for t in range(h.n):
        p = _search_map(g, h, [], 0, t, inv1, inv2)
        if p is not None:
            return True
    return False


def oracle_cap_from_env() -> int:
    raw = os.environ.get("AUTG_ORACLE_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_CAP
