"""Automorphism groups of forests.

Rooted subtree groups assemble bottom-up: children of equal canonical
code form one symmetric block, so the group at a vertex is the direct
product over code classes of wreath products with symmetric tops.
Unrooted trees reduce to the rooted case at the center; a central edge
either swaps two isomorphic halves or fixes both.
"""

from __future__ import annotations

from .graph import Graph, connected_components, is_forest
from .groups import Cyc, Sym, Term, TRIVIAL, direct, jordan_assemble, wreath


def tree_center(g: Graph, comp: list[int]) -> list[int]:
    """Center (one or two vertices) of the tree induced on comp."""
    if len(comp) == 1:
        return [comp[0]]
    comp_set = set(comp)
    deg = {v: sum(1 for w in g.neighbors(v) if w in comp_set) for v in comp}
    alive = set(comp)
    layer = [v for v in comp if deg[v] <= 1]
    while len(alive) > 2:
        nxt = []
        for v in layer:
            alive.discard(v)
        for v in layer:
            for w in g.neighbors(v):
                if w in alive:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        layer = nxt
    return sorted(alive)


def rooted_code(g: Graph, root: int, parent: int | None = None) -> str:
    """AHU canonical string of the subtree hanging at root."""
    kids = [w for w in g.neighbors(root) if w != parent]
    return "(" + "".join(sorted(rooted_code(g, w, root) for w in kids)) + ")"


def rooted_group(g: Graph, root: int, parent: int | None = None) -> Term:
    """Automorphism group of the tree rooted at root (root held fixed)."""
    kids = [w for w in g.neighbors(root) if w != parent]
    by_code: dict[str, list[int]] = {}
    for w in kids:
        by_code.setdefault(rooted_code(g, w, root), []).append(w)
    classes = [(rooted_group(g, members[0], root), len(members))
               for code, members in sorted(by_code.items())]
    return jordan_assemble(classes)


def component_code(g: Graph, comp: list[int]) -> str:
    center = tree_center(g, comp)
    if len(center) == 1:
        return "V" + rooted_code(g, center[0])
    a, b = center
    return "E" + "".join(sorted([rooted_code(g, a, b), rooted_code(g, b, a)]))


def component_group(g: Graph, comp: list[int]) -> Term:
    center = tree_center(g, comp)
    if len(center) == 1:
        return rooted_group(g, center[0])
    a, b = center
    code_a = rooted_code(g, a, b)
    code_b = rooted_code(g, b, a)
    ga = rooted_group(g, a, b)
    gb = rooted_group(g, b, a)
    if code_a == code_b:
        return wreath(ga, Sym(2))
    return direct(ga, gb)


def tree_group(g: Graph) -> Term | None:
    """Symbolic automorphism group of a forest, None for non-forests."""
    if not is_forest(g):
        return None
    if g.n == 0:
        return TRIVIAL
    comps = connected_components(g)
    by_code: dict[str, list[list[int]]] = {}
    for comp in comps:
        by_code.setdefault(component_code(g, comp), []).append(comp)
    classes = [(component_group(g, members[0]), len(members))
               for code, members in sorted(by_code.items())]
    return jordan_assemble(classes)
