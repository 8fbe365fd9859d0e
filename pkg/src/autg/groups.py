"""Symbolic group terms with exact orders.

Terms describe abstract finite groups built from symmetric, cyclic and
dihedral atoms by direct products, wreath products with a naturally
acting top, and coordinate-permuting semidirect products.  `normalize`
rewrites a term to a canonical representative so structural equality
matches abstract isomorphism for the shapes this package produces.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, prod


@dataclass(frozen=True)
class Term:
    def order(self) -> int:
        return order(self)

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Trivial(Term):
    pass


@dataclass(frozen=True)
class Sym(Term):
    k: int


@dataclass(frozen=True)
class Cyc(Term):
    k: int


@dataclass(frozen=True)
class Dih(Term):
    k: int


@dataclass(frozen=True)
class Direct(Term):
    members: tuple[Term, ...]


@dataclass(frozen=True)
class Wreath(Term):
    """base ^ deg(top) extended by top permuting the copies naturally."""
    base: Term
    top: Term


@dataclass(frozen=True)
class Semidirect(Term):
    """(f1^m1 x f2^m2 x ...) extended by top; top permutes the mi copies
    of fi along one of its orbits."""
    factors: tuple[tuple[Term, int], ...]
    top: Term


TRIVIAL = Trivial()


def klein() -> Term:
    return Direct((Cyc(2), Cyc(2)))


def is_klein(t: Term) -> bool:
    return t == klein()


# ----------------------------------------------------------------------
# orders

def _degree(top: Term) -> int:
    """Number of points the wreath top permutes in its natural action."""
    if isinstance(top, (Sym, Cyc, Dih)):
        return top.k
    if isinstance(top, Trivial):
        return 1
    raise ValueError(f"no natural degree for {top!r}")


def order(t: Term) -> int:
    if isinstance(t, Trivial):
        return 1
    if isinstance(t, Sym):
        return factorial(t.k)
    if isinstance(t, Cyc):
        return t.k
    if isinstance(t, Dih):
        return 2 * t.k
    if isinstance(t, Direct):
        return prod(order(m) for m in t.members)
    if isinstance(t, Wreath):
        return order(t.base) ** _degree(t.top) * order(t.top)
    if isinstance(t, Semidirect):
        return prod(order(f) ** m for f, m in t.factors) * order(t.top)
    raise TypeError(t)


# ----------------------------------------------------------------------
# canonical ordering key

def term_key(t: Term):
    if isinstance(t, Trivial):
        return (0,)
    if isinstance(t, Cyc):
        return (1, t.k)
    if isinstance(t, Sym):
        return (2, t.k)
    if isinstance(t, Dih):
        return (3, t.k)
    if isinstance(t, Direct):
        return (4, tuple(term_key(m) for m in t.members))
    if isinstance(t, Wreath):
        return (5, term_key(t.base), term_key(t.top))
    if isinstance(t, Semidirect):
        return (6, tuple((term_key(f), m) for f, m in t.factors),
                term_key(t.top))
    raise TypeError(t)


# ----------------------------------------------------------------------
# normalization

def normalize(t: Term) -> Term:
    if isinstance(t, Trivial):
        return TRIVIAL
    if isinstance(t, Sym):
        if t.k <= 1:
            return TRIVIAL
        if t.k == 2:
            return Cyc(2)
        return t
    if isinstance(t, Cyc):
        return TRIVIAL if t.k <= 1 else t
    if isinstance(t, Dih):
        if t.k <= 1:
            return Cyc(2)
        if t.k == 2:
            return klein()
        if t.k == 3:
            return Sym(3)
        return t
    if isinstance(t, Direct):
        flat: list[Term] = []
        for m in t.members:
            nm = normalize(m)
            if isinstance(nm, Trivial):
                continue
            if isinstance(nm, Direct):
                flat.extend(nm.members)
            else:
                flat.append(nm)
        if not flat:
            return TRIVIAL
        if len(flat) == 1:
            return flat[0]
        return Direct(tuple(sorted(flat, key=term_key)))
    if isinstance(t, Wreath):
        base = normalize(t.base)
        top = normalize(t.top)
        if isinstance(top, Trivial):
            return base
        if isinstance(base, Trivial):
            return top
        return Wreath(base, top)
    if isinstance(t, Semidirect):
        top = normalize(t.top)
        kept: list[tuple[Term, int]] = []
        singles: list[Term] = []
        for f, m in t.factors:
            nf = normalize(f)
            if isinstance(nf, Trivial):
                continue
            if m == 1:
                singles.append(nf)
            else:
                kept.append((nf, m))
        if isinstance(top, Trivial):
            return normalize(Direct(tuple(singles)
                                    + tuple(Direct((f,) * m) for f, m in kept)))
        if not kept:
            return normalize(Direct(tuple(singles) + (top,)))
        # top acting cyclically with one full orbit per factor is a wreath
        if isinstance(top, Cyc) and all(m == top.k for _, m in kept):
            merged = Wreath(normalize(Direct(tuple(f for f, _ in kept))), top)
            return normalize(Direct(tuple(singles) + (merged,)))
        kept.sort(key=lambda fm: (-fm[1], term_key(fm[0])))
        sd = Semidirect(tuple(kept), top)
        return normalize(Direct(tuple(singles) + (sd,))) if singles else sd
    raise TypeError(t)


# ----------------------------------------------------------------------
# assembly helpers

def direct(*members: Term) -> Term:
    return normalize(Direct(tuple(members)))


def wreath(base: Term, top: Term) -> Term:
    return normalize(Wreath(base, top))


def semidirect(factors, top: Term) -> Term:
    return normalize(Semidirect(tuple(factors), top))


def jordan_assemble(classes) -> Term:
    """Group of a disjoint union from (group, count) per isomorphism
    class: the direct product of count-fold wreaths with full symmetric
    tops."""
    return direct(*[wreath(t, Sym(c)) for t, c in classes])


def in_tree_class(t: Term) -> bool:
    """Membership in the closure of the trivial group under direct
    products and wreath products with full symmetric tops."""
    t = normalize(t)
    if isinstance(t, Trivial):
        return True
    if isinstance(t, Cyc):
        return t.k == 2
    if isinstance(t, Sym):
        return True
    if isinstance(t, Direct):
        return all(in_tree_class(m) for m in t.members)
    if isinstance(t, Wreath):
        top_ok = (isinstance(t.top, Sym)
                  or (isinstance(t.top, Cyc) and t.top.k == 2))
        return top_ok and in_tree_class(t.base)
    return False


# ----------------------------------------------------------------------
# rendering

def _paren(t: Term, s: str) -> str:
    if isinstance(t, (Direct, Wreath, Semidirect)):
        return f"({s})"
    return s


def render(t: Term) -> str:
    if isinstance(t, Trivial):
        return "1"
    if isinstance(t, Sym):
        return f"Sym({t.k})"
    if isinstance(t, Cyc):
        return f"Cyc({t.k})"
    if isinstance(t, Dih):
        return f"Dih({t.k})"
    if isinstance(t, Direct):
        return " x ".join(_paren(m, render(m)) for m in t.members)
    if isinstance(t, Wreath):
        return (f"{_paren(t.base, render(t.base))} wr "
                f"{_paren(t.top, render(t.top))}")
    if isinstance(t, Semidirect):
        parts = []
        for f, m in t.factors:
            fs = _paren(f, render(f))
            parts.append(fs if m == 1 else f"{fs}^{m}")
        return f"({' x '.join(parts)}) : {_paren(t.top, render(t.top))}"
    raise TypeError(t)


def to_json(t: Term):
    if isinstance(t, Trivial):
        return {"kind": "trivial"}
    if isinstance(t, Sym):
        return {"kind": "sym", "k": t.k}
    if isinstance(t, Cyc):
        return {"kind": "cyc", "k": t.k}
    if isinstance(t, Dih):
        return {"kind": "dih", "k": t.k}
    if isinstance(t, Direct):
        return {"kind": "direct", "members": [to_json(m) for m in t.members]}
    if isinstance(t, Wreath):
        return {"kind": "wreath", "base": to_json(t.base),
                "top": to_json(t.top)}
    if isinstance(t, Semidirect):
        return {"kind": "semidirect",
                "factors": [{"factor": to_json(f), "mult": m}
                            for f, m in t.factors],
                "top": to_json(t.top)}
    raise TypeError(t)
