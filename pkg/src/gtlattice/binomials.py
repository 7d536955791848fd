"""Binomials in the variables w_(r,gamma,delta) and their degree-n fibers.

A monomial in the w-variables is stored as a sorted tuple of triples (a
multiset).  Sorted tuples compare lexicographically, which is the canonical
monomial order used for every tie-break in the package.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Iterable, NamedTuple, Sequence

from .errors import DomainError, ResourceError
from .gtsystem import GtParams, Triple, enumerate_wd, in_wd, triple_to_monomial, wd_index

Monomial = tuple[Triple, ...]

#: default cap on the number of degree-n monomials a single enumeration may visit
DEFAULT_MONOMIAL_CAP = 5_000_000


class MultiDegree(NamedTuple):
    n: int
    R: int
    G: int
    D: int


def monomial(*triples) -> Monomial:
    return tuple(sorted(Triple(*t) for t in triples))


def multidegree(m: Iterable) -> MultiDegree:
    n = R = G = D = 0
    for r, g, d in m:
        n += 1
        R += r
        G += g
        D += d
    return MultiDegree(n, R, G, D)


def render_monomial(m: Monomial) -> str:
    parts = []
    for t, e in sorted(Counter(Triple(*t) for t in m).items()):
        name = f"w{t.r}{t.gamma}{t.delta}" if max(t) < 10 else f"w_{t.r}_{t.gamma}_{t.delta}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


@dataclass(frozen=True, order=True)
class SuitableBinomial:
    """w^plus - w^minus with both sides stored as sorted triple tuples."""

    plus: Monomial
    minus: Monomial

    def __post_init__(self):
        object.__setattr__(self, "plus", monomial(*self.plus))
        object.__setattr__(self, "minus", monomial(*self.minus))

    @property
    def n(self) -> int:
        return len(self.plus)

    @property
    def trivial(self) -> bool:
        return bool(set(self.plus) & set(self.minus))

    def support(self) -> set[Triple]:
        return set(self.plus) | set(self.minus)

    def negated(self) -> "SuitableBinomial":
        return SuitableBinomial(self.minus, self.plus)

    def unordered(self) -> frozenset:
        return frozenset((self.plus, self.minus))

    def __str__(self):
        return f"{render_monomial(self.plus)} - {render_monomial(self.minus)}"


def _check_triples(p: GtParams, triples: Iterable) -> None:
    for t in triples:
        if not in_wd(p, t):
            raise DomainError(f"{tuple(t)} is not in W_{p.d}")


def is_suitable(p: GtParams, plus: Sequence, minus: Sequence) -> bool:
    _check_triples(p, plus)
    _check_triples(p, minus)
    return len(plus) == len(minus) and multidegree(plus) == multidegree(minus)


def to_lattice_vector(p: GtParams, b: SuitableBinomial) -> list[int]:
    idx = wd_index(p)
    v = [0] * len(idx)
    for t in b.plus:
        v[idx[t]] += 1
    for t in b.minus:
        v[idx[t]] -= 1
    return v


def from_lattice_vector(p: GtParams, v: Sequence[int]) -> SuitableBinomial:
    wd = enumerate_wd(p)
    if len(v) != len(wd):
        raise DomainError(f"lattice vector must have length {len(wd)}")
    plus = [t for t, c in zip(wd, v) for _ in range(max(c, 0))]
    minus = [t for t, c in zip(wd, v) for _ in range(max(-c, 0))]
    return SuitableBinomial(tuple(plus), tuple(minus))


def exponent_matrix(p: GtParams) -> list[list[int]]:
    """4 x mu matrix whose columns are the x, y, z, t exponents of T_d."""
    cols = [triple_to_monomial(p, t) for t in enumerate_wd(p)]
    return [list(row) for row in zip(*cols)]


def grading_matrix(p: GtParams) -> list[list[int]]:
    """4 x mu matrix with rows (1, r, gamma, delta); same kernel as the exponent matrix."""
    wd = enumerate_wd(p)
    return [[1] * len(wd), [t.r for t in wd], [t.gamma for t in wd], [t.delta for t in wd]]


def count_monomials(p: GtParams, n: int) -> int:
    return comb(len(enumerate_wd(p)) + n - 1, n)


def enumerate_fibers(p: GtParams, n: int, cap: int = DEFAULT_MONOMIAL_CAP) -> dict[MultiDegree, list[Monomial]]:
    """All degree-n monomials grouped by multidegree.

    Keys are inserted in sorted order and each fiber lists its members in
    lexicographic order.
    """
    if n < 1:
        raise DomainError("degree must be ≥ 1")
    total = count_monomials(p, n)
    if total > cap:
        raise ResourceError(f"degree-{n} enumeration for d={p.d} visits {total} monomials (cap {cap})")
    fibers = defaultdict(list)
    for m in combinations_with_replacement(enumerate_wd(p), n):
        fibers[multidegree(m)].append(m)
    return {key: fibers[key] for key in sorted(fibers)}


def fiber_of(p: GtParams, m: Sequence) -> list[Monomial]:
    """Members of the fiber through m, found by direct search (no full enumeration)."""
    _check_triples(p, m)
    target = multidegree(m)
    wd = enumerate_wd(p)
    members = set(wd)
    out = []

    def rec(start, left, R, G, D, acc):
        if left == 1:
            t = Triple(R, G, D)
            if t in members and (not acc or t >= acc[-1]):
                out.append(tuple(acc) + (t,))
            return
        for i in range(start, len(wd)):
            t = wd[i]
            # remaining left-1 triples are >= t, so their r-sum is at least (left-1)*t.r
            if t.r * left > R:
                break
            acc.append(t)
            rec(i, left - 1, R - t.r, G - t.gamma, D - t.delta, acc)
            acc.pop()

    rec(0, target.n, target.R, target.G, target.D, [])
    return sorted(out)


def _star(fiber: list[Monomial]) -> list[SuitableBinomial]:
    root = fiber[0]
    return [SuitableBinomial(root, other) for other in fiber[1:]]


def quadric_generators(p: GtParams) -> list[SuitableBinomial]:
    """Minimal quadric generators: in every degree-2 fiber, a star rooted at
    the fiber's lex-min monomial."""
    out = []
    for fiber in enumerate_fibers(p, 2).values():
        if len(fiber) > 1:
            out.extend(_star(fiber))
    return out


def enumerate_all_suitable2(p: GtParams) -> list[SuitableBinomial]:
    """Every unordered nontrivial pair inside a degree-2 fiber."""
    out = []
    for fiber in enumerate_fibers(p, 2).values():
        out.extend(SuitableBinomial(a, b) for a, b in combinations(fiber, 2))
    return out


def m3_set(p: GtParams) -> set[Monomial]:
    """The listed family of degree-3 obstruction monomials for odd d."""
    if not p.odd:
        raise DomainError("the cubic obstruction set is defined only for odd d")
    d, k = p.d, p.k
    w000, w100, top = Triple(0, 0, 0), Triple(1, 0, 0), Triple(3, d, 0)
    out = {monomial(w000, (2, 0, d), (1, 0, delta)) for delta in range(k)}
    out |= {monomial(w100, (2, g, d - 2 * g), top) for g in range(k)}
    if p.rho:
        out.add(monomial(w000, (2, 0, d), top))
        out.add(monomial(w000, w100, top))
    return out
