"""Triangular Z-basis of the lattice of X_d built from special binomials.

Each anchor t in W_d' (W_d minus four distinguished triples) gets one
nontrivial suitable binomial whose support has t as lex-min element and in
which t occurs once on the plus side.  Ordered by anchor, the lattice vectors
form an upper triangular matrix with unit diagonal on the anchor columns.

Witnesses follow the explicit constructions for each anchor shape; when a
construction does not produce a valid binomial for the given d, a
deterministic search over degree-2 and then degree-3 monomials is used
instead.  ``SpecialBinomial.source`` records which path produced each row.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

from . import intlat
from .binomials import (
    SuitableBinomial,
    exponent_matrix,
    fiber_of,
    grading_matrix,
    is_suitable,
    monomial,
    to_lattice_vector,
)
from .errors import CertificationError, DomainError
from .gtsystem import GtParams, Triple, delta_bounds, enumerate_wd, gamma_max, in_wd, wd_index


@dataclass(frozen=True)
class SpecialBinomial:
    anchor: Triple
    binomial: SuitableBinomial
    source: str = "construction"


@dataclass(frozen=True)
class BasisSystem:
    params: GtParams
    wd_prime: tuple[Triple, ...]
    specials: tuple[SpecialBinomial, ...]
    matrix: list[list[int]] = field(compare=False)
    invariant_factors: tuple[int, ...] = ()

    @property
    def anchor_columns(self) -> list[int]:
        idx = wd_index(self.params)
        return [idx[t] for t in self.wd_prime]


def excluded_triples(p: GtParams) -> set[Triple]:
    kp, d = p.kprime, p.d
    if p.rho == 0:
        out = [(2, 2 * kp - 1, 0), (2, 2 * kp - 1, 1), (2, 2 * kp, 0)]
    elif p.rho == 1:
        out = [(2, 2 * kp - 1, 2), (2, 2 * kp, 0), (2, 2 * kp, 1)]
    else:
        out = [(2, 2 * kp, 1), (2, 2 * kp, 2), (2, 2 * kp + 1, 0)]
    return {Triple(*t) for t in out} | {Triple(3, d, 0)}


def wd_prime(p: GtParams) -> tuple[Triple, ...]:
    excl = excluded_triples(p)
    return tuple(t for t in enumerate_wd(p) if t not in excl)


def is_special_for(p: GtParams, anchor: Triple, b: SuitableBinomial) -> bool:
    try:
        ok = is_suitable(p, b.plus, b.minus)
    except DomainError:
        return False
    return (ok and not b.trivial and min(b.support()) == anchor
            and b.plus.count(anchor) == 1 and anchor not in b.minus)


def _split(p: GtParams, parts: Sequence[tuple[int, int]], total: int) -> Optional[list[int]]:
    """Deltas for triples (r_i, gamma_i) summing to total, each as small as
    possible from the left; None if no split exists."""
    bounds = []
    for r, g in parts:
        if not 0 <= g <= gamma_max(p, r):
            return None
        lo, hi = delta_bounds(p, r, g)
        if lo > hi:
            return None
        bounds.append((lo, hi))
    out = []
    rest = total
    for i, (lo, hi) in enumerate(bounds):
        tail_hi = sum(b[1] for b in bounds[i + 1:])
        tail_lo = sum(b[0] for b in bounds[i + 1:])
        v = max(lo, rest - tail_hi)
        if v > hi or rest - v < tail_lo:
            return None
        out.append(v)
        rest -= v
    return out if rest == 0 else None


def _pair(p: GtParams, r1, g1, r2, g2, total) -> Optional[tuple[Triple, Triple]]:
    deltas = _split(p, [(r1, g1), (r2, g2)], total)
    if deltas is None:
        return None
    return Triple(r1, g1, deltas[0]), Triple(r2, g2, deltas[1])


def _candidates(p: GtParams, anchor: Triple) -> Iterable[SuitableBinomial]:
    """Explicit witnesses, most specific first; each is validated by the caller."""
    d, k, kp, rho, eps = p.d, p.k, p.kprime, p.rho, p.eps
    r, g, dl = anchor
    top = Triple(3, d, 0)

    def B(plus, minus):
        return SuitableBinomial(monomial(*plus), monomial(*minus))

    if r == 0:
        yield B([anchor, (2, 2 * kp, 0)], [(1, kp, 0), (1, kp, 0)])
        return

    if r == 1:
        if rho and (g, dl) == (kp, rho // 2):
            if rho == 1:
                yield B([anchor, (2, 2 * kp - 1, 2), top], [(2, 2 * kp, 0), (2, 2 * kp, 1), (2, 2 * kp, 1)])
            else:
                yield B([anchor, (2, 2 * kp, 1), top], [(2, 2 * kp, 2), (2, 2 * kp + 1, 0), (2, 2 * kp + 1, 0)])
            return
        if eps and (g, dl) == (0, 0):
            if rho == 0:
                yield B([anchor, (2, 2 * kp, 0)], [(1, 1, 0), (2, 2 * kp - 1, 0)])
            elif rho == 1:
                yield B([anchor, (2, 2 * kp, 1)], [(1, 0, 1), (2, 2 * kp, 0)])
            else:
                yield B([anchor, (2, 2 * kp + 1, 0)], [(1, 1, 0), (2, 2 * kp, 0)])
            return
        # w_(1,g,dl) w_(3,d,0) against two r=2 variables splitting gamma + d
        g1, g2 = (d + g) // 2, (d + g + 1) // 2
        pair = _pair(p, 2, g1, 2, g2, dl)
        if pair:
            yield B([anchor, top], pair)
        if g1 % 2 and g2 % 2:
            a = Triple(2, g1 + 1, (2 * d - 3 * (g1 + 1)) // 2)
            b = Triple(2, g2 - 1, (2 * d - 3 * (g2 - 1)) // 2)
            yield B([anchor, top], [a, b])
            pair = _pair(p, 2, g1 + 1, 2, g2 - 1, dl)
            if pair:
                yield B([anchor, top], pair)
        return

    if r == 2:
        gp = 2 * kp + rho // 2
        dp = (rho + 1) // 2 - rho // 2
        partner = Triple(2, gp, dp)
        if rho == 0 and (g, dl) == (2 * kp - 2, 3):
            yield B([anchor, (2, 2 * kp - 1, 0), (2, 2 * kp, 0)], [(2, 2 * kp - 1, 1)] * 3)
            return
        pair = _pair(p, 2, g + 1, 2, gp - 1, dl + dp)
        if pair:
            yield B([anchor, partner], pair)
        if g % 2 == 0 and gp % 2 == 0 and 2 * dl == 2 * d - 3 * g:
            if g < 2 * kp - 2:
                pair = _pair(p, 2, g + 2, 2, 2 * kp - 2, dl + dp)
                if pair:
                    yield B([anchor, partner], pair)
            if g == 2 * kp - 2 and rho == 1:
                yield B([anchor, (2, 2 * kp, 0)], [(2, 2 * kp - 1, 2)] * 2)


def _search(p: GtParams, anchor: Triple) -> Optional[SuitableBinomial]:
    """Lex-first special binomial of degree 2, then 3, found by fiber search."""
    larger = [t for t in enumerate_wd(p) if t > anchor]
    for n in (2, 3):
        rests = [()]
        for _ in range(n - 1):
            rests = [r + (t,) for r in rests for t in larger if not r or t >= r[-1]]
        for rest in rests:
            if anchor in rest:
                continue
            plus = (anchor,) + rest
            for other in fiber_of(p, plus):
                if other != plus and min(other) > anchor and not set(other) & set(plus):
                    return SuitableBinomial(plus, other)
    return None


def special_binomial_for(p: GtParams, anchor, overrides: Optional[Mapping[Triple, SuitableBinomial]] = None) -> SpecialBinomial:
    anchor = Triple(*anchor)
    if anchor not in wd_prime(p):
        raise DomainError(f"{tuple(anchor)} is not an anchor in W_{p.d}'")
    if overrides and anchor in overrides:
        b = overrides[anchor]
        if not is_special_for(p, anchor, b):
            raise DomainError(f"override for anchor {tuple(anchor)} is not a special binomial: {b}")
        return SpecialBinomial(anchor, b, "override")
    for b in _candidates(p, anchor):
        if is_special_for(p, anchor, b):
            return SpecialBinomial(anchor, b, "construction")
    b = _search(p, anchor)
    if b is None:
        raise CertificationError(f"no special binomial of degree <= 3 for {tuple(anchor)} at d={p.d}")
    return SpecialBinomial(anchor, b, "search")


def check_triangular(bs: BasisSystem) -> None:
    for row, col in zip(bs.matrix, bs.anchor_columns):
        if row[col] != 1 or any(row[:col]):
            raise CertificationError(f"row for anchor column {col} is not unit upper triangular")


def build_basis(p: GtParams, overrides: Optional[Mapping[Triple, SuitableBinomial]] = None) -> BasisSystem:
    """Build and certify the basis; raises CertificationError on any failed invariant."""
    anchors = wd_prime(p)
    mu = len(enumerate_wd(p))
    if len(anchors) != mu - 4:
        raise CertificationError(f"|W_d'| = {len(anchors)}, expected {mu - 4}")
    if overrides:
        unknown = [t for t in overrides if t not in anchors]
        if unknown:
            raise DomainError(f"override anchor {tuple(unknown[0])} is not in W_{p.d}'")
    specials = tuple(special_binomial_for(p, t, overrides) for t in anchors)
    matrix = [to_lattice_vector(p, s.binomial) for s in specials]
    bs = BasisSystem(p, anchors, specials, matrix)
    check_triangular(bs)

    a = exponent_matrix(p)
    for s, row in zip(specials, matrix):
        if any(intlat.matvec(a, row)):
            raise CertificationError(f"row for {tuple(s.anchor)} is not in the kernel of A")
    factors = intlat.snf_invariant_factors(matrix)
    if len(factors) != mu - 4 or any(f != 1 for f in factors):
        raise CertificationError(f"basis matrix is not saturated of rank {mu - 4}: {factors}")
    kernel = intlat.integer_kernel(a)
    if len(kernel) != mu - 4:
        raise CertificationError(f"kernel of A has rank {len(kernel)}, expected {mu - 4}")
    for v in kernel:
        if intlat.solve_in_lattice(matrix, v) is None:
            raise CertificationError("a kernel vector is not in the span of the basis")
    return BasisSystem(p, anchors, specials, matrix, tuple(factors))


def reduce_to_basis(bs: BasisSystem, v: Sequence[int]) -> list[int]:
    """Coefficients c with c @ matrix == v, by back-substitution on anchors."""
    p = bs.params
    if any(intlat.matvec(grading_matrix(p), v)):
        raise DomainError("vector is not in the kernel of the exponent matrix")
    residual = list(v)
    coeffs = []
    for row, col in zip(bs.matrix, bs.anchor_columns):
        c = residual[col]
        coeffs.append(c)
        if c:
            for j in range(col, len(row)):
                residual[j] -= c * row[j]
    if any(residual):
        raise CertificationError("kernel vector left a nonzero remainder on the excluded columns")
    return coeffs


def load_overrides(p: GtParams, path) -> dict[Triple, SuitableBinomial]:
    """Read per-anchor special binomials from JSON.

    The file holds a list of ``{"anchor": [r,g,d], "plus": [[r,g,d],...],
    "minus": [[r,g,d],...]}`` objects.
    """
    try:
        raw = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(raw, list):
        raise DomainError(f"{path}: expected a list of override objects")
    out = {}
    for i, entry in enumerate(raw):
        label = entry.get("anchor", f"#{i}") if isinstance(entry, dict) else f"#{i}"
        try:
            anchor = Triple(*entry["anchor"])
            plus = monomial(*entry["plus"])
            minus = monomial(*entry["minus"])
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"{path}: malformed override for anchor {label}: {exc}") from None
        b = SuitableBinomial(plus, minus)
        if not all(in_wd(p, t) for t in (anchor, *plus, *minus)) or not is_special_for(p, anchor, b):
            raise DomainError(f"{path}: override for anchor {tuple(anchor)} is not a special binomial")
        out[anchor] = b
    return out


def dump_overrides(bs: BasisSystem, path) -> None:
    data = [{"anchor": list(s.anchor), "plus": [list(t) for t in s.binomial.plus],
             "minus": [list(t) for t in s.binomial.minus]} for s in bs.specials]
    Path(path).write_text(json.dumps(data, indent=1) + "\n")
