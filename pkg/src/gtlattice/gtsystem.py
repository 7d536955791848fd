"""Degree-d monomials of k[x, y, z, t] invariant under diag(1, e, e^2, e^3).

A monomial x^a y^b z^c t^g of degree d is invariant iff b + 2c + 3g = r*d for
some r in 0..3.  Writing gamma = g and delta = c, the monomial is determined by
the triple (r, gamma, delta); the set of admissible triples is W_d.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .errors import DomainError


@dataclass(frozen=True)
class GtParams:
    """d together with its decompositions d = 2k + eps = 3k' + rho."""

    d: int
    k: int
    eps: int
    kprime: int
    rho: int

    def __post_init__(self):
        if self.d < 4:
            raise DomainError("d must be ≥ 4")
        if self.d != 2 * self.k + self.eps or self.eps not in (0, 1):
            raise DomainError(f"inconsistent parity split for d={self.d}")
        if self.d != 3 * self.kprime + self.rho or self.rho not in (0, 1, 2):
            raise DomainError(f"inconsistent mod-3 split for d={self.d}")

    @property
    def odd(self) -> bool:
        return self.eps == 1


class Triple(NamedTuple):
    r: int
    gamma: int
    delta: int

    def __str__(self):
        return f"({self.r},{self.gamma},{self.delta})"


class Monomial4(NamedTuple):
    """Exponents of x, y, z, t."""

    a: int
    b: int
    c: int
    g: int

    def render(self) -> str:
        parts = []
        for name, e in zip("xyzt", self):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"


def derive_params(d: int) -> GtParams:
    if d < 4:
        raise DomainError("d must be ≥ 4")
    k, eps = divmod(d, 2)
    kprime, rho = divmod(d, 3)
    return GtParams(d, k, eps, kprime, rho)


def gamma_max(p: GtParams, r: int) -> int:
    return r * p.kprime + (r * p.rho) // 3


def delta_bounds(p: GtParams, r: int, gamma: int) -> tuple[int, int]:
    """Inclusive delta range for (r, gamma); empty when lo > hi."""
    lo = max(0, (r - 1) * p.d - 2 * gamma)
    hi = (r * p.d - 3 * gamma) // 2
    return lo, hi


def in_wd(p: GtParams, t) -> bool:
    r, gamma, delta = t
    if not 0 <= r <= 3 or not 0 <= gamma <= gamma_max(p, r):
        return False
    lo, hi = delta_bounds(p, r, gamma)
    return lo <= delta <= hi


@lru_cache(maxsize=None)
def enumerate_wd(p: GtParams) -> tuple[Triple, ...]:
    """W_d in lexicographic order of (r, gamma, delta)."""
    out = []
    for r in range(4):
        for gamma in range(gamma_max(p, r) + 1):
            lo, hi = delta_bounds(p, r, gamma)
            out.extend(Triple(r, gamma, delta) for delta in range(lo, hi + 1))
    return tuple(out)


@lru_cache(maxsize=None)
def wd_index(p: GtParams) -> dict[Triple, int]:
    """Column index of each triple in the lexicographic W_d order."""
    return {t: i for i, t in enumerate(enumerate_wd(p))}


def triple_to_monomial(p: GtParams, t) -> Monomial4:
    if not in_wd(p, t):
        raise DomainError(f"{tuple(t)} is not in W_{p.d}")
    r, gamma, delta = t
    a = delta + 2 * gamma + (1 - r) * p.d
    b = r * p.d - 2 * delta - 3 * gamma
    return Monomial4(a, b, delta, gamma)


def monomial_to_triple(p: GtParams, m) -> Triple:
    a, b, c, g = m
    if min(m) < 0 or a + b + c + g != p.d:
        raise DomainError(f"{tuple(m)} is not a degree-{p.d} monomial")
    r, rem = divmod(b + 2 * c + 3 * g, p.d)
    if rem:
        raise DomainError(f"{tuple(m)} is not invariant")
    return Triple(r, g, c)


def _ceil_series(n: int, eps: int) -> int:
    # sum_{g=1}^{n} ceil((3g - eps)/2)
    return -(-n // 2) * (3 * (n // 2) + 2 - eps)


def mu_closed_form(p: GtParams) -> int:
    """Number of generators of T_d, without enumerating W_d."""
    d, k, eps, kp = p.d, p.k, p.eps, p.kprime
    top2 = 2 * kp + (2 * p.rho) // 3
    return (2 + (kp + 1) * (k + 1) + (d + 1) * (top2 + 1) + k * (k + 1)
            - d * (k + 1) - _ceil_series(kp, eps) - _ceil_series(top2, 0))


def check_gt_bound(p: GtParams) -> bool:
    return mu_closed_form(p) <= (p.d + 2) * (p.d + 1) // 2
