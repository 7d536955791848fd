"""Fiber-graph connectivity: which binomials are needed as generators.

A degree-n binomial m - m' is redundant modulo lower-degree generators iff
m and m' are joined by a walk in the fiber graph whose edges are the moves
u*g_plus <-> u*g_minus for lower-degree generators g.  Counting components per
fiber therefore yields the minimal generators degree by degree.
"""

from __future__ import annotations

import logging
from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .binomials import (
    DEFAULT_MONOMIAL_CAP,
    Monomial,
    MultiDegree,
    SuitableBinomial,
    enumerate_fibers,
    fiber_of,
    is_suitable,
    m3_set,
    monomial,
    multidegree,
    quadric_generators,
)
from .errors import DomainError
from .gtsystem import GtParams, Triple, delta_bounds, enumerate_wd, gamma_max

log = logging.getLogger(__name__)


def _replace(m: Monomial, out: Sequence, into: Sequence) -> Monomial:
    c = Counter(m)
    c.subtract(out)
    c.update(into)
    return tuple(sorted(c.elements()))


class MoveSet:
    """Generators used as moves, indexed by each side for divisibility lookups."""

    def __init__(self, moves: Iterable[SuitableBinomial] = ()):
        self.moves = list(moves)
        self._adj = defaultdict(list)
        for g in self.moves:
            if g.trivial:
                raise DomainError(f"move {g} is trivial")
            self._adj[g.plus].append(g.minus)
            self._adj[g.minus].append(g.plus)
        self.degrees = sorted({g.n for g in self.moves})

    def __len__(self):
        return len(self.moves)

    def __add__(self, other: "MoveSet") -> "MoveSet":
        return MoveSet(self.moves + other.moves)

    def neighbors(self, m: Monomial) -> list[Monomial]:
        out = []
        for j in self.degrees:
            if j > len(m):
                break
            for sub in set(combinations(m, j)):
                for other in self._adj.get(sub, ()):
                    out.append(_replace(m, sub, other))
        return out


@dataclass
class FiberReport:
    multidegree: MultiDegree
    size: int
    components: int
    representatives: list[Monomial]
    isolated: list[Monomial] = field(default_factory=list)


@dataclass
class DegreeSummary:
    n: int
    fibers: int
    monomials: int
    moves: int
    disconnected: list[FiberReport]

    @property
    def new_generators(self) -> int:
        return sum(f.components - 1 for f in self.disconnected)


@dataclass
class ConnectivityReport:
    d: int
    max_degree: int
    quadrics: list[SuitableBinomial]
    cubics: list[SuitableBinomial]
    degrees: list[DegreeSummary]
    passed: bool
    m3: Optional[set] = None
    isolated3: set = field(default_factory=set)

    @property
    def m3_not_isolated(self) -> set:
        return set(self.m3 or ()) - self.isolated3

    @property
    def isolated_not_in_m3(self) -> set:
        return self.isolated3 - set(self.m3 or ())

    @property
    def obstructed_fibers_without_m3(self) -> list[FiberReport]:
        if not self.m3:
            return []
        deg3 = next((s for s in self.degrees if s.n == 3), None)
        if deg3 is None:
            return []
        out = []
        for f in deg3.disconnected:
            members = fiber_members(f)
            if not members & self.m3:
                out.append(f)
        return out


def fiber_members(f: FiberReport) -> set:
    return set(f.representatives) | set(f.isolated)


def fiber_components(fiber: Sequence[Monomial], moves: MoveSet) -> list[list[Monomial]]:
    """Connected components of the fiber graph, each sorted, ordered by lex-min."""
    index = {m: i for i, m in enumerate(fiber)}
    parent = list(range(len(fiber)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, m in enumerate(fiber):
        for other in moves.neighbors(m):
            j = index.get(other)
            if j is None:
                raise DomainError(f"move took {m} outside its fiber")
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups = defaultdict(list)
    for i, m in enumerate(fiber):
        groups[find(i)].append(m)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def build_sequence(plus: Sequence, minus: Sequence, moves: MoveSet) -> Optional[list[Monomial]]:
    """Shortest walk from plus to minus through the fiber graph, or None."""
    start, goal = monomial(*plus), monomial(*minus)
    if multidegree(start) != multidegree(goal):
        raise DomainError("endpoints lie in different fibers")
    prev = {start: None}
    queue = deque([start])
    while queue:
        m = queue.popleft()
        if m == goal:
            path = []
            while m is not None:
                path.append(m)
                m = prev[m]
            return path[::-1]
        for other in moves.neighbors(m):
            if other not in prev:
                prev[other] = m
                queue.append(other)
    return None


def is_valid_sequence(path: Sequence[Monomial]) -> bool:
    """Consecutive members share a variable and have equal multidegree."""
    for a, b in zip(path, path[1:]):
        if multidegree(a) != multidegree(b) or not set(a) & set(b):
            return False
    return True


def _fiber_reports(p: GtParams, n: int, moves: MoveSet, cap: int):
    fibers = enumerate_fibers(p, n, cap)
    reports, gens = [], []
    total = 0
    for key, fiber in fibers.items():
        total += len(fiber)
        if len(fiber) < 2:
            continue
        comps = fiber_components(fiber, moves)
        if len(comps) > 1:
            reps = [c[0] for c in comps]
            isolated = [c[0] for c in comps if len(c) == 1]
            reports.append(FiberReport(key, len(fiber), len(comps), reps, isolated))
            gens.extend(SuitableBinomial(reps[0], r) for r in reps[1:])
    summary = DegreeSummary(n, len(fibers), total, len(moves), reports)
    return summary, gens


def minimal_generators_in_degree(p: GtParams, n: int, lower: MoveSet,
                                 cap: int = DEFAULT_MONOMIAL_CAP) -> list[SuitableBinomial]:
    """New degree-n generators: per fiber, the lex-min member joined to the
    lex-min member of every other component."""
    if n < 2:
        raise DomainError("degree must be ≥ 2")
    if any(deg >= n for deg in lower.degrees):
        raise DomainError("lower moves must have degree < n")
    return _fiber_reports(p, n, lower, cap)[1]


def minimal_generators(p: GtParams, max_degree: int = 3, cap: int = DEFAULT_MONOMIAL_CAP) -> dict[int, list[SuitableBinomial]]:
    """Minimal generators by degree, 2..max_degree."""
    out = {2: quadric_generators(p)}
    moves = MoveSet(out[2])
    for n in range(3, max_degree + 1):
        out[n] = minimal_generators_in_degree(p, n, moves, cap)
        moves = moves + MoveSet(out[n])
    return out


def verify_main_theorem(p: GtParams, max_degree: int = 4, cap: int = DEFAULT_MONOMIAL_CAP) -> ConnectivityReport:
    """Check degree by degree that nothing beyond quadrics (even d) or
    quadrics and cubics (odd d) is needed up to max_degree."""
    if max_degree < 3:
        raise DomainError("max_degree must be ≥ 3")
    quadrics = quadric_generators(p)
    moves = MoveSet(quadrics)
    cubics: list[SuitableBinomial] = []
    degrees = []
    passed = True
    isolated3 = set()
    for n in range(3, max_degree + 1):
        summary, gens = _fiber_reports(p, n, moves, cap)
        degrees.append(summary)
        log.info("d=%d n=%d: %d fibers, %d disconnected", p.d, n, summary.fibers, len(summary.disconnected))
        if n == 3:
            isolated3 = {m for f in summary.disconnected for m in f.isolated}
        if n == 3 and p.odd:
            cubics = gens
            moves = moves + MoveSet(cubics)
        elif gens:
            passed = False
    if not p.odd and cubics:
        passed = False
    return ConnectivityReport(p.d, max_degree, quadrics, cubics, degrees, passed,
                              m3_set(p) if p.odd else None, isolated3)


# -- closed-form predicates for degree-2 monomials --------------------------


def _lemma_branch(p: GtParams, a: Triple, b: Triple) -> Optional[bool]:
    """Answer from the case analysis when (a, b) fits one of its shapes."""
    d, k, kp, rho, eps = p.d, p.k, p.kprime, p.rho, p.eps
    top = Triple(3, d, 0)
    if a == (0, 0, 0):
        if b.r <= 1:
            return False
        if b.r == 3:
            return rho == 0
        if rho and (b.gamma, b.delta) == (2 * kp + rho // 2, (rho + 1) // 2 - rho // 2):
            return False
        return not (eps and b.gamma == 0)
    if b == top:
        if a.r >= 2:
            return False
        if rho and (a.gamma, a.delta) == (kp, rho // 2):
            return False
        return not (eps and (a.gamma, a.delta) == (0, 0))
    if eps and a == (1, 0, 0) and b.r == 2:
        return not (b.gamma <= k + 1 and b.delta == max(0, d - 2 * b.gamma))
    if eps and b == (2, 0, d) and a.r == 1:
        return not ((a.gamma == 0 and a.delta <= k) or (a.gamma, a.delta) == (1, k - 1))
    if rho == 1 and a == (1, kp, 0) and b.r == 2:
        return b.gamma != 2 * kp
    if rho == 2 and a == (1, kp, 1) and b.r == 2:
        return not (b.gamma == 2 * kp + 1 or (b.gamma, b.delta) == (2 * kp, 2))
    if rho == 2 and b == (2, 2 * kp + 1, 0) and a.r == 1:
        return a.gamma != kp
    return None


def _exchange_feasible(p: GtParams, a: Triple, b: Triple) -> bool:
    """Is there another pair with the same (r, gamma, delta) sums?

    For each split of the r- and gamma-sums the feasible deltas of the first
    factor form an interval; the pair admits a binomial iff some interval
    holds a point other than (a, b) itself.
    """
    R, G, D = a.r + b.r, a.gamma + b.gamma, a.delta + b.delta
    for r3 in range(max(0, R - 3), R // 2 + 1):
        r4 = R - r3
        for g3 in range(gamma_max(p, r3) + 1):
            g4 = G - g3
            if not 0 <= g4 <= gamma_max(p, r4):
                continue
            lo3, hi3 = delta_bounds(p, r3, g3)
            lo4, hi4 = delta_bounds(p, r4, g4)
            lo, hi = max(lo3, D - hi4), min(hi3, D - lo4)
            if lo > hi:
                continue
            own = set()
            for x, y in ((a, b), (b, a)):
                if (x.r, x.gamma, y.r, y.gamma) == (r3, g3, r4, g4):
                    own.add(x.delta)
            if hi - lo + 1 > len(own & set(range(lo, hi + 1))):
                return True
    return False


def pair_admits_suitable2(p: GtParams, t1, t2) -> bool:
    a, b = sorted((Triple(*t1), Triple(*t2)))
    is_suitable(p, (a, b), (a, b))  # domain check
    answer = _lemma_branch(p, a, b)
    if answer is None:
        answer = _exchange_feasible(p, a, b)
    return answer


def pair_admits_brute(p: GtParams, t1, t2) -> bool:
    return len(fiber_of(p, (t1, t2))) > 1


# -- degree-3 obstructions for odd d ----------------------------------------


def obstruction_monomials(p: GtParams) -> list[Monomial]:
    """Degree-3 monomials no quadric move can touch (odd d)."""
    if not p.odd:
        raise DomainError("defined for odd d only")
    d, k = p.d, p.k
    w000, w100, top, w20d = Triple(0, 0, 0), Triple(1, 0, 0), Triple(3, d, 0), Triple(2, 0, d)
    out = [monomial(w000, w20d, (1, 0, dl)) for dl in range(k + 1)]
    if p.rho:
        out += [monomial(w000, w20d, top), monomial(w000, w100, top)]
    out += [monomial(w100, (2, g, d - 2 * g), top) for g in range(k + 1)]
    out.append(monomial(w100, (2, k + 1, 0), top))
    return sorted(set(out))


def non_admitting_cubics(p: GtParams) -> list[Monomial]:
    """Degree-3 monomials from the obstruction list that admit no 3-binomial at all."""
    if not p.odd:
        raise DomainError("defined for odd d only")
    d, k = p.d, p.k
    w100, top = Triple(1, 0, 0), Triple(3, d, 0)
    return [monomial((0, 0, 0), (2, 0, d), (1, 0, k)),
            monomial(w100, (2, k, 1), top),
            monomial(w100, (2, k + 1, 0), top)]


def cubic_witness(p: GtParams, m: Sequence) -> Optional[SuitableBinomial]:
    """The explicit 3-binomial partner for the listed cubic shapes, if it
    is valid for this d; None otherwise."""
    if not p.odd:
        raise DomainError("defined for odd d only")
    d, k, kp, rho = p.d, p.k, p.kprime, p.rho
    m = monomial(*m)
    w000, w100, top, w20d = Triple(0, 0, 0), Triple(1, 0, 0), Triple(3, d, 0), Triple(2, 0, d)
    partner = None
    for dl in range(k):
        if m == monomial(w000, w20d, (1, 0, dl)):
            partner = monomial((1, 0, k), (1, 0, k), (1, 0, dl + 1))
    if m == monomial(w000, w20d, top):
        partner = monomial((1, 0, k), (2, k, (k + 2) // 2), (2, k + 1, (k + 1) // 2))
    if m == monomial(w000, w100, top):
        q = kp + (rho + 1) // 2
        partner = monomial((1, q // 2, 0), (1, (q + 1) // 2, 0), (2, 2 * kp + rho // 2, 0))
    for g in range(k):
        if m == monomial(w100, (2, g, d - 2 * g), top):
            partner = monomial((2, g + 1, max(0, d - 2 * g - 2)), (2, k, 1), (2, k, 1))
    if partner is None:
        return None
    b = SuitableBinomial(m, partner)
    try:
        ok = is_suitable(p, b.plus, b.minus) and not b.trivial
    except DomainError:
        ok = False
    return b if ok else None


def cubic_admissibility(p: GtParams, m: Sequence) -> bool:
    """Does the degree-3 monomial m admit a nontrivial suitable 3-binomial?"""
    if not p.odd:
        raise DomainError("defined for odd d only")
    m = monomial(*m)
    if len(m) != 3:
        raise DomainError("expected a degree-3 monomial")
    return any(not set(o) & set(m) for o in fiber_of(p, m) if o != m)


__all__ = [
    "ConnectivityReport", "DegreeSummary", "FiberReport", "MoveSet",
    "build_sequence", "cubic_admissibility", "cubic_witness", "fiber_components",
    "is_valid_sequence", "minimal_generators", "minimal_generators_in_degree",
    "non_admitting_cubics", "obstruction_monomials", "pair_admits_brute",
    "pair_admits_suitable2", "verify_main_theorem",
]
