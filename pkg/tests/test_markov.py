import pytest

from gtlattice.binomials import (
    SuitableBinomial,
    enumerate_fibers,
    fiber_of,
    m3_set,
    monomial,
    multidegree,
    quadric_generators,
    to_lattice_vector,
)
from gtlattice.errors import DomainError
from gtlattice.gtsystem import derive_params, enumerate_wd
from gtlattice.markov import (
    MoveSet,
    build_sequence,
    cubic_admissibility,
    cubic_witness,
    fiber_components,
    is_valid_sequence,
    minimal_generators,
    minimal_generators_in_degree,
    non_admitting_cubics,
    obstruction_monomials,
    pair_admits_brute,
    pair_admits_suitable2,
    verify_main_theorem,
)
from reference_data import CUBICS_5, ISOLATED_5, parse_binomial


def lattice_points_up_to_sign(p, binomials):
    out = set()
    for b in binomials:
        v = tuple(to_lattice_vector(p, b))
        out.add(max(v, tuple(-x for x in v)))
    return out


@pytest.fixture(scope="module")
def quadric_moves():
    return {d: MoveSet(quadric_generators(derive_params(d))) for d in range(4, 10)}


def test_d5_cubics_match_reference(quadric_moves):
    p = derive_params(5)
    cubics = minimal_generators_in_degree(p, 3, quadric_moves[5])
    ref = [SuitableBinomial(*parse_binomial(s)) for s in CUBICS_5]
    assert len(cubics) == 8
    assert lattice_points_up_to_sign(p, cubics) == lattice_points_up_to_sign(p, ref)


@pytest.mark.parametrize("d", [4, 6, 8])
def test_even_d_has_no_cubics(quadric_moves, d):
    assert minimal_generators_in_degree(derive_params(d), 3, quadric_moves[d]) == []


@pytest.mark.parametrize("d", [7, 9])
def test_odd_d_cubic_count(quadric_moves, d):
    assert len(minimal_generators_in_degree(derive_params(d), 3, quadric_moves[d])) == 8


def test_degree_guard(quadric_moves):
    with pytest.raises(DomainError):
        minimal_generators_in_degree(derive_params(4), 2, quadric_moves[4])
    with pytest.raises(DomainError):
        minimal_generators_in_degree(derive_params(4), 1, MoveSet())


def test_moveset_rejects_trivial():
    with pytest.raises(DomainError):
        MoveSet([SuitableBinomial(((0, 0, 0), (1, 0, 0)), ((0, 0, 0), (1, 0, 0)))])


def test_isolated_fiber_d5(quadric_moves):
    p = derive_params(5)
    plus, minus = parse_binomial(ISOLATED_5)
    comps = fiber_components(fiber_of(p, plus), quadric_moves[5])
    assert len(comps) >= 2 and [monomial(*plus)] in comps
    assert build_sequence(plus, minus, quadric_moves[5]) is None


def test_singleton_fiber(quadric_moves):
    p = derive_params(4)
    m = monomial((0, 0, 0), (0, 0, 0), (0, 0, 0))
    assert fiber_components(fiber_of(p, m), quadric_moves[4]) == [[m]]


def test_d4_degree3_connected(quadric_moves):
    for fiber in enumerate_fibers(derive_params(4), 3).values():
        assert len(fiber_components(fiber, quadric_moves[4])) == 1


def test_d4_sequence_exists(quadric_moves):
    plus = ((0, 0, 0), (1, 0, 0), (2, 0, 4))
    minus = ((1, 0, 1), (1, 0, 1), (1, 0, 2))
    path = build_sequence(plus, minus, quadric_moves[4])
    assert path is not None and is_valid_sequence(path)
    assert path[0] == monomial(*plus) and path[-1] == monomial(*minus)
    # a walk through w100 w102^2 is available
    via = monomial((1, 0, 0), (1, 0, 2), (1, 0, 2))
    assert build_sequence(plus, via, quadric_moves[4]) is not None
    assert build_sequence(via, minus, quadric_moves[4]) is not None


def test_sequence_edge_cases(quadric_moves):
    m = ((0, 0, 0), (2, 0, 4))
    assert build_sequence(m, m, quadric_moves[4]) == [monomial(*m)]
    with pytest.raises(DomainError):
        build_sequence(m, ((0, 0, 0), (1, 0, 0)), quadric_moves[4])


@pytest.mark.parametrize("d", range(4, 8))
def test_oracle_consistency(quadric_moves, d):
    """Emitted generators are exactly the root pairs build_sequence cannot join."""
    p = derive_params(d)
    moves = quadric_moves[d]
    emitted = {b.unordered() for b in minimal_generators_in_degree(p, 3, moves)}
    expected = set()
    for fiber in enumerate_fibers(p, 3).values():
        comps = fiber_components(fiber, moves)
        root = fiber[0]
        for other in fiber[1:]:
            same = any(root in c and other in c for c in comps)
            assert (build_sequence(root, other, moves) is not None) == same
        expected |= {frozenset((root, c[0])) for c in comps[1:]}
    assert emitted == expected


@pytest.mark.parametrize("d", [4, 5, 6, 7])
def test_verify_main_theorem(d):
    r = verify_main_theorem(derive_params(d), 4)
    assert r.passed
    assert r.degrees[-1].new_generators == 0
    if d % 2:
        assert len(r.cubics) == 8 and r.degrees[0].new_generators == 8
    else:
        assert r.cubics == [] and r.degrees[0].disconnected == []


def test_d5_m3_comparison():
    r = verify_main_theorem(derive_params(5), 3)
    assert r.m3 == m3_set(derive_params(5))
    assert r.m3_not_isolated == set()
    extra = r.obstructed_fibers_without_m3
    assert [tuple(f.multidegree) for f in extra] == [(3, 3, 3, 0), (3, 6, 6, 6)]
    assert len(r.degrees[0].disconnected) == 8


def test_verify_guard():
    with pytest.raises(DomainError):
        verify_main_theorem(derive_params(4), 2)


def test_minimal_generators_counts():
    gens = minimal_generators(derive_params(6), 4)
    assert [len(gens[n]) for n in (2, 3, 4)] == [57, 0, 0]


@pytest.mark.parametrize("d", range(4, 10))
def test_pair_predicate_exhaustive(d):
    p = derive_params(d)
    wd = enumerate_wd(p)
    for i, a in enumerate(wd):
        for b in wd[i:]:
            assert pair_admits_suitable2(p, a, b) == pair_admits_brute(p, a, b), (a, b)


def test_pair_predicate_examples():
    assert not pair_admits_suitable2(derive_params(5), (1, 0, 0), (2, 0, 5))
    for d in range(4, 16):
        p = derive_params(d)
        assert pair_admits_suitable2(p, (0, 0, 0), (3, d, 0)) == (p.rho == 0)
    with pytest.raises(DomainError):
        pair_admits_suitable2(derive_params(5), (2, 2, 0), (0, 0, 0))


def test_cubic_examples():
    p = derive_params(5)
    m = ((0, 0, 0), (2, 0, 5), (1, 0, 0))
    assert cubic_admissibility(p, m)
    w = cubic_witness(p, m)
    assert w.minus == monomial((1, 0, 2), (1, 0, 2), (1, 0, 1))
    assert not cubic_admissibility(p, ((0, 0, 0), (2, 0, 5), (1, 0, 2)))
    p7 = derive_params(7)
    assert not cubic_admissibility(p7, ((1, 0, 0), (2, p7.k + 1, 0), (3, 7, 0)))
    with pytest.raises(DomainError):
        cubic_admissibility(derive_params(6), m)
    with pytest.raises(DomainError):
        cubic_admissibility(p, m[:2])


@pytest.mark.parametrize("d", [5, 7, 9, 11, 13])
def test_cubic_witnesses_valid(d):
    p = derive_params(d)
    for m in obstruction_monomials(p):
        w = cubic_witness(p, m)
        if w is not None:
            assert w.plus == monomial(*m) and not w.trivial
            assert cubic_admissibility(p, m)
    for m in non_admitting_cubics(p):
        assert not cubic_admissibility(p, m)
        assert cubic_witness(p, m) is None


@pytest.mark.parametrize("d", [5, 7, 9])
def test_obstruction_monomials_isolated(quadric_moves, d):
    p = derive_params(d)
    moves = quadric_moves[d]
    for m in obstruction_monomials(p):
        fiber = fiber_of(p, m)
        comps = fiber_components(fiber, moves)
        assert [m] in comps
        if len(fiber) > 1:
            assert len(comps) > 1


def test_moves_stay_in_fiber(quadric_moves):
    p = derive_params(6)
    for fiber in list(enumerate_fibers(p, 3).values())[::7]:
        for m in fiber:
            for other in quadric_moves[6].neighbors(m):
                assert multidegree(other) == multidegree(m)
                assert m in quadric_moves[6].neighbors(other)
