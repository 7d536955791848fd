import json
from dataclasses import replace
from pathlib import Path

import pytest

from gtlattice import intlat
from gtlattice.basis import (
    build_basis,
    check_triangular,
    dump_overrides,
    excluded_triples,
    is_special_for,
    load_overrides,
    reduce_to_basis,
    special_binomial_for,
    wd_prime,
)
from gtlattice.binomials import SuitableBinomial, exponent_matrix, monomial, quadric_generators, to_lattice_vector
from gtlattice.errors import CertificationError, DomainError
from gtlattice.gtsystem import derive_params, enumerate_wd
from gtlattice.markov import minimal_generators
from reference_data import BASIS_4, BASIS_4_ANCHORS, parse_binomial

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="module")
def bases():
    return {d: build_basis(derive_params(d)) for d in range(4, 13)}


@pytest.mark.parametrize("d", range(4, 13))
def test_basis_certified(bases, d):
    bs = bases[d]
    mu = len(enumerate_wd(bs.params))
    assert len(bs.matrix) == mu - 4 and all(len(r) == mu for r in bs.matrix)
    assert bs.invariant_factors == (1,) * (mu - 4)
    check_triangular(bs)
    kernel = intlat.integer_kernel(exponent_matrix(bs.params))
    assert intlat.hnf(bs.matrix)[0] == kernel
    for s in bs.specials:
        assert is_special_for(bs.params, s.anchor, s.binomial)


@pytest.mark.parametrize("d", range(4, 13))
def test_excluded_triples_in_wd(d):
    p = derive_params(d)
    excl = excluded_triples(p)
    assert len(excl) == 4 and excl <= set(enumerate_wd(p))
    assert len(wd_prime(p)) == len(enumerate_wd(p)) - 4


def test_d4_canonical_matches_reference(bases):
    bs = bases[4]
    assert bs.matrix == BASIS_4
    assert [tuple(s.anchor) for s in bs.specials] == BASIS_4_ANCHORS


def test_d4_override_file_reproduces_reference():
    p = derive_params(4)
    bs = build_basis(p, load_overrides(p, DATA / "d4_basis_overrides.json"))
    assert bs.matrix == BASIS_4
    assert {s.source for s in bs.specials} == {"override"}


def test_override_round_trip(tmp_path, bases):
    path = tmp_path / "o.json"
    dump_overrides(bases[7], path)
    p = derive_params(7)
    assert build_basis(p, load_overrides(p, path)).matrix == bases[7].matrix


def test_malformed_overrides_name_anchor(tmp_path):
    p = derive_params(4)
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps([{"anchor": [1, 0, 1], "plus": [[1, 0, 1], [0, 0, 0]], "minus": [[1, 0, 2], [1, 0, 2]]}]))
    with pytest.raises(DomainError, match=r"\(1, 0, 1\)"):
        load_overrides(p, bad)
    bad.write_text(json.dumps([{"anchor": [1, 1, 0], "plus": [[1, 1, 0]]}]))
    with pytest.raises(DomainError, match=r"1, 1, 0"):
        load_overrides(p, bad)
    bad.write_text("{not json")
    with pytest.raises(DomainError):
        load_overrides(p, bad)


def test_special_examples():
    p = derive_params(4)
    s = special_binomial_for(p, (1, 1, 0))
    assert (s.binomial.plus, s.binomial.minus) == tuple(map(lambda x: monomial(*x), parse_binomial("110*212*340 - 220*221^2")))
    for d in (6, 7, 9, 10, 12):
        p = derive_params(d)
        kp = p.kprime
        b = special_binomial_for(p, (0, 0, 0)).binomial
        assert b == SuitableBinomial(((0, 0, 0), (2, 2 * kp, 0)), ((1, kp, 0), (1, kp, 0)))
    with pytest.raises(DomainError):
        special_binomial_for(derive_params(4), (3, 4, 0))


def test_overrides_reject_non_special():
    p = derive_params(4)
    wrong = SuitableBinomial(((1, 0, 1), (2, 2, 1)), ((1, 0, 2), (2, 2, 0)))
    with pytest.raises(DomainError):
        build_basis(p, {(0, 0, 0): wrong})
    with pytest.raises(DomainError):
        build_basis(p, {(3, 4, 0): wrong})


@pytest.mark.parametrize("d", range(4, 10))
def test_reduce_generators(bases, d):
    p = derive_params(d)
    bs = bases[d]
    gens = minimal_generators(p, 3)
    for b in gens[2] + gens[3]:
        v = to_lattice_vector(p, b)
        c = reduce_to_basis(bs, v)
        assert intlat.vecmat(c, bs.matrix) == v


def test_reduce_basis_rows_give_unit_vectors(bases):
    bs = bases[6]
    for i, row in enumerate(bs.matrix):
        assert reduce_to_basis(bs, row) == [int(i == j) for j in range(len(bs.matrix))]


def test_reduce_rejects_non_kernel(bases):
    bs = bases[4]
    with pytest.raises(DomainError):
        reduce_to_basis(bs, [1] + [0] * 9)


def test_triangularity_violation_detected(bases):
    bs = bases[4]
    broken = [list(r) for r in bs.matrix]
    broken[1][0] = 1
    with pytest.raises(CertificationError):
        check_triangular(replace(bs, matrix=broken))


def test_d4_quadrics_reduce_to_reference_basis(bases):
    bs = bases[4]
    for b in quadric_generators(derive_params(4)):
        v = to_lattice_vector(bs.params, b)
        assert intlat.solve_in_lattice(BASIS_4, v) is not None
