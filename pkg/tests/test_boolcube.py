import random
from itertools import combinations
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import anf_bruteforce, bits, blockset, eval_anf

from cubetrades.boolcube import (
    Subcube,
    anf,
    enumerate_subcubes,
    from_bits,
    lex_key,
    mobius_transform,
    superset_counts,
    to_bits,
)
from cubetrades.errors import CapacityError, ParameterError


def cube(v, fixed):
    """Subcube from {coordinate (1-based): value}."""
    mask = sum(1 << (i - 1) for i in fixed)
    values = sum(1 << (i - 1) for i, b in fixed.items() if b)
    return Subcube(v, mask, values)


def test_bitstring_convention():
    # {2,4,5} over v = 7
    x = from_bits("0101100")
    assert x == (1 << 1) | (1 << 3) | (1 << 4)
    assert to_bits(x, 7) == "0101100"
    assert sorted(["100", "011", "001"], key=lambda s: lex_key(bits(s), 3)) == ["001", "011", "100"]


@pytest.mark.parametrize(
    "fixed, x, expected",
    [({2: 1}, "010", True), ({2: 1}, "000", False), ({1: 0, 3: 1}, "011", True)],
)
def test_subcube_contains(fixed, x, expected):
    assert cube(3, fixed).contains(bits(x)) is expected


def test_subcube_rejects_values_outside_mask():
    with pytest.raises(ParameterError):
        Subcube(3, 0b001, 0b010)


@pytest.mark.parametrize("v, codim, count", [(3, 1, 6), (4, 2, 24), (3, 0, 1)])
def test_enumerate_subcubes_examples(v, codim, count):
    assert len(list(enumerate_subcubes(v, codim))) == count


def test_enumerate_subcubes_cardinality_and_membership():
    for v in range(1, 9):
        for c in range(v + 1):
            cubes = list(enumerate_subcubes(v, c))
            assert len(cubes) == comb(v, c) * 2**c
            assert len(set(cubes)) == len(cubes)
            assert all(s.dimension == v - c for s in cubes)
            if v <= 6:
                for x in range(1 << v):
                    assert sum(s.contains(x) for s in cubes) == comb(v, c)


def test_enumerate_subcubes_order_and_range():
    cubes = list(enumerate_subcubes(4, 2))
    keys = [(s.fixed_mask, s.fixed_values) for s in cubes]
    assert keys == sorted(keys)
    with pytest.raises(ParameterError):
        list(enumerate_subcubes(3, 4))


def test_subcube_points_match_membership():
    s = cube(5, {1: 1, 4: 0})
    assert sorted(s.points()) == [x for x in range(32) if s.contains(x)]
    assert str(s) == "x1=1,x4=0"


def test_superset_counts_examples():
    counts = superset_counts(blockset("000", "111"), 1, 3)
    assert counts == {0: 2, bits("100"): 1, bits("010"): 1, bits("001"): 1}
    assert set(superset_counts([], 2, 4).values()) == {0}
    single = superset_counts(blockset("0101100"), 2, 7)
    assert single[bits("0101000")] == 1  # s = {2,4}
    assert single[bits("1100000")] == 0  # s = {1,2}


def brute_counts(blocks, t, v):
    return {
        s: sum(1 for x in blocks if x & s == s)
        for i in range(t + 1)
        for c in combinations(range(v), i)
        for s in [sum(1 << j for j in c)]
    }


def test_superset_counts_paths_agree_exhaustively_small():
    for v in (1, 2, 3):
        for mask in range(1 << (1 << v)):
            blocks = [x for x in range(1 << v) if (mask >> x) & 1]
            for t in range(v + 1):
                direct = superset_counts(blocks, t, v, method="direct")
                assert direct == superset_counts(blocks, t, v, method="zeta")
                assert direct == brute_counts(blocks, t, v)


def test_superset_counts_paths_agree_on_full_cubes():
    for v in range(1, 11):
        blocks = range(1 << v)
        t = min(v, 3)
        assert superset_counts(blocks, t, v, method="direct") == superset_counts(blocks, t, v, method="zeta")


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 10).flatmap(lambda v: st.tuples(
    st.just(v), st.integers(0, min(v, 4)), st.sets(st.integers(0, (1 << v) - 1), max_size=80))))
def test_superset_counts_paths_agree_randomized(case):
    v, t, blocks = case
    assert superset_counts(blocks, t, v, method="direct") == superset_counts(blocks, t, v, method="zeta")


def test_superset_counts_auto_switches_to_zeta(monkeypatch):
    import cubetrades.boolcube as bc

    calls = []
    monkeypatch.setattr(bc, "_superset_counts_zeta", lambda *a: calls.append(a) or {})
    monkeypatch.setattr(bc, "DIRECT_COUNT_THRESHOLD", 10)
    bc.superset_counts(range(16), 2, 4)
    assert calls


def test_anf_examples():
    top = anf(blockset("111"), 3)
    assert top.monomials == {0b111} and top.degree == 3
    assert str(top) == "x1*x2*x3"
    zero = anf([], 3)
    assert zero.degree == -1 and not zero.monomials
    flat = blockset("000", "011", "100", "111")
    poly = anf(flat, 3)
    assert poly.monomials == anf_bruteforce(flat, 3)
    assert poly.degree == 1
    assert str(poly) == "1 + x2 + x3"


def test_anf_matches_bruteforce_and_round_trips_small():
    for v in (1, 2, 3):
        for mask in range(1 << (1 << v)):
            support = {x for x in range(1 << v) if (mask >> x) & 1}
            poly = anf(support, v)
            assert poly.monomials == anf_bruteforce(support, v)
            assert {x for x in range(1 << v) if poly.evaluate(x)} == support


def test_anf_round_trip_random_up_to_12():
    rng = random.Random(7)
    for v in range(4, 13):
        for _ in range(5):
            support = {x for x in range(1 << v) if rng.random() < 0.3}
            poly = anf(support, v)
            assert poly.support() == support
            sample = rng.sample(range(1 << v), min(20, 1 << v))
            assert [poly.evaluate(x) for x in sample] == [int(x in support) for x in sample]


def test_anf_degree_of_monomial_supports():
    # the support of a single monomial m is the subcube of points containing m
    for m in range(16):
        support = {x for x in range(16) if x & m == m}
        assert anf(support, 4).monomials == {m}
        assert eval_anf({m}, 15) == 1


def test_mobius_transform_is_an_involution():
    values = np.random.default_rng(1).integers(0, 2, 256, dtype=np.uint8)
    assert np.array_equal(mobius_transform(mobius_transform(values)), values)


def test_capacity_and_parameter_gates():
    with pytest.raises(CapacityError):
        anf([0], 30)
    with pytest.raises(ParameterError):
        anf([8], 3)
    with pytest.raises(ParameterError):
        superset_counts([0], 5, 3)
