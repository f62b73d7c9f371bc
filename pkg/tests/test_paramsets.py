import random

import pytest

from propus.errors import EvenModulus
from propus.paramsets import (
    BLOCK_SUM,
    PAIR_COUNT,
    SQUARE_SUM,
    PropusParameterSet,
    enumerate_propus_params,
    h_feasible,
    propus_feasible,
    validate_params,
)
from propus.residues import generate_subgroup, orbit_table
from oracles import brute_param_sets, naive_orbits, subset_sum_reachable


def P(v, k, lam):
    return PropusParameterSet(v, tuple(k), lam)


def test_validate_examples():
    assert validate_params(P(67, (33, 28, 28, 31), 53)) == []
    assert validate_params(P(7, (3, 3, 3, 1), 3)) == []
    assert set(validate_params(P(7, (3, 3, 3, 2), 3))) == {PAIR_COUNT, BLOCK_SUM, SQUARE_SUM}


def test_lambda_is_cross_checked_not_recomputed():
    # a header with the wrong lambda; the blocks have lambda = 46
    bad = validate_params(P(61, (28, 27, 27, 25), 49))
    assert bad == [PAIR_COUNT, BLOCK_SUM]


def test_enumerate_v7():
    got = {(p.v, p.k, p.lam) for p in enumerate_propus_params(7)}
    assert got == {(7, (3, 3, 3, 1), 3), (7, (3, 2, 2, 2), 2)}


@pytest.mark.parametrize("v", [7, 13, 19, 31, 49, 61, 67, 103])
def test_enumerate_matches_brute_force(v):
    got = {(p.v, p.k, p.lam) for p in enumerate_propus_params(v)}
    assert got == brute_param_sets(v)


def test_enumerate_contains_known_sets():
    v67 = {str(p) for p in enumerate_propus_params(67)}
    assert {"(67;33,28,28,31;53)", "(67;30,31,31,27;52)", "(67;30,30,30,28;51)"} <= v67
    v49 = {str(p) for p in enumerate_propus_params(49)}
    assert {"(49;21,21,21,21;35)", "(49;22,24,24,18;39)", "(49;22,22,22,19;36)"} <= v49


def test_enumerate_rejects_even():
    with pytest.raises(EvenModulus):
        enumerate_propus_params(10)


def test_eliminating_lambda_agrees():
    # the pair-count and block-sum equations together are equivalent to the square-sum one
    rng = random.Random(7)
    checked = 0
    while checked < 1000:
        v = rng.randrange(3, 400, 2)
        k = tuple(rng.randrange(0, v + 1) for _ in range(4))
        lam = sum(k) - v
        p = P(v, k, lam)
        both = PAIR_COUNT not in validate_params(p) and BLOCK_SUM not in validate_params(p)
        assert both == (SQUARE_SUM not in validate_params(p))
        checked += 1
    for v in range(3, 200, 2):
        for p in enumerate_propus_params(v):
            assert validate_params(p) == []
            assert p.k[1] == p.k[2] and p.k[0] >= p.k[3] and 2 * max(p.k) <= v


@pytest.mark.parametrize(
    "params, v, gens, expected",
    [
        (P(7, (3, 2, 2, 2), 2), 7, [2], False),
        (P(7, (3, 3, 3, 1), 3), 7, [2], True),
        (P(13, (5, 5, 5, 4), 6), 13, [3], False),
    ],
)
def test_h_feasible_examples(params, v, gens, expected):
    t = orbit_table(v, generate_subgroup(v, gens))
    assert h_feasible(params, t) is expected
    sizes = [len(o) for o in naive_orbits(v, t.subgroup.elements)]
    assert all(subset_sum_reachable(sizes, x) for x in params.k) is expected


def test_propus_feasible_explains_extra_v67_set():
    t = orbit_table(67, generate_subgroup(67, [29]))
    p = P(67, (33, 30, 30, 27), 53)
    assert h_feasible(p, t)
    assert not propus_feasible(p, t)
