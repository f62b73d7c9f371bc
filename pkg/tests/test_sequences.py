import pytest
from hypothesis import given, settings, strategies as st

from propus.errors import ZeroShift
from propus.residues import ResidueSet, generate_subgroup, orbit_table
from propus.sequences import paf, set_autocorrelation, to_sequence
from propus.search import invariant_indicators
from oracles import naive_paf

V49_X2 = [3, 5, 7, 8, 9, 13, 14, 15, 16, 21, 25, 28, 29, 32, 35, 37, 38, 39, 41, 42, 43, 44, 46, 47]


def test_to_sequence():
    assert to_sequence(ResidueSet(7, [])).entries == (1,) * 7
    assert to_sequence(ResidueSet(7, [0])).entries == (-1, 1, 1, 1, 1, 1, 1)
    assert to_sequence(ResidueSet(49, V49_X2)).total == 1


def test_paf_all_ones():
    prof = paf(to_sequence(ResidueSet(11, [])))
    assert prof.values == (11,) * 11


def test_paf_v49_first_family():
    prof = paf(to_sequence(ResidueSet(49, V49_X2)))
    assert list(prof.values[:25]) == [
        49, 1, -3, -3, 1, -3, 1, 1, -3, -3, 1, -3, -3, -3, 1, -3, 1, -3, 1, 1, -3, 1, 1, 1, -3
    ]
    assert prof.optimal and prof.balanced and prof.three_level


def test_optimality_only_defined_for_1_mod_4():
    prof = paf(to_sequence(ResidueSet(7, [3, 5, 6])))
    assert prof.optimal is None
    assert prof.values[1:] == (-1,) * 6


def test_set_autocorrelation_examples():
    for s in range(1, 7):
        assert set_autocorrelation(ResidueSet(7, [3, 5, 6]), s) == 1
        assert set_autocorrelation(ResidueSet(7, [0]), s) == 0
    assert set_autocorrelation(ResidueSet(49, V49_X2), 1) == 12
    with pytest.raises(ZeroShift):
        set_autocorrelation(ResidueSet(7, [1]), 7)


@st.composite
def residue_sets(draw, max_v=60):
    v = draw(st.integers(2, max_v))
    return ResidueSet(v, draw(st.sets(st.integers(0, v - 1))))


@given(residue_sets())
def test_paf_identity_with_set_counts(x):
    prof = paf(to_sequence(x))
    assert list(prof.values) == naive_paf(set(x), x.v)
    assert prof.values[0] == x.v
    for s in range(1, x.v):
        assert prof.values[s] == x.v - 4 * (len(x) - set_autocorrelation(x, s))
        assert prof.values[s] == prof.values[x.v - s]
        assert (prof.values[s] - x.v) % 4 == 0


@settings(max_examples=30)
@given(st.sampled_from([(13, 3), (19, 7), (31, 5), (37, 10), (49, 18)]), st.randoms())
def test_paf_constant_on_shift_orbits(case, rnd):
    v, g = case
    t = orbit_table(v, generate_subgroup(v, [g]))
    ind = invariant_indicators(t, rnd.randrange(v + 1))
    if not len(ind):
        return
    row = ind[rnd.randrange(len(ind))]
    x = ResidueSet(v, [a for i, o in enumerate(t.orbits) if row[i] for a in o])
    vals = paf(to_sequence(x)).values
    for s in range(1, v):
        for h in t.subgroup:
            assert vals[h * s % v] == vals[s]


def test_gs_families_sum_to_zero(entries):
    for e in entries:
        f = e.family
        total = [sum(paf(to_sequence(b)).values[s] for b in f.blocks) for s in range(f.v)]
        assert total[0] == 4 * f.v
        assert set(total[1:]) == {0}
