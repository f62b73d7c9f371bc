import random
import time

from propus.corpus import find_record
from propus.equivalence import (
    apply_automorphism,
    canonical_form,
    equivalent,
    negate_block,
    random_moves,
    swap_blocks,
    translate_block,
)
from propus.families import DifferenceFamily, verify_family


def test_translates_share_a_form(fam7):
    g = translate_block(translate_block(fam7, 0, 4), 3, 6)
    assert canonical_form(g) == canonical_form(fam7)
    assert equivalent(fam7, g)


def test_each_move_preserves_form(fam13):
    base = canonical_form(fam13)
    assert canonical_form(negate_block(fam13, 1)) == base
    assert canonical_form(apply_automorphism(fam13, 2)) == base
    assert canonical_form(swap_blocks(fam13, 0, 1)) == base


def test_moves_preserve_the_difference_property(entries):
    rng = random.Random(5)
    for e in entries[:15]:
        g = random_moves(e.family, 10, rng)
        assert verify_family(g).is_gs


def test_v19_listed_families_differ():
    f, g = find_record(3, "(19;7,9,9,6;12)").difference_families()
    assert canonical_form(f) != canonical_form(g)
    assert not equivalent(f, g)


def test_v67_forms_pairwise_distinct(v67_families):
    forms = [canonical_form(f) for f in v67_families]
    assert len(v67_families) == 6
    assert len(set(forms)) == 6


def test_witness_reproduces_form(v67_families):
    f = v67_families[0]
    cf = canonical_form(f)
    for target, (i, sign, shift) in zip(cf.blocks, cf.moves):
        y = f.blocks[i].scale(sign * cf.multiplier).translate(shift)
        assert y.elements == target


def test_equivalence_is_an_equivalence_relation(entries):
    rng = random.Random(8)
    fams = [e.family for e in entries if e.family.v <= 31]
    for f in fams:
        assert equivalent(f, f)
        g = random_moves(f, 6, rng)
        h = random_moves(g, 6, rng)
        assert equivalent(f, g) and equivalent(g, f)
        assert equivalent(g, h) and equivalent(f, h)


def test_different_sizes_never_equivalent(fam7, fam13):
    assert not equivalent(fam7, fam13)


def test_complement_option(fam7):
    blocks = [b.complement() for b in fam7.blocks]
    g = DifferenceFamily.from_blocks(fam7.params, blocks)
    # complements are not among the moves
    assert canonical_form(g).sizes != canonical_form(fam7).sizes
    assert canonical_form(g, complements=True) == canonical_form(fam7, complements=True)


def test_canonical_form_v307_is_fast(entries):
    f = next(e.family for e in entries if e.family.v == 307)
    t0 = time.perf_counter()
    canonical_form(f)
    assert time.perf_counter() - t0 < 5
