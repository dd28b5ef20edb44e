from fractions import Fraction

import pytest

from rhyper.holieb import (ClosureViolation, GenKey, differential_image, embed_u, expand_letters,
                           generator_image, graded_necklace_op, ibl_differential, keys_up_to,
                           necklace_bracket, necklace_bracket_direct, necklace_cobracket,
                           necklace_cobracket_direct, relation_residue, type_sign, unembed)
from rhyper.rep import all_words
from rhyper.theta import darboux, graded
from rhyper.words import CycWord, Letter, WordSum


def _shape(key):
    return sorted((t.edge_count, len(t.vertices), len(t.hyperedges), t.m)
                  for t in generator_image(GenKey(*key), 1).term_list())


def test_generator_bracket_and_cobracket():
    assert _shape((1, 2, 0)) == [(2, 2, 1, 1)]
    assert _shape((2, 1, 0)) == [(2, 1, 1, 2)]
    gi = generator_image(GenKey(2, 1, 0), 1)
    assert gi.term_list()[0].sigma0.images == (1, 0)


def test_generator_genus_one():
    assert _shape((1, 1, 1)) == [(3, 1, 1, 1)]


def test_generator_coefficients_frozen():
    # values produced by the torsion-sign orientation, normalised by 1/|Aut|
    assert [c for _, c in generator_image(GenKey(1, 2, 0), 1).items()] == [1]
    assert [c for _, c in generator_image(GenKey(2, 1, 0), 1).items()] == [1]
    assert [c for _, c in generator_image(GenKey(1, 1, 1), 1).items()] == [Fraction(-1, 3)]
    assert sorted(c for _, c in generator_image(GenKey(2, 2, 0), 1).items()) == [-1, -1, 1, 1]


def test_even_d_signs_trivial():
    for key in keys_up_to(5):
        for t in generator_image(key, 2).term_list():
            assert type_sign(t.sigma0.images, 2) == 1


def test_invalid_key():
    with pytest.raises(ValueError):
        GenKey(1, 1, 0)


def test_differential_of_genus_one_key():
    sp = ibl_differential(GenKey(1, 1, 1))
    assert len(sp) == 1
    assert (sp[0].l, sp[0].lower, sp[0].upper) == (2, GenKey(2, 1, 0), GenKey(1, 2, 0))


def test_differential_records_l_bounded():
    assert {s.l for s in ibl_differential(GenKey(1, 2, 1))} == {1, 2}


@pytest.mark.parametrize("d", [1, 2])
def test_graph_level_relations_small(d):
    for key in keys_up_to(5):
        assert not differential_image(key, d).terms, key


def test_relation_residue_zero_on_darboux():
    f = darboux(1)
    words = all_words(f.alphabet, 3)
    for a in words:
        for b in words:
            assert not relation_residue(f, GenKey(2, 2, 0), [a, b])


def test_necklace_cobracket_single_letter():
    assert not necklace_cobracket(1, (Letter(1),))
    assert not necklace_cobracket_direct(1, (Letter(1),))


def test_necklace_cobracket_value():
    out = necklace_cobracket(2, (Letter(1), Letter(2), Letter(1)))
    w = lambda *a: CycWord(tuple(Letter(x) for x in a))
    expected = WordSum(2, {(w(), w(1, 1)): 1, (w(), w(1, 2)): 1, (w(1), w(2)): 1,
                           (w(1, 1), w()): -1, (w(1, 2), w()): -1, (w(2), w(1)): -1})
    assert out == expected


def test_necklace_doubling_equals_direct_small():
    words = all_words([Letter(1), Letter(2)], 3)
    for a in words:
        assert necklace_cobracket(2, a) == necklace_cobracket_direct(2, a)
        for b in words:
            assert necklace_bracket(2, a, b) == necklace_bracket_direct(2, a, b)


def test_necklace_bracket_skew():
    words = all_words([Letter(1), Letter(2)], 3)
    for a in words:
        for b in words:
            ab = necklace_bracket_direct(2, a, b)
            ba = necklace_bracket_direct(2, b, a)
            assert ab == ba.scaled(-1)


def test_embed_u():
    w = embed_u((Letter(1, 0),))
    assert [(a.l, a.p) for a in w.letters] == [(0, 0), (1, 0)]
    ls = (Letter(1, 2), Letter(1, 1), Letter(1, 0))
    assert len(embed_u(ls).letters) == sum(a.p for a in ls) + 2 * len(ls)


def test_unembed_roundtrip():
    for w in all_words([Letter(1, 0), Letter(1, 1), Letter(1, 2)], 3):
        res = unembed(embed_u(w.letters))
        if res is None:
            continue
        plain, sign = res
        assert plain == w and sign == 1


def test_expand_letters():
    assert len(expand_letters((Letter(1, 2),))) == 4


def test_graded_op_reduces_to_schedler():
    for a in all_words([Letter(1)], 3):
        assert graded_necklace_op(1, GenKey(2, 1, 0), [a]) == necklace_cobracket(1, a.letters)
        for b in all_words([Letter(1)], 2):
            assert graded_necklace_op(1, GenKey(1, 2, 0), [a, b]) == necklace_bracket(1, a.letters, b.letters)


def test_graded_op_genus_one_closed():
    out = graded_necklace_op(1, GenKey(1, 1, 1), [(Letter(1, 0), Letter(1, 1), Letter(1, 1))])
    for k, _ in out:
        assert sum(len(w) for w in k) == 2


def test_closure_violation_with_listed_order():
    # the unreversed values leave the image of the embedding
    from rhyper.theta import ThetaFamily, graded_alphabet, listed_value
    g = graded(1, 1)
    f = ThetaFamily(1, listed_value, "listed", graded_alphabet(1, 1), g.support)
    with pytest.raises(ClosureViolation):
        graded_necklace_op(1, GenKey(1, 1, 1), [(Letter(1, 0), Letter(1, 1), Letter(1, 1))], f)


def test_graded_op_rejects_expanded_letters():
    with pytest.raises(ValueError):
        graded_necklace_op(1, GenKey(1, 2, 0), [(Letter(1, 0, 0),), (Letter(1),)])
