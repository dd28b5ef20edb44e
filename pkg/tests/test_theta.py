from fractions import Fraction

import pytest

from rhyper.theta import (check_cyclic_invariance, darboux, darboux_alphabet, family_from_json,
                          from_table, graded, graded_alphabet, listed_value, rescale)
from rhyper.words import Letter


def test_darboux_values():
    f = darboux(2)
    a1, b1, a2, b2 = darboux_alphabet(2)
    assert f((a1, b1)) == 1
    assert f((b1, a1)) == -1
    assert f((a1, a2)) == 0
    assert f((a1, b2)) == 0


def test_listed_values():
    assert listed_value((Letter(1, 0, 0), Letter(1, 0, 1))) == 1
    assert listed_value((Letter(1, 1, 1), Letter(1, 1, 0), Letter(1, 1, 2))) == 1
    assert listed_value((Letter(1, 1, 0), Letter(1, 1, 2), Letter(1, 1, 1))) == 1
    assert listed_value(tuple(Letter(1, 2, l) for l in (1, 0, 3, 2))) == -1
    assert listed_value((Letter(1, 1, 0), Letter(1, 1, 1), Letter(1, 1, 2))) == 0


def test_graded_reads_reversed():
    f = graded(1, 3)
    for k in range(4):
        block = tuple(Letter(1, k, l) for l in range(k + 2))
        assert f(block) == (-1) ** (k + 1) * listed_value(tuple(reversed(block)))
        assert f(block) == 1


def test_graded_support_needs_equal_alpha():
    f = graded(2, 1)
    assert f((Letter(1, 1, 0), Letter(1, 1, 1), Letter(2, 1, 2))) == 0


@pytest.mark.parametrize("family", [darboux(1), darboux(2), graded(1, 2), graded(2, 1)])
def test_cyclic_invariance(family):
    rep = check_cyclic_invariance(family, 4)
    assert rep["failures"] == []


def test_k0_pair_consistent_with_rotation():
    f = graded(1, 0)
    a, b = Letter(1, 0, 0), Letter(1, 0, 1)
    assert f((a, b)) == 1 and f((b, a)) == -1


def test_rescaled_family_invariant():
    f = rescale(graded(1, 2), {2: 2, 3: -3, 4: Fraction(1, 2)})
    assert check_cyclic_invariance(f, 4)["failures"] == []
    assert f((Letter(1, 1, 0), Letter(1, 1, 1), Letter(1, 1, 2))) == -3


def test_from_table_rejects_inconsistent():
    a = Letter(1, 1)
    with pytest.raises(ValueError):
        # (a, a) with odd a: rotation forces value = -value
        from_table(1, [((Letter(1), Letter(1)), 1), ((Letter(1), Letter(1)), 2)])
    f = from_table(1, [((Letter(1), Letter(2)), 1)])
    assert f((Letter(2), Letter(1))) == -1
    assert a.degree == 1


def test_family_json():
    f = family_from_json({"d": 1, "entries": [{"letters": [{"alpha": 1}, {"alpha": 2}], "value": "3/2"}]})
    assert f((Letter(2), Letter(1))) == Fraction(-3, 2)
    g = family_from_json({"name": "graded", "N": 1, "max_p": 1, "lambdas": {"3": "2"}})
    assert g((Letter(1, 1, 0), Letter(1, 1, 1), Letter(1, 1, 2))) == 2
    assert len(g.alphabet) == len(graded_alphabet(1, 1))
