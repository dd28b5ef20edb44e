import random

import pytest

from rhyper.mcstar import (PolyContext, PolySeries, check_mc, constant, darboux_gamma, hbar_bracket,
                           random_poly, star, variable)

CONTEXTS = [PolyContext((0, 1, 1), d=1), PolyContext((1, 1), d=1), PolyContext((0, 2), d=1)]


def _homogeneous(ctx, rng):
    while True:
        parts = random_poly(ctx, rng, terms=4, max_deg=3, max_hbar=1).homogeneous_parts()
        if parts:
            return max(parts.items(), key=lambda kv: len(kv[1].terms))


def test_star_p_x_even():
    ctx = PolyContext((0,), d=1)
    x, p = variable(ctx, 0), variable(ctx, 1)
    assert star(p, x) == p * x + constant(ctx, 1, hbar=1)
    assert star(x, p) == x * p


def test_commutator_p_x_is_one():
    ctx = PolyContext((0,), d=1)
    x, p = variable(ctx, 0), variable(ctx, 1)
    assert hbar_bracket(p, x) == constant(ctx, 1)


def test_odd_variables_square_to_zero():
    ctx = PolyContext((1,), d=1)
    x = variable(ctx, 0)
    assert not (x * x)


@pytest.mark.parametrize("ctx", CONTEXTS)
def test_star_associative(ctx):
    rng = random.Random(0)
    for _ in range(50):
        f, g, h = (random_poly(ctx, rng) for _ in range(3))
        assert star(star(f, g), h) == star(f, star(g, h))


def test_star_associative_truncated():
    rng = random.Random(4)
    ctx = CONTEXTS[0]
    for _ in range(20):
        f, g, h = (random_poly(ctx, rng, terms=4, max_deg=3) for _ in range(3))
        for s in (f, g, h):
            s.max_order = 4
        assert star(star(f, g), h) == star(f, star(g, h))


@pytest.mark.parametrize("ctx", CONTEXTS)
def test_bracket_jacobi(ctx):
    rng = random.Random(1)
    nonzero = 0
    for _ in range(50):
        (a, f), (b, g), (_, h) = (_homogeneous(ctx, rng) for _ in range(3))
        lhs = hbar_bracket(f, hbar_bracket(g, h))
        rhs = hbar_bracket(hbar_bracket(f, g), h) + hbar_bracket(g, hbar_bracket(f, h)).scaled((-1) ** (a * b))
        assert lhs == rhs
        nonzero += bool(lhs)
    assert nonzero > 5


def test_support_condition():
    ctx = PolyContext((1,), d=1)
    with pytest.raises(ValueError):
        check_mc(variable(ctx, 0))


def test_xp_expansion_runs():
    ctx = PolyContext((1,), d=1)
    gamma = variable(ctx, 0) * variable(ctx, 1)
    rep = check_mc(gamma)
    assert rep["suite"] == "mc" and isinstance(rep["failures"], list)


def test_darboux_gamma_is_mc():
    gamma, window = darboux_gamma(1, 4)
    assert gamma.homogeneous_parts().keys() == {3}
    assert check_mc(gamma, window)["failures"] == []


def test_flipped_structure_constant_fails():
    gamma, window = darboux_gamma(1, 4)
    detected = 0
    for mono in sorted(gamma.terms):
        bad = gamma.copy()
        bad.terms[mono] = -bad.terms[mono]
        detected += bool(check_mc(bad, window)["failures"])
    assert detected > 0


def test_json_roundtrip():
    gamma, _ = darboux_gamma(1, 2)
    assert PolySeries.from_json(gamma.to_json()) == gamma
