from dataclasses import replace
from fractions import Fraction

import pytest

from rhyper import hypergraph as hg
from rhyper.hypergraph import HSum, boundaries, boundary_corners, build, canonicalize, permute_edges


@pytest.fixture
def graphs():
    return hg.sample_graphs(1)


def test_counts(graphs):
    assert graphs["gamma1"].counts() == (3, 1, 1, 3)
    assert graphs["gamma2"].counts() == (1, 1, 3, 3)
    assert graphs["gamma3"].counts() == (1, 2, 2, 3)


def test_unit_graph():
    u = hg.unit_term(1)
    assert (u.n, u.m, u.edge_count) == (1, 1, 0)
    assert boundaries(u) == [()]


def test_gamma3_boundaries(graphs):
    assert sorted(boundaries(graphs["gamma3"])) == [(0,), (1, 2)]


def test_corners(graphs):
    g3 = graphs["gamma3"]
    b0 = g3.boundary_of[0]
    assert len(boundary_corners(g3, b0)) == 1
    g2 = graphs["gamma2"]
    assert [len(boundary_corners(g2, b)) for b in (1, 2, 3)] == [1, 1, 1]


def test_build_validation():
    with pytest.raises(ValueError):
        build(3, [1, 2, 0], [1, 2, 0], {0: 1}, {0: 1}, 1)  # three boundaries, one label
    with pytest.raises(ValueError):
        build(3, [0, 1, 2], [1, 2, 0], {0: 1, 1: 2, 2: 3}, {0: 1}, 1, [0, 1])
    with pytest.raises(ValueError):
        build(2, [0, 1, 2], [1, 2, 0], {}, {}, 1)


def test_relabel_edges_with_standard_orientation(graphs):
    g3 = graphs["gamma3"]
    t = replace(permute_edges(g3, [1, 0, 2]), orientation=(0, 1, 2))
    c3, s3 = canonicalize(g3)
    ct, st = canonicalize(t)
    assert ct == c3 and st * s3 == -1
    assert not hg.hsum_normalize([g3, t]).terms


def test_transported_orientation_is_same_term(graphs):
    g3 = graphs["gamma3"]
    t = permute_edges(g3, [2, 0, 1])
    assert canonicalize(t) == canonicalize(g3)


def test_orientation_reversing_automorphism_is_zero():
    # a bivalent vertex on two unary hyperedges, one boundary: the rotation swaps the edges
    g = hg.standard(2, [1, 0], [0, 1], 1)
    assert g.m == 1
    assert canonicalize(g) is hg.ZERO
    assert canonicalize(hg.standard(2, [1, 0], [0, 1], 2)) is hg.ZERO  # swaps the two hyperedges


def test_canonical_idempotent(graphs):
    for g in graphs.values():
        c, s = canonicalize(g)
        assert canonicalize(c) == (c, 1)


def test_hsum_json_roundtrip(graphs):
    g3 = graphs["gamma3"]
    s = HSum(g3.m, g3.n, 1)
    s.add_term(g3, Fraction(3, 2))
    back = hg.hsum_from_json(s.to_json())
    assert back.items() == s.items()
    assert hg.from_json(g3.to_json()) == g3


def test_degree_formula(graphs):
    # (d+1) #H - d #E
    assert hg.degree(graphs["gamma3"]) == 2 * 2 - 3
