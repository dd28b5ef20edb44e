"""Horizontal and vertical compositions of hypergraph sums."""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterator

from .hypergraph import HSum, OrientedGraphTerm, boundary_corners, build, unit_term


def unit(d: int = 1) -> HSum:
    out = HSum(1, 1, d)
    out.add_term(unit_term(d))
    return out


def units(k: int, d: int = 1) -> HSum:
    """Horizontal product of k units (the identity of RH(k, k))."""
    out = HSum(0, 0, d)
    out.terms[_empty(d)] = Fraction(1)
    for _ in range(k):
        out = hcompose(out, unit(d))
    return out


def _empty(d: int) -> OrientedGraphTerm:
    return build(0, [], [], {}, {}, d, [], 1, [])


def hcompose_terms(a: OrientedGraphTerm, b: OrientedGraphTerm) -> OrientedGraphTerm:
    """Disjoint union; b's edges and labels are shifted past a's."""
    if a.d != b.d:
        raise ValueError("parity mismatch")
    k1 = a.edge_count
    k = k1 + b.edge_count
    s0 = list(a.sigma0.images) + [k1 + i for i in b.sigma0.images]
    s1 = list(a.sigma1.images) + [k1 + i for i in b.sigma1.images]
    vl = dict(a.vertex_labels)
    vl.update({k1 + e: a.n + v for e, v in b.vertex_labels})
    bl = dict(a.boundary_labels)
    bl.update({k1 + e: a.m + v for e, v in b.boundary_labels})
    iso = list(a.isolated) + [(a.n + v, a.m + w) for v, w in b.isolated]
    orient = list(a.orientation) + [k1 + t for t in b.orientation]
    return build(k, s0, s1, vl, bl, a.d, orient, a.coeff * b.coeff, iso)


def hcompose(g1: HSum, g2: HSum) -> HSum:
    if g1.d != g2.d:
        raise ValueError("parity mismatch")
    out = HSum(g1.m + g2.m, g1.n + g2.n, g1.d)
    for t1 in g1.term_list():
        for t2 in g2.term_list():
            out.add_term(hcompose_terms(t1, t2))
    return out


def _weak_compositions(r: int, c: int) -> Iterator[tuple[int, ...]]:
    for bars in itertools.combinations(range(r + c - 1), c - 1):
        prev = -1
        parts = []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(r + c - 2 - prev)
        yield tuple(parts)


def placements(edges: tuple[int, ...], corners: list) -> Iterator[list[tuple[object, tuple[int, ...]]]]:
    """Ways to attach a vertex with cyclically ordered ``edges`` to a boundary.

    Yields lists of (corner, run) where the runs, read along the corners,
    concatenate to a rotation of ``edges``.
    """
    r = len(edges)
    if r == 0:
        yield []
        return
    if corners == [None]:
        yield [(None, edges)]
        return
    c = len(corners)
    for s in range(r):
        rot = edges[s:] + edges[:s]
        for comp in _weak_compositions(r, c):
            out = []
            pos = 0
            for corner, size in zip(corners, comp):
                if size:
                    out.append((corner, rot[pos:pos + size]))
                pos += size
            yield out


def vcompose_terms(t2: OrientedGraphTerm, t1: OrientedGraphTerm) -> list[OrientedGraphTerm]:
    """All gluings of the vertices of t2 onto the boundaries of t1.

    Orientation carriers of the result are those of t2 followed by those of t1.
    """
    if t1.m != t2.n:
        raise ValueError("arity mismatch")
    if t1.d != t2.d:
        raise ValueError("parity mismatch")
    k1 = t1.edge_count
    k = k1 + t2.edge_count
    m = t1.m
    lab2 = dict(t2.vertex_labels)
    v2 = {lab2[c[0]]: tuple(k1 + e for e in c) for c in t2.vertices}
    for v, _ in t2.isolated:
        v2[v] = ()
    iso2 = dict(t2.isolated)
    iso1 = {b: v for v, b in t1.isolated}
    corners = {i: boundary_corners(t1, i) for i in range(1, m + 1)}
    b2 = t2.boundary_of
    b1 = t1.boundary_of
    s1 = list(t1.sigma1.images) + [k1 + i for i in t2.sigma1.images]
    orient = [k1 + t for t in t2.orientation] + list(t1.orientation)
    coeff = t1.coeff * t2.coeff
    results = []
    for choice in itertools.product(*[list(placements(v2[i], corners[i])) for i in range(1, m + 1)]):
        s0 = list(t1.sigma0.images) + [None] * t2.edge_count
        vl = dict(t1.vertex_labels)
        iso = []
        for i, runs in zip(range(1, m + 1), choice):
            for corner, run in runs:
                if corner is None:
                    for j, f in enumerate(run):
                        s0[f] = run[(j + 1) % len(run)]
                    vl[min(run)] = iso1[i]
                else:
                    a, nxt = corner
                    s0[a] = run[0]
                    for f, g in zip(run, run[1:]):
                        s0[f] = g
                    s0[run[-1]] = nxt
            if not runs and i in iso1:
                iso.append((iso1[i], iso2[i]))
        bl = {}
        for c in _sinf_cycles(s0, s1):
            lab = {b2[e - k1] for e in c if e >= k1}
            if len(lab) > 1:
                raise AssertionError("boundary meets two boundaries of the upper graph")
            if lab:
                bl[c[0]] = lab.pop()
            else:
                i = b1[c[0]]
                if i not in iso2:
                    raise AssertionError("boundary without upper edges is not glued to an edgeless vertex")
                bl[c[0]] = iso2[i]
        labels = sorted(list(bl.values()) + [b for _, b in iso])
        if labels != list(range(1, t2.m + 1)):
            raise AssertionError(f"composite boundary labels {labels} do not match {t2.m} outputs")
        results.append(build(k, s0, s1, vl, bl, t1.d, orient, coeff, iso))
    return results


def _sinf_cycles(s0: list[int], s1: list[int]) -> list[tuple[int, ...]]:
    """Cycles of sigma0^-1 o sigma1, each from its minimal edge."""
    k = len(s0)
    inv = [0] * k
    for i, x in enumerate(s0):
        inv[x] = i
    seen = [False] * k
    out = []
    for i in range(k):
        if not seen[i]:
            c = []
            j = i
            while not seen[j]:
                seen[j] = True
                c.append(j)
                j = inv[s1[j]]
            out.append(tuple(c))
    return out


def vcompose(g2: HSum, g1: HSum) -> HSum:
    """Glue all outputs of g1 to all inputs of g2."""
    if g1.m != g2.n:
        raise ValueError("arity mismatch")
    if g1.d != g2.d:
        raise ValueError("parity mismatch")
    out = HSum(g2.m, g1.n, g1.d)
    for t1 in g1.term_list():
        for t2 in g2.term_list():
            for g in vcompose_terms(t2, t1):
                out.add_term(g)
    return out
