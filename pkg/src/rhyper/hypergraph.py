"""Oriented ribbon hypergraphs as labelled permutation pairs, and their formal sums."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .permcore import Perm, compose, cycles, sequence_parity

ZERO = None

Labels = tuple[tuple[int, int], ...]


def _labels(obj) -> Labels:
    if isinstance(obj, Mapping):
        items = obj.items()
    else:
        items = obj
    return tuple(sorted((int(k), int(v)) for k, v in items))


@dataclass(frozen=True)
class OrientedGraphTerm:
    """A labelled ribbon hypergraph with orientation data and a coefficient.

    Vertices and boundaries with edges are keyed by their minimal edge.
    ``isolated`` lists edgeless vertices as (vertex label, boundary label)
    pairs; each such vertex carries exactly one boundary circle.
    For odd d the orientation orders all edges; for even d it orders the
    hyperedges, each named by its minimal edge.
    """

    edge_count: int
    sigma0: Perm
    sigma1: Perm
    vertex_labels: Labels
    boundary_labels: Labels
    d: int
    orientation: tuple[int, ...]
    coeff: Fraction = Fraction(1)
    isolated: Labels = ()

    @cached_property
    def sigma_inf(self) -> Perm:
        return compose(self.sigma0.inverse(), self.sigma1)

    @cached_property
    def vertices(self) -> list[tuple[int, ...]]:
        return cycles(self.sigma0)

    @cached_property
    def hyperedges(self) -> list[tuple[int, ...]]:
        return cycles(self.sigma1)

    @cached_property
    def boundary_cycles(self) -> list[tuple[int, ...]]:
        return cycles(self.sigma_inf)

    @property
    def n(self) -> int:
        return len(self.vertex_labels) + len(self.isolated)

    @property
    def m(self) -> int:
        return len(self.boundary_labels) + len(self.isolated)

    @property
    def signature(self) -> tuple[int, int, int]:
        return (self.m, self.n, self.d)

    def counts(self) -> tuple[int, int, int, int]:
        """(#V, #H, #B, #E)."""
        return (self.n, len(self.hyperedges), self.m, self.edge_count)

    @cached_property
    def vertex_of(self) -> dict[int, int]:
        """Edge -> label of its vertex."""
        lab = dict(self.vertex_labels)
        return {e: lab[c[0]] for c in self.vertices for e in c}

    @cached_property
    def boundary_of(self) -> dict[int, int]:
        """Edge -> label of the boundary whose walk passes it."""
        lab = dict(self.boundary_labels)
        return {e: lab[c[0]] for c in self.boundary_cycles for e in c}

    def with_coeff(self, c) -> OrientedGraphTerm:
        return replace(self, coeff=Fraction(c))

    def to_json(self) -> dict:
        out = {
            "edges": self.edge_count,
            "sigma0": list(self.sigma0.images),
            "sigma1": list(self.sigma1.images),
            "vertex_labels": {str(k): v for k, v in self.vertex_labels},
            "boundary_labels": {str(k): v for k, v in self.boundary_labels},
            "d": self.d,
            "orientation": list(self.orientation),
            "coeff": str(self.coeff),
        }
        if self.isolated:
            out["isolated"] = [list(p) for p in self.isolated]
        return out


def build(edge_count: int, sigma0, sigma1, vertex_labels, boundary_labels, d: int,
          orientation: Sequence[int] | None = None, coeff=1,
          isolated: Iterable[Sequence[int]] | None = None) -> OrientedGraphTerm:
    """Validated constructor.  Missing orientation means the standard one."""
    k = int(edge_count)
    s0 = sigma0 if isinstance(sigma0, Perm) else Perm(sigma0)
    s1 = sigma1 if isinstance(sigma1, Perm) else Perm(sigma1)
    if len(s0) != k or len(s1) != k:
        raise ValueError("permutation size differs from edge count")
    if isolated is None:
        isolated = [(1, 1)] if k == 0 else []
    iso = tuple(sorted((int(a), int(b)) for a, b in isolated))
    g = OrientedGraphTerm(k, s0, s1, _labels(vertex_labels), _labels(boundary_labels),
                          int(d), (), Fraction(coeff), iso)
    if {c[0] for c in g.vertices} != {e for e, _ in g.vertex_labels}:
        raise ValueError("vertex labels must be keyed by the minimal edge of each vertex")
    if {c[0] for c in g.boundary_cycles} != {e for e, _ in g.boundary_labels}:
        raise ValueError("boundary labels must be keyed by the minimal edge of each boundary")
    vl = sorted([v for _, v in g.vertex_labels] + [a for a, _ in iso])
    bl = sorted([v for _, v in g.boundary_labels] + [b for _, b in iso])
    if vl != list(range(1, len(vl) + 1)):
        raise ValueError(f"vertex labels must be 1..n, got {vl}")
    if bl != list(range(1, len(bl) + 1)):
        raise ValueError(f"boundary labels must be 1..m, got {bl}")
    tokens = carriers(g)
    if orientation is None:
        orientation = tokens
    orientation = tuple(int(t) for t in orientation)
    if sorted(orientation) != sorted(tokens):
        raise ValueError(f"malformed orientation {list(orientation)}; expected an order of {tokens}")
    return replace(g, orientation=orientation)


def carriers(g: OrientedGraphTerm) -> list[int]:
    """The ordered objects of an orientation in standard order."""
    if g.d % 2:
        return list(range(g.edge_count))
    return [h[0] for h in g.hyperedges]


def unit_term(d: int) -> OrientedGraphTerm:
    return build(0, [], [], {}, {}, d, [], 1, [(1, 1)])


def from_json(obj: dict) -> OrientedGraphTerm:
    return build(obj["edges"], obj["sigma0"], obj["sigma1"], obj.get("vertex_labels", {}),
                 obj.get("boundary_labels", {}), obj["d"], obj.get("orientation"),
                 Fraction(obj.get("coeff", "1")), obj.get("isolated"))


def boundaries(g: OrientedGraphTerm) -> list[tuple[int, ...]]:
    """Boundary cycles with edges, followed by empty cycles of isolated vertices."""
    return list(g.boundary_cycles) + [() for _ in g.isolated]


def degree(g: OrientedGraphTerm) -> int:
    return (g.d + 1) * len(g.hyperedges) - g.d * g.edge_count


def boundary_corners(g: OrientedGraphTerm, b: int) -> list[tuple[int, int] | None]:
    """Corners met by boundary ``b`` in the order its word is read.

    A corner (a, sigma0(a)) follows edge a.  The corners are listed along
    the inverse boundary permutation so that reading the leftover letters
    corner by corner reproduces their order inside the vertex words.  An
    isolated vertex has a single full-circle corner, reported as None.
    """
    for vl, bl in g.isolated:
        if bl == b:
            return [None]
    lab = dict(g.boundary_labels)
    for c in g.boundary_cycles:
        if lab[c[0]] == b:
            inv = g.sigma_inf.inverse()
            out = []
            a = c[0]
            for _ in c:
                out.append((a, g.sigma0(a)))
                a = inv(a)
            return out
    raise KeyError(f"unknown boundary {b}")


def _orientation_sign(g: OrientedGraphTerm, pi: Sequence[int]) -> int:
    """Sign of the relabelled orientation relative to the standard one after relabelling."""
    if g.d % 2:
        return sequence_parity([pi[o] for o in g.orientation])
    newkey = {h[0]: min(pi[e] for e in h) for h in g.hyperedges}
    return sequence_parity([newkey[o] for o in g.orientation])


def canonicalize(g: OrientedGraphTerm):
    """Return (canonical term with coefficient 1, sign) or ZERO.

    The canonical term satisfies ``g == sign * coeff * canonical``.
    """
    k = g.edge_count
    lab = dict(g.vertex_labels)
    verts = sorted(g.vertices, key=lambda c: lab[c[0]])
    blab = g.boundary_of
    s1 = g.sigma1.images
    offsets = []
    off = 0
    for c in verts:
        offsets.append(off)
        off += len(c)
    best = None
    best_sign = 0
    pi = [0] * k
    for rots in itertools.product(*[range(len(c)) for c in verts]):
        for c, r, o in zip(verts, rots, offsets):
            L = len(c)
            for j in range(L):
                pi[c[(r + j) % L]] = o + j
        s1n = [0] * k
        bn = [0] * k
        for e in range(k):
            s1n[pi[e]] = pi[s1[e]]
            bn[pi[e]] = blab[e]
        enc = (tuple(s1n), tuple(bn))
        if best is None or enc < best:
            best = enc
            best_sign = _orientation_sign(g, pi)
        elif enc == best:
            if _orientation_sign(g, pi) != best_sign:
                return ZERO
    if k == 0:
        best = ((), ())
        best_sign = 1
    s0 = []
    vlabels = []
    for c, o in zip(verts, offsets):
        L = len(c)
        vlabels.append((o, lab[c[0]]))
        s0.extend(o + (j + 1) % L for j in range(L))
    s0p, s1p = Perm(s0), Perm(best[0])
    h = OrientedGraphTerm(k, s0p, s1p, tuple(vlabels), (), g.d, (), Fraction(1), g.isolated)
    bl = tuple((c[0], best[1][c[0]]) for c in h.boundary_cycles)
    h = replace(h, boundary_labels=bl)
    h = replace(h, orientation=tuple(carriers(h)))
    return h, best_sign


class HSum:
    """Formal rational combination of canonical oriented hypergraphs of a fixed signature."""

    __slots__ = ("m", "n", "d", "terms")

    def __init__(self, m: int, n: int, d: int, terms: Mapping[OrientedGraphTerm, Fraction] | None = None):
        self.m, self.n, self.d = m, n, d
        self.terms: dict[OrientedGraphTerm, Fraction] = {}
        if terms:
            for t, c in terms.items():
                self.add_term(t, c)

    def add_term(self, g: OrientedGraphTerm, scale=1) -> None:
        if g.signature != (self.m, self.n, self.d):
            raise ValueError("mixed signatures")
        if not g.coeff or not scale:
            return
        r = canonicalize(g)
        if r is ZERO:
            return
        key, s = r
        self._add_key(key, g.coeff * s * scale)

    def _add_key(self, key: OrientedGraphTerm, c) -> None:
        v = self.terms.get(key, 0) + c
        if v:
            self.terms[key] = Fraction(v)
        else:
            self.terms.pop(key, None)

    def iadd(self, other: HSum, scale=1) -> HSum:
        if (other.m, other.n, other.d) != (self.m, self.n, self.d):
            raise ValueError("mixed signatures")
        for k, c in other.terms.items():
            self._add_key(k, c * scale)
        return self

    def copy(self) -> HSum:
        out = HSum(self.m, self.n, self.d)
        out.terms = dict(self.terms)
        return out

    def __add__(self, other: HSum) -> HSum:
        return self.copy().iadd(other)

    def __sub__(self, other: HSum) -> HSum:
        return self.copy().iadd(other, -1)

    def scaled(self, c) -> HSum:
        out = HSum(self.m, self.n, self.d)
        if c:
            out.terms = {k: v * c for k, v in self.terms.items()}
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, HSum) and (self.m, self.n, self.d) == (other.m, other.n, other.d) \
            and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def items(self) -> list[tuple[OrientedGraphTerm, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0]))

    def term_list(self) -> list[OrientedGraphTerm]:
        return [k.with_coeff(c) for k, c in self.items()]

    def __repr__(self) -> str:
        return f"HSum(m={self.m}, n={self.n}, d={self.d}, {len(self.terms)} terms)"

    def to_json(self) -> list:
        return [t.to_json() for t in self.term_list()]


def _sort_key(g: OrientedGraphTerm):
    return (g.edge_count, g.sigma0.images, g.sigma1.images, g.vertex_labels, g.boundary_labels, g.isolated)


def hsum_normalize(terms: Iterable[OrientedGraphTerm], signature: tuple[int, int, int] | None = None) -> HSum:
    terms = list(terms)
    if signature is None:
        if not terms:
            raise ValueError("empty term list needs an explicit signature")
        signature = terms[0].signature
    out = HSum(*signature)
    for t in terms:
        out.add_term(t)
    return out


def hsum_from_json(arr: list, signature: tuple[int, int, int] | None = None) -> HSum:
    return hsum_normalize([from_json(o) for o in arr], signature)


def relabel(g: OrientedGraphTerm, vperm: Mapping[int, int] | None = None,
            bperm: Mapping[int, int] | None = None) -> OrientedGraphTerm:
    """Rename vertex and boundary labels (no sign is attached here)."""
    vp = vperm or {}
    bp = bperm or {}
    return replace(
        g,
        vertex_labels=tuple((e, vp.get(v, v)) for e, v in g.vertex_labels),
        boundary_labels=tuple((e, bp.get(b, b)) for e, b in g.boundary_labels),
        isolated=tuple(sorted((vp.get(v, v), bp.get(b, b)) for v, b in g.isolated)),
    )


def permute_edges(g: OrientedGraphTerm, pi: Sequence[int]) -> OrientedGraphTerm:
    """The same hypergraph with edge e renamed pi[e]; orientation is transported."""
    k = g.edge_count
    inv = [0] * k
    for e, x in enumerate(pi):
        inv[x] = e
    s0 = Perm(pi[g.sigma0(inv[i])] for i in range(k))
    s1 = Perm(pi[g.sigma1(inv[i])] for i in range(k))
    vl = {min(pi[e] for e in c): g.vertex_of[c[0]] for c in g.vertices}
    bl = {min(pi[e] for e in c): g.boundary_of[c[0]] for c in g.boundary_cycles}
    if g.d % 2:
        orient = [pi[o] for o in g.orientation]
    else:
        hk = {h[0]: min(pi[e] for e in h) for h in g.hyperedges}
        orient = [hk[o] for o in g.orientation]
    return build(k, s0, s1, vl, bl, g.d, orient, g.coeff, g.isolated)


def standard(edge_count: int, sigma0, sigma1, d: int = 1) -> OrientedGraphTerm:
    """Term with vertices and boundaries labelled 1, 2, ... in order of minimal edge."""
    s0 = sigma0 if isinstance(sigma0, Perm) else Perm(sigma0)
    s1 = sigma1 if isinstance(sigma1, Perm) else Perm(sigma1)
    sinf = compose(s0.inverse(), s1)
    vl = {c[0]: i + 1 for i, c in enumerate(cycles(s0))}
    bl = {c[0]: i + 1 for i, c in enumerate(cycles(sinf))}
    return build(edge_count, s0, s1, vl, bl, d)


def sample_graphs(d: int = 1) -> dict[str, OrientedGraphTerm]:
    """Three small hypergraphs: a tripod hyperedge on three univalent vertices, a
    trivalent vertex doubly glued to a trivalent hyperedge, and a trivalent vertex on
    a bivalent and a univalent hyperedge."""
    return {
        "gamma1": standard(3, [0, 1, 2], [1, 2, 0], d),
        "gamma2": standard(3, [1, 2, 0], [1, 2, 0], d),
        "gamma3": standard(3, [1, 2, 0], [1, 0, 2], d),
    }
