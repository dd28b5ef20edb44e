"""Generators of the involutive homotopy Lie bialgebra prop, their hypergraph images,
the induced operations on cyclic words and the necklace structures.

Sign conventions live in the shifted picture, where words carry degree
(letter degrees) + d and every generator is a (graded) symmetric operation.
An unshifted hypergraph sum G represents the shifted operation obtained by
the decalage of inputs and outputs (see ``shifted_eval``); on that level
vertical composition is unchanged, horizontal composition picks up
``hcompose_sign`` and relabelling picks up the signs of the label
permutations when d is odd.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

from .hypergraph import HSum, OrientedGraphTerm, build, relabel
from .permcore import Perm, compose, cycles, sequence_parity
from .prop import hcompose_terms, units, vcompose
from .rep import _Plan, eval_graph, eval_term
from .theta import ThetaFamily, darboux, graded
from .words import CycWord, Letter, WordSum, canonical_cyclic, koszul_sign, word_degree


@dataclass(frozen=True, order=True)
class GenKey:
    m: int
    n: int
    a: int = 0

    def __post_init__(self):
        if self.m < 1 or self.n < 1 or self.a < 0 or self.m + self.n + self.a < 3:
            raise ValueError(f"invalid generator key {self}")

    @property
    def edges(self) -> int:
        return self.m + self.n + 2 * self.a - 1

    def degree(self, d: int) -> int:
        return 1 - d * (self.m + self.n + 2 * self.a - 2)

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "a": self.a}


def valid_key(m: int, n: int, a: int) -> bool:
    return m >= 1 and n >= 1 and a >= 0 and m + n + a >= 3


def keys_up_to(total: int) -> list[GenKey]:
    """All keys with m + n + 2a <= total."""
    out = []
    for s in range(3, total + 1):
        for a in range(0, s // 2 + 1):
            for m in range(1, s - 2 * a):
                n = s - 2 * a - m
                if valid_key(m, n, a):
                    out.append(GenKey(m, n, a))
    return sorted(set(out))


# -- one-hyperedge hypergraphs ------------------------------------------------


def _rotation(K: int) -> Perm:
    return Perm([(i + 1) % K for i in range(K)])


def _conj(s0: tuple[int, ...], j: int) -> tuple[int, ...]:
    K = len(s0)
    out = [0] * K
    for i in range(K):
        out[(i + j) % K] = (s0[i] + j) % K
    return tuple(out)


@lru_cache(maxsize=None)
def generator_types(key: GenKey) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Representatives sigma0 of rotation classes of one-hyperedge hypergraphs.

    The hyperedge is the fixed cycle i -> i+1.  Each entry is
    (sigma0 images, number of rotations fixing it).
    """
    K = key.edges
    s1 = _rotation(K)
    reps = []
    seen = set()
    for images in itertools.permutations(range(K)):
        if images in seen:
            continue
        s0 = Perm(images)
        if len(cycles(s0)) != key.n:
            continue
        if len(cycles(compose(s0.inverse(), s1))) != key.m:
            continue
        orbit = {_conj(images, j) for j in range(K)}
        seen |= orbit
        rep = min(orbit)
        stab = sum(1 for j in range(K) if _conj(rep, j) == rep)
        reps.append((rep, stab))
    return tuple(sorted(reps))


def _reference_term(s0: tuple[int, ...], d: int) -> OrientedGraphTerm:
    """Labels by order of minimal edges; carriers along the hyperedge from edge 0."""
    K = len(s0)
    P0 = Perm(s0)
    s1 = _rotation(K)
    vl = {c[0]: i + 1 for i, c in enumerate(cycles(P0))}
    bl = {c[0]: i + 1 for i, c in enumerate(cycles(compose(P0.inverse(), s1)))}
    return build(K, P0, s1, vl, bl, d)


def relabel_shifted(g: OrientedGraphTerm, vperm: Sequence[int], bperm: Sequence[int]) -> OrientedGraphTerm:
    """Send vertex label i to vperm[i-1] and boundary label j to bperm[j-1].

    For odd d the coefficient is multiplied by both permutation signs.
    """
    vp = {i + 1: v for i, v in enumerate(vperm)}
    bp = {j + 1: b for j, b in enumerate(bperm)}
    h = relabel(g, vp, bp)
    if g.d % 2:
        s = sequence_parity(list(vperm)) * sequence_parity(list(bperm))
        h = h.with_coeff(h.coeff * s)
    return h


def symmetrize(g: OrientedGraphTerm) -> HSum:
    """Sum of all shifted relabellings of g."""
    out = HSum(g.m, g.n, g.d)
    for vp in itertools.permutations(range(1, g.n + 1)):
        for bp in itertools.permutations(range(1, g.m + 1)):
            out.add_term(relabel_shifted(g, vp, bp))
    return out


def type_sign(s0: tuple[int, ...], d: int) -> int:
    """Orientation sign attached to the reference term of a generator type."""
    if d % 2 == 0:
        return 1
    return _odd_type_sign(s0)


def _odd_type_sign(s0: tuple[int, ...]) -> int:
    K = len(s0)
    n = len(cycles(Perm(s0)))
    m = len(cycles(compose(Perm(s0).inverse(), _rotation(K))))
    a = (K + 1 - m - n) // 2
    e = m * (m - 1) // 2 + a
    return (-1 if e % 2 else 1) * torsion_sign(s0)


# -- exact linear algebra for the torsion sign --------------------------------


def _reduce(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = [list(r) for r in rows]
    piv = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        lead = M[r][c]
        M[r] = [x / lead for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        piv.append(c)
        r += 1
    return M[:r], piv


def _rank(vecs: list[list[Fraction]]) -> int:
    if not vecs:
        return 0
    return len(_reduce(vecs, len(vecs[0]))[1])


def _nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    M, piv = _reduce(rows, ncols)
    out = []
    for fc in (c for c in range(ncols) if c not in piv):
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(piv):
            v[pc] = -M[i][fc]
        out.append(v)
    return out


def _det_sign(cols: list[list[Fraction]]) -> int:
    """Sign of the determinant of the matrix with the given columns."""
    M = [list(r) for r in zip(*cols)]
    n = len(M)
    s = 1
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            M[c], M[p] = M[p], M[c]
            s = -s
        if M[c][c] < 0:
            s = -s
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return s


def _pfaffian(Q: list[list[Fraction]]) -> Fraction:
    n = len(Q)
    if n == 0:
        return Fraction(1)
    total = Fraction(0)
    for j in range(1, n):
        if Q[0][j]:
            rest = [i for i in range(1, n) if i != j]
            sub = [[Q[a][b] for b in rest] for a in rest]
            total += (-1) ** (j - 1) * Q[0][j] * _pfaffian(sub)
    return total


def torsion_sign(s0: Sequence[int]) -> int:
    """Sign of the Reidemeister torsion of the closed surface of a one-hyperedge graph.

    Cells: the hyperedge centre and the vertices (dimension 0, centre first,
    vertices by minimal edge), the edges 0..K-1 oriented centre to vertex, and
    the boundaries by minimal edge.  Homology is based by the centre, by
    a first-homology basis of positive symplectic volume, and by the sum of
    all boundaries.
    """
    K = len(s0)
    P0 = Perm(s0)
    s1 = _rotation(K)
    vc = cycles(P0)
    bc = cycles(compose(P0.inverse(), s1))
    n, m = len(vc), len(bc)
    vof = {e: i for i, c in enumerate(vc) for e in c}
    one = Fraction(1)

    def d1(e):
        v = [Fraction(0)] * (n + 1)
        v[0] -= one
        v[1 + vof[e]] += one
        return v

    def d2(b):
        v = [Fraction(0)] * K
        for e in bc[b]:
            v[s1(e)] += one
            v[e] -= one
        return v

    def unit_vec(size, i):
        return [one if j == i else Fraction(0) for j in range(size)]

    top = [one] * m
    sign = _det_sign([top] + [unit_vec(m, i) for i in range(1, m)])
    bnd = [d2(b) for b in range(1, m)]
    H: list[list[Fraction]] = []
    for z in _nullspace([list(r) for r in zip(*[d1(e) for e in range(K)])], K):
        if _rank(bnd + H + [z]) == len(bnd) + len(H) + 1:
            H.append(z)
    if H:
        # the vertex rotation opposite to the hyperedge one makes the faces the boundaries
        rots = [[(e, 1) for e in range(K)]]
        rots += [[(e, -1) for e in (c[0],) + tuple(reversed(c[1:]))] for c in vc]

        def meet(z, w):
            t = Fraction(0)
            for rot in rots:
                for i, (e, s) in enumerate(rot):
                    for f, r in rot[i + 1:]:
                        t += Fraction(s * r, 2) * (z[e] * w[f] - z[f] * w[e])
            return t

        if _pfaffian([[meet(a, b) for b in H] for a in H]) < 0:
            H[0], H[1] = H[1], H[0]
    chosen: list[int] = []
    for e in range(K):
        if len(chosen) == n:
            break
        if _rank([d1(x) for x in chosen + [e]]) == len(chosen) + 1:
            chosen.append(e)
    sign *= _det_sign(bnd + H + [unit_vec(K, e) for e in chosen])
    sign *= _det_sign([d1(e) for e in chosen] + [unit_vec(n + 1, 0)])
    return sign


def rho_generator(key: GenKey | tuple, d: int) -> HSum:
    """Image of the generator (m, n, a): all labelled one-hyperedge hypergraphs
    with n vertices, m boundaries and K = m + n + 2a - 1 edges, each weighted
    by one over its automorphism count and signed by ``type_sign``."""
    if not isinstance(key, GenKey):
        key = GenKey(*key)
    out = HSum(key.m, key.n, d)
    for s0, stab in generator_types(key):
        g = _reference_term(s0, d)
        out.iadd(symmetrize(g), Fraction(type_sign(s0, d), stab))
    return out


# -- the differential ---------------------------------------------------------


@dataclass(frozen=True)
class Splitting:
    b: int
    c: int
    l: int
    I1: tuple[int, ...]
    I2: tuple[int, ...]
    J1: tuple[int, ...]
    J2: tuple[int, ...]

    @cached_property
    def lower(self) -> GenKey:
        return GenKey(len(self.I1) + self.l, len(self.J1), self.b)

    @cached_property
    def upper(self) -> GenKey:
        return GenKey(len(self.I2), len(self.J2) + self.l, self.c)


def _subsets(n: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    items = range(1, n + 1)
    for r in range(n + 1):
        for s in itertools.combinations(items, r):
            yield s, tuple(i for i in items if i not in s)


def ibl_differential(key: GenKey | tuple) -> list[Splitting]:
    """Ways to split a corolla into a lower and an upper one joined by l edges."""
    if not isinstance(key, GenKey):
        key = GenKey(*key)
    return list(_splittings(key))


@lru_cache(maxsize=None)
def _splittings(key: GenKey) -> tuple[Splitting, ...]:
    out = []
    for l in range(1, key.a + 2):
        for b in range(0, key.a + 2 - l):
            c = key.a + 1 - l - b
            for I1, I2 in _subsets(key.m):
                for J1, J2 in _subsets(key.n):
                    if valid_key(len(I1) + l, len(J1), b) and valid_key(len(I2), len(J2) + l, c):
                        out.append(Splitting(b, c, l, I1, I2, J1, J2))
    return tuple(out)


def hcompose_sign(a: OrientedGraphTerm, b: OrientedGraphTerm) -> int:
    """Extra sign of the shifted horizontal composition."""
    if a.d % 2 == 0:
        return 1
    e = b.m * (a.edge_count + a.n) + a.n * (b.edge_count + b.n)
    return -1 if e % 2 else 1


def hcompose_shifted(g1: HSum, g2: HSum) -> HSum:
    out = HSum(g1.m + g2.m, g1.n + g2.n, g1.d)
    for t1 in g1.term_list():
        for t2 in g2.term_list():
            h = hcompose_terms(t1, t2)
            out.add_term(h, hcompose_sign(t1, t2))
    return out


def _positions_to_labels(first: Sequence[int], second: Sequence[int]) -> list[int]:
    return list(first) + list(second)


def splitting_graph(sp: Splitting, lower: HSum, upper: HSum) -> HSum:
    """The two-corolla composite of a splitting, as a hypergraph sum."""
    d = lower.d
    below = hcompose_shifted(lower, units(len(sp.J2), d))
    above = hcompose_shifted(units(len(sp.I1), d), upper)
    comp = vcompose(above, below)
    vperm = _positions_to_labels(sp.J1, sp.J2)
    bperm = _positions_to_labels(sp.I1, sp.I2)
    out = HSum(comp.m, comp.n, d)
    for t in comp.term_list():
        out.add_term(relabel_shifted(t, vperm, bperm))
    return out


def differential_image(key: GenKey | tuple, d: int, generator=rho_generator) -> HSum:
    """Image of the differential of a generator: zero iff the relation holds."""
    if not isinstance(key, GenKey):
        key = GenKey(*key)
    out = HSum(key.m, key.n, d)
    for sp in ibl_differential(key):
        g = splitting_graph(sp, generator(sp.lower, d), generator(sp.upper, d))
        out.iadd(g, Fraction(1, math.factorial(sp.l)))
    return out


# -- induced operations -------------------------------------------------------


def shifted_sign(degrees_in: Sequence[int], degrees_out: Sequence[int], d: int) -> int:
    """Decalage sign between the unshifted and the shifted operation."""
    if d % 2 == 0:
        return 1
    n, m = len(degrees_in), len(degrees_out)
    e = sum((n - 1 - i) * x for i, x in enumerate(degrees_in))
    e += sum((m - 1 - j) * x for j, x in enumerate(degrees_out))
    return -1 if e % 2 else 1


def eval_shifted(g: OrientedGraphTerm | HSum, f: ThetaFamily, words: Sequence) -> WordSum:
    """The shifted operation of g: inputs and outputs are words of degree (letters) + d."""
    raw = [w.letters if isinstance(w, CycWord) else tuple(w) for w in words]
    out = eval_graph(g, f, raw)
    din = [word_degree(w) for w in raw]
    res = WordSum(out.arity)
    for key, c in out.terms.items():
        res.add(key, c * shifted_sign(din, [w.degree for w in key], f.d))
    return res


@lru_cache(maxsize=None)
def _generator_cached(key: GenKey, d: int) -> HSum:
    return rho_generator(key, d)


def generator_image(key: GenKey | tuple, d: int) -> HSum:
    """Cached rho_generator (treat the result as read-only)."""
    if not isinstance(key, GenKey):
        key = GenKey(*key)
    return _generator_cached(key, d)


@lru_cache(maxsize=None)
def _generator_plans(key: GenKey, d: int) -> tuple:
    return tuple((t, _Plan(t)) for t in generator_image(key, d).term_list())


def induced_op(f: ThetaFamily, key: GenKey | tuple, words: Sequence) -> WordSum:
    """The operation of the generator on cyclic words, in the shifted picture."""
    if not isinstance(key, GenKey):
        key = GenKey(*key)
    raw = [w.letters if isinstance(w, CycWord) else tuple(w) for w in words]
    if len(raw) != key.n:
        raise ValueError("arity mismatch")
    out = WordSum(key.m)
    # every vertex needs a letter and the hyperedge needs K of them
    K = key.edges
    counts = [sum(1 for a in w if f.support(K, a)) for w in raw]
    if min(counts) == 0 or sum(counts) < K:
        return out
    for t, plan in _generator_plans(key, f.d):
        out.iadd(eval_term(t, f, raw, plan))
    din = [word_degree(w) for w in raw]
    res = WordSum(key.m)
    for k, c in out.terms.items():
        res.add(k, c * shifted_sign(din, [w.degree for w in k], f.d))
    return res


def op_degree(key: GenKey, d: int) -> int:
    """Degree of the shifted operation of a generator."""
    return (d + 1) - d * key.edges + d * (key.m - key.n)


def _shifted_degrees(words: Sequence[CycWord], d: int) -> list[int]:
    return [w.degree + d for w in words]


def _cached_op(f, key, words, cache):
    if cache is None:
        return induced_op(f, key, words)
    k = (key, tuple(words))
    if k not in cache:
        cache[k] = induced_op(f, key, words)
    return cache[k]


def relation_residue(f: ThetaFamily, key: GenKey | tuple, words: Sequence[CycWord],
                     cache: dict | None = None) -> WordSum:
    """Sum over the splittings of the composed operations (zero iff the relation holds).

    ``cache`` memoizes operations and must only be shared between calls with the same family.
    """
    if not isinstance(key, GenKey):
        key = GenKey(*key)
    words = list(words)
    out = WordSum(key.m)
    for sp in ibl_differential(key):
        sub = [words[j - 1] for j in sp.J1]
        lower = _cached_op(f, sp.lower, sub, cache)
        if lower:
            add_record(out, f, key, sp, words, lower, cache)
    return out


def add_record(out: WordSum, f: ThetaFamily, key: GenKey, sp: Splitting,
               words: Sequence[CycWord], lower: WordSum, cache: dict | None = None) -> None:
    """Add the term of one splitting, given the lower operation on the J1 inputs.

    Inputs are reordered to (J1, J2), the lower operation acts on the J1 block,
    the upper one on the last l of its outputs followed by the J2 block, and
    the outputs are put back in label order, all with Koszul signs in shifted
    degrees.
    """
    d = f.d
    perm = [j - 1 for j in sp.J1 + sp.J2]
    s_in = koszul_sign(perm, _shifted_degrees(words, d))
    rest = [words[j - 1] for j in sp.J2]
    deg_b = op_degree(sp.upper, d)
    i1 = len(sp.I1)
    placed = [0] * key.m
    for pos, t in enumerate(sp.I1 + sp.I2):
        placed[t - 1] = pos
    scale = Fraction(s_in, math.factorial(sp.l))
    for zkey, zc in lower.terms.items():
        kept = list(zkey[:i1])
        pass_deg = sum(_shifted_degrees(kept, d))
        s_pass = -1 if (deg_b * pass_deg) % 2 else 1
        upper = _cached_op(f, sp.upper, list(zkey[i1:]) + rest, cache)
        for ukey, uc in upper.terms.items():
            outs = kept + list(ukey)
            s_out = koszul_sign(placed, _shifted_degrees(outs, d))
            out.add(tuple(outs[p] for p in placed), scale * zc * uc * s_pass * s_out)


# -- Schedler's necklace structure ---------------------------------------------


def _check_plain(N: int, words) -> list[tuple[Letter, ...]]:
    out = []
    for w in words:
        letters = w.letters if isinstance(w, CycWord) else tuple(w)
        for a in letters:
            if a.l != -1 or a.p or a.copy or not 1 <= a.alpha <= N:
                raise ValueError(f"letter {a} is not in the {N}-letter alphabet")
        out.append(letters)
    return out


def double(letters: Sequence[Letter]) -> tuple[Letter, ...]:
    """x_a -> x^(1)_a x^(2)_a."""
    return tuple(Letter(a.alpha, 0, -1, c) for a in letters for c in (1, 2))


def undouble(w: CycWord) -> tuple[CycWord, int] | None:
    """Inverse of ``double`` on cyclic words: (plain word, sign), or None off the (12)-subspace."""
    ls = w.letters
    for r in range(max(1, len(ls))):
        rot = ls[r:] + ls[:r]
        if len(rot) % 2 == 0 and all(
                rot[i].copy == 1 and rot[i + 1].copy == 2 and rot[i].alpha == rot[i + 1].alpha
                for i in range(0, len(rot), 2)):
            plain = canonical_cyclic([Letter(rot[i].alpha) for i in range(0, len(rot), 2)])
            return plain[0], 1
    return None


def _pull_back(ws: WordSum) -> WordSum:
    out = WordSum(ws.arity)
    for key, c in ws.terms.items():
        words = []
        for w in key:
            u = undouble(w)
            if u is None:
                raise ArithmeticError(f"CLOSURE_VIOLATION: {w} is not a doubled word")
            words.append(u[0])
            c = c * u[1]
        out.add(tuple(words), c)
    return out


def necklace_bracket(N: int, w1, w2) -> WordSum:
    """Bracket on Cyc(W_N) through the doubled Darboux alphabet."""
    a, b = _check_plain(N, [w1, w2])
    return _pull_back(induced_op(darboux(N), GenKey(1, 2, 0), [double(a), double(b)]))


def necklace_cobracket(N: int, w) -> WordSum:
    """Cobracket on Cyc(W_N) through the doubled Darboux alphabet."""
    (a,) = _check_plain(N, [w])
    return _pull_back(induced_op(darboux(N), GenKey(2, 1, 0), [double(a)]))


def necklace_bracket_direct(N: int, w1, w2) -> WordSum:
    """Direct formula: replace a letter of w1 by the matching rotations of w2."""
    a, b = _check_plain(N, [w1, w2])
    out = WordSum(1)
    for k in range(len(a)):
        for l in range(len(b)):
            if a[k].alpha != b[l].alpha:
                continue
            ends = b[l + 1:] + b[:l + 1]
            starts = b[l:] + b[:l]
            out.add_raw([a[:k] + ends + a[k + 1:]], 1)
            out.add_raw([a[:k] + starts + a[k + 1:]], -1)
    return out


def necklace_cobracket_direct(N: int, w) -> WordSum:
    """Direct formula: the cut-and-split sum over pairs of equal letters plus 1 wedge (w minus a letter)."""
    (a,) = _check_plain(N, [w])
    n = len(a)
    out = WordSum(2)

    def arc(i, j):
        # letters at cyclic positions i, i+1, ..., j-1
        return tuple(a[t % n] for t in range(i, i + (j - i) % n))

    for k in range(n):
        for l in range(n):
            if k == l or a[k].alpha != a[l].alpha:
                continue
            out.add_raw([arc(k, l), arc(l + 1, k)], 1)
            out.add_raw([arc(k + 1, l), arc(l, k)], -1)
    for i in range(n):
        rest = a[i + 1:] + a[:i]
        out.add_raw([(), rest], 1)
        out.add_raw([rest, ()], -1)
    return out


# -- the graded necklace structure -------------------------------------------------


def embed_u(letters) -> CycWord | None:
    """Expand each letter x_a[-p] to the block e^{0_p}_a ... e^{p+1_p}_a."""
    ls = letters.letters if isinstance(letters, CycWord) else tuple(letters)
    out = canonical_cyclic(expand_letters(ls))
    return None if out is None else out[0]


def expand_letters(ls: Sequence[Letter]) -> tuple[Letter, ...]:
    return tuple(Letter(a.alpha, a.p, l) for a in ls for l in range(a.p + 2))


def _parse_blocks(ls: Sequence[Letter]) -> tuple[Letter, ...] | None:
    out = []
    i = 0
    while i < len(ls):
        a = ls[i]
        if a.l != 0 or a.copy:
            return None
        block = ls[i:i + a.p + 2]
        if [(b.alpha, b.p, b.l) for b in block] != [(a.alpha, a.p, t) for t in range(a.p + 2)]:
            return None
        out.append(Letter(a.alpha, a.p))
        i += a.p + 2
    return tuple(out)


def unembed(w: CycWord) -> tuple[CycWord, int] | None:
    """(plain word, sign) with u(plain) = sign * w, or None off the image."""
    ls = w.letters
    for r in range(max(1, len(ls))):
        rot = ls[r:] + ls[:r]
        plain = _parse_blocks(rot)
        if plain is None:
            continue
        c = canonical_cyclic(plain)
        if c is None:
            return None
        e = canonical_cyclic(expand_letters(c[0].letters))
        # u(c) = e[1] * w
        return c[0], e[1]
    return None


NOT_IN_IMAGE = "NOT_IN_IMAGE"


def project_u(ws: WordSum) -> WordSum | str:
    out = WordSum(ws.arity)
    for key, c in ws.terms.items():
        words = []
        for w in key:
            u = unembed(w)
            if u is None:
                return NOT_IN_IMAGE
            words.append(u[0])
            c = c * u[1]
        out.add(tuple(words), c)
    return out


class ClosureViolation(ArithmeticError):
    """An operation left the image of u."""


def graded_necklace_op(N: int, key: GenKey | tuple, words: Sequence, f: ThetaFamily | None = None) -> WordSum:
    """The induced operation on cyclic words in graded letters x_a[-p]."""
    f = f or graded(N, max((a.p for w in words for a in (w.letters if isinstance(w, CycWord) else w)), default=0))
    if f.d != 1:
        raise ValueError("the graded necklace structure is defined for d = 1")
    expanded = []
    for w in words:
        ls = w.letters if isinstance(w, CycWord) else tuple(w)
        for a in ls:
            if a.l != -1 or a.copy or not 1 <= a.alpha <= N:
                raise ValueError(f"letter {a} is not a graded necklace letter")
        expanded.append(expand_letters(ls))
    res = project_u(induced_op(f, key, expanded))
    if res is NOT_IN_IMAGE:
        raise ClosureViolation(f"CLOSURE_VIOLATION for key {key} on {[str(w if isinstance(w, CycWord) else CycWord(tuple(w))) for w in words]}")
    return res
