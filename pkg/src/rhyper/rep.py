"""State-sum evaluation of hypergraphs as operators on tensor products of cyclic words.

Signs follow one super-string convention: the orientation carriers stand in
front of the input letters, and a state regroups them into one block per
hyperedge (its carriers, then its selected letters in hyperedge order) followed
by the output words in label order.  Carriers are odd edges for odd d and odd
hyperedges for even d.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

from .hypergraph import HSum, OrientedGraphTerm, boundary_corners
from .theta import ThetaFamily
from .words import CycWord, Letter, WordSum


def _vertex_states(valency: int, length: int,
                   allowed: Sequence[Sequence[bool]] | None = None) -> list[tuple[int, ...]]:
    """Positions for the vertex edges (in cyclic order from the anchor).

    ``allowed[i][q]`` says whether edge i may sit at position q.
    """
    if valency > length:
        return []
    out: list[tuple[int, ...]] = []

    def extend(q0, prefix, last_off):
        i = len(prefix)
        if i == valency:
            out.append(tuple(prefix))
            return
        for off in range(last_off + 1, length - (valency - i) + 1):
            q = (q0 + off) % length
            if allowed is None or allowed[i][q]:
                prefix.append(q)
                extend(q0, prefix, off)
                prefix.pop()

    for q in range(length):
        if allowed is None or allowed[0][q]:
            extend(q, [q], 0)
    return out


def _inversion_parity(seq: Sequence[int]) -> int:
    inv = 0
    n = len(seq)
    for i in range(n):
        a = seq[i]
        for j in range(i + 1, n):
            if seq[j] < a:
                inv += 1
    return inv & 1


class _Plan:
    """Per-graph data reused across inputs."""

    def __init__(self, g: OrientedGraphTerm):
        self.g = g
        lab = dict(g.vertex_labels)
        self.verts = [(lab[c[0]] - 1, c) for c in g.vertices]
        self.hyper = g.hyperedges
        self.valency = {e: len(h) for h in self.hyper for e in h}
        self.corners = [boundary_corners(g, b) for b in range(1, g.m + 1)]
        self.iso_vertex = {b - 1: v - 1 for v, b in g.isolated}
        self.odd = g.d % 2 == 1
        if self.odd:
            self.carrier_pos = {e: i for i, e in enumerate(g.orientation)}
        else:
            self.carrier_pos = {h: i for i, h in enumerate(g.orientation)}


def eval_term(g: OrientedGraphTerm, f: ThetaFamily, words: Sequence[Sequence[Letter]],
              plan: _Plan | None = None) -> WordSum:
    """Evaluate a single term on raw words (letter sequences)."""
    if len(words) != g.n:
        raise ValueError("arity mismatch")
    if f.d % 2 != g.d % 2:
        raise ValueError("parity mismatch")
    plan = plan or _Plan(g)
    out = WordSum(g.m)
    words = [tuple(w) for w in words]
    # global index of each letter in the input string, after the carriers
    ncar = len(g.orientation)
    base = []
    pos = ncar
    for w in words:
        base.append(pos)
        pos += len(w)
    # carriers are odd for either parity of d
    letter_parity = [1] * ncar + [a.degree & 1 for w in words for a in w]

    choices = []
    for wi, cyc in plan.verts:
        w = words[wi]
        allowed = [[f.support(plan.valency[e], a) for a in w] for e in cyc]
        st = _vertex_states(len(cyc), len(w), allowed)
        if not st:
            return out
        choices.append(st)

    for state in itertools.product(*choices):
        s: dict[int, tuple[int, int]] = {}
        for (wi, cyc), posns in zip(plan.verts, state):
            for e, q in zip(cyc, posns):
                s[e] = (wi, q)
        weight = Fraction(g.coeff)
        target: list[int] = []
        for h in plan.hyper:
            args = [words[s[e][0]][s[e][1]] for e in h]
            v = f(args)
            if not v:
                weight = 0
                break
            weight *= v
            if plan.odd:
                target.extend(plan.carrier_pos[e] for e in h)
            else:
                target.append(plan.carrier_pos[h[0]])
            target.extend(base[s[e][0]] + s[e][1] for e in h)
        if not weight:
            continue
        outs = []
        for b, corners in enumerate(plan.corners):
            idx: list[int] = []
            if corners == [None]:
                wi = plan.iso_vertex[b]
                idx = list(range(base[wi], base[wi] + len(words[wi])))
            else:
                for a, nxt in corners:
                    wi, qa = s[a]
                    _, qb = s[nxt]
                    L = len(words[wi])
                    gap = (qb - qa - 1) % L if nxt != a else L - 1
                    idx.extend(base[wi] + (qa + 1 + t) % L for t in range(gap))
            outs.append(idx)
            target.extend(idx)
        odd_seq = [t for t in target if letter_parity[t]]
        sign = -1 if _inversion_parity(odd_seq) else 1
        flat = [a for w in words for a in w]
        out.add_raw([[flat[t - ncar] for t in idx] for idx in outs], weight * sign)
    return out


def eval_graph(g: OrientedGraphTerm | HSum, f: ThetaFamily, words: Sequence) -> WordSum:
    """Apply rho_Theta(g) to a tuple of words (CycWords or letter sequences)."""
    raw = [w.letters if isinstance(w, CycWord) else tuple(w) for w in words]
    if isinstance(g, HSum):
        out = WordSum(g.m)
        for t in g.term_list():
            out.iadd(eval_term(t, f, raw))
        return out
    return eval_term(g, f, raw)


def apply(g: OrientedGraphTerm | HSum, f: ThetaFamily, x: WordSum) -> WordSum:
    """Extend eval_graph linearly to a WordSum of matching arity."""
    m = g.m
    out = WordSum(m)
    terms = g.term_list() if isinstance(g, HSum) else [g]
    plans = [_Plan(t) for t in terms]
    for key, c in x.terms.items():
        raw = [w.letters for w in key]
        for t, pl in zip(terms, plans):
            out.iadd(eval_term(t, f, raw, pl), c)
    return out


def compose_operators(f: ThetaFamily, g2, g1, words: Sequence) -> WordSum:
    """rho(g2) applied to rho(g1)(words)."""
    first = eval_graph(g1, f, words)
    return apply(g2, f, first)


def all_words(alphabet: Sequence[Letter], max_len: int, min_len: int = 0) -> list[CycWord]:
    """All nonzero canonical cyclic words with lengths in [min_len, max_len]."""
    from .words import canonical_cyclic

    seen = set()
    out = []
    for n in range(min_len, max_len + 1):
        for seq in itertools.product(alphabet, repeat=n):
            r = canonical_cyclic(seq)
            if r is None or r[0] in seen:
                continue
            seen.add(r[0])
            out.append(r[0])
    return out
