"""Verification suites.  Every suite returns a report
{"suite": name, "cases": count, "failures": [{"instance": ..., "residue": ...}]}
where a failure means an identity that should vanish exactly did not.
"""
from __future__ import annotations

import itertools
import random
from typing import Callable, Iterator, Sequence

from . import holieb
from .holieb import GenKey, add_record, ibl_differential, keys_up_to
from .hypergraph import OrientedGraphTerm, build
from .permcore import Perm, compose, cycles
from .prop import vcompose_terms
from .rep import all_words, apply, eval_term
from .theta import ThetaFamily, darboux, from_table, graded, rotation_kappa
from .words import CycWord, Letter, WordSum, word_degree


def _report(suite: str, cases: int, failures: list, **extra) -> dict:
    out = {"suite": suite, "cases": cases, "failures": failures}
    out.update(extra)
    return out


def _words_str(words) -> list[str]:
    return [str(w if isinstance(w, CycWord) else CycWord(tuple(w))) for w in words]


def _residue_str(ws: WordSum) -> str:
    return repr(ws)


def _by_length(words: Sequence[CycWord]) -> dict[int, list[CycWord]]:
    out: dict[int, list[CycWord]] = {}
    for w in words:
        out.setdefault(len(w), []).append(w)
    return out


def word_tuples(bylen: dict[int, list[CycWord]], n: int, budget: int) -> Iterator[tuple[CycWord, ...]]:
    """All n-tuples of words with total length at most budget."""
    if n == 0:
        yield ()
        return
    for L in range(budget + 1):
        for w in bylen.get(L, ()):
            for rest in word_tuples(bylen, n - 1, budget - L):
                yield (w,) + rest


def count_tuples(bylen: dict[int, list[CycWord]], n: int, budget: int) -> int:
    table = [1] * (budget + 1)
    for _ in range(n):
        table = [sum(len(bylen.get(L, ())) * table[b - L] for L in range(b + 1))
                 for b in range(budget + 1)]
    return table[budget]


# -- relation sweeps -------------------------------------------------------------------


def relation_sweep(f: ThetaFamily, keys: Sequence[GenKey], words: Sequence[CycWord],
                   max_total: int) -> dict:
    """Residues of the relations of ``keys`` on every tuple of ``words`` with total
    length at most max_total.

    Organised by splitting: a splitting only contributes to tuples on which its
    lower operation is nonzero, so those tuples are found first (by exhaustive
    enumeration of the lower inputs) and then extended by every choice of the
    remaining inputs.  Tuples reached by no splitting have residue exactly zero.
    """
    bylen = _by_length(words)
    cache: dict = {}
    nonzero: dict[tuple[GenKey, int], list] = {}

    def lower_support(key: GenKey, budget: int):
        k = (key, budget)
        if k not in nonzero:
            found = []
            for tup in word_tuples(bylen, key.n, budget):
                val = holieb._cached_op(f, key, list(tup), cache)
                if val:
                    found.append((tup, val))
            nonzero[k] = found
        return nonzero[k]

    failures = []
    cases = 0
    per_key = {}
    for key in keys:
        n_cases = count_tuples(bylen, key.n, max_total)
        cases += n_cases
        residues: dict[tuple[CycWord, ...], WordSum] = {}
        for sp in ibl_differential(key):
            for sub, lower in lower_support(sp.lower, max_total):
                used = sum(len(w) for w in sub)
                for rest in word_tuples(bylen, len(sp.J2), max_total - used):
                    tup: list = [None] * key.n
                    for j, w in zip(sp.J1, sub):
                        tup[j - 1] = w
                    for j, w in zip(sp.J2, rest):
                        tup[j - 1] = w
                    t = tuple(tup)
                    acc = residues.get(t)
                    if acc is None:
                        acc = residues[t] = WordSum(key.m)
                    add_record(acc, f, key, sp, t, lower, cache)
        bad = [(t, r) for t, r in residues.items() if r]
        bad.sort(key=lambda tr: (sum(len(w) for w in tr[0]), tr[0]))
        for t, r in bad:
            failures.append({"instance": {"key": key.to_json(), "words": _words_str(t)},
                             "residue": _residue_str(r)})
        per_key[f"{key.m},{key.n},{key.a}"] = {"cases": n_cases, "touched": len(residues),
                                               "failures": len(bad)}
    return {"cases": cases, "failures": failures, "keys": per_key}


LIEB_IDENTITIES = {
    "jacobi": GenKey(1, 3, 0),
    "co-jacobi": GenKey(3, 1, 0),
    "compatibility": GenKey(2, 2, 0),
    "involution": GenKey(1, 1, 1),
}


def check_lieb_axioms(family: ThetaFamily | None = None, N: int = 1, max_len: int = 4) -> dict:
    """Jacobi, co-Jacobi, Drinfeld compatibility and involutivity of the bracket and
    cobracket induced by a binary family (Darboux by default), on all tuples of basis
    words of total length at most max_len.

    Each identity is the relation of the named key; a binary family has no higher
    operations, so only the bracket and cobracket enter.
    """
    f = family or darboux(N)
    if any(f.support(k, a) for k in range(3, 8) for a in f.alphabet):
        raise ValueError("the Lie bialgebra suite needs a family with only binary products")
    words = all_words(f.alphabet, max_len)
    res = relation_sweep(f, list(LIEB_IDENTITIES.values()), words, max_len)
    names = {f"{k.m},{k.n},{k.a}": name for name, k in LIEB_IDENTITIES.items()}
    identities = {names[k]: v for k, v in res["keys"].items()}
    return _report("lieb", res["cases"], res["failures"], family=f.description,
                   max_len=max_len, identities=identities)


def check_ibl_relations(family: ThetaFamily | None = None, max_gen: int = 6, max_len: int = 6,
                        max_edges: int | None = 5, graph_level: bool = True) -> dict:
    """Operator-level relations for all keys with m + n + 2a <= max_gen on all word
    tuples of total length <= max_len, plus the graph-level relations (the image of
    the differential is the empty sum) for keys with at most max_edges edges."""
    f = family or graded(1, 1)
    words = all_words(f.alphabet, max_len)
    keys = keys_up_to(max_gen)
    res = relation_sweep(f, keys, words, max_len)
    failures = list(res["failures"])
    cases = res["cases"]
    graph = {}
    if graph_level and max_edges is not None:
        for key in keys_up_to(max_edges + 1):
            if key.edges > max_edges:
                continue
            cases += 1
            img = holieb.differential_image(key, f.d)
            graph[f"{key.m},{key.n},{key.a}"] = len(img.terms)
            if img.terms:
                failures.append({"instance": {"graph_level": key.to_json()},
                                 "residue": f"{len(img.terms)} surviving hypergraphs"})
    return _report("ibl", cases, failures, family=f.description, max_gen=max_gen,
                   max_len=max_len, keys=res["keys"], graph_level=graph)


# -- functoriality ---------------------------------------------------------------------


def random_family(d: int, alphabet: Sequence[Letter], max_arity: int, rng: random.Random) -> ThetaFamily:
    """A family with random nonzero values on every admissible rotation class."""
    entries = []
    seen = set()
    for n in range(1, max_arity + 1):
        for seq in itertools.product(alphabet, repeat=n):
            if word_degree(seq) != d * n - d - 1:
                continue
            rots = [seq[i:] + seq[:i] for i in range(n)]
            if min(rots) in seen:
                continue
            seen.add(min(rots))
            s, val, ok = seq, 1, True
            for _ in range(n):
                val *= rotation_kappa(s, d)
                s = s[1:] + s[:1]
                if s == seq:
                    ok = val == 1
                    break
            if ok:
                entries.append((seq, rng.choice([1, -1, 2, 3, -2])))
    return from_table(d, entries, f"random d={d}")


def random_term(k: int, d: int, rng: random.Random, isolated: int = 0) -> OrientedGraphTerm:
    """Random hypergraph on k edges with random labels, orientation and isolated vertices."""
    s0 = list(range(k))
    rng.shuffle(s0)
    s1 = list(range(k))
    rng.shuffle(s1)
    P0, P1 = Perm(s0), Perm(s1)
    vc = cycles(P0)
    bc = cycles(compose(P0.inverse(), P1))
    n, m = len(vc) + isolated, len(bc) + isolated
    vl = list(range(1, n + 1))
    rng.shuffle(vl)
    bl = list(range(1, m + 1))
    rng.shuffle(bl)
    iso = [(vl[len(vc) + i], bl[len(bc) + i]) for i in range(isolated)]
    car = list(range(k)) if d % 2 else [h[0] for h in cycles(P1)]
    rng.shuffle(car)
    return build(k, s0, s1, {c[0]: vl[i] for i, c in enumerate(vc)},
                 {c[0]: bl[i] for i, c in enumerate(bc)}, d, car, 1, iso)


def _pad(g: OrientedGraphTerm, extra: int) -> OrientedGraphTerm:
    iso = list(g.isolated) + [(g.n + i + 1, g.m + i + 1) for i in range(extra)]
    return build(g.edge_count, g.sigma0, g.sigma1, dict(g.vertex_labels), dict(g.boundary_labels),
                 g.d, g.orientation, g.coeff, iso)


def default_alphabet(d: int, N: int = 2) -> list[Letter]:
    """Degree-0 letters plus one letter in each of the degrees 1 and -1."""
    return [Letter(a, 0) for a in range(1, N + 1)] + [Letter(1, 1), Letter(1, -1)]


def check_functoriality(family: ThetaFamily | None = None, samples: int = 100, seed: int = 0,
                        d: int = 1, N: int = 2, max_edges: int = 5, max_word: int = 6,
                        vcompose_fn: Callable | None = None) -> dict:
    """Compare the operator of a vertical composite with the composed operators on random
    pairs of hypergraphs and random input words."""
    rng = random.Random(seed)
    if family is None:
        family = random_family(d, default_alphabet(d, N), 4, rng)
    d = family.d
    alphabet = list(family.alphabet) or default_alphabet(d, N)
    glue = vcompose_fn or vcompose_terms
    failures = []
    nontrivial = 0
    for trial in range(samples):
        k1, k2 = rng.randint(0, max_edges), rng.randint(0, max_edges)
        g1 = random_term(k1, d, rng, rng.randint(0, 1) if k1 else 1)
        g2 = random_term(k2, d, rng, rng.randint(0, 1) if k2 else 1)
        if g1.m < g2.n:
            g1 = _pad(g1, g2.n - g1.m)
        elif g2.n < g1.m:
            g2 = _pad(g2, g1.m - g2.n)
        # shorter words than the vertex valency give zero on both sides
        val = {v: 0 for v in range(1, g1.n + 1)}
        for e, v in g1.vertex_of.items():
            val[v] += 1
        words = [tuple(rng.choice(alphabet) for _ in range(rng.randint(min(val[v], max_word), max_word)))
                 for v in range(1, g1.n + 1)]
        lhs = WordSum(g2.m)
        for g in glue(g2, g1):
            lhs.iadd(eval_term(g, family, words))
        rhs = apply(g2, family, eval_term(g1, family, words))
        if lhs or rhs:
            nontrivial += 1
        if lhs != rhs:
            failures.append({"instance": {"trial": trial, "lower": g1.to_json(), "upper": g2.to_json(),
                                          "words": _words_str(words)},
                             "residue": _residue_str(lhs - rhs)})
    return _report("functoriality", samples, failures, seed=seed, d=d, nontrivial=nontrivial)


# -- the graded necklace structure ----------------------------------------------------


def plain_words(N: int, max_p: int, max_len: int) -> list[CycWord]:
    alphabet = [Letter(a, p) for a in range(1, N + 1) for p in range(max_p + 1)]
    return all_words(alphabet, max_len)


def check_closure_weight(N: int = 1, max_p: int = 2, max_gen: int = 5, max_len: int = 3) -> dict:
    """Closure of the image of u, weight drop one, degree shift (m+n+2a) - 3 and
    agreement with the necklace bracket and cobracket in degree zero."""
    f = graded(N, max_p)
    words = plain_words(N, max_p, max_len)
    bylen = _by_length(words)
    failures = []
    cases = 0
    nonzero = 0
    for key in keys_up_to(max_gen):
        shift = key.m + key.n + 2 * key.a - 3
        for tup in word_tuples(bylen, key.n, max_len):
            cases += 1
            inst = {"key": key.to_json(), "words": _words_str(tup)}
            try:
                out = holieb.graded_necklace_op(N, key, tup, f)
            except holieb.ClosureViolation as exc:
                failures.append({"instance": inst, "residue": str(exc)})
                continue
            if out:
                nonzero += 1
            w_in = sum(len(w) for w in tup)
            deg_in = sum(w.degree for w in tup)
            for k, c in out.terms.items():
                if sum(len(w) for w in k) != w_in - 1:
                    failures.append({"instance": inst, "residue": f"weight of {k}"})
                if sum(w.degree for w in k) != deg_in - shift:
                    failures.append({"instance": inst, "residue": f"degree of {k}"})
            if all(a.p == 0 for w in tup for a in w.letters):
                if (key.m, key.n, key.a) == (1, 2, 0):
                    ref = holieb.necklace_bracket(N, *tup)
                elif (key.m, key.n, key.a) == (2, 1, 0):
                    ref = holieb.necklace_cobracket(N, *tup)
                else:
                    ref = None
                if ref is not None and ref != out:
                    failures.append({"instance": inst, "residue": _residue_str(out - ref)})
    return _report("closure", cases, failures, N=N, max_p=max_p, max_gen=max_gen,
                   max_len=max_len, nonzero=nonzero)


def check_schedler(N: int = 2, max_len: int = 5) -> dict:
    """Doubling-trick bracket and cobracket against the direct formulas."""
    words = all_words([Letter(a) for a in range(1, N + 1)], max_len)
    failures = []
    cases = 0
    for w in words:
        cases += 1
        a, b = holieb.necklace_cobracket(N, w), holieb.necklace_cobracket_direct(N, w)
        if a != b:
            failures.append({"instance": {"cobracket": str(w)}, "residue": _residue_str(a - b)})
    for u, v in itertools.product(words, repeat=2):
        cases += 1
        a, b = holieb.necklace_bracket(N, u, v), holieb.necklace_bracket_direct(N, u, v)
        if a != b:
            failures.append({"instance": {"bracket": [str(u), str(v)]}, "residue": _residue_str(a - b)})
    return _report("schedler", cases, failures, N=N, max_len=max_len)
