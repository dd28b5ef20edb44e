import random

from rhyper import hypergraph as hg
from rhyper.rep import all_words, apply, compose_operators, eval_graph, eval_term
from rhyper.theta import darboux, darboux_alphabet
from rhyper.verify import random_family, random_term
from rhyper.words import CycWord, Letter, WordSum


def test_valency_exceeds_word_length_gives_zero():
    g = hg.sample_graphs(1)["gamma2"]  # a trivalent vertex
    f = random_family(1, [Letter(1), Letter(1, 1), Letter(1, -1)], 3, random.Random(0))
    assert not eval_term(g, f, [(Letter(1), Letter(1, 1))])


def test_unit_is_identity():
    u = hg.unit_term(1)
    f = darboux(1)
    for w in all_words(darboux_alphabet(1), 4):
        assert eval_term(u, f, [w.letters]) == WordSum.single(w)


def test_bracket_graph_on_darboux():
    a, b = darboux_alphabet(1)
    # two univalent vertices joined by a bivalent hyperedge
    g = hg.standard(2, [0, 1], [1, 0], 1)
    out = eval_graph(g, darboux(1), [(a,), (b,)])
    assert out == WordSum.single(CycWord(()), coeff=1) or out == WordSum.single(CycWord(()), coeff=-1)


def test_compose_operators_matches_vcompose():
    rng = random.Random(11)
    alph = [Letter(1), Letter(2), Letter(1, 1), Letter(1, -1)]
    f = random_family(1, alph, 3, rng)
    hits = 0
    for _ in range(40):
        g1 = random_term(rng.randint(1, 3), 1, rng)
        g2 = random_term(rng.randint(1, 3), 1, rng)
        if g1.m != g2.n:
            continue
        words = [tuple(rng.choice(alph) for _ in range(rng.randint(2, 5))) for _ in range(g1.n)]
        lhs = compose_operators(f, g2, g1, words)
        assert lhs == apply(g2, f, eval_term(g1, f, words))
        hits += 1
    assert hits > 5
