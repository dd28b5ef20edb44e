"""End-to-end acceptance criteria.  Each test prints one PASS/FAIL line, which is
repeated in the terminal summary."""
import random
import time
from fractions import Fraction

from conftest import RESULTS
from rhyper import hypergraph as hg
from rhyper import verify
from rhyper.mcstar import PolyContext, check_mc, constant, darboux_gamma, hbar_bracket, random_poly, star, variable
from rhyper.theta import darboux, graded, rescale


def _record(capsys, n, title, ok, elapsed, limit, detail=""):
    ok = ok and elapsed < limit
    line = f"CRITERION {n} {'PASS' if ok else 'FAIL'}: {title} ({elapsed:.1f}s, limit {limit}s) {detail}".rstrip()
    RESULTS[n] = line
    with capsys.disabled():
        print("\n" + line)
    return ok


def test_criterion_1_counts(capsys):
    t = time.time()
    counts = {k: g.counts() for k, g in hg.sample_graphs(1).items()}
    expected = {"gamma1": (3, 1, 1, 3), "gamma2": (1, 1, 3, 3), "gamma3": (1, 2, 2, 3)}
    ok = counts == expected
    assert _record(capsys, 1, "hypergraph counts (V,H,B,E)", ok, time.time() - t, 1, str(counts))


def test_criterion_2_functoriality(capsys):
    t = time.time()
    reports = [verify.check_functoriality(samples=100, seed=s, d=d, N=N)
               for s, (d, N) in enumerate([(1, 2), (1, 1), (0, 2), (2, 2)])]
    cases = sum(r["cases"] for r in reports)
    nontrivial = sum(r["nontrivial"] for r in reports)
    fails = sum(len(r["failures"]) for r in reports)
    ok = fails == 0 and cases >= 100
    assert _record(capsys, 2, "functoriality of the state sum", ok, time.time() - t, 60,
                   f"pairs={cases} nontrivial={nontrivial} failures={fails}")


def test_criterion_3_lieb(capsys):
    t = time.time()
    reports = [verify.check_lieb_axioms(darboux(N), N, 6) for N in (1, 2)]
    cases = sum(r["cases"] for r in reports)
    fails = sum(len(r["failures"]) for r in reports)
    assert _record(capsys, 3, "Lie bialgebra identities, Darboux N<=2, length<=6", fails == 0,
                   time.time() - t, 120, f"cases={cases} failures={fails}")


def test_criterion_4_schedler(capsys):
    t = time.time()
    reports = [verify.check_schedler(N, 5) for N in (1, 2)]
    cases = sum(r["cases"] for r in reports)
    fails = sum(len(r["failures"]) for r in reports)
    assert _record(capsys, 4, "doubling equals direct necklace formulas, length<=5", fails == 0,
                   time.time() - t, 60, f"cases={cases} failures={fails}")


def test_criterion_5_ibl(capsys):
    t = time.time()
    rep = verify.check_ibl_relations(graded(1, 1), max_gen=6, max_len=6, max_edges=5)
    fails = len(rep["failures"])
    assert _record(capsys, 5, "IBL-infinity relations, graded family N=1 p<=1", fails == 0,
                   time.time() - t, 600, f"cases={rep['cases']} failures={fails}")


def test_criterion_6_closure(capsys):
    t = time.time()
    rep = verify.check_closure_weight(N=1, max_p=2, max_gen=5, max_len=5)
    fails = len(rep["failures"])
    assert _record(capsys, 6, "closure, weight drop, degree shift, degree-0 reduction", fails == 0,
                   time.time() - t, 300, f"cases={rep['cases']} nonzero={rep['nonzero']} failures={fails}")


def _sampled_rescalings():
    # across the three choices every arity takes each of the values 1, 2, -3
    values = (1, 2, -3)
    return [{k: Fraction(values[(k + i) % 3]) for k in range(2, 9)} for i in range(3)]


def test_criterion_7_rescaling(capsys):
    t = time.time()
    details = []
    fails = 0
    for lam in _sampled_rescalings():
        r3 = [verify.check_lieb_axioms(rescale(darboux(N), lam), N, 6) for N in (1, 2)]
        r5 = verify.check_ibl_relations(rescale(graded(1, 1), lam), 6, 6, 5)
        f = sum(len(r["failures"]) for r in r3) + len(r5["failures"])
        fails += f
        details.append(",".join(str(lam[k]) for k in range(2, 5)) + f":{f}")
    assert _record(capsys, 7, "suites 3 and 5 under rescalings", fails == 0, time.time() - t, 600,
                   "lambda_2..4 " + " ".join(details))


def test_criterion_8_mcstar(capsys):
    t = time.time()
    problems = []
    rng = random.Random(8)
    ctx = PolyContext((0, 1, 1), d=1)
    for _ in range(50):
        f, g, h = (random_poly(ctx, rng) for _ in range(3))
        if star(star(f, g), h) != star(f, star(g, h)):
            problems.append("associativity")
    for _ in range(50):
        parts = []
        while len(parts) < 3:
            hp = random_poly(ctx, rng, terms=4, max_deg=3).homogeneous_parts()
            if hp:
                parts.append(max(hp.items(), key=lambda kv: len(kv[1].terms)))
        (a, f), (b, g), (_, h) = parts
        lhs = hbar_bracket(f, hbar_bracket(g, h))
        rhs = hbar_bracket(hbar_bracket(f, g), h) + hbar_bracket(g, hbar_bracket(f, h)).scaled((-1) ** (a * b))
        if lhs != rhs:
            problems.append("jacobi")
    even = PolyContext((0,), d=1)
    if hbar_bracket(variable(even, 1), variable(even, 0)) != constant(even, 1):
        problems.append("[p,x]")
    gamma, window = darboux_gamma(1, 4)
    mc = check_mc(gamma, window)
    if mc["failures"]:
        problems.append("maurer-cartan")
    assert _record(capsys, 8, "star product, bracket, Maurer-Cartan", not problems, time.time() - t, 60,
                   f"problems={problems}")
