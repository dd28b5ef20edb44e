"""Command-line front end: ``rhyper <command> ...``.

Exit status is 0 on success, 1 when a verification finds failures (or an
operation leaves its domain), 2 on malformed input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import hypergraph as hg
from .holieb import (ClosureViolation, GenKey, generator_image, graded_necklace_op,
                     necklace_bracket, necklace_bracket_direct, necklace_cobracket,
                     necklace_cobracket_direct)
from .hypergraph import HSum, hsum_from_json
from .prop import hcompose, vcompose
from .rep import eval_graph
from .theta import family_from_json
from .words import Letter, WordSum


class InputError(ValueError):
    pass


def _load_input(args) -> object:
    if not args.input:
        raise InputError("--input is required for this command")
    try:
        if args.input == "-":
            return json.load(sys.stdin)
        with open(args.input) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {args.input}: {exc}") from exc
    except OSError as exc:
        raise InputError(str(exc)) from exc


def _as_hsum(obj) -> HSum:
    if isinstance(obj, list):
        return hsum_from_json(obj)
    return hsum_from_json([obj])


def _parse_word(text: str, graded_letters: bool = False) -> tuple[Letter, ...]:
    """'1 2 1' is x1 x2 x1; with graded letters '1:0 2:1' gives x1[0] x2[-1]."""
    out = []
    for tok in text.replace(",", " ").split():
        if ":" in tok:
            a, p = tok.split(":")
            out.append(Letter(int(a), int(p)))
        else:
            out.append(Letter(int(tok)))
    if not graded_letters and any(a.p for a in out):
        raise InputError("degrees are only allowed for graded-op")
    return tuple(out)


def _words_arg(args, graded_letters: bool = False) -> list[tuple[Letter, ...]]:
    if args.words:
        return [_parse_word(w, graded_letters) for w in args.words]
    obj = _load_input(args)
    words = obj["words"] if isinstance(obj, dict) else obj
    return [tuple(Letter.from_json(a) for a in (w["letters"] if isinstance(w, dict) else w))
            for w in words]


def _wordsum_rows(ws: WordSum) -> list[dict]:
    return [{"tuple": " ⊗ ".join(str(w) for w in k), "coeff": str(c)} for k, c in ws]


# -- commands ---------------------------------------------------------------------------


def cmd_boundaries(args):
    if args.sample:
        g = hg.sample_graphs(args.d)[args.sample]
    else:
        g = hg.from_json(_load_input(args))
    V, H, B, E = g.counts()
    return {"boundaries": [list(c) for c in hg.boundaries(g)],
            "counts": {"V": V, "H": H, "B": B, "E": E}}, 0


def cmd_canon(args):
    g = hg.from_json(_load_input(args))
    res = hg.canonicalize(g)
    if not res:
        return {"zero": True}, 0
    h, sign = res
    return {"zero": False, "sign": sign, "term": h.to_json()}, 0


def cmd_compose(args):
    obj = _load_input(args)
    if args.mode == "h":
        out = hcompose(_as_hsum(obj["first"]), _as_hsum(obj["second"]))
    else:
        out = vcompose(_as_hsum(obj["upper"]), _as_hsum(obj["lower"]))
    return out.to_json(), 0


def cmd_eval(args):
    obj = _load_input(args)
    g = _as_hsum(obj["graph"])
    f = family_from_json(obj.get("family", {"name": "darboux", "N": args.N}))
    words = [tuple(Letter.from_json(a) for a in (w["letters"] if isinstance(w, dict) else w))
             for w in obj["words"]]
    return eval_graph(g, f, words), 0


def cmd_generator(args):
    return generator_image(GenKey(args.m, args.n, args.a), args.d).to_json(), 0


def cmd_necklace(args):
    words = _words_arg(args)
    if args.op == "bracket":
        if len(words) != 2:
            raise InputError("bracket takes two words")
        fn = necklace_bracket_direct if args.direct else necklace_bracket
        out = fn(args.N, *words)
    else:
        if len(words) != 1:
            raise InputError("cobracket takes one word")
        fn = necklace_cobracket_direct if args.direct else necklace_cobracket
        out = fn(args.N, words[0])
    return out, 0


def cmd_graded_op(args):
    words = _words_arg(args, graded_letters=True)
    return graded_necklace_op(args.N, GenKey(args.m, args.n, args.a), words), 0


def _lambdas(text: str | None) -> dict[int, Fraction]:
    if not text:
        return {}
    out = {}
    for part in text.split(","):
        k, v = part.split("=")
        out[int(k)] = Fraction(v)
    return out


def cmd_verify(args):
    from . import verify
    from .theta import darboux, graded, rescale

    lam = _lambdas(args.lambdas)
    if args.suite == "lieb":
        f = darboux(args.N)
        if lam:
            f = rescale(f, lam)
        rep = verify.check_lieb_axioms(f, args.N, args.max_len or 4)
    elif args.suite == "ibl":
        f = graded(args.N, 1)
        if lam:
            f = rescale(f, lam)
        rep = verify.check_ibl_relations(f, args.max_gen or 6, args.max_len or 6, args.max_edges)
    elif args.suite == "functoriality":
        rep = verify.check_functoriality(samples=args.samples, seed=args.seed, d=args.d, N=args.N)
    elif args.suite == "closure":
        rep = verify.check_closure_weight(args.N, args.max_p, args.max_gen or 5, args.max_len or 3)
    elif args.suite == "schedler":
        rep = verify.check_schedler(args.N, args.max_len or 5)
    else:
        from .mcstar import check_mc, darboux_gamma

        gamma, window = darboux_gamma(args.N, args.max_len or 4)
        rep = check_mc(gamma, window)
        rep["family"] = f"darboux N={args.N}"
    if args.seed is not None:
        rep.setdefault("seed", args.seed)
    return rep, 1 if rep["failures"] else 0


# -- output -----------------------------------------------------------------------------


def _to_csv(result) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if isinstance(result, WordSum):
        w.writerow(["tuple", "coeff"])
        for row in _wordsum_rows(result):
            w.writerow([row["tuple"], row["coeff"]])
    elif isinstance(result, dict) and "suite" in result:
        w.writerow(["suite", "cases", "failures"])
        w.writerow([result["suite"], result["cases"], len(result["failures"])])
    elif isinstance(result, list):
        w.writerow(["coeff", "term"])
        for t in result:
            t = dict(t)
            c = t.pop("coeff", "1")
            w.writerow([c, json.dumps(t, sort_keys=True)])
    else:
        w.writerow(["key", "value"])
        for k, v in result.items():
            w.writerow([k, json.dumps(v, sort_keys=True)])
    return buf.getvalue()


def _render(result, fmt: str) -> str:
    if fmt == "csv":
        return _to_csv(result)
    if isinstance(result, WordSum):
        result = {"arity": result.arity, "terms": result.to_json(), "pretty": _wordsum_rows(result)}
    return json.dumps(result, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--d", type=int, default=1)
    common.add_argument("--N", type=int, default=1)
    common.add_argument("--max-len", type=int, default=None)
    common.add_argument("--max-gen", type=int, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--input", default=None)
    common.add_argument("--output", default=None)
    common.add_argument("--format", choices=("json", "csv"), default="json")

    p = argparse.ArgumentParser(prog="rhyper", description="Ribbon hypergraph prop and IBL-infinity toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("boundaries", parents=[common], help="boundary cycles of a hypergraph")
    b.add_argument("--sample", choices=("gamma1", "gamma2", "gamma3"))
    b.set_defaults(func=cmd_boundaries)

    sub.add_parser("canon", parents=[common], help="canonical form of a term").set_defaults(func=cmd_canon)

    c = sub.add_parser("compose", parents=[common], help="horizontal or vertical composition")
    c.add_argument("mode", choices=("h", "v"))
    c.set_defaults(func=cmd_compose)

    sub.add_parser("eval", parents=[common], help="state-sum evaluation on words").set_defaults(func=cmd_eval)

    for name, func in (("generator", cmd_generator), ("graded-op", cmd_graded_op)):
        q = sub.add_parser(name, parents=[common])
        q.add_argument("--m", type=int, required=True)
        q.add_argument("--n", type=int, required=True)
        q.add_argument("--a", type=int, default=0)
        if name == "graded-op":
            q.add_argument("--words", nargs="+", help="words like '1:0 1:1' (alpha:p)")
        q.set_defaults(func=func)

    n = sub.add_parser("necklace", parents=[common], help="necklace bracket or cobracket")
    n.add_argument("op", choices=("bracket", "cobracket"))
    n.add_argument("--words", nargs="+", help="words like '1 2 1'")
    n.add_argument("--direct", action="store_true", help="use the explicit formula")
    n.set_defaults(func=cmd_necklace)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=("lieb", "ibl", "functoriality", "closure", "mc", "schedler"))
    v.add_argument("--samples", type=int, default=100)
    v.add_argument("--max-p", type=int, default=2)
    v.add_argument("--max-edges", type=int, default=5)
    v.add_argument("--lambdas", default=None, help="rescaling like '2=2,3=-3'")
    v.set_defaults(func=cmd_verify)
    return p


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result, code = args.func(args)
    except ClosureViolation as exc:
        print(f"rhyper: {exc}", file=sys.stderr)
        return 1
    except (InputError, ValueError, KeyError, TypeError) as exc:
        print(f"rhyper: input error: {exc}", file=sys.stderr)
        return 2
    text = _render(result, args.format)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
