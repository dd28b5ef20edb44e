"""Cyclically (skew)invariant families of higher products on letters."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .words import Letter, word_degree

Evaluator = Callable[[tuple[Letter, ...]], Fraction]
# support(k, letter) is False only if the letter never occurs in a nonzero Theta_k
Support = Callable[[int, Letter], bool]


def _anything(k: int, letter: Letter) -> bool:
    return True


def rotation_kappa(letters: Sequence[Letter], d: int) -> int:
    """Sign relating Theta(w2..wn, w1) to Theta(w1..wn).

    It is the Koszul sign of moving w1 past the rest, in letter degrees,
    times the sign (-1)^{d(n-1)} of the n-cycle on the odd arguments.
    """
    if not letters:
        return 1
    a = letters[0].degree
    rest = word_degree(letters[1:])
    return -1 if (a * rest + d * (len(letters) - 1)) % 2 else 1


@dataclass(frozen=True)
class ThetaFamily:
    d: int
    func: Evaluator = field(compare=False)
    description: str = ""
    alphabet: tuple[Letter, ...] = ()
    support: Support = field(default=_anything, compare=False)

    def __call__(self, letters: Sequence[Letter]) -> Fraction:
        return self.func(tuple(letters))


def theta_eval(f: ThetaFamily, letters: Sequence[Letter]) -> Fraction:
    return f(letters)


def zero_family(d: int = 1) -> ThetaFamily:
    return ThetaFamily(d, lambda ls: Fraction(0), "zero", support=lambda k, a: False)


def darboux_alphabet(N: int) -> tuple[Letter, ...]:
    return tuple(Letter(a, 0, -1, c) for a in range(1, N + 1) for c in (1, 2))


def darboux(N: int) -> ThetaFamily:
    """Theta_2(x^(1)_a, x^(2)_b) = delta_ab, skew under swapping; no other arities.

    >>> f = darboux(1)
    >>> a, b = darboux_alphabet(1)
    >>> f((a, b)), f((b, a)), f((a, a))
    (Fraction(1, 1), Fraction(-1, 1), Fraction(0, 1))
    """

    def ev(ls):
        if len(ls) != 2:
            return Fraction(0)
        u, v = ls
        if u.alpha != v.alpha or u.l >= 0 or v.l >= 0 or u.p or v.p:
            return Fraction(0)
        if (u.copy, v.copy) == (1, 2):
            return Fraction(1)
        if (u.copy, v.copy) == (2, 1):
            return Fraction(-1)
        return Fraction(0)

    def support(k, a):
        return k == 2 and a.l < 0 and a.p == 0 and a.copy in (1, 2)

    return ThetaFamily(1, ev, f"darboux N={N}", darboux_alphabet(N), support)


def listed_value(ls: Sequence[Letter]) -> Fraction:
    """The degree-k+2 product on expanded letters e^{l_k}_alpha, arguments taken
    in descending tag order.

    Nonzero only for a common alpha, all shifts equal to k = len - 2 and
    l-tags (j, j-1, ..., 0, k+1, k, ..., j+1), where it equals (-1)^{j(k+1)}.

    >>> listed_value((Letter(1, 1, 1), Letter(1, 1, 0), Letter(1, 1, 2)))
    Fraction(1, 1)
    """
    n = len(ls)
    if n < 2:
        return Fraction(0)
    k = n - 2
    a0 = ls[0].alpha
    if any(w.l < 0 or w.p != k or w.alpha != a0 or w.copy for w in ls):
        return Fraction(0)
    j = ls[0].l
    if j > k + 1:
        return Fraction(0)
    expected = list(range(j, -1, -1)) + list(range(k + 1, j, -1))
    if [w.l for w in ls] != expected:
        return Fraction(0)
    return Fraction(-1 if (j * (k + 1)) % 2 else 1)


def graded_value(ls: Sequence[Letter]) -> Fraction:
    """The graded product as the state sum reads it.

    A hyperedge meets the letters of a word in the opposite cyclic direction to
    the descending tag order, so the listed values are read on the reversed
    sequence.  The factor (-1)^{k+1} keeps the rotation rule; it is an arity
    rescaling and does not affect any relation.

    >>> graded_value((Letter(1, 1, 0), Letter(1, 1, 1), Letter(1, 1, 2)))
    Fraction(1, 1)
    >>> graded_value((Letter(1, 0, 0), Letter(1, 0, 1)))
    Fraction(1, 1)
    """
    k = len(ls) - 2
    v = listed_value(tuple(reversed(ls)))
    return -v if v and (k + 1) % 2 else v


def graded_alphabet(N: int, max_p: int) -> tuple[Letter, ...]:
    return tuple(Letter(a, p, l) for a in range(1, N + 1) for p in range(max_p + 1)
                 for l in range(p + 2))


def graded(N: int = 1, max_p: int = 2) -> ThetaFamily:
    def support(k, a):
        return a.p == k - 2 and 0 <= a.l <= k - 1 and not a.copy

    return ThetaFamily(1, graded_value, f"graded N={N}", graded_alphabet(N, max_p), support)


def from_table(d: int, entries: Iterable[tuple[Sequence[Letter], Fraction]],
               description: str = "custom") -> ThetaFamily:
    """Family given on representatives and extended to all rotations.

    Raises ValueError if the table contradicts the rotation rule.
    """
    table: dict[tuple[Letter, ...], Fraction] = {}

    def put(key, val):
        if key in table and table[key] != val:
            raise ValueError(f"table inconsistent with cyclic rule at {key}")
        table[key] = val

    for letters, value in entries:
        seq = tuple(letters)
        val = Fraction(value)
        for _ in range(max(1, len(seq))):
            put(seq, val)
            val = val * rotation_kappa(seq, d)
            seq = seq[1:] + seq[:1]
    alphabet = tuple(sorted({a for k in table for a in k}))
    used = {(len(k), a) for k, v in table.items() if v for a in k}
    return ThetaFamily(d, lambda ls: table.get(ls, Fraction(0)), description, alphabet,
                       lambda k, a: (k, a) in used)


def rescale(f: ThetaFamily, lambdas: Mapping[int, Fraction] | Sequence[Fraction]) -> ThetaFamily:
    """Scale the arity-k product by lambda_k (sequences start at k = 1)."""
    if isinstance(lambdas, Mapping):
        lam = {int(k): Fraction(v) for k, v in lambdas.items()}
    else:
        lam = {i + 1: Fraction(v) for i, v in enumerate(lambdas)}
    base = f.func
    return ThetaFamily(f.d, lambda ls: base(ls) * lam.get(len(ls), 1),
                       f"{f.description} rescaled {sorted(lam.items())}", f.alphabet,
                       lambda k, a: lam.get(k, 1) != 0 and f.support(k, a))


def check_cyclic_invariance(f: ThetaFamily, max_len: int,
                            sample: Sequence[Letter] | None = None) -> dict:
    """Check the rotation rule and the degree support on all sequences up to max_len."""
    letters = tuple(sample) if sample is not None else f.alphabet
    failures = []
    cases = 0
    for n in range(1, max_len + 1):
        for seq in itertools.product(letters, repeat=n):
            cases += 1
            v = f(seq)
            rot = seq[1:] + seq[:1]
            if f(rot) != rotation_kappa(seq, f.d) * v:
                failures.append({"instance": [str(a) for a in seq], "residue": str(f(rot) - rotation_kappa(seq, f.d) * v)})
            if v and word_degree(seq) != f.d * n - f.d - 1:
                failures.append({"instance": [str(a) for a in seq], "residue": "degree support"})
    return {"suite": "cyclic-invariance", "cases": cases, "failures": failures}


def family_from_json(obj: Mapping) -> ThetaFamily:
    """Custom table {"d": 1, "entries": [{"letters": [...], "value": "p/q"}]}, or a
    built-in {"name": "darboux" | "graded" | "zero", "N": .., "max_p": ..}.
    An optional "lambdas" map {arity: value} rescales the result."""
    if "entries" in obj:
        entries = [([Letter.from_json(a) for a in e["letters"]], Fraction(e["value"]))
                   for e in obj["entries"]]
        f = from_table(int(obj.get("d", 1)), entries, obj.get("description", "custom"))
    else:
        name = obj.get("name", "darboux")
        N = int(obj.get("N", 1))
        if name == "darboux":
            f = darboux(N)
        elif name == "graded":
            f = graded(N, int(obj.get("max_p", 2)))
        elif name == "zero":
            f = zero_family(int(obj.get("d", 1)))
        else:
            raise ValueError(f"unknown family {name!r}")
    if obj.get("lambdas"):
        f = rescale(f, {int(k): Fraction(v) for k, v in obj["lambdas"].items()})
    return f
