"""Graded letters, cyclic words and formal sums of tensor products of cyclic words."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .permcore import Perm

ZERO = None  # returned by canonicalizers when a word is forced to vanish


@dataclass(frozen=True, order=True)
class Letter:
    """A graded letter.

    ``l == -1`` is the plain letter x_alpha[-p] of degree p.  ``l >= 0`` is the
    expanded letter e^{l_p}_alpha, of degree p for l == 0 and 0 otherwise.
    ``copy`` distinguishes the two halves x^(1), x^(2) of a doubled alphabet.
    """

    alpha: int
    p: int = 0
    l: int = -1
    copy: int = 0

    @property
    def degree(self) -> int:
        return self.p if self.l <= 0 else 0

    def __str__(self) -> str:
        if self.l >= 0:
            return f"e{self.l}_{self.p}[{self.alpha}]"
        s = f"x{self.alpha}"
        if self.copy:
            s += f"^{self.copy}"
        return s + (f"[-{self.p}]" if self.p else "")

    def to_json(self) -> dict:
        out = {"alpha": self.alpha, "l": None if self.l < 0 else self.l, "p": self.p}
        if self.copy:
            out["copy"] = self.copy
        return out

    @classmethod
    def from_json(cls, obj: dict) -> Letter:
        l = obj.get("l")
        return cls(int(obj["alpha"]), int(obj.get("p", 0)), -1 if l is None else int(l),
                   int(obj.get("copy", 0)))


def x(alpha: int, p: int = 0) -> Letter:
    return Letter(alpha, p)


def e(alpha: int, l: int, p: int) -> Letter:
    return Letter(alpha, p, l)


def word_degree(letters: Iterable[Letter]) -> int:
    return sum(a.degree for a in letters)


def koszul_sign(perm: Perm | Sequence[int], degrees: Sequence[int]) -> int:
    """Sign of reordering items of the given degrees into ``[items[perm(i)] ...]``.

    >>> koszul_sign([1, 0], [1, 1])
    -1
    >>> koszul_sign([1, 2, 0], [1, 1, 1])
    1
    """
    images = perm.images if isinstance(perm, Perm) else tuple(perm)
    if len(images) != len(degrees):
        raise ValueError("length mismatch")
    odd = [i for i in images if degrees[i] % 2]
    inv = sum(1 for a in range(len(odd)) for b in range(a + 1, len(odd)) if odd[a] > odd[b])
    return -1 if inv % 2 else 1


def rotation_sign(letters: Sequence[Letter], r: int) -> int:
    """Koszul sign of moving the first ``r`` letters to the end."""
    a = word_degree(letters[:r])
    b = word_degree(letters[r:])
    return -1 if (a * b) % 2 else 1


@dataclass(frozen=True, order=True)
class CycWord:
    """A cyclic word stored in its lexicographically minimal rotation."""

    letters: tuple[Letter, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(self.letters)
            object.__setattr__(self, "_hash", h)
        return h

    @cached_property
    def degree(self) -> int:
        return word_degree(self.letters)

    def __str__(self) -> str:
        return "(" + " ".join(str(a) for a in self.letters) + ")"

    def to_json(self) -> dict:
        return {"letters": [a.to_json() for a in self.letters]}

    @classmethod
    def from_json(cls, obj) -> CycWord:
        letters = obj["letters"] if isinstance(obj, dict) else obj
        w = canonical_cyclic([Letter.from_json(a) for a in letters])
        if w is ZERO:
            raise ValueError("word vanishes by cyclic symmetry")
        if w[1] != 1:
            raise ValueError("word must be given in canonical rotation")
        return w[0]


def canonical_cyclic(letters: Sequence[Letter]) -> tuple[CycWord, int] | None:
    """Minimal rotation together with its Koszul sign, or ZERO.

    >>> w, s = canonical_cyclic([x(2), x(1)])
    >>> [a.alpha for a in w.letters], s
    ([1, 2], 1)
    >>> canonical_cyclic([x(1, 1), x(1, 1)]) is ZERO
    True
    """
    letters = tuple(letters)
    n = len(letters)
    if n == 0:
        return CycWord(()), 1
    best = None
    sign = 0
    for r in range(n):
        rot = letters[r:] + letters[:r]
        s = rotation_sign(letters, r)
        if best is None or rot < best:
            best, sign = rot, s
        elif rot == best and s != sign:
            return ZERO
    return CycWord(best), sign


Key = tuple[CycWord, ...]


class WordSum:
    """Finite rational combination of tensor products of cyclic words."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: dict[Key, Fraction] | None = None):
        self.arity = arity
        self.terms: dict[Key, Fraction] = {}
        if terms:
            for k, c in terms.items():
                self.add(k, c)

    @classmethod
    def single(cls, *words: CycWord, coeff=1) -> WordSum:
        return cls(len(words), {tuple(words): Fraction(coeff)})

    def add(self, key: Key, coeff) -> None:
        if len(key) != self.arity:
            raise ValueError("arity mismatch")
        c = self.terms.get(key, 0) + coeff
        if c:
            self.terms[key] = Fraction(c)
        else:
            self.terms.pop(key, None)

    def add_raw(self, words: Sequence[Sequence[Letter]], coeff) -> None:
        """Add a tensor of not-yet-canonical words."""
        key = []
        for w in words:
            cw = canonical_cyclic(w)
            if cw is ZERO:
                return
            key.append(cw[0])
            coeff = coeff * cw[1]
        self.add(tuple(key), coeff)

    def iadd(self, other: WordSum, scale=1) -> WordSum:
        if other.arity != self.arity:
            raise ValueError("arity mismatch")
        for k, c in other.terms.items():
            self.add(k, c * scale)
        return self

    def __add__(self, other: WordSum) -> WordSum:
        return self.copy().iadd(other)

    def __sub__(self, other: WordSum) -> WordSum:
        return self.copy().iadd(other, -1)

    def __neg__(self) -> WordSum:
        return self.scaled(-1)

    def scaled(self, c) -> WordSum:
        return WordSum(self.arity, {k: v * c for k, v in self.terms.items()})

    def copy(self) -> WordSum:
        out = WordSum(self.arity)
        out.terms = dict(self.terms)
        return out

    def __iter__(self) -> Iterator[tuple[Key, Fraction]]:
        return iter(sorted(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, WordSum) and self.arity == other.arity and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return f"WordSum({self.arity}, 0)"
        parts = [f"{c}*" + "⊗".join(str(w) for w in k) for k, c in self]
        return " + ".join(parts)

    def max_abs(self) -> Fraction:
        return max((abs(c) for c in self.terms.values()), default=Fraction(0))

    def to_json(self) -> list:
        return [{"tuple": [[a.to_json() for a in w.letters] for w in k], "coeff": str(c)}
                for k, c in self]

    @classmethod
    def from_json(cls, arr: list, arity: int | None = None) -> WordSum:
        if arity is None:
            arity = len(arr[0]["tuple"]) if arr else 0
        out = cls(arity)
        for t in arr:
            out.add_raw([[Letter.from_json(a) for a in w] for w in t["tuple"]], Fraction(t["coeff"]))
        return out


def tensor(a: WordSum, b: WordSum) -> WordSum:
    """Tensor product of two sums (concatenation of tuples, no sign)."""
    out = WordSum(a.arity + b.arity)
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            out.add(ka + kb, ca * cb)
    return out
