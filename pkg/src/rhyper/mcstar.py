"""Star product, hbar-bracket and Maurer-Cartan check on truncated polynomials in
graded variables x_i, p^i (|x_i| + |p^i| = 2d) and hbar (degree 2d).

A monomial is (exponent tuple over x_0..x_{N-1}, p^0..p^{N-1}; hbar power).  Odd
variables have exponent 0 or 1 and are kept in index order, x's before p's.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Monomial = tuple[tuple[int, ...], int]


@dataclass(frozen=True)
class PolyContext:
    """Variable data shared by the series of one computation."""

    x_degrees: tuple[int, ...]
    d: int = 1
    names: tuple[str, ...] = ()
    weights: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "x_degrees", tuple(self.x_degrees))
        N = len(self.x_degrees)
        if not self.names:
            object.__setattr__(self, "names", tuple(f"x{i}" for i in range(N)))
        if not self.weights:
            object.__setattr__(self, "weights", (1,) * N)
        if len(self.names) != N or len(self.weights) != N:
            raise ValueError("names and weights must match the variables")

    @property
    def N(self) -> int:
        return len(self.x_degrees)

    def degree(self, v: int) -> int:
        """Degree of variable v (x_i for v < N, p^i for v = N + i)."""
        if v < self.N:
            return self.x_degrees[v]
        return 2 * self.d - self.x_degrees[v - self.N]

    def odd(self, v: int) -> bool:
        return self.degree(v) % 2 == 1

    def x(self, i: int) -> int:
        return i

    def p(self, i: int) -> int:
        return self.N + i

    def to_json(self) -> dict:
        return {"d": self.d, "x_degrees": list(self.x_degrees), "names": list(self.names),
                "weights": list(self.weights)}


class PolySeries:
    """Finite rational combination of monomials, truncated by hbar order and by the
    order (polynomial degree + 2 * hbar order).  Both truncations are ideals, so
    products of truncated series stay consistent."""

    __slots__ = ("ctx", "terms", "max_hbar", "max_order")

    def __init__(self, ctx: PolyContext, terms: dict | None = None,
                 max_hbar: int | None = None, max_order: int | None = None):
        self.ctx = ctx
        self.terms: dict[Monomial, Fraction] = {}
        self.max_hbar = max_hbar
        self.max_order = max_order
        for mono, c in (terms or {}).items():
            self.add(mono, c)

    def _keep(self, mono: Monomial) -> bool:
        exps, h = mono
        if self.max_hbar is not None and h > self.max_hbar:
            return False
        if self.max_order is not None and sum(exps) + 2 * h > self.max_order:
            return False
        return True

    def add(self, mono: Monomial, c) -> None:
        if not self._keep(mono):
            return
        v = self.terms.get(mono, 0) + Fraction(c)
        if v:
            self.terms[mono] = v
        else:
            self.terms.pop(mono, None)

    def like(self) -> PolySeries:
        return PolySeries(self.ctx, None, self.max_hbar, self.max_order)

    def copy(self) -> PolySeries:
        out = self.like()
        out.terms = dict(self.terms)
        return out

    def __add__(self, other: PolySeries) -> PolySeries:
        _same(self, other)
        out = self.copy()
        for m, c in other.terms.items():
            out.add(m, c)
        return out

    def __sub__(self, other: PolySeries) -> PolySeries:
        return self + other.scaled(-1)

    def scaled(self, c) -> PolySeries:
        out = self.like()
        for m, v in self.terms.items():
            out.add(m, v * c)
        return out

    def __mul__(self, other: PolySeries) -> PolySeries:
        """Graded commutative product."""
        _same(self, other)
        out = self.like()
        for (ea, ha), ca in self.terms.items():
            for (eb, hb), cb in other.terms.items():
                r = mono_mul(self.ctx, ea, eb)
                if r is not None:
                    out.add((r[0], ha + hb), ca * cb * r[1])
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, PolySeries) and self.ctx == other.ctx and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{mono_str(self.ctx, m)}" for m, c in sorted(self.terms.items()))

    def degree_of(self, mono: Monomial) -> int:
        exps, h = mono
        return sum(e * self.ctx.degree(v) for v, e in enumerate(exps)) + 2 * self.ctx.d * h

    def homogeneous_parts(self) -> dict[int, PolySeries]:
        out: dict[int, PolySeries] = {}
        for m, c in self.terms.items():
            out.setdefault(self.degree_of(m), self.like()).add(m, c)
        return out

    def to_json(self) -> dict:
        return {"context": self.ctx.to_json(), "max_hbar": self.max_hbar, "max_order": self.max_order,
                "terms": [{"exponents": list(e), "hbar": h, "coeff": str(c)}
                          for (e, h), c in sorted(self.terms.items())]}

    @classmethod
    def from_json(cls, obj: dict) -> PolySeries:
        c = obj["context"]
        ctx = PolyContext(tuple(c["x_degrees"]), c.get("d", 1), tuple(c.get("names", ())),
                          tuple(c.get("weights", ())))
        out = cls(ctx, None, obj.get("max_hbar"), obj.get("max_order"))
        for t in obj["terms"]:
            out.add((tuple(t["exponents"]), int(t.get("hbar", 0))), Fraction(t["coeff"]))
        return out


def _same(a: PolySeries, b: PolySeries) -> None:
    if a.ctx != b.ctx:
        raise ValueError("context mismatch")


def mono_str(ctx: PolyContext, mono: Monomial) -> str:
    exps, h = mono
    parts = []
    for v, e in enumerate(exps):
        if e:
            name = ctx.names[v] if v < ctx.N else "p_" + ctx.names[v - ctx.N]
            parts.append(name if e == 1 else f"{name}^{e}")
    if h:
        parts.append("hbar" if h == 1 else f"hbar^{h}")
    return "*".join(parts) or "1"


def mono_mul(ctx: PolyContext, a: Sequence[int], b: Sequence[int]) -> tuple[tuple[int, ...], int] | None:
    """Product of two monomials in canonical order, with its Koszul sign, or None."""
    inv = 0
    out = []
    n = len(a)
    odd_a = [ctx.odd(v) and a[v] for v in range(n)]
    suffix = [0] * (n + 1)
    for v in range(n - 1, -1, -1):
        suffix[v] = suffix[v + 1] + (1 if odd_a[v] else 0)
    for v in range(n):
        e = a[v] + b[v]
        if ctx.odd(v):
            if e > 1:
                return None
            if b[v]:
                inv += suffix[v + 1]
        out.append(e)
    return tuple(out), -1 if inv % 2 else 1


def derivative(ctx: PolyContext, exps: Sequence[int], v: int, side: str) -> tuple[tuple[int, ...], int] | None:
    """Left or right derivative of a monomial with respect to variable v."""
    e = exps[v]
    if not e:
        return None
    out = list(exps)
    out[v] -= 1
    if not ctx.odd(v):
        return tuple(out), e
    if side == "left":
        passed = sum(exps[u] for u in range(v) if ctx.odd(u))
    else:
        passed = sum(exps[u] for u in range(v + 1, len(exps)) if ctx.odd(u))
    return tuple(out), -1 if passed % 2 else 1


def star(f: PolySeries, g: PolySeries) -> PolySeries:
    """f *_hbar g = sum_k hbar^k / k! (f with k right p-derivatives)(k left x-derivatives of g)."""
    _same(f, g)
    ctx = f.ctx
    out = f.like()
    if f.max_hbar is None and g.max_hbar is not None:
        out.max_hbar = g.max_hbar
    if f.max_order is None and g.max_order is not None:
        out.max_order = g.max_order
    level: dict[tuple, Fraction] = {}
    for (ea, ha), ca in f.terms.items():
        for (eb, hb), cb in g.terms.items():
            key = (ea, eb, ha + hb)
            level[key] = level.get(key, 0) + ca * cb
    k = 0
    while level:
        scale = Fraction(1, math.factorial(k))
        for (ea, eb, h), c in level.items():
            r = mono_mul(ctx, ea, eb)
            if r is not None:
                out.add((r[0], h + k), c * r[1] * scale)
        if out.max_hbar is not None and k + 1 > out.max_hbar:
            break
        nxt: dict[tuple, Fraction] = {}
        for (ea, eb, h), c in level.items():
            for i in range(ctx.N):
                da = derivative(ctx, ea, ctx.p(i), "right")
                if da is None:
                    continue
                db = derivative(ctx, eb, ctx.x(i), "left")
                if db is None:
                    continue
                key = (da[0], db[0], h)
                v = nxt.get(key, 0) + c * da[1] * db[1]
                if v:
                    nxt[key] = v
                else:
                    nxt.pop(key, None)
        level = nxt
        k += 1
    return out


class HbarDivisibilityError(ArithmeticError):
    """The commutator had a term without hbar (a sign convention is broken)."""


def hbar_bracket(f: PolySeries, g: PolySeries) -> PolySeries:
    """[f, g] = (f * g - (-1)^{|f||g|} g * f) / hbar, extended bilinearly over degrees."""
    _same(f, g)
    out = f.like()
    for df, fp in f.homogeneous_parts().items():
        for dg, gp in g.homogeneous_parts().items():
            s = -1 if (df * dg) % 2 else 1
            comm = star(fp, gp) - star(gp, fp).scaled(s)
            for (e, h), c in comm.terms.items():
                if h == 0:
                    raise HbarDivisibilityError(f"term {mono_str(f.ctx, (e, h))} has no hbar")
                out.add((e, h - 1), c)
    return out


def check_support(gamma: PolySeries) -> None:
    """Every monomial must contain some x and some p."""
    N = gamma.ctx.N
    for (e, h) in gamma.terms:
        if not any(e[:N]) or not any(e[N:]):
            raise ValueError(f"monomial {mono_str(gamma.ctx, (e, h))} is not in the ideal of x*p products")


def check_mc(gamma: PolySeries, max_input_weight: int | None = None) -> dict:
    """Residue of Gamma *_hbar Gamma.

    With ``max_input_weight`` only monomials whose p-part has total weight at most
    that bound are examined (the part of the residue not affected by truncating the
    variable set).
    """
    check_support(gamma)
    ctx = gamma.ctx
    res = star(gamma, gamma)
    degrees = {gamma.degree_of(m) for m in gamma.terms}

    def in_window(e):
        if max_input_weight is None:
            return True
        return sum(e[ctx.N + i] * ctx.weights[i] for i in range(ctx.N)) <= max_input_weight

    failures = [{"instance": mono_str(ctx, (e, h)), "residue": str(c)}
                for (e, h), c in sorted(res.terms.items()) if in_window(e)]
    return {"suite": "mc", "cases": len(gamma.terms) ** 2, "failures": failures,
            "degrees": sorted(degrees), "max_input_weight": max_input_weight}


# -- building series --------------------------------------------------------------------


def variable(ctx: PolyContext, v: int, coeff=1, **trunc) -> PolySeries:
    e = [0] * (2 * ctx.N)
    e[v] = 1
    return PolySeries(ctx, {(tuple(e), 0): Fraction(coeff)}, **trunc)


def constant(ctx: PolyContext, c=1, hbar: int = 0, **trunc) -> PolySeries:
    return PolySeries(ctx, {((0,) * (2 * ctx.N), hbar): Fraction(c)}, **trunc)


def random_poly(ctx: PolyContext, rng: random.Random, terms: int = 3, max_deg: int = 2,
                max_hbar: int = 1, coeffs: Sequence[int] = (-2, -1, 1, 2, 3)) -> PolySeries:
    out = PolySeries(ctx)
    nv = 2 * ctx.N
    for _ in range(terms):
        e = [0] * nv
        for _ in range(rng.randint(0, max_deg)):
            v = rng.randrange(nv)
            e[v] = 1 if ctx.odd(v) else e[v] + 1
        out.add((tuple(e), rng.randint(0, max_hbar)), rng.choice(coeffs))
    return out


def monomial_from(ctx: PolyContext, xs: Sequence[int], ps: Sequence[int]) -> tuple[tuple[int, ...], int] | None:
    """The monomial x_{xs[0]} ... x_{xs[-1]} p^{ps[0]} ... p^{ps[-1]} in canonical order, with sign."""
    exps = (0,) * (2 * ctx.N)
    sign = 1
    for v in list(xs) + [ctx.N + i for i in ps]:
        e = [0] * (2 * ctx.N)
        e[v] = 1
        r = mono_mul(ctx, exps, e)
        if r is None:
            return None
        exps = r[0]
        sign *= r[1]
    return exps, sign


def encode_operations(f, keys, words) -> PolySeries:
    """Generating series of the induced operations restricted to a finite word basis.

    Variable x_w has degree |w| + d and weight len(w).  The generator (m, n, a)
    contributes hbar^a (1/n!) sum over ordered inputs (w_1..w_n) and outputs of
    coeff * x_{out_1} ... x_{out_m} p^{w_n} ... p^{w_1}.
    """
    from .holieb import GenKey, induced_op

    words = list(words)
    index = {w: i for i, w in enumerate(words)}
    ctx = PolyContext(tuple(w.degree + f.d for w in words), f.d,
                      tuple(str(w) for w in words), tuple(max(1, len(w)) for w in words))
    gamma = PolySeries(ctx)
    for key in keys:
        if not isinstance(key, GenKey):
            key = GenKey(*key)
        scale = Fraction(1, math.factorial(key.n))
        for tup in itertools.product(words, repeat=key.n):
            out = induced_op(f, key, list(tup))
            for okey, c in out.terms.items():
                if any(w not in index for w in okey):
                    continue
                mono = monomial_from(ctx, [index[w] for w in okey], [index[w] for w in reversed(tup)])
                if mono is None:
                    continue
                gamma.add((mono[0], key.a), c * scale * mono[1])
    return gamma


def darboux_gamma(N: int = 1, max_len: int = 4):
    """Generating series of the Darboux bracket and cobracket on doubled words of length
    at most max_len; the residue is reliable for inputs of total length max_len + 2."""
    from .holieb import GenKey
    from .rep import all_words
    from .theta import darboux

    f = darboux(N)
    words = all_words(f.alphabet, max_len)
    return encode_operations(f, [GenKey(1, 2, 0), GenKey(2, 1, 0)], words), max_len + 2
