"""Formal Chern variables of Kunneth factors and bigraded classes on M x M.

A :class:`FormalContext` fixes the factors e_1..e_n (parity and rank) and a
truncation 2m: the variables are c_k(e_i) of degree 2k <= 2m, half-integer k
for odd factors. A class on M x M is a :class:`~poissonk.poly.Poly` whose
variables are tagged with side 1 (left, pulled back by p_1) or side 2 (right);
the graded-commutative product of the polynomial ring is then exactly the
Koszul sign rule of the tensor product.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import chern
from .errors import ValidationError
from .poly import Poly, Var, chern_var, monomial_degree, render_monomial

LEFT, RIGHT = 1, 2


@dataclass(frozen=True)
class Factor:
    parity: str
    rank: int = 0

    def __post_init__(self):
        if self.parity not in ("even", "odd"):
            raise ValidationError(f"factor parity must be even or odd, got {self.parity!r}")
        if self.parity == "odd" and self.rank:
            raise ValidationError("odd factors carry no rank")


@dataclass(frozen=True)
class FormalContext:
    factors: tuple[Factor, ...]
    m: int
    label: str = "e"
    side: int = 0

    @property
    def cap(self) -> int:
        return 2 * self.m

    def indices(self, i: int) -> list[Fraction]:
        f = self.factors[i - 1]
        if f.parity == "even":
            return [Fraction(k) for k in range(1, self.m + 1)]
        return [Fraction(2 * k - 1, 2) for k in range(1, self.m + 1)]

    def var(self, i: int, k) -> Var:
        """c_k(e_i); factors are numbered from 1."""
        if not 1 <= i <= len(self.factors):
            raise ValidationError(f"no factor e_{i}")
        return chern_var(self.label, k, factor=i, side=self.side)

    def variables(self) -> list[Var]:
        return [self.var(i, k) for i in range(1, len(self.factors) + 1)
                for k in self.indices(i)]

    def chern_vector(self, i: int) -> chern.ChernVector:
        f = self.factors[i - 1]
        cls = tuple(Poly.var(self.var(i, k), self.cap) for k in self.indices(i))
        return chern.ChernVector(f.parity, cls, f.rank)

    def with_side(self, side: int, label: str | None = None) -> "FormalContext":
        return FormalContext(self.factors, self.m, label or self.label, side)


def make_context(factors: Iterable, m: int, label: str = "e", side: int = 0) -> FormalContext:
    """``factors`` holds Factor objects, (parity, rank) pairs or parity strings."""
    if m < 1:
        raise ValidationError("truncation m must be at least 1")
    out = []
    for f in factors:
        if isinstance(f, Factor):
            out.append(f)
        elif isinstance(f, str):
            out.append(Factor(f))
        else:
            out.append(Factor(*f))
    return FormalContext(tuple(out), m, label, side)


def multiply(a: Poly, b: Poly) -> Poly:
    return a * b


def formal_ch(ctx: FormalContext, i: int, k) -> Poly:
    """ch_k(e_i): integer k for even factors, half-integer k for odd ones."""
    k = Fraction(k)
    f = ctx.factors[i - 1]
    x = ctx.chern_vector(i)
    if f.parity == "even":
        if k.denominator != 1:
            raise ValidationError("even factors have integer-degree ch")
        if k == 0:
            return Poly.const(f.rank, ctx.cap)
        out = chern.ch_from_chern(x, int(k))
    else:
        if k.denominator != 2:
            raise ValidationError("odd factors have half-integer-degree ch")
        out = chern.odd_ch(x, int(k + Fraction(1, 2)))
    if not isinstance(out, Poly):
        out = Poly.const(out, ctx.cap)
    return out.truncate(ctx.cap)


def ch_components(ctx: FormalContext, i: int, top: int) -> dict[Fraction, Poly]:
    """All ch_k(e_i) with 2k <= top, keyed by k (ch_0 included for even factors)."""
    f = ctx.factors[i - 1]
    if f.parity == "even":
        ks = [Fraction(k) for k in range(0, top // 2 + 1)]
    else:
        ks = [Fraction(2 * k - 1, 2) for k in range(1, (top + 1) // 2 + 1)]
    return {k: formal_ch(ctx, i, k) for k in ks if 2 * k <= ctx.cap}


# --- bigraded view --------------------------------------------------------------

def split_monomial(mono) -> tuple[tuple, tuple]:
    left = tuple((v, e) for v, e in mono if v.side == LEFT)
    right = tuple((v, e) for v, e in mono if v.side != LEFT)
    return left, right


@dataclass(frozen=True)
class BigradedTerm:
    coeff: Fraction
    left: tuple
    right: tuple

    @property
    def bidegree(self) -> tuple[int, int]:
        return monomial_degree(self.left), monomial_degree(self.right)

    def __str__(self):
        return f"{self.coeff} * [{render_monomial(self.left)}] (x) [{render_monomial(self.right)}]"


class BigradedClass:
    """An element of A (x) B, stored as one side-tagged polynomial."""

    def __init__(self, poly: Poly):
        self.poly = poly

    def terms(self) -> list[BigradedTerm]:
        out = []
        for mono, c in self.poly:
            left, right = split_monomial(mono)
            out.append(BigradedTerm(c, left, right))
        return out

    def pairs(self) -> list[tuple[Poly, Poly]]:
        """Group terms as sum_j alpha_j (x) beta_j with distinct alpha_j."""
        grouped: dict[tuple, Poly] = {}
        order: list[tuple] = []
        for t in self.terms():
            if t.left not in grouped:
                grouped[t.left] = Poly()
                order.append(t.left)
            grouped[t.left] = grouped[t.left] + Poly({t.right: t.coeff})
        return [(Poly({left: Fraction(1)}), grouped[left]) for left in order]

    def is_integral(self) -> bool:
        return self.poly.is_integral()

    def __eq__(self, other):
        return isinstance(other, BigradedClass) and self.poly == other.poly

    def __bool__(self):
        return bool(self.poly)

    def __str__(self):
        return str(self.poly)


def tensor(a: Poly, b: Poly) -> Poly:
    """a (x) b for a on the left and b on the right (sides must already be set)."""
    return a * b


def relabel_side(p: Poly, side: int) -> Poly:
    mapping = {v: Poly.var(Var(side, v.label, v.factor, v.index), p.cap) for v in p.variables()}
    return p.subs(mapping)


def variables_in(mono: Sequence) -> list[Var]:
    return [v for v, _ in mono]
