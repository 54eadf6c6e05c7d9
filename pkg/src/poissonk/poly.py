"""Graded-commutative polynomials with exact rational coefficients.

Variables carry a cohomological degree. Even-degree variables commute with
everything; odd-degree variables anticommute with each other and square to
zero. A monomial is stored in canonical sorted order, with the Koszul sign
folded into the coefficient, so two polynomials are equal exactly when their
term dictionaries agree.

An optional degree cap truncates: every term of total degree above the cap is
dropped. Because degrees only grow under multiplication, truncation never
changes the terms that survive.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping

Monomial = tuple  # tuple[tuple[Var, int], ...], sorted by Var


@dataclass(frozen=True, order=True)
class Var:
    """The formal class ``c_index(label_factor)``.

    ``index`` is an integer for even classes and a half-integer for odd ones;
    the cohomological degree is ``2 * index``. ``side`` separates the two
    tensor factors of a bigraded class (0 = unsided, 1 = left, 2 = right) and
    is the most significant sort key, so left variables always precede right
    ones in a canonical monomial.
    """

    side: int
    label: str
    factor: int
    index: Fraction

    @property
    def degree(self) -> int:
        return int(2 * self.index)

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1

    def __str__(self) -> str:
        idx = self.index
        k = str(idx.numerator) if idx.denominator == 1 else "{%s}" % idx
        who = self.label if self.factor == 0 else f"{self.label}_{self.factor}"
        return f"c_{k}({who})"


def chern_var(label: str, index, factor: int = 0, side: int = 0) -> Var:
    idx = Fraction(index)
    if idx <= 0 or (2 * idx).denominator != 1:
        raise ValueError(f"Chern index must be a positive (half-)integer, got {index}")
    return Var(side, label, factor, idx)


def _mono_degree(mono: Monomial) -> int:
    return sum(v.degree * e for v, e in mono)


def _mono_mul(a: Monomial, b: Monomial) -> tuple[int, Monomial]:
    """Product of two canonical monomials as (sign, monomial); sign 0 if it vanishes."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    odd_a = [v for v, _ in a if v.odd]
    odd_b = [v for v, _ in b if v.odd]
    sign = 1
    if odd_a and odd_b:
        inversions = 0
        j = 0
        # odd_a and odd_b are sorted; count pairs (x in a, y in b) with x > y
        for x in odd_a:
            while j < len(odd_b) and odd_b[j] < x:
                j += 1
            if j < len(odd_b) and odd_b[j] == x:
                return 0, ()
            inversions += j
        if inversions % 2:
            sign = -1
    exps: dict[Var, int] = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return sign, tuple(sorted(exps.items()))


class Poly:
    """Element of a graded-commutative polynomial ring over Q."""

    __slots__ = ("terms", "cap")

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None,
                 cap: int | None = None):
        self.cap = cap
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                if c and (cap is None or _mono_degree(mono) <= cap):
                    clean[mono] = Fraction(c)
        self.terms = clean

    # construction -----------------------------------------------------------
    @classmethod
    def const(cls, c, cap: int | None = None) -> "Poly":
        return cls({(): Fraction(c)}, cap)

    @classmethod
    def var(cls, v: Var, cap: int | None = None) -> "Poly":
        return cls({((v, 1),): Fraction(1)}, cap)

    @classmethod
    def monomial(cls, variables: Iterable[Var], coeff=1,
                 cap: int | None = None) -> "Poly":
        """Product of ``variables`` in the order given (signs applied)."""
        out = cls.const(coeff, cap)
        for v in variables:
            out = out * cls.var(v, cap)
        return out

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Rational)):
            return Poly.const(other, self.cap)
        return NotImplemented

    @staticmethod
    def _join_cap(a: int | None, b: int | None) -> int | None:
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            terms[mono] = terms.get(mono, 0) + c
        return Poly(terms, self._join_cap(self.cap, other.cap))

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()}, self.cap)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return Poly({m: c * other for m, c in self.terms.items()}, self.cap)
        if not isinstance(other, Poly):
            return NotImplemented
        cap = self._join_cap(self.cap, other.cap)
        out: dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            da = _mono_degree(ma)
            for mb, cb in other.terms.items():
                if cap is not None and da + _mono_degree(mb) > cap:
                    continue
                sign, mono = _mono_mul(ma, mb)
                if sign:
                    out[mono] = out.get(mono, 0) + sign * ca * cb
        return Poly(out, cap)

    def __rmul__(self, other):
        if isinstance(other, (int, Rational)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = Poly.const(1, self.cap)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, Poly) else other
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # inspection -------------------------------------------------------------
    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(sorted(self.terms.items(), key=lambda t: sort_key(t[0])))

    def variables(self) -> set[Var]:
        return {v for mono in self.terms for v, _ in mono}

    def homogeneous_part(self, degree: int) -> "Poly":
        return Poly({m: c for m, c in self.terms.items()
                     if _mono_degree(m) == degree}, self.cap)

    def degrees(self) -> set[int]:
        return {_mono_degree(m) for m in self.terms}

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def constant(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def truncate(self, cap: int | None) -> "Poly":
        return Poly(self.terms, cap)

    def subs(self, mapping: Mapping[Var, "Poly"]) -> "Poly":
        """Substitute polynomials for variables (others kept)."""
        out = Poly({}, self.cap)
        for mono, c in self.terms.items():
            term = Poly.const(c, self.cap)
            for v, e in mono:
                image = mapping.get(v)
                if image is None:
                    image = Poly.var(v, self.cap)
                term = term * image ** e
            out = out + term
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for mono, c in self:
            body = "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in mono)
            mag = abs(c)
            if not body:
                s = str(mag)
            elif mag == 1:
                s = body
            else:
                s = f"{mag}*{body}"
            pieces.append(("-" if c < 0 else "+", s))
        head_sign, head = pieces[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, s in pieces[1:]:
            text += f" {sign} {s}"
        return text

    __repr__ = __str__


def sort_key(mono: Monomial):
    """Canonical print order: by degree, then by variables."""
    return (_mono_degree(mono), tuple((v, -e) for v, e in mono))


def monomial_degree(mono: Monomial) -> int:
    return _mono_degree(mono)


def render_monomial(mono: Monomial) -> str:
    if not mono:
        return "1"
    return "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in mono)
