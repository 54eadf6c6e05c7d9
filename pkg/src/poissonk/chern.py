"""Chern class / Chern character conversions over an arbitrary coefficient ring.

Ring elements only need ``+``, ``*`` and multiplication by Fractions, so the
same formulas run on plain Fractions, on :class:`~poissonk.poly.Poly` and on
surface cohomology. Index conventions: ``ChernVector.classes[j]`` is ``c_{j+1}``
for an even vector and ``c_{j+1/2}`` for an odd one; a Chern character sequence
``ch`` has ``ch[i-1] = ch_i``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, factorial
from typing import Iterator, Sequence

from .errors import IntegralityError
from .poly import Poly, chern_var


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    @property
    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self.parts))

    @property
    def length(self) -> int:
        return len(self.parts)

    def __int__(self):
        return sum(self.parts)


def partitions(n: int) -> Iterator[Partition]:
    """Partitions of n in reverse-lexicographic order: (n), (n-1, 1), ..., (1^n)."""
    if n < 0:
        return
    if n == 0:
        yield Partition(())
        return

    def rec(remaining: int, largest: int, prefix: tuple[int, ...]):
        if remaining == 0:
            yield Partition(prefix)
            return
        for part in range(min(remaining, largest), 0, -1):
            yield from rec(remaining - part, part, prefix + (part,))

    yield from rec(n, n, ())


@dataclass(frozen=True)
class ChernVector:
    """Chern data of a K-class: rank plus c_1..c_N, or c_{1/2}..c_{N-1/2} if odd."""

    parity: str
    classes: tuple
    rank: int = 0

    def __post_init__(self):
        if self.parity not in ("even", "odd"):
            raise ValueError("parity is 'even' or 'odd'")
        if self.parity == "odd" and self.rank:
            raise ValueError("odd classes carry no rank")

    def c(self, i):
        """c_i, zero beyond the stored range; c_0 = 1 for even vectors."""
        i = Fraction(i)
        if self.parity == "even":
            if i == 0:
                return 1
            j = int(i) - 1
        else:
            j = int(i - Fraction(1, 2))
        if j < 0 or j >= len(self.classes):
            return 0
        return self.classes[j]


def _product(factors: Sequence):
    out = None
    for f in factors:
        out = f if out is None else out * f
    return out


def _is_zero(a) -> bool:
    return isinstance(a, int) and a == 0


def ch_from_chern(x: ChernVector, k: int):
    """ch_k by Girard's formula; ch_0 is the rank."""
    if x.parity != "even":
        raise ValueError("use odd_ch for odd classes")
    if k == 0:
        return x.rank
    total = 0
    for lam in partitions(k):
        m = lam.multiplicities
        length = lam.length
        coeff = Fraction((-1) ** length * factorial(length - 1))
        for mult in m.values():
            coeff /= factorial(mult)
        factors = []
        for i, mult in m.items():
            factors.extend([x.c(i)] * mult)
        term = _product(factors)
        if _is_zero(term):
            continue
        total = total + coeff * term
    return Fraction((-1) ** k, factorial(k - 1)) * total


def chern_from_ch(ch: Sequence, k: int):
    """c_k from ch_1..ch_k by summing over partitions of k."""
    if k == 0:
        return 1
    total = 0
    for lam in partitions(k):
        m = lam.multiplicities
        coeff = Fraction((-1) ** (k - lam.length))
        factors = []
        for i, mult in m.items():
            coeff *= Fraction(factorial(i - 1) ** mult, factorial(mult))
            factors.extend([ch[i - 1]] * mult)
        term = _product(factors)
        if _is_zero(term):
            continue
        total = total + coeff * term
    return total


def odd_ch(z: ChernVector, k: int):
    """ch_{k-1/2} of an odd class."""
    if z.parity != "odd":
        raise ValueError("odd_ch takes an odd class")
    if k < 1:
        raise ValueError("k >= 1")
    return Fraction((-1) ** (k - 1), factorial(k - 1)) * z.c(Fraction(2 * k - 1, 2))


def binomial(top: int, k: int) -> int:
    """C(top, k) for any integer top and k >= 0."""
    if k < 0:
        return 0
    if top >= 0:
        return comb(top, k)
    return (-1) ** k * comb(k - top - 1, k)


def twist_chern(x: ChernVector, ell, k: int):
    """c_k(x u L) with c_1(L) = ell, from c_t(xL) = sum_q c_q(x) t^q (1 + ell t)^(r-q)."""
    if x.parity != "even":
        raise ValueError("line twists are taken of even classes")
    terms = []
    for q in range(k + 1):
        b = binomial(x.rank - q, k - q)
        cq = x.c(q)
        if not b or _is_zero(cq):
            continue
        terms.append(b * (cq if q == k else cq * ell ** (k - q)))
    return sum(terms, 0)


def tensor_by_line(x: ChernVector, ell, n: int):
    """c_{r+n}(x u L) = sum_i C(i-n, i) c_{r+n-i}(x) ell^i for n >= 1.

    Only i < n contribute since C(i-n, i) = 0 for i >= n; the loop stops there.
    """
    if n < 1:
        raise ValueError("n >= 1")
    r = x.rank
    terms = []
    for i in range(n):
        b = binomial(i - n, i)
        cq = x.c(r + n - i)
        if _is_zero(cq):
            continue
        terms.append(b * (cq if i == 0 else cq * ell ** i))
    return sum(terms, 0)


def _series_mul(a: list, b: list, N: int) -> list:
    out: list = [0] * (N + 1)
    for i, ai in enumerate(a[:N + 1]):
        if _is_zero(ai):
            continue
        for j in range(min(len(b), N + 1 - i)):
            if not _is_zero(b[j]):
                out[i + j] = out[i + j] + ai * b[j]
    return out


def splitting_oracle(roots_num: Sequence, roots_den: Sequence, ell, N: int) -> list:
    """Coefficients c_0..c_N of prod(1 + (a + ell)t) / prod(1 + (b + ell)t)."""
    series: list = [1] + [0] * N
    for a in roots_num:
        series = _series_mul(series, [1, a + ell], N)
    for b in roots_den:
        u = b + ell
        inv = [1] + [(-u) ** k for k in range(1, N + 1)]
        series = _series_mul(series, inv, N)
    return series


# --- odd products ------------------------------------------------------------

def _odd_symbols(d: int):
    xs = {i: Poly.var(chern_var("x", Fraction(2 * i + 1, 2))) for i in range(d)}
    ys = {i: Poly.var(chern_var("y", Fraction(2 * i + 1, 2))) for i in range(d)}
    return xs, ys


def odd_pair_ch_scaled(d: int, xs=None, ys=None) -> Poly:
    """(d-1)! ch_d(x u y) = (-1)^(d-1) sum_i C(d-1, i) c_{i+1/2}(x) c_{d-i-1/2}(y)."""
    if xs is None:
        xs, ys = _odd_symbols(d)
    total = Poly()
    for i in range(d):
        total = total + comb(d - 1, i) * (xs[i] * ys[d - 1 - i])
    return (-1) ** (d - 1) * total


def odd_pair_power(d: int, m: int, xs=None, ys=None) -> Poly:
    """[(d-1)! ch_d(x u y)]^m through the distinct-index expansion.

    Each product c_{k+1/2}(x) c_{d-k-1/2}(y) squares to zero, so only strictly
    increasing index tuples k_1 < ... < k_m survive, with multiplicity m!.
    """
    if xs is None:
        xs, ys = _odd_symbols(d)
    total = Poly()
    for ks in combinations(range(d), m):
        term = Poly.const(1)
        for k in ks:
            term = term * (comb(d - 1, k) * (xs[k] * ys[d - 1 - k]))
        total = total + term
    return factorial(m) * (-1) ** (m * (d - 1)) * total


def odd_pair_chern(d: int) -> Poly:
    """c_d(x u y) for odd x, y as an integral polynomial in their odd Chern classes.

    Builds ch_1..ch_d from the scaled odd products, expands c_d over
    partitions using :func:`odd_pair_power` for repeated factors, and certifies
    that every coefficient is an integer.
    """
    if d < 1:
        raise ValueError("d >= 1")
    xs, ys = _odd_symbols(d)
    total = Poly()
    for lam in partitions(d):
        coeff = Fraction((-1) ** (d - lam.length))
        term = Poly.const(1)
        for i, mult in lam.multiplicities.items():
            # (i-1)! ch_i is exactly the scaled odd product
            coeff /= factorial(mult)
            term = term * odd_pair_power(i, mult, xs, ys)
        total = total + coeff * term
    if not total.is_integral():
        raise IntegralityError(f"c_{d}(x u y) has a non-integral coefficient")
    return total
