"""K^0 and K^1 of a surface through the Chern character.

An even class is stored as ``(r, c1, ch2)``; its integrality means r, c1 and
``c2 = c1^2/2 - ch2`` are integers. An odd class is stored as its Chern
character components in H^1 and H^3, both integral on a surface.

Because K is characteristic, ``ch2 - K.c1/2`` is an integer that depends
linearly on the class. ``(r, c1, ch2 - K.c1/2)`` are therefore honest lattice
coordinates on K^0, used for primitivity, spanning checks and the standard
basis.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from . import linalg
from .cohomology import CohClass, SurfaceModel, coh_class, cup, integrate, todd
from .errors import IntegralityError, ValidationError


@dataclass(frozen=True)
class KClass:
    surface: SurfaceModel = field(repr=False, compare=False)
    parity: str
    r: int = 0
    c1: tuple[int, ...] = ()
    ch2: Fraction = Fraction(0)
    h1: tuple[int, ...] = ()
    h3: tuple[int, ...] = ()

    # identity is by surface name plus data; the model itself is not compared
    @property
    def surface_name(self) -> str:
        return self.surface.name

    def __eq__(self, other):
        if not isinstance(other, KClass):
            return NotImplemented
        return (self.surface.name, self.parity, self.r, self.c1, self.ch2, self.h1,
                self.h3) == (other.surface.name, other.parity, other.r, other.c1,
                             other.ch2, other.h1, other.h3)

    def __hash__(self):
        return hash((self.surface.name, self.parity, self.r, self.c1, self.ch2,
                     self.h1, self.h3))

    @property
    def is_even(self) -> bool:
        return self.parity == "even"

    @property
    def c2(self) -> int:
        if not self.is_even:
            raise ValidationError("odd classes have no c2")
        v = Fraction(self.surface.dot(self.c1, self.c1), 2) - self.ch2
        return int(v)

    def ch(self) -> CohClass:
        S = self.surface
        if self.is_even:
            return coh_class(S, deg0=self.r, deg2=self.c1, deg4=self.ch2)
        return coh_class(S, deg1=self.h1, deg3=self.h3)

    def lattice_coords(self) -> tuple[int, ...]:
        """Integer coordinates (r, c1, ch2 - K.c1/2) of an even class."""
        if not self.is_even:
            raise ValidationError("lattice coordinates are defined for even classes")
        last = self.ch2 - Fraction(self.surface.dot(self.surface.canonical_class, self.c1), 2)
        return (self.r, *self.c1, int(last))

    def is_zero(self) -> bool:
        if self.is_even:
            return self.r == 0 and not any(self.c1) and self.ch2 == 0
        return not any(self.h1) and not any(self.h3)

    # linear structure -----------------------------------------------------
    def _same(self, other: "KClass"):
        if self.surface.name != other.surface.name:
            raise ValidationError("classes live on different surfaces")
        if self.parity != other.parity:
            raise ValidationError("cannot add classes of different parity")

    def __add__(self, other: "KClass") -> "KClass":
        self._same(other)
        if self.is_even:
            return KClass(self.surface, "even", self.r + other.r,
                          tuple(a + b for a, b in zip(self.c1, other.c1)),
                          self.ch2 + other.ch2)
        return KClass(self.surface, "odd", h1=tuple(a + b for a, b in zip(self.h1, other.h1)),
                      h3=tuple(a + b for a, b in zip(self.h3, other.h3)))

    def __rmul__(self, n: int) -> "KClass":
        if not isinstance(n, int):
            return NotImplemented
        if self.is_even:
            return KClass(self.surface, "even", n * self.r, tuple(n * a for a in self.c1),
                          n * self.ch2)
        return KClass(self.surface, "odd", h1=tuple(n * a for a in self.h1),
                      h3=tuple(n * a for a in self.h3))

    def __neg__(self):
        return -1 * self

    def __sub__(self, other):
        return self + (-other)


def _vec(v, n: int, what: str) -> tuple[int, ...]:
    v = tuple(v)
    if len(v) == 1 and v[0] == 0 and n != 1:
        return (0,) * n
    if len(v) != n:
        raise ValidationError(f"{what} needs {n} entries, got {len(v)}")
    out = []
    for x in v:
        if Fraction(x).denominator != 1:
            raise ValidationError(f"{what} must be integral")
        out.append(int(x))
    return tuple(out)


def from_chern(S: SurfaceModel, r: int, c1: Sequence[int], c2: int) -> KClass:
    c1 = _vec(c1, S.h2_rank, "c1")
    return KClass(S, "even", int(r), c1, Fraction(S.dot(c1, c1), 2) - int(c2))


def from_ch(S: SurfaceModel, r, c1: Sequence, ch2) -> KClass:
    """Even class from Chern character data; rejects non-integral (r, c1, c2)."""
    if Fraction(r).denominator != 1:
        raise ValidationError("rank must be an integer")
    c1 = _vec(c1, S.h2_rank, "c1")
    ch2 = Fraction(ch2)
    if (Fraction(S.dot(c1, c1), 2) - ch2).denominator != 1:
        raise ValidationError(f"ch2 = {ch2} gives a non-integral c2")
    return KClass(S, "even", int(r), c1, ch2)


def odd_class(S: SurfaceModel, h1: Sequence[int], h3: Sequence[int]) -> KClass:
    if S.b1 == 0:
        raise ValidationError(f"{S.name} has no odd K-theory")
    return KClass(S, "odd", h1=_vec(h1, S.b1, "h1"), h3=_vec(h3, S.b1, "h3"))


def line_bundle(S: SurfaceModel, D: Sequence[int]) -> KClass:
    D = _vec(D, S.h2_rank, "divisor")
    return KClass(S, "even", 1, D, Fraction(S.dot(D, D), 2))


def structure_sheaf(S: SurfaceModel) -> KClass:
    return KClass(S, "even", 1, (0,) * S.h2_rank, Fraction(0))


def point(S: SurfaceModel) -> KClass:
    return KClass(S, "even", 0, (0,) * S.h2_rank, Fraction(1))


def zero(S: SurfaceModel) -> KClass:
    return KClass(S, "even", 0, (0,) * S.h2_rank, Fraction(0))


def from_lattice_coords(S: SurfaceModel, coords: Sequence[int]) -> KClass:
    if len(coords) != S.h2_rank + 2:
        raise ValidationError("wrong number of lattice coordinates")
    r, *c1, t = coords
    return KClass(S, "even", int(r), tuple(int(x) for x in c1),
                  t + Fraction(S.dot(S.canonical_class, c1), 2))


def lattice_basis(S: SurfaceModel) -> list[KClass]:
    """Standard Z-basis of K^0: O, the lattice unit vectors along H^2, a point."""
    n = S.h2_rank + 2
    return [from_lattice_coords(S, [int(i == j) for j in range(n)]) for i in range(n)]


def odd_basis(S: SurfaceModel) -> list[KClass]:
    out = []
    for i in range(S.b1):
        out.append(odd_class(S, [int(i == j) for j in range(S.b1)], [0] * S.b1))
    for i in range(S.b1):
        out.append(odd_class(S, [0] * S.b1, [int(i == j) for j in range(S.b1)]))
    return out


def from_cohomology(S: SurfaceModel, a: CohClass) -> KClass:
    even = a.deg0 or any(a.deg2) or a.deg4
    odd = any(a.deg1) or any(a.deg3)
    if even and odd:
        raise ValidationError("class has mixed parity")
    if odd:
        return odd_class(S, a.deg1, a.deg3)
    return from_ch(S, a.deg0, a.deg2, a.deg4)


def _check(S: SurfaceModel, *classes: KClass):
    for x in classes:
        if x.surface.name != S.name:
            raise ValidationError(f"class lives on {x.surface.name}, not {S.name}")


# --- operations --------------------------------------------------------------

def dual(v: KClass) -> KClass:
    if not v.is_even:
        raise ValidationError("duality on K^1 is not modelled")
    return KClass(v.surface, "even", v.r, tuple(-a for a in v.c1), v.ch2)


def kcup(S: SurfaceModel, x: KClass, y: KClass) -> KClass:
    """Product in K^*; computed on Chern characters, which is multiplicative."""
    _check(S, x, y)
    return from_cohomology(S, cup(S, x.ch(), y.ch()))


def euler_chi(S: SurfaceModel, v: KClass) -> int:
    """chi(v) = int ch(v) td(S), asserted integral."""
    _check(S, v)
    if not v.is_even:
        raise ValidationError("euler_chi takes an even class")
    val = integrate(S, cup(S, v.ch(), todd(S)))
    if val.denominator != 1:
        raise IntegralityError(f"chi = {val} is not an integer on {S.name}")
    return int(val)


def mukai_pair(S: SurfaceModel, x: KClass, y: KClass) -> int:
    """(x, y) = -chi(x^dual u y). Perfect, but symmetric only when K pairs
    trivially with r(x) c1(y) - r(y) c1(x); see :func:`mukai_asymmetry`."""
    return -euler_chi(S, kcup(S, dual(x), y))


def mukai_asymmetry(S: SurfaceModel, x: KClass, y: KClass) -> int:
    """(x, y) - (y, x), which Serre duality forces to be K.(r(x) c1(y) - r(y) c1(x))."""
    diff = mukai_pair(S, x, y) - mukai_pair(S, y, x)
    w = tuple(x.r * b - y.r * a for a, b in zip(x.c1, y.c1))
    if diff != S.dot(S.canonical_class, w):
        raise IntegralityError("Mukai pairing violates Serre duality")
    return diff


def plain_pair(S: SurfaceModel, x: KClass, y: KClass) -> int:
    """-chi(x u y); the variant used when odd classes are present."""
    z = kcup(S, x, y)
    return -euler_chi(S, z) if z.is_even else 0


def chi_gram(S: SurfaceModel, xs: Sequence[KClass], ys: Sequence[KClass] | None = None):
    ys = xs if ys is None else ys
    return [[euler_chi(S, kcup(S, x, y)) for y in ys] for x in xs]


def gram_and_dual_basis(S: SurfaceModel, basis: Sequence[KClass]):
    """Gram matrix of chi(x u y) on ``basis`` and the basis y with chi(x_i u y_j) = delta.

    ``basis`` must be a Z-basis of the even lattice.
    """
    _check(S, *basis)
    if any(not x.is_even for x in basis):
        raise ValidationError("dual bases are computed on K^0")
    n = S.h2_rank + 2
    if len(basis) != n:
        raise ValidationError(f"K^0({S.name}) has rank {n}; got {len(basis)} classes")
    if abs(linalg.det([x.lattice_coords() for x in basis])) != 1:
        raise ValidationError("classes do not span K^0 over the integers")
    gram = chi_gram(S, basis)
    if abs(linalg.det(gram)) != 1:
        raise ValidationError("chi-pairing on this basis is not unimodular")
    inv = linalg.integer_inverse(gram)
    dual_basis = []
    for j in range(n):
        y = zero(S)
        for k in range(n):
            if inv[k][j]:
                y = y + inv[k][j] * basis[k]
        dual_basis.append(y)
    return gram, dual_basis


def primitive(v: KClass) -> bool:
    if not v.is_even:
        raise ValidationError("primitivity is tested on even classes")
    if v.is_zero():
        raise ValidationError("the zero class is not primitive or imprimitive")
    g = 0
    for c in v.lattice_coords():
        g = gcd(g, c)
    return g == 1


def universal_obstruction(S: SurfaceModel, v: KClass) -> int:
    """gcd of chi(v u w) over a Z-basis of K^0; 1 means a universal sheaf exists."""
    _check(S, v)
    if not v.is_even or v.is_zero():
        raise ValidationError("obstruction needs a nonzero even class")
    g = 0
    for w in lattice_basis(S):
        g = gcd(g, euler_chi(S, kcup(S, v, w)))
    if g == 0:
        raise IntegralityError("chi(v u -) vanishes on all of K^0")
    return g


def expected_dim(S: SurfaceModel, v: KClass, epsilon: int) -> int:
    if epsilon not in (1, 2):
        raise ValidationError("epsilon is 1 (Poisson) or 2 (symplectic)")
    if not primitive(v):
        warnings.warn(f"class {v} is not primitive", stacklevel=2)
    return epsilon - euler_chi(S, kcup(S, dual(v), v))


# --- Hilbert polynomials and stability ------------------------------------

@dataclass(frozen=True)
class HilbertPoly:
    """P(n) = coeffs[0] n^2 + coeffs[1] n + coeffs[2]."""

    coeffs: tuple[Fraction, Fraction, Fraction]
    l0: int
    d: int

    def __call__(self, n) -> Fraction:
        a, b, c = self.coeffs
        return a * n * n + b * n + c

    def reduced(self) -> tuple[Fraction, ...]:
        return tuple(c / self.l0 for c in self.coeffs)


def hilbert_poly(S: SurfaceModel, v: KClass, H: Sequence[int]) -> HilbertPoly:
    _check(S, v)
    H = _vec(H, S.h2_rank, "polarization")
    hh = S.dot(H, H)
    if hh <= 0:
        raise ValidationError("polarization must have positive square")
    if not v.is_even:
        raise ValidationError("Hilbert polynomials are defined for even classes")
    hc1 = S.dot(H, v.c1)
    hK = S.dot(H, S.canonical_class)
    coeffs = (Fraction(v.r * hh, 2), hc1 - Fraction(v.r * hK, 2), Fraction(euler_chi(S, v)))
    if v.r > 0:
        d, l0 = 2, v.r * hh
    elif v.r < 0:
        raise ValidationError("negative rank is not a sheaf class")
    elif any(v.c1):
        if hc1 <= 0:
            raise ValidationError("rank-0 class with H.c1 <= 0 has no positive l0")
        d, l0 = 1, hc1
    else:
        d, l0 = 0, -v.c2
        if l0 <= 0:
            raise ValidationError("rank-0 class with c1 = 0 needs c2 < 0")
    return HilbertPoly(coeffs, l0, d)


def stability_compare(p: HilbertPoly, q: HilbertPoly) -> int:
    """Sign of p/l0(p) - q/l0(q) for large n: 1, 0 or -1."""
    for a, b in zip(p.reduced(), q.reduced()):
        if a != b:
            return 1 if a > b else -1
    return 0
