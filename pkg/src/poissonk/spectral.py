"""K-theory of a curve and pushforward along the ruling of a ruled surface.

Convention: S is ruled over a genus-g curve with H^2 basis (f, s), f the
fibre and s a section with s^2 = -delta. The tautological class is
h = O(-s), so h restricts to O(-1) on every fibre. K^0(S) is free over K^0
of the curve on {1, h}; pushforward sends 1 to 1 and h to 0.

Odd classes are tracked through pullback and pushforward on cohomology only.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cohomology import SurfaceModel
from .errors import IntegralityError, ValidationError
from .ktheory import KClass, euler_chi, kcup, odd_class


@dataclass(frozen=True)
class CurveKClass:
    g: int
    parity: str = "even"
    rank: int = 0
    degree: int = 0
    odd: tuple[int, ...] = ()

    def __post_init__(self):
        if self.g < 0:
            raise ValidationError("genus must be non-negative")
        if self.parity == "even":
            if self.odd:
                raise ValidationError("even curve classes carry no odd vector")
        elif self.parity == "odd":
            if self.rank or self.degree:
                raise ValidationError("odd curve classes carry no rank or degree")
            if len(self.odd) != 2 * self.g:
                raise ValidationError(f"odd class on a genus-{self.g} curve needs {2 * self.g} entries")
        else:
            raise ValidationError("parity is 'even' or 'odd'")

    def __add__(self, other: "CurveKClass") -> "CurveKClass":
        if (self.g, self.parity) != (other.g, other.parity):
            raise ValidationError("cannot add classes of different genus or parity")
        return CurveKClass(self.g, self.parity, self.rank + other.rank,
                           self.degree + other.degree,
                           tuple(a + b for a, b in zip(self.odd, other.odd)))

    def __rmul__(self, n: int) -> "CurveKClass":
        return CurveKClass(self.g, self.parity, n * self.rank, n * self.degree,
                           tuple(n * a for a in self.odd))

    def __neg__(self):
        return -1 * self

    def __sub__(self, other):
        return self + (-other)


def curve_class(g: int, rank: int, degree: int) -> CurveKClass:
    return CurveKClass(g, "even", int(rank), int(degree))


def curve_chi(g: int, v: CurveKClass) -> int:
    if v.parity != "even":
        raise ValidationError("curve_chi takes an even class")
    if v.g != g:
        raise ValidationError(f"class lives on a genus-{v.g} curve, not genus {g}")
    return v.degree + v.rank * (1 - g)


def _symplectic(g: int, a: Sequence[int], b: Sequence[int]) -> int:
    """int a u b on the curve, basis a_1..a_g, b_1..b_g with a_i.b_i = 1."""
    return sum(a[i] * b[g + i] - a[g + i] * b[i] for i in range(g))


def curve_product(x: CurveKClass, y: CurveKClass) -> CurveKClass:
    if x.g != y.g:
        raise ValidationError("classes live on curves of different genus")
    g = x.g
    if x.parity == "even" and y.parity == "even":
        return CurveKClass(g, "even", x.rank * y.rank, x.rank * y.degree + x.degree * y.rank)
    if x.parity == "even":
        return CurveKClass(g, "odd", odd=tuple(x.rank * a for a in y.odd))
    if y.parity == "even":
        return CurveKClass(g, "odd", odd=tuple(y.rank * a for a in x.odd))
    return CurveKClass(g, "even", 0, _symplectic(g, x.odd, y.odd))


# --- the ruled surface ----------------------------------------------------------

@dataclass(frozen=True)
class RuledData:
    g: int
    delta: int


def ruled_data(S: SurfaceModel) -> RuledData:
    """Read (g, delta) off a ruled-surface model, checking its shape."""
    if S.h2_rank != 2 or S.b1 % 2:
        raise ValidationError(f"{S.name} is not a ruled-surface model")
    g = S.b1 // 2
    q = S.intersection_form
    delta = -q[1][1]
    if (q[0][0], q[0][1], q[1][0]) != (0, 1, 1) or S.canonical_class != (2 * g - 2 - delta, -2):
        raise ValidationError(f"{S.name} is not in the (fibre, section) ruled form")
    return RuledData(g, delta)


def pullback(S: SurfaceModel, x: CurveKClass) -> KClass:
    rd = ruled_data(S)
    if x.g != rd.g:
        raise ValidationError("curve genus does not match the surface")
    if x.parity == "even":
        return KClass(S, "even", x.rank, (x.degree, 0), Fraction(0))
    return odd_class(S, x.odd, [0] * S.b1)


@dataclass(frozen=True)
class ModuleDecomposition:
    """w = b^!(a) + b^!(c) h."""

    a: CurveKClass
    c: CurveKClass


def module_decomposition(S: SurfaceModel, w: KClass) -> ModuleDecomposition:
    rd = ruled_data(S)
    if not w.is_even:
        raise ValidationError("the {1, h} decomposition is computed for even classes")
    x, y = w.c1
    d_c = Fraction(y * rd.delta, 2) - w.ch2
    if d_c.denominator != 1:
        raise ValidationError("class is not expressible in the {1, h} module basis")
    d_c = int(d_c)
    return ModuleDecomposition(curve_class(rd.g, w.r + y, x - d_c),
                               curve_class(rd.g, -y, d_c))


def tautological(S: SurfaceModel) -> KClass:
    """h = O(-s)."""
    rd = ruled_data(S)
    return KClass(S, "even", 1, (0, -1), Fraction(-rd.delta, 2))


def _grr_pushforward(S: SurfaceModel, rd: RuledData, w: KClass) -> CurveKClass:
    """b_*(ch(w) td(T_b)) with c_1(T_b) = 2s + delta f, whose square is 0."""
    x, y = w.c1
    # td(T_b) = 1 + s + (delta/2) f
    rank = y + w.r                      # (c1 + r s + r delta f / 2) . f
    degree = w.ch2 + x - y * rd.delta + Fraction(y * rd.delta, 2)
    if Fraction(degree).denominator != 1:
        raise IntegralityError("pushforward degree is not an integer")
    return curve_class(rd.g, rank, int(degree))


def ruling_pushforward(S: SurfaceModel, w: KClass, check: bool = True) -> CurveKClass:
    rd = ruled_data(S)
    if not w.is_even:
        # degree-3 part of ch(w) td(T_b), pushed to H^1 of the curve
        h3 = list(S.h1_times_h2(w.h1, (0, 1)))
        h3 = [a + b for a, b in zip(h3, w.h3)]
        g = rd.g
        # int_curve alpha u beta = int_S alpha u h3 for all alpha; invert the curve pairing
        beta = tuple(-h3[g + i] for i in range(g)) + tuple(h3[i] for i in range(g))
        return CurveKClass(g, "odd", odd=tuple(int(b) for b in beta))
    out = module_decomposition(S, w).a
    if check and out != _grr_pushforward(S, rd, w):
        raise IntegralityError("module pushforward disagrees with Grothendieck-Riemann-Roch")
    return out


def projection_formula_check(S: SurfaceModel, x: CurveKClass, w: KClass) -> bool:
    """chi_S(b^! x u w) = chi_curve(x u b_! w)."""
    rd = ruled_data(S)
    if x.parity != "even" or not w.is_even:
        raise ValidationError("projection formula check takes even classes")
    lhs = euler_chi(S, kcup(S, pullback(S, x), w))
    rhs = curve_chi(rd.g, curve_product(x, ruling_pushforward(S, w)))
    return lhs == rhs


def linearity_check(S: SurfaceModel, x: CurveKClass, w: KClass) -> bool:
    """b_!(b^! x u w) = x u b_!(w)."""
    return ruling_pushforward(S, kcup(S, pullback(S, x), w)) == curve_product(
        x, ruling_pushforward(S, w))
