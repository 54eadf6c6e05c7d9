"""Finite models of the integral cohomology ring of a Poisson surface.

A surface is presented by its lattices and products:

* ``intersection_form`` -- the unimodular form on H^2;
* ``odd_pairing`` -- ``P[i][j] = int a_i u b_j`` for bases a of H^1, b of H^3;
* ``h1_product`` -- ``T[i][j]`` = the H^2 coordinates of ``a_i u a_j``
  (antisymmetric; zero unless the surface needs it).

The product H^1 x H^2 -> H^3 is not stored. It is forced by Poincare duality:
``a u X`` is the H^3 class y with ``int d u y = Q(T(d, a), X)`` for all d in
H^1. Deriving it this way keeps the ring associative whenever the four-form
``Q(T(a, b), T(c, d))`` is alternating, which :func:`build_surface` checks.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations
from pathlib import Path
from typing import Sequence

from . import linalg
from .errors import ValidationError

IntMatrix = tuple[tuple[int, ...], ...]


def _frac_vec(v) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)


@dataclass(frozen=True)
class SurfaceModel:
    name: str
    b1: int
    h2_rank: int
    intersection_form: IntMatrix
    odd_pairing: IntMatrix
    canonical_class: tuple[int, ...]
    euler_number: int
    h1_product: tuple[tuple[tuple[int, ...], ...], ...] = field(default=(), repr=False)

    @property
    def todd1(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(-k, 2) for k in self.canonical_class)

    @property
    def todd2(self) -> Fraction:
        return Fraction(self.dot(self.canonical_class, self.canonical_class)
                        + self.euler_number, 12)

    @property
    def chi_O(self) -> Fraction:
        return self.todd2

    @property
    def is_rational(self) -> bool:
        """Poisson surfaces with q = p_g = 0 are rational; torsion is excluded."""
        return self.b1 == 0 and self.todd2 == 1

    def dot(self, u: Sequence, v: Sequence):
        return linalg.bilinear(u, self.intersection_form, v)

    def h1_times_h1(self, a: Sequence, b: Sequence) -> tuple:
        """H^2 coordinates of a u b for a, b in H^1."""
        out = [0] * self.h2_rank
        if not self.h1_product:
            return tuple(out)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                w = ai * bj
                for k, t in enumerate(self.h1_product[i][j]):
                    if t:
                        out[k] += w * t
        return tuple(out)

    @cached_property
    def _odd_pairing_inverse(self):
        return linalg.inverse(self.odd_pairing) if self.b1 else []

    def h1_times_h2(self, a: Sequence, x: Sequence) -> tuple:
        """H^3 coordinates of a u X for a in H^1, X in H^2."""
        if not self.h1_product or not any(a) or not any(x):
            return tuple([0] * self.b1)
        q = []
        for i in range(self.b1):
            e = [0] * self.b1
            e[i] = 1
            q.append(self.dot(self.h1_times_h1(e, a), x))
        inv = self._odd_pairing_inverse
        return tuple(sum(inv[r][s] * q[s] for s in range(self.b1))
                     for r in range(self.b1))

    def odd_integral(self, a: Sequence, y: Sequence):
        """int a u y for a in H^1, y in H^3."""
        return linalg.bilinear(a, self.odd_pairing, y)

    def to_spec(self) -> dict:
        spec = {
            "name": self.name,
            "b1": self.b1,
            "intersection_form": [list(r) for r in self.intersection_form],
            "odd_pairing": [list(r) for r in self.odd_pairing],
            "canonical_class": list(self.canonical_class),
            "euler_number": self.euler_number,
        }
        if self.h1_product and any(any(any(v) for v in row) for row in self.h1_product):
            spec["h1_product"] = [[list(v) for v in row] for row in self.h1_product]
        return spec


@dataclass(frozen=True)
class CohClass:
    """A class in H^*(S, Q), coordinates by degree 0..4."""

    surface: str
    deg0: Fraction = Fraction(0)
    deg1: tuple = ()
    deg2: tuple = ()
    deg3: tuple = ()
    deg4: Fraction = Fraction(0)

    @property
    def is_integral(self) -> bool:
        coords = (self.deg0, *self.deg1, *self.deg2, *self.deg3, self.deg4)
        return all(Fraction(c).denominator == 1 for c in coords)

    def part(self, degree: int) -> "CohClass":
        zeros1 = tuple(0 for _ in self.deg1)
        zeros2 = tuple(0 for _ in self.deg2)
        return CohClass(
            self.surface,
            self.deg0 if degree == 0 else Fraction(0),
            self.deg1 if degree == 1 else zeros1,
            self.deg2 if degree == 2 else zeros2,
            self.deg3 if degree == 3 else zeros1,
            self.deg4 if degree == 4 else Fraction(0),
        )

    def _check(self, other: "CohClass"):
        if self.surface != other.surface:
            raise ValidationError(f"classes live on {self.surface} and {other.surface}")

    def __add__(self, other: "CohClass") -> "CohClass":
        self._check(other)
        return CohClass(
            self.surface,
            self.deg0 + other.deg0,
            tuple(a + b for a, b in zip(self.deg1, other.deg1)),
            tuple(a + b for a, b in zip(self.deg2, other.deg2)),
            tuple(a + b for a, b in zip(self.deg3, other.deg3)),
            self.deg4 + other.deg4,
        )

    def __rmul__(self, c) -> "CohClass":
        return CohClass(self.surface, c * self.deg0,
                        tuple(c * x for x in self.deg1),
                        tuple(c * x for x in self.deg2),
                        tuple(c * x for x in self.deg3),
                        c * self.deg4)

    def __neg__(self):
        return -1 * self

    def __sub__(self, other):
        return self + (-other)


def coh_class(S: SurfaceModel, deg0=0, deg1=None, deg2=None, deg3=None, deg4=0) -> CohClass:
    def vec(v, n):
        if v is None:
            return tuple(Fraction(0) for _ in range(n))
        if len(v) != n:
            raise ValidationError(f"expected a vector of length {n}, got {len(v)}")
        return _frac_vec(v)

    return CohClass(S.name, Fraction(deg0), vec(deg1, S.b1), vec(deg2, S.h2_rank),
                    vec(deg3, S.b1), Fraction(deg4))


def point_class(S: SurfaceModel) -> CohClass:
    return coh_class(S, deg4=1)


def cup(S: SurfaceModel, a: CohClass, b: CohClass) -> CohClass:
    """Cup product; odd classes anticommute."""
    if a.surface != S.name or b.surface != S.name:
        raise ValidationError("cup of classes from a different surface")
    d0 = a.deg0 * b.deg0
    d1 = tuple(a.deg0 * y + x * b.deg0 for x, y in zip(a.deg1, b.deg1))
    t = S.h1_times_h1(a.deg1, b.deg1)
    d2 = tuple(a.deg0 * y + x * b.deg0 + z for x, y, z in zip(a.deg2, b.deg2, t))
    m1 = S.h1_times_h2(a.deg1, b.deg2)
    m2 = S.h1_times_h2(b.deg1, a.deg2)
    d3 = tuple(a.deg0 * y + x * b.deg0 + p + q
               for x, y, p, q in zip(a.deg3, b.deg3, m1, m2))
    d4 = (a.deg0 * b.deg4 + a.deg4 * b.deg0 + S.dot(a.deg2, b.deg2)
          + S.odd_integral(a.deg1, b.deg3) - S.odd_integral(b.deg1, a.deg3))
    return CohClass(S.name, d0, d1, d2, d3, Fraction(d4))


def integrate(S: SurfaceModel, a: CohClass) -> Fraction:
    if a.surface != S.name:
        raise ValidationError("integrating a class from a different surface")
    return a.deg4


def todd(S: SurfaceModel) -> CohClass:
    return coh_class(S, deg0=1, deg2=S.todd1, deg4=S.todd2)


# --- construction -------------------------------------------------------------

def _square(m, n: int, what: str) -> IntMatrix:
    rows = tuple(tuple(int(x) for x in row) for row in m)
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValidationError(f"{what} must be {n}x{n}")
    return rows


def _validate(S: SurfaceModel) -> SurfaceModel:
    if S.b1 < 0 or S.b1 % 2:
        raise ValidationError("b1 must be a non-negative even integer")
    if S.h2_rank < 1:
        raise ValidationError("H^2 must have positive rank")
    q = S.intersection_form
    if any(q[i][j] != q[j][i] for i in range(S.h2_rank) for j in range(S.h2_rank)):
        raise ValidationError("intersection form is not symmetric")
    if abs(linalg.det(q)) != 1:
        raise ValidationError(f"intersection form is not unimodular (det {linalg.det(q)})")
    if S.b1 and abs(linalg.det(S.odd_pairing)) != 1:
        raise ValidationError("odd pairing is not unimodular")
    if len(S.canonical_class) != S.h2_rank:
        raise ValidationError("canonical class has the wrong length")
    k2 = S.dot(S.canonical_class, S.canonical_class)
    if (k2 + S.euler_number) % 12:
        raise ValidationError(f"K^2 + e = {k2 + S.euler_number} is not divisible by 12")
    # Wu: K is characteristic; otherwise HRR would not be integral
    for i in range(S.h2_rank):
        k_dot_e = sum(q[i][j] * S.canonical_class[j] for j in range(S.h2_rank))
        if (q[i][i] - k_dot_e) % 2:
            raise ValidationError("canonical class is not characteristic for the form")
    if S.h1_product:
        T = S.h1_product
        if len(T) != S.b1 or any(len(row) != S.b1 for row in T) or any(
                len(v) != S.h2_rank for row in T for v in row):
            raise ValidationError("h1_product has the wrong shape")
        for i in range(S.b1):
            for j in range(S.b1):
                if any(x != -y for x, y in zip(T[i][j], T[j][i])):
                    raise ValidationError("h1_product is not antisymmetric")
        for idx in combinations(range(S.b1), 4):
            base = S.dot(T[idx[0]][idx[1]], T[idx[2]][idx[3]])
            for perm in permutations(range(4)):
                p = [idx[k] for k in perm]
                val = S.dot(T[p[0]][p[1]], T[p[2]][p[3]])
                if val != _perm_sign(perm) * base:
                    raise ValidationError("quadruple products of H^1 are not alternating")
        for i in range(S.b1):
            for j in range(S.b1):
                for k in range(S.b1):
                    for l in range(S.b1):
                        if len({i, j, k, l}) < 4 and S.dot(T[i][j], T[k][l]):
                            raise ValidationError(
                                "quadruple products of H^1 are not alternating")
    return S


def _perm_sign(perm) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def make_surface(name: str, b1: int, intersection_form, odd_pairing, canonical_class,
                 euler_number: int, h1_product=None) -> SurfaceModel:
    """Build and validate a model from raw data."""
    try:
        b1 = int(b1)
        form = _square(intersection_form, len(intersection_form), "intersection form")
        h2 = len(form)
        odd = _square(odd_pairing or [], b1, "odd pairing")
        K = tuple(int(x) for x in canonical_class)
        T = ()
        if h1_product:
            T = tuple(tuple(tuple(int(x) for x in v) for v in row) for row in h1_product)
        S = SurfaceModel(str(name), b1, h2, form, odd, K, int(euler_number), T)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(f"malformed surface data: {exc}") from exc
    return _validate(S)


def _hyperbolic(n: int) -> list[list[int]]:
    m = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        m[2 * i][2 * i + 1] = m[2 * i + 1][2 * i] = 1
    return m


_E8_CARTAN = [
    [2, -1, 0, 0, 0, 0, 0, 0],
    [-1, 2, -1, 0, 0, 0, 0, 0],
    [0, -1, 2, -1, 0, 0, 0, 0],
    [0, 0, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, -1],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, 0],
    [0, 0, 0, 0, -1, 0, 0, 2],
]


def _block_diag(*blocks) -> list[list[int]]:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    at = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[at + i][at + j] = x
        at += len(b)
    return out


def projective_plane() -> SurfaceModel:
    return make_surface("P2", 0, [[1]], [], [-3], 3)


def quadric() -> SurfaceModel:
    """P^1 x P^1 with basis (h1, h2) of the two rulings."""
    return make_surface("P1xP1", 0, [[0, 1], [1, 0]], [], [-2, -2], 4)


def hirzebruch(n: int) -> SurfaceModel:
    """F_n with basis (f, s): fibre and the negative section, s^2 = -n."""
    return replace(ruled_over_curve(0, n), name=f"F{n}")


def k3() -> SurfaceModel:
    neg_e8 = [[-x for x in row] for row in _E8_CARTAN]
    form = _block_diag(_hyperbolic(3), neg_e8, neg_e8)
    return make_surface("K3", 0, form, [], [0] * 22, 24)


def abelian() -> SurfaceModel:
    """Abelian surface: H^* is the exterior algebra on dx1..dx4.

    H^2 basis dx_i^dx_j (i < j) in lexicographic order; H^3 basis is the
    Poincare dual of the H^1 basis, so the odd pairing is the identity.
    """
    pairs = list(combinations(range(4), 2))
    form = [[0] * 6 for _ in range(6)]
    for a, (i, j) in enumerate(pairs):
        for b, (k, l) in enumerate(pairs):
            if len({i, j, k, l}) == 4:
                form[a][b] = _perm_sign((i, j, k, l))
    T = [[[0] * 6 for _ in range(4)] for _ in range(4)]
    for a, (i, j) in enumerate(pairs):
        T[i][j][a] = 1
        T[j][i][a] = -1
    return make_surface("Abelian", 4, form, linalg.identity(4), [0] * 6, 0, T)


def ruled_over_curve(g: int, delta: int) -> SurfaceModel:
    """Geometrically ruled surface over a genus-g curve.

    H^2 basis (f, s): fibre and a section with s^2 = -delta. H^1 is pulled back
    from the curve with symplectic basis a_1..a_g, b_1..b_g; the product of two
    H^1 classes is their symplectic pairing times f. Whether the surface is
    Poisson is left to the caller.
    """
    if g < 0:
        raise ValidationError("genus must be non-negative")
    b1 = 2 * g
    form = [[0, 1], [1, -delta]]
    K = [2 * g - 2 - delta, -2]
    T = None
    if g:
        T = [[[0, 0] for _ in range(b1)] for _ in range(b1)]
        for i in range(g):
            T[i][g + i] = [1, 0]
            T[g + i][i] = [-1, 0]
    return make_surface(f"Ruled(g={g},d={delta})", b1, form, linalg.identity(b1) if b1 else [],
                        K, 4 * (1 - g), T)


BUILTINS = {
    "P2": projective_plane,
    "P1xP1": quadric,
    "K3": k3,
    "Abelian": abelian,
}


def build_surface(spec) -> SurfaceModel:
    """Resolve a builtin name (``P2``, ``P1xP1``, ``K3``, ``Abelian``, ``F<n>``,
    ``Ruled(<g>,<delta>)``, optionally prefixed ``Bl<k>:``) or a spec mapping."""
    if isinstance(spec, SurfaceModel):
        return spec
    if isinstance(spec, dict):
        return from_spec(spec)
    name = str(spec).strip()
    if name.startswith("Bl") and ":" in name:
        head, rest = name.split(":", 1)
        try:
            k = int(head[2:] or 1)
        except ValueError:
            raise ValidationError(f"bad blow-up prefix {head!r}") from None
        S = build_surface(rest)
        for _ in range(k):
            S = blow_up(S)
        return S
    if name in BUILTINS:
        return BUILTINS[name]()
    if name.startswith("F") and name[1:].isdigit():
        return hirzebruch(int(name[1:]))
    if name.startswith("Ruled(") and name.endswith(")"):
        try:
            g, d = (int(x) for x in name[6:-1].split(","))
        except ValueError:
            raise ValidationError(f"bad ruled surface spec {name!r}") from None
        return ruled_over_curve(g, d)
    raise ValidationError(f"unknown surface {name!r}")


def from_spec(spec: dict) -> SurfaceModel:
    missing = {"b1", "intersection_form", "canonical_class", "euler_number"} - set(spec)
    if missing:
        raise ValidationError(f"surface spec is missing {sorted(missing)}")
    return make_surface(spec.get("name", "custom"), spec["b1"], spec["intersection_form"],
                        spec.get("odd_pairing", []), spec["canonical_class"],
                        spec["euler_number"], spec.get("h1_product"))


def load_surface(path: str | Path) -> SurfaceModel:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read surface spec {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ValidationError("surface spec must be a JSON object")
    return from_spec(data)


def blow_up(S: SurfaceModel) -> SurfaceModel:
    """Blow up a point. The exceptional class E is appended as the last H^2
    basis vector; pulled-back classes keep their coordinates with E-part 0."""
    n = S.h2_rank
    form = [list(r) + [0] for r in S.intersection_form] + [[0] * n + [-1]]
    K = list(S.canonical_class) + [1]
    T = None
    if S.h1_product:
        T = [[list(v) + [0] for v in row] for row in S.h1_product]
    name = _blown_up_name(S.name)
    return make_surface(name, S.b1, form, S.odd_pairing, K, S.euler_number + 1, T)


def _blown_up_name(name: str) -> str:
    if name.startswith("Bl") and ":" in name:
        head, rest = name.split(":", 1)
        return f"Bl{int(head[2:] or 1) + 1}:{rest}"
    return f"Bl1:{name}"


def exceptional_class(S: SurfaceModel) -> tuple[int, ...]:
    """H^2 coordinates of the most recent exceptional curve of a blow-up."""
    return tuple([0] * (S.h2_rank - 1) + [1])


def pullback_h2(v: Sequence, S_hat: SurfaceModel) -> tuple:
    if len(v) != S_hat.h2_rank - 1:
        raise ValidationError("class does not come from the blown-down surface")
    return tuple(v) + (0,)
