"""Diagonal classes: on M x M through Chern classes, and on S x S in K-theory.

Moduli side. The class whose top Chern class is Poincare dual to the diagonal
of M is ``sum_ij G_ij p_1(e'_i) u p_2(e_j)``, with G the Gram matrix of the
chosen pairing on a basis x_i of K^*(S), e_j the Kunneth factors of the
universal class and e'_i those of its dual. Everything is formal: factors are
symbols with user-declared ranks, and the expansion works on their Chern
variables.

Surface side. A rational surface carries a decomposition
``O_Delta = sum_i c_i x_i (x) y_i`` in K(S x S); blowing up a point adds the
pair ``-(O(E) - O) (x) (O(E) - O)``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import chern, linalg
from .cohomology import SurfaceModel, blow_up, exceptional_class
from .errors import IntegralityError, ValidationError
from .formal import LEFT, RIGHT, BigradedClass, Factor, FormalContext, ch_components
from .ktheory import (KClass, dual, euler_chi, kcup, lattice_basis, line_bundle,
                      odd_basis, structure_sheaf, gram_and_dual_basis)
from .poly import Poly, Var, chern_var, render_monomial, sort_key


# --- moduli side ---------------------------------------------------------------

@dataclass(frozen=True)
class ModuliContext:
    gram: tuple[tuple[int, ...], ...]
    factors: tuple[Factor, ...]        # e_j, right side
    dual_factors: tuple[Factor, ...]   # e'_i, left side
    m: int
    epsilon: int | None = None
    surface: SurfaceModel | None = None
    v: KClass | None = None
    basis: tuple[KClass, ...] = ()
    pairing: str = "mukai"

    def __post_init__(self):
        n = len(self.factors)
        if len(self.dual_factors) != n or len(self.gram) != n or any(
                len(row) != n for row in self.gram):
            raise ValidationError("Gram matrix and factor lists disagree in size")
        if self.m < 0:
            raise ValidationError(f"negative expected dimension {self.m}")
        for i in range(n):
            if self.factors[i].parity != self.dual_factors[i].parity:
                raise ValidationError(f"e_{i + 1} and e'_{i + 1} differ in parity")
            for j in range(n):
                if self.gram[i][j] and self.factors[i].parity != self.factors[j].parity:
                    raise ValidationError("Gram pairs an even class with an odd one")


def formal_moduli_context(factors: Sequence, m: int, gram=None, dual_ranks=None) -> ModuliContext:
    """Context from explicit factor data (no surface)."""
    facs = tuple(f if isinstance(f, Factor) else Factor(*f) if not isinstance(f, str)
                 else Factor(f) for f in factors)
    n = len(facs)
    gram = linalg.identity(n) if gram is None else gram
    gram = tuple(tuple(int(x) for x in row) for row in gram)
    if dual_ranks is None:
        dual = facs
    else:
        if len(dual_ranks) != n:
            raise ValidationError("need one dual rank per factor")
        dual = tuple(Factor(f.parity, int(r) if f.parity == "even" else 0)
                     for f, r in zip(facs, dual_ranks))
    return ModuliContext(gram, facs, dual, int(m))


def _coordinates(basis: Sequence[KClass], v: KClass) -> list[int]:
    """Coordinates of an even class v in a basis whose even part spans K^0."""
    even = [i for i, x in enumerate(basis) if x.is_even]
    mat = linalg.transpose([basis[i].lattice_coords() for i in even])
    inv = linalg.inverse(mat)
    target = v.lattice_coords()
    sol = [sum(inv[r][s] * target[s] for s in range(len(target))) for r in range(len(even))]
    if any(Fraction(x).denominator != 1 for x in sol):
        raise ValidationError("class is not an integral combination of the basis")
    out = [0] * len(basis)
    for i, x in zip(even, sol):
        out[i] = int(x)
    return out


def moduli_context(S: SurfaceModel, v: KClass, epsilon: int, basis=None,
                   pairing: str | None = None) -> ModuliContext:
    """Context for M_H(v) on S: Gram of the chosen pairing and implied factor ranks.

    ``pairing`` is ``"mukai"`` for (x, y) = -chi(x^dual u y) or ``"plain"`` for
    -chi(x u y); the default is Mukai when S has no odd cohomology.
    """
    if pairing is None:
        pairing = "mukai" if S.b1 == 0 else "plain"
    if pairing not in ("mukai", "plain"):
        raise ValidationError("pairing is 'mukai' or 'plain'")
    if basis is None:
        basis = lattice_basis(S) + (odd_basis(S) if pairing == "plain" else [])
    basis = tuple(basis)
    if pairing == "mukai" and any(not x.is_even for x in basis):
        raise ValidationError("the Mukai pairing needs an even basis")

    def pair(x, y):
        if pairing == "mukai":
            return -euler_chi(S, kcup(S, dual(x), y))
        z = kcup(S, x, y)
        return -euler_chi(S, z) if z.is_even else 0

    gram = tuple(tuple(pair(x, y) for y in basis) for x in basis)
    if abs(linalg.det(gram)) != 1:
        raise ValidationError("pairing is not unimodular on the chosen basis")
    ranks = _coordinates(basis, v)
    dual_ranks = ranks if pairing == "mukai" else _coordinates(basis, dual(v))
    facs = tuple(Factor(x.parity, r) for x, r in zip(basis, ranks))
    dfacs = tuple(Factor(x.parity, r) for x, r in zip(basis, dual_ranks))
    m = epsilon - euler_chi(S, kcup(S, dual(v), v))
    return ModuliContext(gram, facs, dfacs, m, epsilon, S, v, basis, pairing)


@dataclass(frozen=True)
class DiagonalKData:
    """sum over terms (g, i, j) of g * p_1(e'_i) u p_2(e_j)."""

    context: ModuliContext
    terms: tuple[tuple[int, int, int], ...]
    rank: int
    expected_rank: int | None

    @property
    def rank_consistent(self) -> bool | None:
        return None if self.expected_rank is None else self.rank == self.expected_rank


def assemble_diagonal_kclass(ctx: ModuliContext) -> DiagonalKData:
    n = len(ctx.factors)
    terms = tuple((ctx.gram[i][j], i + 1, j + 1)
                  for i in range(n) for j in range(n) if ctx.gram[i][j])
    rank = sum(g * ctx.dual_factors[i - 1].rank * ctx.factors[j - 1].rank
               for g, i, j in terms)
    expected = None
    if ctx.surface is not None and ctx.v is not None:
        expected = -euler_chi(ctx.surface, kcup(ctx.surface, dual(ctx.v), ctx.v))
        if rank != expected:
            warnings.warn(f"assembled rank {rank} differs from -chi(v^dual v) = {expected}",
                          stacklevel=2)
    return DiagonalKData(ctx, terms, rank, expected)


def _contexts(ctx: ModuliContext, k: int) -> tuple[FormalContext, FormalContext]:
    left = FormalContext(ctx.dual_factors, k, "e'", LEFT)
    right = FormalContext(ctx.factors, k, "e", RIGHT)
    return left, right


def _term_ch(left: FormalContext, right: FormalContext, i: int, j: int, d: int,
             left_sub=None, right_sub=None) -> Poly:
    """ch_d(p_1 e'_i u p_2 e_j) = sum_{a + b = d} ch_a(e'_i) ch_b(e_j)."""
    cap = left.cap
    lch = ch_components(left, i, 2 * d)
    rch = ch_components(right, j, 2 * d)
    if left_sub:
        lch = {k: p.subs(left_sub) for k, p in lch.items()}
    if right_sub:
        rch = {k: p.subs(right_sub) for k, p in rch.items()}
    out = Poly({}, cap)
    for a, pa in lch.items():
        b = d - a
        if b in rch:
            out = out + pa * rch[b]
    return out


def chern_expand(kdata: DiagonalKData, k: int, subs=None) -> BigradedClass:
    """c_k of the assembled class, certified integral."""
    if k < 0:
        raise ValidationError("Chern degree must be non-negative")
    if k == 0:
        return BigradedClass(Poly.const(1, 0))
    left, right = _contexts(kdata.context, k)
    subs = subs or {}
    ch = []
    for d in range(1, k + 1):
        total = Poly({}, 2 * k)
        for g, i, j in kdata.terms:
            total = total + g * _term_ch(left, right, i, j, d,
                                         subs.get((LEFT, i)), subs.get((RIGHT, j)))
        ch.append(total)
    c = chern.chern_from_ch(ch, k)
    if not isinstance(c, Poly):
        c = Poly.const(c, 2 * k)
    c = c.homogeneous_part(2 * k)
    if not c.is_integral():
        raise IntegralityError(f"c_{k} of the diagonal class has a non-integral coefficient")
    return BigradedClass(c)


def top_chern_expand(kdata: DiagonalKData, m: int | None = None) -> BigradedClass:
    """delta = c_m of the assembled class as sum_j alpha_j (x) beta_j."""
    return chern_expand(kdata, kdata.context.m if m is None else m)


def generator_report(delta: BigradedClass) -> list[dict]:
    """The distinct alpha_j, ordered by degree, with their factors and beta partners.

    The unit always leads for a nonzero delta since it generates H^0(M).
    """
    if not delta:
        return []
    report = []
    pairs = sorted(delta.pairs(), key=lambda ab: sort_key(next(iter(ab[0].terms))))
    if not any(not alpha.variables() for alpha, _ in pairs):
        report.append({"alpha": "1", "factors": [], "partners": [], "source": "unit"})
    for alpha, beta in pairs:
        (mono, _), = alpha.terms.items()
        report.append({
            "alpha": render_monomial(mono),
            "factors": sorted({f"{v.label}_{v.factor}" for v, _ in mono}),
            "partners": [str(beta)],
            "source": "diagonal",
        })
    return report


def twist_invariance(kdata: DiagonalKData, j: int, extra: bool = False) -> list[dict]:
    """Replace e_j by e_j u L on every term that involves it.

    For each such term T of rank rho, checks c_{rho+1}(T u L) = c_{rho+1}(T);
    with ``extra`` also checks c_{rho+2}(T u L) = c_{rho+2}(T) - c_{rho+1}(T) l.
    """
    ctx = kdata.context
    fac = ctx.factors[j - 1]
    if fac.parity != "even":
        raise ValidationError("only even factors are twisted by line bundles")
    ell_var = chern_var("L", 1, side=RIGHT)
    results = []
    for g, i, jj in kdata.terms:
        if jj != j:
            continue
        rho = ctx.dual_factors[i - 1].rank * fac.rank
        single = DiagonalKData(ModuliContext(((1,),), (fac,), (ctx.dual_factors[i - 1],),
                                             0), ((1, 1, 1),), rho, None)
        top = rho + (2 if extra else 1)
        right = FormalContext((fac,), top, "e", RIGHT)
        ell = Poly.var(ell_var, 2 * top)
        x = right.chern_vector(1)
        sub = {right.var(1, k): _as_poly(chern.twist_chern(x, ell, k), 2 * top)
               for k in range(1, top + 1)}
        entry = {"term": (g, i, j), "rank": rho}
        base1 = chern_expand(single, rho + 1).poly
        tw1 = chern_expand(single, rho + 1, {(RIGHT, 1): sub}).poly
        entry["c_rank+1_invariant"] = tw1 == base1
        if extra:
            base2 = chern_expand(single, rho + 2).poly
            tw2 = chern_expand(single, rho + 2, {(RIGHT, 1): sub}).poly
            entry["c_rank+2_linear"] = tw2 == (base2 - base1.truncate(None) * ell).homogeneous_part(
                2 * (rho + 2))
        results.append(entry)
    return results


def _as_poly(x, cap) -> Poly:
    return x.truncate(cap) if isinstance(x, Poly) else Poly.const(x, cap)


def single_term_oracle(rank_left: int, rank_right: int, k: int, coeff: int = 1) -> bool:
    """Compare c_k(coeff * e' (x) e) with the splitting-principle route.

    Roots a_1.. of e' (left) and b_1.. of e (right) give e' (x) e the roots
    a_s + b_t; the oracle expands the product of (1 + (a_s + b_t) t) directly,
    and the engine's answer is evaluated at c_q(e') = e_q(a), c_q(e) = e_q(b).
    """
    ctx = ModuliContext(((coeff,),), (Factor("even", rank_right),),
                        (Factor("even", rank_left),), k)
    kdata = assemble_diagonal_kclass(ctx)
    delta = chern_expand(kdata, k).poly
    cap = 2 * k
    a = [Poly.var(Var(LEFT, "a", s + 1, Fraction(1)), cap) for s in range(rank_left)]
    b = [Poly.var(Var(RIGHT, "b", t + 1, Fraction(1)), cap) for t in range(rank_right)]
    roots = [x + y for x in a for y in b]
    num, den = (roots * coeff, []) if coeff >= 0 else ([], roots * -coeff)
    oracle = chern.splitting_oracle(num, den, 0, k)[k]
    ea = chern.splitting_oracle(a, [], 0, k)
    eb = chern.splitting_oracle(b, [], 0, k)
    left, right = _contexts(ctx, k)
    sub = {}
    for q in range(1, k + 1):
        sub[left.var(1, q)] = _as_poly(ea[q], cap)
        sub[right.var(1, q)] = _as_poly(eb[q], cap)
    return delta.subs(sub) == _as_poly(oracle, cap)


# --- surface side ----------------------------------------------------------------

@dataclass(frozen=True)
class DiagonalDecomposition:
    surface: SurfaceModel
    pairs: tuple[tuple[int, KClass, KClass], ...]

    def __len__(self):
        return len(self.pairs)


def standard_basis(S: SurfaceModel) -> list[KClass]:
    if S.name == "P2":
        return [line_bundle(S, [-i]) for i in (1, 2, 3)]
    if S.name == "P1xP1":
        return [line_bundle(S, d) for d in ([0, 0], [-1, 0], [0, -1], [-1, -1])]
    return lattice_basis(S)


def base_diagonal_decomposition(S: SurfaceModel, basis=None) -> DiagonalDecomposition:
    """O_Delta = sum_i x_i (x) y_i with {x_i} the chi-dual of the basis {y_i}."""
    if not S.is_rational:
        raise ValidationError(f"{S.name} is not a rational surface")
    ys = list(basis) if basis is not None else standard_basis(S)
    _, xs = gram_and_dual_basis(S, ys)
    return DiagonalDecomposition(S, tuple((1, x, y) for x, y in zip(xs, ys)))


def _pullback(S_hat: SurfaceModel, v: KClass) -> KClass:
    if v.surface.h2_rank + 1 != S_hat.h2_rank:
        raise ValidationError("class does not come from the blown-down surface")
    return KClass(S_hat, "even", v.r, v.c1 + (0,), v.ch2)


def verify_dual(dec: DiagonalDecomposition, S: SurfaceModel | None = None):
    """(ok, A) with A[j][i] = c_i chi(x_j u y_i); ok iff A = I and the x_i span K^0."""
    S = S or dec.surface
    xs = [x for _, x, _ in dec.pairs]
    mat = [[c * euler_chi(S, kcup(S, xj, y)) for c, _, y in dec.pairs] for xj in xs]
    ok = mat == linalg.identity(len(xs))
    if ok:
        ok = len(xs) == S.h2_rank + 2 and abs(
            linalg.det([x.lattice_coords() for x in xs])) == 1
    return ok, mat


def blowup_diagonal_step(dec: DiagonalDecomposition,
                         S_hat: SurfaceModel | None = None) -> DiagonalDecomposition:
    ok, _ = verify_dual(dec)
    if not ok:
        raise ValidationError("input decomposition is not a valid diagonal decomposition")
    S_hat = S_hat or blow_up(dec.surface)
    pairs = [(c, _pullback(S_hat, x), _pullback(S_hat, y)) for c, x, y in dec.pairs]
    e = line_bundle(S_hat, exceptional_class(S_hat)) - structure_sheaf(S_hat)
    pairs.append((-1, e, e))
    return DiagonalDecomposition(S_hat, tuple(pairs))
