import warnings

import pytest
from hypothesis import given, settings, strategies as st

from poissonk.cohomology import build_surface
from poissonk.diagonal import (DiagonalDecomposition, ModuliContext, assemble_diagonal_kclass,
                               base_diagonal_decomposition, blowup_diagonal_step, chern_expand,
                               formal_moduli_context, generator_report, moduli_context,
                               single_term_oracle, top_chern_expand, twist_invariance,
                               verify_dual)
from poissonk.errors import ValidationError
from poissonk.formal import BigradedClass, Factor
from poissonk.ktheory import dual, euler_chi, from_ch, kcup, line_bundle, structure_sheaf
from poissonk.poly import Poly
from poissonk.verify import desk_contexts


def test_single_even_term():
    kd = assemble_diagonal_kclass(formal_moduli_context([("even", 1)], 1))
    assert kd.terms == ((1, 1, 1),) and kd.rank == 1
    assert str(top_chern_expand(kd)) == "c_1(e'_1) + c_1(e_1)"


def test_m1_ranks_weight_first_chern_classes():
    kd = assemble_diagonal_kclass(formal_moduli_context([("even", 3)], 1, dual_ranks=[2]))
    assert str(top_chern_expand(kd)) == "3*c_1(e'_1) + 2*c_1(e_1)"


def test_single_odd_term():
    kd = assemble_diagonal_kclass(formal_moduli_context(["odd"], 1))
    assert str(top_chern_expand(kd)) == "c_{1/2}(e'_1)*c_{1/2}(e_1)"


def test_cross_terms_for_hyperbolic_gram():
    kd = assemble_diagonal_kclass(formal_moduli_context([("even", 1), ("even", 0)], 2,
                                                        gram=[[0, 1], [1, 0]]))
    assert kd.terms == ((1, 1, 2), (1, 2, 1))


def test_rejects_mixed_parity_gram():
    with pytest.raises(ValidationError):
        formal_moduli_context([("even", 1), "odd"], 1, gram=[[1, 1], [1, 1]])


def test_generator_reports():
    kd = assemble_diagonal_kclass(formal_moduli_context([("even", 1)], 1))
    gens = [g["alpha"] for g in generator_report(top_chern_expand(kd))]
    assert gens == ["1", "c_1(e'_1)"]
    odd = assemble_diagonal_kclass(formal_moduli_context(["odd"], 1))
    assert [g["alpha"] for g in generator_report(top_chern_expand(odd))] == ["1", "c_{1/2}(e'_1)"]
    assert generator_report(BigradedClass(Poly())) == []


@pytest.mark.parametrize("ctx", desk_contexts(), ids=lambda c: f"m{c.m}-{len(c.factors)}f")
def test_expansion_is_integral_and_homogeneous(ctx):
    delta = top_chern_expand(assemble_diagonal_kclass(ctx))
    assert delta.is_integral()
    assert all(sum(t.bidegree) == 2 * ctx.m for t in delta.terms())


@pytest.mark.parametrize("a,b", [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1)])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_single_term_matches_splitting_route(a, b, m):
    for coeff in (1, -1, 2):
        assert single_term_oracle(a, b, m, coeff)


@pytest.mark.parametrize("ctx", [c for c in desk_contexts()
                                 if any(f.parity == "even" for f in c.factors)],
                         ids=lambda c: f"m{c.m}-{len(c.factors)}f")
def test_twist_invariance(ctx):
    kd = assemble_diagonal_kclass(ctx)
    for j, f in enumerate(ctx.factors, start=1):
        if f.parity == "even":
            for entry in twist_invariance(kd, j, extra=True):
                assert entry["c_rank+1_invariant"] and entry["c_rank+2_linear"]


def test_rank_report_matches_expected_dimension():
    P = build_surface("P2")
    v = from_ch(P, 1, [0], -2)
    ctx = moduli_context(P, v, 1)
    kd = assemble_diagonal_kclass(ctx)
    assert kd.rank == kd.expected_rank == -euler_chi(P, kcup(P, dual(v), v)) == 3
    assert ctx.m - ctx.epsilon == kd.rank


def test_rank_mismatch_is_a_warning():
    P = build_surface("P2")
    ctx = moduli_context(P, from_ch(P, 1, [0], -1), 1)
    bad = ModuliContext(ctx.gram, tuple(Factor("even", 5) for _ in ctx.factors),
                        ctx.dual_factors, ctx.m, ctx.epsilon, ctx.surface, ctx.v, ctx.basis)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        kd = assemble_diagonal_kclass(bad)
    assert caught and kd.rank_consistent is False


def test_abelian_context_uses_plain_pairing():
    A = build_surface("Abelian")
    ctx = moduli_context(A, from_ch(A, 1, [0], -1), 2)
    assert ctx.pairing == "plain" and len(ctx.factors) == 16
    kd = assemble_diagonal_kclass(ctx)
    assert kd.rank == kd.expected_rank == ctx.m - 2


def test_c_m_minus_one_is_exposed():
    kd = assemble_diagonal_kclass(formal_moduli_context([("even", 1), "odd"], 3))
    assert chern_expand(kd, 2).is_integral()


# --- surface side -----------------------------------------------------------------

def test_p2_decomposition():
    P = build_surface("P2")
    dec = base_diagonal_decomposition(P)
    assert len(dec) == 3
    assert [y for _, _, y in dec.pairs] == [line_bundle(P, [-k]) for k in (1, 2, 3)]
    ok, mat = verify_dual(dec)
    assert ok and mat == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    dropped = DiagonalDecomposition(P, dec.pairs[:2])
    assert not verify_dual(dropped)[0]


def test_quadric_decomposition():
    dec = base_diagonal_decomposition(build_surface("P1xP1"))
    assert len(dec) == 4 and verify_dual(dec)[0]


def test_non_rational_rejected():
    with pytest.raises(ValidationError):
        base_diagonal_decomposition(build_surface("K3"))


def test_blow_up_step_new_pair():
    dec = blowup_diagonal_step(base_diagonal_decomposition(build_surface("P2")))
    S = dec.surface
    c, x, y = dec.pairs[-1]
    e = line_bundle(S, [0, 1]) - structure_sheaf(S)
    assert (c, x, y) == (-1, e, e)
    assert -euler_chi(S, kcup(S, e, e)) == 1
    assert len(dec) == 4 and verify_dual(dec)[0]


@pytest.mark.parametrize("name", ["P2", "P1xP1", "F1", "F2"])
def test_blow_up_tower(name):
    dec = base_diagonal_decomposition(build_surface(name))
    start = len(dec)
    for k in range(1, 6):
        dec = blowup_diagonal_step(dec)
        ok, mat = verify_dual(dec)
        assert ok and len(mat) == start + k


def test_blow_up_rejects_invalid_input():
    P = build_surface("P2")
    dec = base_diagonal_decomposition(P)
    with pytest.raises(ValidationError):
        blowup_diagonal_step(DiagonalDecomposition(P, dec.pairs[1:]))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2)), min_size=4, max_size=4,
                unique=True))
def test_any_line_bundle_basis_gives_a_decomposition(divs):
    Q = build_surface("P1xP1")
    basis = [line_bundle(Q, list(d)) for d in divs]
    try:
        dec = base_diagonal_decomposition(Q, basis)
    except ValidationError:
        return
    assert verify_dual(dec)[0]


@pytest.mark.parametrize("name", ["P2", "P1xP1"])
def test_decomposition_integrates_to_chi_of_structure_sheaf(name):
    # chi on S x S of the diagonal is chi(O_S) = 1
    dec = base_diagonal_decomposition(build_surface(name))
    for _ in range(4):
        S = dec.surface
        assert sum(c * euler_chi(S, x) * euler_chi(S, y) for c, x, y in dec.pairs) == 1
        dec = blowup_diagonal_step(dec)
