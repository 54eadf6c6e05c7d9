"""Command-line front end. Every subcommand prints one JSON report.

Exit codes: 0 success, 1 invalid input, 2 internal invariant breach.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from . import diagonal as dg
from . import ktheory as kt
from . import serialize as ser
from . import spectral as sp
from .cohomology import SurfaceModel, build_surface, load_surface, ruled_over_curve
from .errors import IntegralityError, ValidationError
from .formal import Factor
from .poly import render_monomial
from .verify import run_suite, verify_decomposition


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


# --- argument parsing helpers ----------------------------------------------------

def resolve_surface(text: str) -> SurfaceModel:
    if text.endswith(".json") or Path(text).is_file():
        return load_surface(text)
    return build_surface(text)


def parse_class(S: SurfaceModel, text: str) -> kt.KClass:
    """``r,c1...,ch2``; a lone 0 stands for c1 = 0. ``odd:h1...;h3...`` for K^1."""
    text = text.strip()
    if text.startswith("odd:"):
        try:
            h1, h3 = text[4:].split(";")
            return kt.odd_class(S, [int(x) for x in h1.split(",")],
                                [int(x) for x in h3.split(",")])
        except ValueError as exc:
            raise ValidationError(f"bad odd class {text!r}: {exc}") from exc
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) < 3:
        raise ValidationError(f"class {text!r} needs r, c1 entries and ch2")
    r = ser.parse_frac(parts[0])
    c1 = [ser.parse_frac(p) for p in parts[1:-1]]
    ch2 = ser.parse_frac(parts[-1])
    return kt.from_ch(S, r, c1, ch2)


def parse_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ValidationError(f"expected integers, got {text!r}") from exc


def parse_matrix(text: str) -> list[list[int]]:
    return [parse_ints(row) for row in text.split(";")]


def parse_factors(text: str) -> list[Factor]:
    out = []
    for item in text.split(","):
        item = item.strip()
        if item == "odd":
            out.append(Factor("odd"))
        elif item.startswith("even"):
            _, _, rank = item.partition(":")
            try:
                out.append(Factor("even", int(rank or 0)))
            except ValueError as exc:
                raise ValidationError(f"bad factor {item!r}") from exc
        else:
            raise ValidationError(f"factor must be 'even[:rank]' or 'odd', got {item!r}")
    return out


def surface_summary(S: SurfaceModel) -> dict:
    return {
        "name": S.name,
        "b1": S.b1,
        "h2_rank": S.h2_rank,
        "intersection_form": [list(r) for r in S.intersection_form],
        "canonical_class": list(S.canonical_class),
        "K^2": S.dot(S.canonical_class, S.canonical_class),
        "euler_number": S.euler_number,
        "chi_O": S.chi_O,
        "todd": {"deg0": 1, "deg2": list(S.todd1), "deg4": S.todd2},
        "rational": S.is_rational,
    }


# --- subcommands -----------------------------------------------------------------

def cmd_surface(a) -> dict:
    S = resolve_surface(a.name)
    return {"surface": surface_summary(S), "spec": S.to_spec()}


def cmd_chi(a) -> dict:
    S = resolve_surface(a.surface)
    v = parse_class(S, a.v)
    return {"surface": S.name, "v": ser.kclass_to_json(v), "chi": kt.euler_chi(S, v)}


def cmd_mukai(a) -> dict:
    S = resolve_surface(a.surface)
    v, w = parse_class(S, a.v), parse_class(S, a.w)
    return {"surface": S.name, "v": ser.kclass_to_json(v), "w": ser.kclass_to_json(w),
            "mukai": kt.mukai_pair(S, v, w), "mukai_reversed": kt.mukai_pair(S, w, v),
            "serre_asymmetry": kt.mukai_asymmetry(S, v, w), "plain": kt.plain_pair(S, v, w)}


def cmd_dualbasis(a) -> dict:
    S = resolve_surface(a.surface)
    basis = ([parse_class(S, t) for t in a.basis.split(";")] if a.basis
             else dg.standard_basis(S))
    gram, dual = kt.gram_and_dual_basis(S, basis)
    check = kt.chi_gram(S, dual, basis)
    return {"surface": S.name, "basis": [ser.kclass_to_json(x) for x in basis],
            "gram": gram, "dual": [ser.kclass_to_json(x) for x in dual],
            "chi(dual_i, basis_j)": check}


def cmd_dim(a) -> dict:
    S = resolve_surface(a.surface)
    v = parse_class(S, a.v)
    return {"surface": S.name, "v": ser.kclass_to_json(v), "epsilon": a.epsilon,
            "primitive": kt.primitive(v), "expected_dim": kt.expected_dim(S, v, a.epsilon)}


def cmd_obstruction(a) -> dict:
    S = resolve_surface(a.surface)
    v = parse_class(S, a.v)
    n = kt.universal_obstruction(S, v)
    return {"surface": S.name, "v": ser.kclass_to_json(v), "n": n,
            "verdict": "universal sheaf exists" if n == 1 else "twisted universal sheaf only"}


def _hilbert_json(p: kt.HilbertPoly) -> dict:
    return {"coeffs": list(p.coeffs), "l0": p.l0, "d": p.d, "reduced": list(p.reduced())}


def cmd_hilbert(a) -> dict:
    S = resolve_surface(a.surface)
    v = parse_class(S, a.v)
    p = kt.hilbert_poly(S, v, parse_ints(a.H))
    return {"surface": S.name, "v": ser.kclass_to_json(v), "hilbert": _hilbert_json(p)}


def cmd_stability(a) -> dict:
    S = resolve_surface(a.surface)
    H = parse_ints(a.H)
    v, w = parse_class(S, a.v), parse_class(S, a.w)
    pv, pw = kt.hilbert_poly(S, v, H), kt.hilbert_poly(S, w, H)
    c = kt.stability_compare(pv, pw)
    return {"surface": S.name, "v": _hilbert_json(pv), "w": _hilbert_json(pw),
            "compare": c, "relation": {1: "v > w", 0: "v = w", -1: "v < w"}[c]}


def cmd_diagonal(a) -> dict:
    if a.surface:
        S = resolve_surface(a.surface)
        if a.v is None or a.epsilon is None:
            raise ValidationError("--surface needs --v and --epsilon")
        ctx = dg.moduli_context(S, parse_class(S, a.v), a.epsilon, pairing=a.pairing)
        if a.m is not None:
            raise ValidationError("--m is implied by --surface/--v/--epsilon")
    else:
        if a.factors is None or a.m is None:
            raise ValidationError("give --factors and --m, or --surface, --v and --epsilon")
        facs = parse_factors(a.factors)
        gram = parse_matrix(a.gram) if a.gram else None
        dual_ranks = parse_ints(a.dual_ranks) if a.dual_ranks else None
        ctx = dg.formal_moduli_context(facs, a.m, gram=gram, dual_ranks=dual_ranks)
    if ctx.m > a.max_m:
        raise ValidationError(f"m = {ctx.m} exceeds --max-m {a.max_m}")
    kdata = dg.assemble_diagonal_kclass(ctx)
    delta = dg.top_chern_expand(kdata)
    report = {
        "m": ctx.m,
        "gram": [list(r) for r in ctx.gram],
        "factors": [{"parity": f.parity, "rank": f.rank} for f in ctx.factors],
        "dual_factors": [{"parity": f.parity, "rank": f.rank} for f in ctx.dual_factors],
        "rank": kdata.rank,
        "expected_rank": kdata.expected_rank,
        "delta": str(delta),
        "terms": [{"coeff": t.coeff, "alpha": render_monomial(t.left),
                   "beta": render_monomial(t.right),
                   "bidegree": list(t.bidegree)} for t in delta.terms()],
        "generators": dg.generator_report(delta),
    }
    if a.twist_check:
        report["twist_invariance"] = [
            e for j, f in enumerate(ctx.factors, start=1) if f.parity == "even"
            for e in dg.twist_invariance(kdata, j)]
    return report


def cmd_blowup(a) -> dict:
    S = resolve_surface(a.surface)
    dec = dg.base_diagonal_decomposition(S)
    steps = []
    for _ in range(a.steps):
        dec = dg.blowup_diagonal_step(dec)
        ok, mat = dg.verify_dual(dec)
        steps.append({"surface": dec.surface.name, "verified": ok, "size": len(mat)})
    ok, mat = dg.verify_dual(dec)
    report = {"surface": dec.surface.name, "steps": steps, "verified": ok, "matrix": mat,
              "decomposition": ser.decomposition_to_json(dec)}
    if a.out:
        Path(a.out).write_text(ser.dumps(report["decomposition"]) + "\n")
    return report


def cmd_spectral(a) -> dict:
    S = ruled_over_curve(a.g, a.twist)
    w = parse_class(S, a.v)
    rd = sp.ruled_data(S)
    report = {"surface": S.name, "g": rd.g, "delta": rd.delta, "w": ser.kclass_to_json(w),
              "pushforward": ser.curve_to_json(sp.ruling_pushforward(S, w))}
    if w.is_even:
        dec = sp.module_decomposition(S, w)
        report["module_decomposition"] = {"a": ser.curve_to_json(dec.a),
                                          "c": ser.curve_to_json(dec.c)}
        report["chi_S"] = kt.euler_chi(S, w)
    if a.x:
        r, d = parse_ints(a.x)
        x = sp.curve_class(rd.g, r, d)
        report["x"] = ser.curve_to_json(x)
        report["projection_formula"] = sp.projection_formula_check(S, x, w)
    return report


def cmd_verify(a) -> dict:
    if a.decomposition:
        try:
            data = json.loads(Path(a.decomposition).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read {a.decomposition}: {exc}") from exc
        results = [verify_decomposition(ser.decomposition_from_json(data))]
    else:
        results = run_suite(a.suite)
    return {"results": [{"name": r.name, "passed": r.passed, "seconds": round(r.seconds, 3),
                         "detail": r.detail} for r in results],
            "passed": all(r.passed for r in results)}


# --- driver ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="poissonk", description="Exact K-theory and cohomology of Poisson surfaces.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("surface", help="summarize a surface model")
    s.add_argument("name", help="builtin name or JSON spec file")
    s.set_defaults(func=cmd_surface)

    def with_surface(name, help_, *, v=True):
        q = sub.add_parser(name, help=help_)
        q.add_argument("--surface", required=True)
        if v:
            q.add_argument("--v", required=True, help="r,c1...,ch2")
        return q

    with_surface("chi", "Euler characteristic").set_defaults(func=cmd_chi)
    q = with_surface("mukai", "Mukai pairing")
    q.add_argument("--w", required=True)
    q.set_defaults(func=cmd_mukai)
    q = with_surface("dualbasis", "chi-dual basis", v=False)
    q.add_argument("--basis", help="classes separated by ';'")
    q.set_defaults(func=cmd_dualbasis)
    q = with_surface("dim", "expected dimension")
    q.add_argument("--epsilon", type=int, choices=(1, 2), required=True)
    q.set_defaults(func=cmd_dim)
    with_surface("obstruction", "universal-sheaf obstruction").set_defaults(func=cmd_obstruction)
    q = with_surface("hilbert", "Hilbert polynomial")
    q.add_argument("--H", required=True, help="polarization coordinates")
    q.set_defaults(func=cmd_hilbert)
    q = with_surface("stability", "compare reduced Hilbert polynomials")
    q.add_argument("--w", required=True)
    q.add_argument("--H", required=True)
    q.set_defaults(func=cmd_stability)

    q = sub.add_parser("diagonal", help="expand c_m of the diagonal class")
    q.add_argument("--factors", help="e.g. even:1,odd,odd")
    q.add_argument("--gram", help="rows separated by ';', e.g. 1,0;0,1")
    q.add_argument("--dual-ranks", dest="dual_ranks")
    q.add_argument("--m", type=int)
    q.add_argument("--surface")
    q.add_argument("--v")
    q.add_argument("--epsilon", type=int, choices=(1, 2))
    q.add_argument("--pairing", choices=("mukai", "plain"))
    q.add_argument("--max-m", dest="max_m", type=int, default=6)
    q.add_argument("--twist-check", dest="twist_check", action="store_true")
    q.set_defaults(func=cmd_diagonal)

    q = sub.add_parser("blowup", help="diagonal decomposition through successive blow-ups")
    q.add_argument("--surface", default="P2")
    q.add_argument("--steps", type=int, default=1)
    q.add_argument("--out", help="write the decomposition JSON here")
    q.set_defaults(func=cmd_blowup)

    q = sub.add_parser("spectral", help="pushforward along a ruling")
    q.add_argument("--g", type=int, required=True)
    q.add_argument("--twist", type=int, default=0, help="delta = -s^2")
    q.add_argument("--v", required=True)
    q.add_argument("--x", help="curve class rank,degree for the projection formula")
    q.set_defaults(func=cmd_spectral)

    q = sub.add_parser("verify", help="run acceptance suites")
    q.add_argument("--suite", default="all")
    q.add_argument("--decomposition", help="re-verify a decomposition JSON file")
    q.set_defaults(func=cmd_verify)
    return p


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            body = args.func(args)
        report = {"command": argv, **body}
        if caught:
            report["warnings"] = [str(w.message) for w in caught]
        out.write(ser.dumps(report) + "\n")
        if args.command == "verify" and not report["passed"]:
            return 1
        return 0
    except ValidationError as exc:
        err.write(ser.dumps({"command": argv, "error": str(exc)}) + "\n")
        return 1
    except IntegralityError as exc:
        err.write(ser.dumps({"command": argv, "invariant_breach": str(exc)}) + "\n")
        return 2


def main() -> None:
    sys.exit(run())
