"""Command-line interface: ``lcas <command> ...`` (also ``python3 -m lcas``).

Exit codes: 0 success, 1 a check failed, 2 usage or parse error,
3 precondition failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence, TextIO

from . import algebra_file
from .expr import ExprError, vector_text
from .lca import AlgebraError, check_axioms, fixture, truncated_extension
from .modules import complement_test, derived_subalgebra
from .solver import (
    DegreeBound,
    DerivationKind,
    NoFreeComplement,
    decomposition,
    is_zero_residual,
    oracle_report,
    project,
    quasi_embed,
    residual,
    solve_space,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3


class Precondition(Exception):
    """Input is well formed but violates a precondition of the command."""


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(f"{self.format_usage().strip()}\n{self.prog}: error: {message}")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        v = -1
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    bounds = argparse.ArgumentParser(add_help=False)
    bounds.add_argument("--deg-del", type=_nonneg, required=True, metavar="D")
    bounds.add_argument("--deg-lam", type=_nonneg, required=True, metavar="L")
    bounds.add_argument("--partner-del", type=_nonneg, metavar="D2", help="del bound of partner slots")
    bounds.add_argument("--partner-lam", type=_nonneg, metavar="L2", help="lam bound of partner slots")
    kinds = argparse.ArgumentParser(add_help=False)
    kinds.add_argument("kind", help="cder, qder, gder, centroid, qc, zder, center, abg or abg(A,B,G)")
    kinds.add_argument("--alpha", type=_rational)
    kinds.add_argument("--beta", type=_rational)
    kinds.add_argument("--gamma", type=_rational)

    p = _Parser(prog="lcas", description="Derivation spaces of finite-rank Lie conformal algebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    s = sub.add_parser("check", parents=[common], help="verify skew symmetry and the Jacobi identity")
    s.add_argument("file")
    s = sub.add_parser("solve", parents=[common, kinds, bounds], help="basis of a derivation space")
    s.add_argument("file")
    s.add_argument("--tuples", action="store_true", help="also print full tuples for qder/gder")
    s = sub.add_parser("center", parents=[common], help="basis of the center within a del bound")
    s.add_argument("file")
    s.add_argument("--deg-del", type=_nonneg, required=True, metavar="D")
    s = sub.add_parser("derived", parents=[common], help="[R,R], invariant factors, complement")
    s.add_argument("file")
    s = sub.add_parser("extend", parents=[common], help="algebra file of R (x) tQ[t]/(t^3)")
    s.add_argument("file")
    s = sub.add_parser("embed", parents=[common, bounds], help="embed qder into cder of the extension")
    s.add_argument("file")
    s = sub.add_parser("oracle", parents=[common, kinds, bounds], help="independent check of solve")
    s.add_argument("file")
    s = sub.add_parser("fixture", parents=[common], help="emit a built-in algebra file")
    s.add_argument("name", help="vir, cur_sl2, rank2_LW, solvable_d1 or abelian(n)")
    return p


# -- helpers ------------------------------------------------------------------


def _kind(args) -> DerivationKind:
    params = (args.alpha, args.beta, args.gamma)
    text = args.kind
    if text == "abg":
        if any(v is None for v in params):
            raise _Usage("abg needs --alpha, --beta and --gamma")
        return DerivationKind.abg(*params)
    if any(v is not None for v in params):
        raise _Usage("--alpha/--beta/--gamma only apply to abg")
    try:
        return DerivationKind.parse(text)
    except (ValueError, ZeroDivisionError) as e:
        raise _Usage(str(e)) from None


def _bounds(args) -> DegreeBound:
    return DegreeBound(args.deg_del, args.deg_lam, args.partner_del, args.partner_lam)


def _load_checked(path: str):
    R = algebra_file.load(path)
    rep = check_axioms(R)
    if not rep.ok:
        failed = [name for name, ok in (("skew symmetry", rep.skew_ok), ("Jacobi", rep.jacobi_ok)) if not ok]
        raise Precondition(f"algebra fails {' and '.join(failed)}; run 'lcas check'")
    return R


def _matrix_text(m) -> list[list[str]]:
    return [[p.to_text() for p in row] for row in m.entries]


def _matrix_line(m) -> str:
    return "[" + "; ".join(", ".join(row) for row in _matrix_text(m)) + "]"


def _bounds_json(layout) -> dict:
    d, l = layout.slots[0]
    out = {"max_del": d, "max_lam": l}
    if len(layout.slots) > 1:
        out["slots"] = [list(s) for s in layout.slots]
    return out


def _key(R, i, j) -> str:
    return f"{R.names[i]},{R.names[j]}"


# -- commands ------------------------------------------------------------------


def cmd_check(args, out: TextIO) -> int:
    R = algebra_file.load(args.file)
    rep = check_axioms(R)
    skew = {_key(R, i, j): vector_text(v, R.names) for (i, j), v in rep.skew_residuals.items()}
    jac = {
        ",".join(R.names[t] for t in ijk): vector_text(v, R.names) for ijk, v in rep.jacobi_residuals.items()
    }
    if args.json:
        _dump(
            {
                "skew": "pass" if rep.skew_ok else "fail",
                "jacobi": "pass" if rep.jacobi_ok else "fail",
                "skew_residuals": skew,
                "jacobi_residuals": jac,
            },
            out,
        )
    else:
        out.write(f"skew symmetry: {'pass' if rep.skew_ok else 'FAIL'}\n")
        for k, v in skew.items():
            out.write(f"  ({k}): {v}\n")
        out.write(f"jacobi identity: {'pass' if rep.jacobi_ok else 'FAIL'}\n")
        for k, v in jac.items():
            out.write(f"  ({k}): {v}\n")
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_solve(args, out: TextIO) -> int:
    kind = _kind(args)
    R = _load_checked(args.file)
    space = solve_space(kind, R, _bounds(args))
    if kind.tag == "center":
        return _emit_center(kind, space, args, out)
    first = project(space) if space.arity > 1 else space
    report = {
        "kind": str(kind),
        "bounds": _bounds_json(space.layout),
        "dimension": first.dimension,
        "basis": [_matrix_text(m) for m in first.maps],
    }
    if space.arity > 1:
        report["projection_dimension"] = first.dimension
        report["tuple_dimension"] = space.dimension
        if args.tuples:
            report["tuples"] = [[_matrix_text(m) for m in tup] for tup in space.basis]
    if args.json:
        _dump(report, out)
        return EXIT_OK
    out.write(f"kind: {kind}\n")
    out.write(f"bounds: {' '.join(f'slot{s}(del<={d}, lam<={l})' for s, (d, l) in enumerate(space.layout.slots))}\n")
    out.write(f"dimension: {first.dimension}\n")
    if space.arity > 1:
        out.write(f"tuple dimension: {space.dimension}\n")
    out.write("basis:\n")
    for t, m in enumerate(first.maps, 1):
        out.write(f"  {t}: {_matrix_line(m)}\n")
    if space.arity > 1 and args.tuples:
        out.write("tuples:\n")
        for t, tup in enumerate(space.basis, 1):
            out.write(f"  {t}: " + "  |  ".join(_matrix_line(m) for m in tup) + "\n")
    return EXIT_OK


def _emit_center(kind, space, args, out: TextIO) -> int:
    R = space.algebra
    elems = [b[0] for b in space.basis]
    report = {
        "kind": str(kind),
        "bounds": {"max_del": space.layout.slots[0][0]},
        "dimension": space.dimension,
        "basis": [[p.to_text() for p in z.coords] for z in elems],
    }
    if args.json:
        _dump(report, out)
        return EXIT_OK
    out.write(f"center (del<={space.layout.slots[0][0]}): dimension {space.dimension}\n")
    for t, z in enumerate(elems, 1):
        out.write(f"  {t}: {vector_text(z.coords, R.names)}\n")
    return EXIT_OK


def cmd_center(args, out: TextIO) -> int:
    R = _load_checked(args.file)
    space = solve_space(DerivationKind("center"), R, DegreeBound(args.deg_del, 0))
    return _emit_center(space.kind, space, args, out)


def cmd_derived(args, out: TextIO) -> int:
    R = algebra_file.load(args.file)
    S = derived_subalgebra(R)
    rep = complement_test(R, S)
    gens = [vector_text(g.coords, R.names) for g in S.generators]
    factors = [d.to_text() for d in rep.invariant_factors]
    comp = None if rep.complement is None else [vector_text(g.coords, R.names) for g in rep.complement.generators]
    if args.json:
        _dump({"generators": gens, "invariant_factors": factors, "quotient_free": rep.quotient_free, "complement": comp}, out)
        return EXIT_OK
    out.write("[R,R] generated by: " + (", ".join(gens) if gens else "0") + "\n")
    out.write("invariant factors: " + ", ".join(factors) + "\n")
    out.write(f"quotient free: {'yes' if rep.quotient_free else 'no'}\n")
    if comp is None:
        out.write("complement: none\n")
    else:
        out.write("complement: " + (", ".join(comp) if comp else "0") + "\n")
    return EXIT_OK


def cmd_extend(args, out: TextIO) -> int:
    R = algebra_file.load(args.file)
    out.write(algebra_file.dumps(truncated_extension(R)))
    return EXIT_OK


def cmd_embed(args, out: TextIO) -> int:
    R = _load_checked(args.file)
    try:
        report = decomposition(R)
    except NoFreeComplement as e:
        raise Precondition(str(e)) from None
    space = solve_space(DerivationKind("qder"), R, _bounds(args))
    Rt = truncated_extension(R)
    cder = DerivationKind("cder")
    images = [quasi_embed(R, pair, extension=Rt, report=report) for pair in space.basis]
    failures = [t for t, m in enumerate(images, 1) if not is_zero_residual(residual(cder, m, Rt))]
    ok = not failures
    if args.json:
        _dump(
            {
                "qder_tuple_dimension": space.dimension,
                "images": [_matrix_text(m) for m in images],
                "cder_check": "pass" if ok else "fail",
                "failed": failures,
            },
            out,
        )
    else:
        out.write(f"qder tuples: {space.dimension}\n")
        for t, m in enumerate(images, 1):
            out.write(f"  {t}: {_matrix_line(m)}\n")
        out.write(f"cder check on extension: {'pass' if ok else 'FAIL ' + str(failures)}\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_oracle(args, out: TextIO) -> int:
    kind = _kind(args)
    R = _load_checked(args.file)
    rep = oracle_report(kind, R, _bounds(args))
    data = {
        "kind": rep.kind,
        "ok": rep.ok,
        "solver_dimension": rep.solver_dimension,
        "oracle_dimension": rep.oracle_dimension,
        "prime": rep.prime,
        "grid_points": rep.grid_points,
        "columns": rep.columns,
    }
    if args.json:
        _dump(data, out)
    else:
        out.write(
            f"oracle {rep.kind}: {'pass' if rep.ok else 'FAIL'} "
            f"(solver dim {rep.solver_dimension}, oracle dim {rep.oracle_dimension}, "
            f"{rep.grid_points} points, p={rep.prime})\n"
        )
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_fixture(args, out: TextIO) -> int:
    out.write(algebra_file.dumps(fixture(args.name)))
    return EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "solve": cmd_solve,
    "center": cmd_center,
    "derived": cmd_derived,
    "extend": cmd_extend,
    "embed": cmd_embed,
    "oracle": cmd_oracle,
    "fixture": cmd_fixture,
}


def _dump(obj, out: TextIO) -> None:
    out.write(json.dumps(obj, indent=2) + "\n")


def _error(code: int, exc: BaseException | str, as_json: bool, out: TextIO, err: TextIO) -> int:
    message = str(exc)
    if as_json:
        kind = "usage" if code == EXIT_USAGE else "precondition"
        _dump({"error": {"code": code, "type": kind, "message": message}}, out)
    else:
        err.write(f"lcas: {message}\n")
    return code


def run_command(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    """Run one command; returns the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _Usage as e:
        return _error(EXIT_USAGE, e, as_json, out, err)
    except SystemExit as e:  # --help
        return int(e.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except _Usage as e:
        return _error(EXIT_USAGE, e, as_json, out, err)
    except (algebra_file.AlgebraFileError, ExprError, OSError, AlgebraError) as e:
        return _error(EXIT_USAGE, e, as_json, out, err)
    except Precondition as e:
        return _error(EXIT_PRECONDITION, e, as_json, out, err)


def main() -> None:
    sys.exit(run_command())
