"""Command-line interface: ``latexp <command> [options]``.

Exit codes: 0 success, 1 a check failed or a counterexample was found,
2 usage or input error.  Structured reports are JSON, tables and
trajectories are CSV.  Outputs go to ``--out`` when given, else stdout.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import constructions as cons
from .enumeration import (
    EnumerationBudget,
    coordinate_plane_point,
    norm_minimum_estimate,
    record_points,
    records_csv,
)
from .exact import FieldError, NumberField
from .exponents import classical_exponent, estimate_omega, spectrum_table_csv
from .lattice import (
    Lattice,
    LatticeFormatError,
    complementary_dual_wedge,
    dual,
    lattice_from_json,
    normalize_det,
)
from .reals import default_precision
from .transfer import (
    WitnessError,
    case1_dual_points,
    case1_witness,
    case2_points,
    dual_point_with_zero,
    random_theorem2_trials,
)


class UsageError(Exception):
    """Bad input; reported with exit code 2."""


# --------------------------------------------------------------------------
# input helpers

def load_lattice(path: str) -> Lattice:
    """Read a lattice file, turning any format problem into a located message."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
    if not isinstance(data, dict):
        raise UsageError(f"{path}:1: top level must be a JSON object")
    try:
        return lattice_from_json(data)
    except (LatticeFormatError, FieldError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path}: {_locate(text, exc)}{exc}") from None


def _locate(text: str, exc: Exception) -> str:
    # best effort: line of the first JSON key named in the message
    msg = str(exc)
    for key in ("rows", "field", "minpoly", "root_interval", "scale", "homothety", "dim"):
        if key in msg:
            pos = text.find(f'"{key}"')
            if pos >= 0:
                return f"line {text.count(chr(10), 0, pos) + 1}: "
    return ""


def _int_list(text: str) -> list:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _frac_pair(text: str) -> tuple:
    try:
        a, b = (Fraction(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two rationals 'lo,hi', got {text!r}") from None
    return a, b


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _fraction_in_unit(text: str) -> float:
    v = float(text)
    if not 0 < v <= 1:
        raise argparse.ArgumentTypeError("must lie in (0, 1]")
    return v


def parse_theta(text: str):
    """One theta entry: a rational ``p/q`` or ``root:c0,...,ck:lo,hi`` (a real algebraic number)."""
    if text.startswith("root:"):
        try:
            _, coeffs, interval = text.split(":")
            fld = NumberField(_int_list(coeffs), _frac_pair(interval))
        except (ValueError, FieldError, argparse.ArgumentTypeError) as exc:
            raise UsageError(f"theta {text!r}: {exc}") from None
        return fld.gen()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"theta {text!r} is neither a rational nor root:...") from None


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _summary(args, obj) -> None:
    # the JSON summary goes to stdout when --out holds the CSV, else to stderr
    (sys.stdout if args.out else sys.stderr).write(_dump(obj))


# --------------------------------------------------------------------------
# commands

def cmd_omega(args) -> int:
    L = load_lattice(args.lattice)
    prec = default_precision()
    search = record_points(L, EnumerationBudget(args.xmax, args.max_points, prec),
                           threads=args.threads)
    if not search.records:
        _emit(args, records_csv([], L.d, prec))
        _summary(args, {"records": 0, "complete": search.complete})
        return 0
    est = estimate_omega(search, args.tail_fraction)
    _emit(args, records_csv(search.records, L.d, prec))
    _summary(args, est.to_json())
    return 0


def cmd_norm_min(args) -> int:
    L = load_lattice(args.lattice)
    nm = norm_minimum_estimate(L, args.xmax, max_points=args.max_points, threads=args.threads)
    out = {"value": "inf" if math.isinf(nm.value) else nm.value,
           "exact_zero": nm.exact_zero, "complete": nm.complete,
           "witness": None if nm.witness is None else
           {"z": list(nm.witness.z), "x": list(nm.witness.x)}}
    if nm.product is not None and nm.product.exact is not None:
        out["exact_value"] = str(nm.product.exact)
    _emit(args, _dump(out))
    return 0


def cmd_dual(args) -> int:
    L = load_lattice(args.lattice)
    _emit(args, _dump(dual(L).to_json()))
    return 0


def cmd_wedge(args) -> int:
    L = load_lattice(args.lattice)
    rows = tuple(args.rows)
    try:
        w = complementary_dual_wedge(L.forms, rows)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ok = w.holds()
    out = {"primal": w.primal.to_json(), "dual": w.dual.to_json(),
           "det": w.det.to_json(), "duality_holds": ok}
    _emit(args, _dump(out))
    return 0 if ok else 1


def cmd_check_t2(args) -> int:
    rep = random_theorem2_trials(args.dim, args.trials, args.seed, threads=args.threads)
    _emit(args, _dump(rep.to_json()))
    return 1 if rep.counterexamples else 0


def cmd_witness_case1(args) -> int:
    L = normalize_det(load_lattice(args.lattice))
    rng = np.random.default_rng(args.seed)
    us = case1_dual_points(L, args.count, rng)
    if not us:
        raise UsageError("no dual point with nonzero coordinates and |u| > 1 found near the origin")
    results = []
    for u in us:
        try:
            results.append(case1_witness(L, u).to_json())
        except WitnessError as exc:
            raise UsageError(str(exc)) from None
    ok = all(r["passed"] for r in results)
    _emit(args, _dump({"seed": args.seed, "witnesses": results, "passed": ok}))
    return 0 if ok else 1


def cmd_witness_case2(args) -> int:
    L = normalize_det(load_lattice(args.lattice))
    coord = L.d - 1 if args.coord is None else args.coord
    if not 0 <= coord < L.d:
        raise UsageError(f"--coord must lie in 0..{L.d - 1}")
    u = dual_point_with_zero(L, coord)
    if u is None:
        raise UsageError(f"the dual lattice has no nonzero point with coordinate {coord} = 0")
    res = case2_points(L, u, args.count, coord=coord)
    _emit(args, _dump(res.to_json()))
    return 0 if res.passed() else 1


def _construct_output(L: Lattice, rep) -> dict:
    out = L.to_json()
    if rep is not None:
        out["hypothesis_report"] = rep.to_json()
    return out


def cmd_construct(args) -> int:
    try:
        if args.kind == "totally-real":
            fld = NumberField(args.minpoly, args.root_interval)
            L, rep = cons.totally_real_lattice(fld), None
        elif args.kind == "theorem4":
            L, rep = cons.theorem4_lattice(args.dim)
        else:
            L, rep = cons.spectrum_lattice(args.dim, args.k, args.l)
    except cons.ConstructionError as exc:
        sys.stderr.write(f"construction failed: {exc}\n")
        if exc.report is not None:
            sys.stderr.write(_dump(exc.report.to_json()))
        return 1
    except (FieldError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    _emit(args, _dump(_construct_output(L, rep)))
    return 0


def cmd_verify(args) -> int:
    L = load_lattice(args.lattice)
    try:
        if args.kind == "corollary1":
            rep = cons.verify_corollary1_hypothesis(L.forms)
        elif args.kind == "theorem4":
            rep = cons.verify_theorem4_hypothesis(L.forms)
        else:
            rep = cons.verify_spectrum_hypothesis(L.forms, args.k, args.l)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, _dump(rep.to_json()))
    return 0 if rep.passed else 1


def cmd_classical(args) -> int:
    theta = [parse_theta(t) for t in args.theta]
    try:
        est = classical_exponent(theta, args.xmax, multiplicative=args.multiplicative)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = est.to_json()
    out["mode"] = "multiplicative" if args.multiplicative else "ordinary"
    _emit(args, _dump(out))
    return 0


def cmd_spectrum_table(args) -> int:
    _emit(args, spectrum_table_csv(args.dmax))
    return 0


def cmd_plane_point(args) -> int:
    L = load_lattice(args.lattice)
    target = dual(L) if args.dual else L
    hit = coordinate_plane_point(target)
    out = {"found": hit is not None}
    if hit is not None:
        pt, i = hit
        out.update({"z": list(pt.z), "x": list(pt.x), "zero_coord": i})
    _emit(args, _dump(out))
    return 0


# --------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=None,
                        help="working precision in bits (default: $LATEXP_PRECISION or 128)")
    common.add_argument("--threads", type=_positive_int, default=1,
                        help="worker threads for enumeration; output does not depend on it")
    common.add_argument("--out", default=None, help="output file (default: stdout)")

    p = argparse.ArgumentParser(prog="latexp", description="Diophantine exponents of lattices.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        sp.set_defaults(func=fn)
        return sp

    sp = add("omega", cmd_omega, "record trajectory (CSV) and exponent estimate of a lattice")
    sp.add_argument("--lattice", required=True)
    sp.add_argument("--xmax", type=float, required=True)
    sp.add_argument("--max-points", type=_positive_int, default=20_000_000)
    sp.add_argument("--tail-fraction", type=_fraction_in_unit, default=1.0)

    sp = add("norm-min", cmd_norm_min, "smallest |prod x_i| over nonzero points with |x| <= xmax")
    sp.add_argument("--lattice", required=True)
    sp.add_argument("--xmax", type=float, required=True)
    sp.add_argument("--max-points", type=_positive_int, default=20_000_000)

    sp = add("dual", cmd_dual, "dual lattice as lattice JSON")
    sp.add_argument("--lattice", required=True)

    sp = add("wedge", cmd_wedge, "Grassmann coordinates of selected forms and their dual wedge")
    sp.add_argument("--lattice", required=True)
    sp.add_argument("--rows", type=_int_list, required=True, help="0-based form indices, e.g. 0,1")

    sp = add("check-t2", cmd_check_t2, "seeded random trials of the box transference theorem")
    sp.add_argument("--dim", type=int, choices=(3, 4, 5), required=True)
    sp.add_argument("--trials", type=_positive_int, required=True)
    sp.add_argument("--seed", type=int, required=True)

    sp = add("witness-case1", cmd_witness_case1, "transference witnesses for dual points")
    sp.add_argument("--lattice", required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--count", type=_positive_int, default=5)

    sp = add("witness-case2", cmd_witness_case2,
             "points orthogonal to a dual point with a vanishing coordinate")
    sp.add_argument("--lattice", required=True)
    sp.add_argument("--coord", type=int, default=None, help="0-based coordinate (default: last)")
    sp.add_argument("--count", type=_positive_int, default=5)

    sp = add("plane-point", cmd_plane_point,
             "nonzero point with an exactly vanishing coordinate, if the forms allow one")
    sp.add_argument("--lattice", required=True)
    sp.add_argument("--dual", action="store_true", help="search the dual lattice instead")

    sp = sub.add_parser("construct", help="build an example lattice with its hypothesis report")
    csub = sp.add_subparsers(dest="kind", required=True)
    tr = csub.add_parser("totally-real", parents=[common])
    tr.add_argument("--minpoly", type=_int_list, default=[-1, -3, 0, 1],
                    help="integer coefficients, constant term first (default x^3-3x-1)")
    tr.add_argument("--root-interval", type=_frac_pair, default=(Fraction(1), Fraction(2)),
                    help="'lo,hi' isolating the designated root")
    t4 = csub.add_parser("theorem4", parents=[common])
    t4.add_argument("--dim", type=int, default=3)
    sc = csub.add_parser("spectrum", parents=[common])
    sc.add_argument("--dim", type=int, required=True)
    sc.add_argument("--k", type=int, required=True)
    sc.add_argument("--l", type=int, required=True)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="exactly check the defining hypothesis of a lattice file")
    vsub = sp.add_subparsers(dest="kind", required=True)
    for name in ("corollary1", "theorem4"):
        v = vsub.add_parser(name, parents=[common])
        v.add_argument("--lattice", required=True)
    v = vsub.add_parser("spectrum", parents=[common])
    v.add_argument("--lattice", required=True)
    v.add_argument("--k", type=int, required=True)
    v.add_argument("--l", type=int, required=True)
    sp.set_defaults(func=cmd_verify)

    sp = add("classical", cmd_classical, "simultaneous or multiplicative exponent of a vector")
    sp.add_argument("--theta", nargs="+", required=True,
                    help="entries as p/q or root:c0,...,ck:lo,hi")
    sp.add_argument("--xmax", type=float, required=True)
    sp.add_argument("--multiplicative", action="store_true")

    sp = add("spectrum-table", cmd_spectrum_table, "CSV of the explicit exponent values")
    sp.add_argument("--dmax", type=int, required=True)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.precision is not None:
        if args.precision < 16:
            sys.stderr.write("latexp: --precision must be at least 16 bits\n")
            return 2
        os.environ["LATEXP_PRECISION"] = str(args.precision)
    if getattr(args, "dmax", None) is not None and args.dmax < 3:
        sys.stderr.write("latexp: --dmax must be at least 3\n")
        return 2
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"latexp: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
