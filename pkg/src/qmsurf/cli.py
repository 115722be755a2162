"""Command-line front end: curve analytics, quaternion arithmetic, isogenies.

Exit codes: 0 success, 1 mathematical negative result, 2 input error,
3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from mpmath import mp

from .exactfield import DEFAULT_PRECISION, QuadExt
from .endodetect import AnalyticAction, DetectionError, scan_order
from .hypnum import (CurveModel, CurveError, PeriodError,
                     build_period_matrix, load_curve, rosenhain_reconstruct,
                     small_period_matrix, validate_riemann)
from .hypnum.rosenhain import RosenhainError
from .igusa import IgusaError, igusa_clebsch, same_invariants
from .pollab import (PolarizationError, frobenius_type, principal_search,
                     quaternionic_form)
from .quatalg import (QuatAlgebra, QuatOrder, class_number,
                      hilbert_symbol, pi_principal_count, ramified_primes)
from .richelot import (RichelotError, enumerate_groupings, richelot_step,
                       verify_isogeny_periods)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_NUMERIC = 3


class CliInputError(ValueError):
    pass


def _cnum(z) -> str:
    return mp.nstr(mp.mpc(z), 20)


def _emit(data: dict, as_json: bool):
    if as_json:
        print(json.dumps(data, indent=2, default=str))
        return
    for key, value in data.items():
        if isinstance(value, list):
            print(f"{key}:")
            for row in value:
                print(f"  {row}")
        else:
            print(f"{key}: {value}")


def _load(args) -> CurveModel:
    try:
        return load_curve(args.curve)
    except (OSError, ValueError, KeyError, CurveError) as exc:
        raise CliInputError(f"cannot load curve file: {exc}") from exc


def _qf_matrix(text: str, delta: int):
    """Parse a JSON 2x2 matrix of [a, b] rationals into QuadExt entries."""
    rows = json.loads(text)
    return [[QuadExt(Fraction(str(e[0])), Fraction(str(e[1])), delta)
             for e in row] for row in rows]


def cmd_curve_periods(args) -> int:
    curve = _load(args)
    pm = build_period_matrix(curve, precision=args.precision)
    res, eig = validate_riemann(pm.entries, pm.basis.intersection,
                                args.precision)
    _emit({
        "label": curve.label,
        "loops": pm.basis.loops,
        "signs": pm.basis.signs,
        "intersection": pm.basis.intersection,
        "period_matrix": [[_cnum(pm.entries[i][j]) for j in range(4)]
                          for i in range(2)],
        "riemann_residual": mp.nstr(res, 8),
        "positivity_eigenvalue": mp.nstr(eig, 8),
    }, args.json)
    return EXIT_OK


def cmd_curve_igusa(args) -> int:
    curve = _load(args)
    inv = igusa_clebsch(curve, args.precision,
                        max_denominator=args.max_den)
    data = {
        "label": curve.label,
        "recognized": inv.recognized,
        "I2_I4_I6_I10_numeric": [_cnum(v) for v in inv.numeric],
        "absolute_numeric": [_cnum(v) for v in inv.absolute_numeric],
    }
    if inv.exact is not None:
        data["I2_I4_I6_I10"] = [str(v) for v in inv.exact]
    if inv.absolute_exact is not None:
        data["absolute"] = [str(v) for v in inv.absolute_exact]
    _emit(data, args.json)
    return EXIT_OK


def cmd_curve_richelot(args) -> int:
    curve = _load(args)
    rows = []
    for grouping in enumerate_groupings(curve, args.precision):
        try:
            image = richelot_step(grouping)
        except RichelotError as exc:
            rows.append({"pairs": grouping.pairs, "error": str(exc)})
            continue
        row = {
            "pairs": grouping.pairs,
            "exact": image.exact,
            "delta": str(image.delta_value) if image.exact
            else _cnum(image.delta_value),
        }
        if image.exact:
            row["image"] = [str(image.curve.poly[k]) for k in range(7)]
            row["self_isogenous"] = same_invariants(curve, image.curve,
                                                    args.precision)
        rows.append(row)
    _emit({"label": curve.label, "groupings": rows}, args.json)
    return EXIT_OK


def cmd_curve_analyze(args) -> int:
    curve = _load(args)
    precision = args.precision
    branch = curve.branch_points(precision)
    pm = build_period_matrix(curve, precision=precision)
    res, eig = validate_riemann(pm.entries, pm.basis.intersection, precision)
    tau = small_period_matrix(pm)
    inv = igusa_clebsch(curve, precision, max_denominator=args.max_den)
    data = {
        "label": curve.label,
        "roots": [_cnum(r) for r in branch.roots],
        "period_matrix": [[_cnum(pm.entries[i][j]) for j in range(4)]
                          for i in range(2)],
        "riemann_residual": mp.nstr(res, 8),
        "positivity_eigenvalue": mp.nstr(eig, 8),
        "tau": [[_cnum(tau[i, j]) for j in range(2)] for i in range(2)],
        "invariants": [str(v) for v in inv.absolute_exact]
        if inv.absolute_exact is not None
        else [_cnum(v) for v in inv.absolute_numeric],
    }
    if args.i_action and args.j_action:
        i_act = AnalyticAction(_qf_matrix(args.i_action, curve.delta))
        j_act = AnalyticAction(_qf_matrix(args.j_action, curve.delta))
        scan = scan_order(pm, i_act, j_act)
        order = scan.order
        disc = order.discriminant()
        data["order_discriminant"] = disc
        data["order_maximal"] = order.is_maximal()
        form = quaternionic_form(scan.rep)
        data["quaternionic_form"] = form
        data["form_type"] = frobenius_type(form)[0]
        candidates = principal_search(order, scan.rep.rosati_j_sign(form),
                                      form, scan.rep)
        data["principal_classes"] = len(candidates)
        data["principal_gammas"] = [str(c.gamma) for c in candidates]
        if args.expect_principal and not candidates:
            _emit(data, args.json)
            return EXIT_NEGATIVE
    _emit(data, args.json)
    return EXIT_OK


def cmd_algebra_info(args) -> int:
    a, b = Fraction(args.a), Fraction(args.b)
    algebra = QuatAlgebra(a, b)
    disc = algebra.discriminant()
    data = {"a": str(a), "b": str(b),
            "ramified_primes": sorted(ramified_primes(a, b)),
            "discriminant": disc}
    if disc > 1 and not algebra.is_definite():
        data["pi_principal"] = pi_principal_count(disc)
        data["h_minus_4D"] = class_number(-4 * disc)
        if (-disc) % 4 in (0, 1):
            data["h_minus_D"] = class_number(-disc)
    _emit(data, args.json)
    return EXIT_OK


def cmd_algebra_pi(args) -> int:
    _emit({"D": args.D, "pi": pi_principal_count(args.D)}, args.json)
    return EXIT_OK


def cmd_algebra_hilbert(args) -> int:
    place = args.p if args.p > 0 else None
    value = hilbert_symbol(Fraction(args.a), Fraction(args.b), place)
    _emit({"a": args.a, "b": args.b, "p": args.p, "hilbert": value},
          args.json)
    return EXIT_OK


def cmd_order_check(args) -> int:
    a, b = Fraction(args.a), Fraction(args.b)
    algebra = QuatAlgebra(a, b)
    basis = json.loads(args.basis)
    gens = [algebra.element(*[Fraction(str(c)) for c in vec])
            for vec in basis]
    try:
        order = QuatOrder(gens)
    except ValueError as exc:
        _emit({"valid": False, "reason": str(exc)}, args.json)
        return EXIT_NEGATIVE
    _emit({"valid": True, "discriminant": order.discriminant(),
           "maximal": order.is_maximal()}, args.json)
    return EXIT_OK


def cmd_curve_rosenhain(args) -> int:
    curve = _load(args)
    pm = build_period_matrix(curve, precision=args.precision)
    tau = small_period_matrix(pm)
    model = rosenhain_reconstruct(tau, args.precision)
    _emit({"label": curve.label,
           "lambdas": [_cnum(v) for v in model.lambdas]}, args.json)
    return EXIT_OK


def cmd_endo_detect(args) -> int:
    curve = _load(args)
    pm = build_period_matrix(curve, precision=args.precision)
    i_act = AnalyticAction(_qf_matrix(args.i_action, curve.delta))
    j_act = AnalyticAction(_qf_matrix(args.j_action, curve.delta))
    scan = scan_order(pm, i_act, j_act)
    _emit({
        "label": curve.label,
        "i_square": str(scan.algebra.a),
        "j_square": str(scan.algebra.b),
        "M_i": scan.m_i,
        "M_j": scan.m_j,
        "order_basis": [str(q.coords) for q in scan.order.basis],
        "order_discriminant": scan.order.discriminant(),
        "maximal": scan.order.is_maximal(),
    }, args.json)
    return EXIT_OK


def cmd_polarize_search(args) -> int:
    curve = _load(args)
    pm = build_period_matrix(curve, precision=args.precision)
    i_act = AnalyticAction(_qf_matrix(args.i_action, curve.delta))
    j_act = AnalyticAction(_qf_matrix(args.j_action, curve.delta))
    scan = scan_order(pm, i_act, j_act)
    form = quaternionic_form(scan.rep)
    j_sign = scan.rep.rosati_j_sign(form)
    candidates = principal_search(scan.order, j_sign, form, scan.rep)
    data = {
        "label": curve.label,
        "form": form,
        "form_type": frobenius_type(form)[0],
        "classes": len(candidates),
        "gammas": [str(c.gamma) for c in candidates],
    }
    _emit(data, args.json)
    if args.expect_principal and not candidates:
        return EXIT_NEGATIVE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmsurf",
        description="Genus-two curves with quaternionic multiplication")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, curve=True):
        p.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
        p.add_argument("--max-den", type=float, default=1e12)
        p.add_argument("--json", action="store_true")
        if curve:
            p.add_argument("--curve", required=True)

    curve = sub.add_parser("curve").add_subparsers(dest="sub", required=True)
    p = curve.add_parser("analyze")
    common(p)
    p.add_argument("--i-action")
    p.add_argument("--j-action")
    p.add_argument("--expect-principal", action="store_true")
    p.set_defaults(func=cmd_curve_analyze)
    p = curve.add_parser("periods")
    common(p)
    p.set_defaults(func=cmd_curve_periods)
    p = curve.add_parser("igusa")
    common(p)
    p.set_defaults(func=cmd_curve_igusa)
    p = curve.add_parser("richelot")
    common(p)
    p.add_argument("--pairing")
    p.set_defaults(func=cmd_curve_richelot)
    p = curve.add_parser("rosenhain")
    common(p)
    p.set_defaults(func=cmd_curve_rosenhain)

    algebra = sub.add_parser("algebra").add_subparsers(dest="sub",
                                                       required=True)
    p = algebra.add_parser("info")
    common(p, curve=False)
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_algebra_info)
    p = algebra.add_parser("pi")
    common(p, curve=False)
    p.add_argument("D", type=int)
    p.set_defaults(func=cmd_algebra_pi)
    p = algebra.add_parser("hilbert")
    common(p, curve=False)
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("p", type=int)
    p.set_defaults(func=cmd_algebra_hilbert)

    order = sub.add_parser("order").add_subparsers(dest="sub", required=True)
    p = order.add_parser("check")
    common(p, curve=False)
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--basis", required=True)
    p.set_defaults(func=cmd_order_check)

    polarize = sub.add_parser("polarize").add_subparsers(dest="sub",
                                                         required=True)
    p = polarize.add_parser("search")
    common(p)
    p.add_argument("--i-action", required=True)
    p.add_argument("--j-action", required=True)
    p.add_argument("--expect-principal", action="store_true")
    p.set_defaults(func=cmd_polarize_search)

    endo = sub.add_parser("endo").add_subparsers(dest="sub", required=True)
    p = endo.add_parser("detect")
    common(p)
    p.add_argument("--i-action", required=True)
    p.add_argument("--j-action", required=True)
    p.set_defaults(func=cmd_endo_detect)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.precision < 30:
        print("error: precision must be at least 30", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (CliInputError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CurveError, IgusaError, RichelotError, RosenhainError,
            PolarizationError, DetectionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except PeriodError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
