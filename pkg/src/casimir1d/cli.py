"""Command-line interface.

Subcommands: force, energy, sweep, modes, validate.  Results go to stdout
(CSV by default, JSON with --format json), diagnostics to stderr.  Exit
codes: 0 success, 1 usage or parameter errors, 2 numerical failure.

Values are printed in reduced units (hbar = c = 1, lengths in the unit the
inputs use) unless --si is given together with --L-unit <meters>, in which
case the formatting layer multiplies by hbar*c appropriately; nothing
inside the engine ever sees SI factors.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .cavity import CavityConfig
from .engine import (
    QuadratureSpec,
    casimir_energy,
    casimir_force,
    casimir_force_series,
)
from .errors import CasimirError, CutoffTooCoarse, InvalidParameter, ToleranceNotMet
from .mirrors import evaluate, parse_model_spec
from .modes import BoxSpec, energy_difference_oracle
from .smatrix import det_s, s_to_transfer, transfer_to_s, unitarity_residual

HBAR = 1.054571817e-34  # J s
C_LIGHT = 299792458.0  # m / s

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2


def _fmt(x: float) -> str:
    return f"{x:.10e}"


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; the CLI contract wants 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=1e-10, help="relative tolerance")
    p.add_argument(
        "--method",
        choices=("quad", "series"),
        default="quad",
        help="force computation route (quad: rotated-axis quadrature; series: round-trip series)",
    )
    p.add_argument(
        "--rule",
        choices=("adaptive", "laguerre"),
        default="adaptive",
        help="quadrature rule backing the quad route",
    )
    p.add_argument("--budget", type=int, default=200, help="quadrature budget")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--jobs", type=int, default=1, help="concurrent sweep evaluations")
    p.add_argument("--si", action="store_true", help="print SI values")
    p.add_argument(
        "--L-unit",
        dest="l_unit",
        type=float,
        default=1e-6,
        help="meters per length unit, used only with --si",
    )
    p.add_argument(
        "--allow-noncausal",
        action="store_true",
        help="permit contour rotation for non-causal models (scaling tests)",
    )
    p.add_argument("--n-max", type=int, default=400, help="series term count")


def _make_spec(args) -> QuadratureSpec:
    return QuadratureSpec(
        rel_tol=args.tol,
        abs_tol=min(1e-14, args.tol),
        budget=args.budget,
        method="adaptive" if args.rule == "adaptive" else "laguerre",
    )


def _force_scale(args) -> float:
    return HBAR * C_LIGHT / args.l_unit**2 if args.si else 1.0


def _energy_scale(args) -> float:
    return HBAR * C_LIGHT / args.l_unit if args.si else 1.0


def _emit_records(records, fieldnames, fmt):
    if fmt == "csv":
        print(",".join(fieldnames))
        for rec in records:
            print(",".join(_fmt(rec[name]) for name in fieldnames))
    else:
        # round-trip identical to the CSV rendering: parse back the
        # formatted strings so both outputs carry the same floats
        out = [
            {name: float(_fmt(rec[name])) for name in fieldnames} for rec in records
        ]
        print(json.dumps(out))


def _point(models, distance, args, spec):
    config = CavityConfig(models[0], models[1], distance)
    if args.method == "series":
        force = casimir_force_series(
            config, args.n_max, spec, allow_noncausal=args.allow_noncausal
        )
    else:
        force = casimir_force(config, spec, allow_noncausal=args.allow_noncausal)
    energy = casimir_energy(config, spec, allow_noncausal=args.allow_noncausal)
    return force, energy


def _cmd_force(args) -> int:
    models = (parse_model_spec(args.m1), parse_model_spec(args.m2))
    spec = _make_spec(args)
    force, _ = _point(models, args.L, args, spec)
    scale = _force_scale(args)
    rec = {
        "L": args.L,
        "force": force.value * scale,
        "force_err": force.error * scale,
    }
    if args.format == "csv":
        print("L,force,force_err,method,unit")
        unit = "N" if args.si else "1/length^2"
        print(f"{_fmt(rec['L'])},{_fmt(rec['force'])},{_fmt(rec['force_err'])},{force.method},{unit}")
    else:
        rec = {k: float(_fmt(v)) for k, v in rec.items()}
        rec["method"] = force.method
        rec["unit"] = "N" if args.si else "1/length^2"
        print(json.dumps([rec]))
    return EXIT_OK


def _cmd_energy(args) -> int:
    models = (parse_model_spec(args.m1), parse_model_spec(args.m2))
    spec = _make_spec(args)
    config = CavityConfig(models[0], models[1], args.L)
    energy = casimir_energy(config, spec, allow_noncausal=args.allow_noncausal)
    scale = _energy_scale(args)
    rec = {"L": args.L, "energy": energy.value * scale, "energy_err": energy.error * scale}
    if args.format == "csv":
        print("L,energy,energy_err,method,unit")
        unit = "J" if args.si else "1/length"
        print(f"{_fmt(rec['L'])},{_fmt(rec['energy'])},{_fmt(rec['energy_err'])},{energy.method},{unit}")
    else:
        rec = {k: float(_fmt(v)) for k, v in rec.items()}
        rec["method"] = energy.method
        rec["unit"] = "J" if args.si else "1/length"
        print(json.dumps([rec]))
    return EXIT_OK


def _cmd_sweep(args) -> int:
    if not (args.start > 0.0 and args.stop > args.start and args.count >= 2):
        raise InvalidParameter("need start > 0, stop > start, count >= 2")
    models = (parse_model_spec(args.m1), parse_model_spec(args.m2))
    spec = _make_spec(args)
    if args.scale == "log":
        grid = np.geomspace(args.start, args.stop, args.count)
    else:
        grid = np.linspace(args.start, args.stop, args.count)

    def work(distance):
        return _point(models, float(distance), args, spec)

    jobs = max(1, args.jobs)
    if jobs == 1:
        results = [_guarded(work, d) for d in grid]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda d: _guarded(work, d), grid))

    fscale, escale = _force_scale(args), _energy_scale(args)
    records = []
    failed = False
    for distance, outcome in zip(grid, results):
        if isinstance(outcome, Exception):
            failed = True
            print(f"sweep point L={distance:g} failed: {outcome}", file=sys.stderr)
            continue
        force, energy = outcome
        records.append(
            {
                "L": float(distance),
                "force": force.value * fscale,
                "energy": energy.value * escale,
                "force_err": force.error * fscale,
                "energy_err": energy.error * escale,
            }
        )
    _emit_records(records, ["L", "force", "energy", "force_err", "energy_err"], args.format)
    return EXIT_NUMERICAL if failed else EXIT_OK


def _guarded(fn, *a):
    try:
        return fn(*a)
    except CasimirError as exc:
        return exc


def _cmd_modes(args) -> int:
    m1 = parse_model_spec(args.m1)
    m2 = parse_model_spec(args.m2)
    spec = _make_spec(args)
    config_a = CavityConfig(m1, m2, args.La)
    config_b = CavityConfig(m1, m2, args.Lb)
    e_a = casimir_energy(config_a, spec, allow_noncausal=args.allow_noncausal)
    e_b = casimir_energy(config_b, spec, allow_noncausal=args.allow_noncausal)
    integral = e_a.value - e_b.value
    records = []
    for lbox in args.Lbox:
        box = BoxSpec(
            box_length=lbox,
            k_max=args.kmax,
            resolution=args.res,
            window_fraction=args.window,
        )
        oracle = energy_difference_oracle(m1, m2, args.La, args.Lb, box)
        rel = abs(oracle - integral) / abs(integral) if integral != 0.0 else abs(oracle)
        records.append({"Lbox": lbox, "oracle": oracle, "integral": integral, "rel_dev": rel})
    _emit_records(records, ["Lbox", "oracle", "integral", "rel_dev"], args.format)
    devs = [rec["rel_dev"] for rec in records]
    trend = "decreasing" if all(b <= a for a, b in zip(devs, devs[1:])) else "mixed"
    print(f"deviation trend across box lengths: {trend}", file=sys.stderr)
    return EXIT_OK


def _cmd_validate(args) -> int:
    model = parse_model_spec(args.spec)
    ks = np.geomspace(args.kmin, args.kmax, args.points)
    worst_unitarity = 0.0
    worst_det = 0.0
    worst_roundtrip = 0.0
    roundtrip_defined = False
    for k in ks:
        s = evaluate(model, complex(k))
        worst_unitarity = max(worst_unitarity, unitarity_residual(s))
        if abs(s.rbar) > 1e-12:
            # det S = -r/conj(rbar), checked in multiplied form
            worst_det = max(
                worst_det, abs(det_s(s) * s.rbar.conjugate() + s.r)
            )
        if abs(s.tbar) > 1e-6:
            roundtrip_defined = True
            back = transfer_to_s(s_to_transfer(s))
            num = max(
                abs(back.t - s.t),
                abs(back.rbar - s.rbar),
                abs(back.r - s.r),
                abs(back.tbar - s.tbar),
            )
            den = max(abs(s.t), abs(s.rbar), abs(s.r), abs(s.tbar))
            worst_roundtrip = max(worst_roundtrip, num / den)
    print(f"model: {model.spec_string()}")
    print(f"causal: {'yes' if model.causal else 'no (quarantined from rotation)'}")
    print(f"k grid: {args.points} log-spaced in [{args.kmin:g}, {args.kmax:g}]")
    print(f"max unitarity residual:   {_fmt(worst_unitarity)}")
    print(f"max det-identity residual: {_fmt(worst_det)}")
    if roundtrip_defined:
        print(f"max S<->T round-trip residual: {_fmt(worst_roundtrip)}")
    else:
        print("max S<->T round-trip residual: n/a (non-transmitting model)")
    bad = max(worst_unitarity, worst_det, worst_roundtrip) >= 1e-10
    print("result: FAIL" if bad else "result: ok")
    return EXIT_NUMERICAL if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="casimir1d",
        description="One-dimensional Casimir forces between partially reflecting mirrors.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_force = sub.add_parser("force", help="force at a single separation")
    p_force.add_argument("--m1", required=True, help="left mirror spec, e.g. delta:g=1")
    p_force.add_argument("--m2", required=True, help="right mirror spec")
    p_force.add_argument("--L", type=float, required=True, help="mirror separation")
    _add_common(p_force)
    p_force.set_defaults(func=_cmd_force)

    p_energy = sub.add_parser("energy", help="energy at a single separation")
    p_energy.add_argument("--m1", required=True)
    p_energy.add_argument("--m2", required=True)
    p_energy.add_argument("--L", type=float, required=True)
    _add_common(p_energy)
    p_energy.set_defaults(func=_cmd_energy)

    p_sweep = sub.add_parser("sweep", help="force and energy over a distance range")
    p_sweep.add_argument("--m1", required=True)
    p_sweep.add_argument("--m2", required=True)
    p_sweep.add_argument("--start", type=float, required=True)
    p_sweep.add_argument("--stop", type=float, required=True)
    p_sweep.add_argument("--count", type=int, required=True)
    p_sweep.add_argument("--scale", choices=("linear", "log"), default="linear")
    _add_common(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_modes = sub.add_parser("modes", help="periodic-box oracle vs integral")
    p_modes.add_argument("--m1", required=True)
    p_modes.add_argument("--m2", required=True)
    p_modes.add_argument("--La", type=float, required=True)
    p_modes.add_argument("--Lb", type=float, required=True)
    p_modes.add_argument(
        "--Lbox", type=float, nargs="+", default=[500.0, 1000.0, 2000.0, 4000.0]
    )
    p_modes.add_argument("--kmax", type=float, default=80.0)
    p_modes.add_argument("--res", type=int, default=4)
    p_modes.add_argument("--window", type=float, default=0.5)
    _add_common(p_modes)
    p_modes.set_defaults(func=_cmd_modes)

    p_val = sub.add_parser("validate", help="unitarity and identity residuals of a model")
    p_val.add_argument("spec", help="model spec string")
    p_val.add_argument("--kmin", type=float, default=1e-3)
    p_val.add_argument("--kmax", type=float, default=1e3)
    p_val.add_argument("--points", type=int, default=200)
    p_val.set_defaults(func=_cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidParameter as exc:
        print(f"casimir1d: invalid parameter: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ToleranceNotMet, CutoffTooCoarse) as exc:
        print(f"casimir1d: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except CasimirError as exc:
        print(f"casimir1d: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
