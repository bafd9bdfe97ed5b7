"""CSV front end for trajectories, error sweeps, surfaces, and radii.

Four subcommands produce self-describing CSV artifacts:

  trajectory   one orbit sampled against the RK4 oracle
  error-sweep  sup-norm error (or period error with --period) over
               energy and truncation-order grids
  surface      long-format (energy, t, theta) tables over several orbits
  roc          exact and estimated convergence radii per energy

Output is deterministic for a fixed configuration: `#`-prefixed metadata
lines echo the package version and the config, reals carry 17
significant digits, and rows are emitted in input order.  Angles are
computed in radians; --degrees rescales them at formatting time only.
Energies that fall on the separatrix are skipped where the requested
quantity does not exist there (no finite period); each skip is listed on
standard error and makes the exit status nonzero.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .convergence import pole_lattice, roc_estimate, roc_exact
from .elliptic import period
from .energy import Regime, canonical_top_ics, classify_energy, energy_state
from .series import pendulum_series
from .trajectory import build_trajectory, canonical_initial_state, theta_at
from .validation import rk4_sample, sup_error

__all__ = ["main"]

_RAD2DEG = 180.0 / math.pi


def _fmt(x) -> str:
    x = float(x)
    if x == 0.0:
        x = 0.0  # never emit -0
    return "%.17g" % x


def _float_list(text: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number list: {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _int_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer list: {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _direction_sign(regime: Regime, flag: str) -> int:
    """Map cw/ccw to the internal orientation sign for one regime.

    cw means the initial sense of motion is clockwise (theta decreasing):
    that is the canonical +1 branch for libration (released from +theta_max)
    but the -1 branch for circulating and separatrix orbits.
    """
    if regime is Regime.LIBRATION:
        return 1 if flag == "cw" else -1
    return -1 if flag == "cw" else 1


def _angle_scale(args) -> float:
    return _RAD2DEG if getattr(args, "degrees", False) else 1.0


def _resolve_method(method: str, regime: Regime) -> str:
    if method == "auto":
        return "separatrix" if regime is Regime.SEPARATRIX else "resummed"
    return method


# ---------------------------------------------------------------------------
# subcommands: each returns (meta_lines, header, rows, skipped)


def cmd_trajectory(args):
    e = args.energy[0]
    regime = classify_energy(e)
    state = energy_state(e, _direction_sign(regime, args.direction))
    method = _resolve_method(args.method, regime)
    order = None if method == "separatrix" else args.order
    sol = build_trajectory(state, order, method)
    t_full = sol.period_info.T
    span = args.periods * (t_full if math.isfinite(t_full) else 2.0 * math.pi)
    grid = np.linspace(0.0, span, args.grid)
    theta = theta_at(sol, grid)
    theta0, omega0 = canonical_initial_state(sol)
    oracle, _ = rk4_sample(theta0, omega0, grid, args.oracle_dt)
    scale = _angle_scale(args)
    meta = [
        f"energy={_fmt(e)} method={sol.method} order={sol.order} "
        f"T={_fmt(t_full)} T_star={_fmt(sol.period_info.T_star)}"
    ]
    rows = [
        [_fmt(t), _fmt(scale * a), _fmt(scale * r), _fmt(scale * abs(a - r))]
        for t, a, r in zip(grid, theta, oracle)
    ]
    return meta, ["t", "theta_analytic", "theta_rk4", "abs_error"], rows, []


def cmd_error_sweep(args):
    if args.period:
        return _period_sweep(args)
    return _trajectory_sweep(args)


def _period_sweep(args):
    meta, rows, skipped = [], [], []
    for e in args.energy:
        if classify_energy(e) is Regime.SEPARATRIX:
            skipped.append(f"energy={_fmt(e)} reason=separatrix (no finite period)")
            continue
        state = energy_state(e)
        exact = period(state).T_star
        meta.append(f"energy={_fmt(e)} T_star={_fmt(exact)}")
        for n in args.order:
            for route in ("series", "resummed"):
                approx = period(state, method=route, order=n).T_star
                rows.append([_fmt(e), str(n), route, _fmt(abs(approx - exact))])
    return meta, ["energy", "order", "method", "T_star_abs_error"], rows, skipped


def _trajectory_sweep(args):
    meta, rows, skipped = [], [], []
    methods = ["raw", "resummed"] if args.method == "auto" else [args.method]
    n_max = max(args.order)
    scale = _angle_scale(args)
    for e in args.energy:
        if classify_energy(e) is Regime.SEPARATRIX:
            skipped.append(f"energy={_fmt(e)} reason=separatrix (no finite T*)")
            continue
        state = energy_state(e, _direction_sign(classify_energy(e), args.direction))
        base = build_trajectory(state, n_max, "resummed")
        t_star = base.period_info.T_star
        grid = np.linspace(0.0, t_star, args.grid)
        theta0, omega0 = canonical_initial_state(base)
        oracle, _ = rk4_sample(theta0, omega0, grid, args.oracle_dt)
        meta.append(f"energy={_fmt(e)} T_star={_fmt(t_star)}")
        for method in methods:
            if method == "efficient":
                # the two-monomial correction is tied to its order: rebuild
                for n in args.order:
                    sol = build_trajectory(state, n, "efficient")
                    rep = sup_error(sol, grid_points=args.grid, oracle=oracle)
                    rows.append([_fmt(e), str(n), method, _fmt(scale * rep.sup_error)])
            else:
                sol = base if method == "resummed" else build_trajectory(state, n_max, method)
                for n in args.order:
                    rep = sup_error(sol, upto=n, grid_points=args.grid, oracle=oracle)
                    rows.append([_fmt(e), str(n), method, _fmt(scale * rep.sup_error)])
    return meta, ["energy", "order", "method", "sup_error"], rows, skipped


def cmd_surface(args):
    meta, rows = [], []
    scale = _angle_scale(args)
    for e in args.energy:
        regime = classify_energy(e)
        state = energy_state(e, _direction_sign(regime, args.direction))
        if regime is Regime.SEPARATRIX:
            sol = build_trajectory(state, method="separatrix")
            span = args.periods * 2.0 * math.pi  # no period: nominal 2 pi units
        else:
            sol = build_trajectory(state, args.order, "resummed")
            span = args.periods * sol.period_info.T
        meta.append(
            f"energy={_fmt(e)} method={sol.method} order={sol.order} "
            f"T={_fmt(sol.period_info.T)} T_star={_fmt(sol.period_info.T_star)}"
        )
        theta = theta_at(sol, np.linspace(0.0, span, args.grid))
        rows.extend(
            [_fmt(e), _fmt(t), _fmt(scale * th)]
            for t, th in zip(np.linspace(0.0, span, args.grid), theta)
        )
    return meta, ["energy", "t", "theta"], rows, []


def cmd_roc(args):
    meta, rows, skipped = [], [], []
    for e in args.energy:
        if classify_energy(e) is Regime.SEPARATRIX:
            skipped.append(
                f"energy={_fmt(e)} reason=separatrix (branch points at +-i*pi/2, "
                f"no pole lattice)"
            )
            continue
        state = energy_state(e)
        poles = pole_lattice(state, max_index=3).poles
        for ics in ("top", "bottom"):
            rep = roc_exact(state, ics)
            x0 = 0.0 if ics == "top" else rep.t_star
            nearest = poles[int(np.argmin(np.abs(poles - x0)))]
            if ics == "top":
                theta0, omega0 = canonical_top_ics(state)
            else:
                theta0, omega0 = 0.0, -math.sqrt(2.0 * state.energy)
            estimate = ""
            try:
                estimate = _fmt(roc_estimate(pendulum_series(theta0, omega0, args.order)))
            except ValueError as exc:
                print(
                    f"note: no root-test estimate for energy={_fmt(e)} "
                    f"ics={ics}: {exc}",
                    file=sys.stderr,
                )
            rows.append(
                [_fmt(e), ics, _fmt(rep.exact_roc), _fmt(rep.t_star),
                 _fmt(rep.margin), estimate, _fmt(nearest.real), _fmt(nearest.imag)]
            )
    header = ["energy", "ics", "exact_roc", "t_star", "margin",
              "root_test_estimate", "nearest_pole_re", "nearest_pole_im"]
    return meta, header, rows, skipped


# ---------------------------------------------------------------------------
# plumbing


def _config_echo(args) -> str:
    items = []
    for key, value in sorted(vars(args).items()):
        if key in ("func", "command") or value is None:
            continue
        if isinstance(value, list):
            value = ",".join(_fmt(v) if isinstance(v, float) else str(v) for v in value)
        elif isinstance(value, float):
            value = _fmt(value)
        items.append(f"{key}={value}")
    return " ".join(items)


def _emit(stream, args, meta, header, rows) -> None:
    stream.write(f"# pendseries {__version__} {args.command}\n")
    stream.write(f"# config: {_config_echo(args)}\n")
    for line in meta:
        stream.write(f"# {line}\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


_PLOT_TEMPLATES = {
    "trajectory": '''#!/usr/bin/env python3
"""Plot __CSV__ (pendseries trajectory output)."""
import csv

import matplotlib.pyplot as plt

ts, ana, rk4, err = [], [], [], []
with open(__CSV__) as f:
    for row in csv.reader(line for line in f if not line.startswith("#")):
        if row[0] == "t":
            continue
        ts.append(float(row[0]))
        ana.append(float(row[1]))
        rk4.append(float(row[2]))
        err.append(float(row[3]))

fig, (top, bottom) = plt.subplots(2, 1, sharex=True)
top.plot(ts, ana, label="series")
top.plot(ts, rk4, "--", label="rk4")
top.set_ylabel("theta")
top.legend()
bottom.semilogy(ts, [max(e, 1e-18) for e in err])
bottom.set_xlabel("t")
bottom.set_ylabel("|error|")
fig.tight_layout()
plt.show()
''',
    "error-sweep": '''#!/usr/bin/env python3
"""Plot __CSV__ (pendseries error-sweep output)."""
import csv
from collections import defaultdict

import matplotlib.pyplot as plt

curves = defaultdict(list)
with open(__CSV__) as f:
    rows = [r for r in csv.reader(line for line in f if not line.startswith("#"))]
for row in rows[1:]:
    curves[(row[0], row[2])].append((int(row[1]), float(row[3])))

for (energy, method), points in sorted(curves.items()):
    points.sort()
    plt.semilogy([n for n, _ in points], [max(v, 1e-18) for _, v in points],
                 marker="o", label=f"E={energy} {method}")
plt.xlabel("order N")
plt.ylabel(rows[0][3])
plt.legend()
plt.tight_layout()
plt.show()
''',
    "surface": '''#!/usr/bin/env python3
"""Plot __CSV__ (pendseries surface output)."""
import csv
from collections import defaultdict

import matplotlib.pyplot as plt

curves = defaultdict(list)
with open(__CSV__) as f:
    for row in csv.reader(line for line in f if not line.startswith("#")):
        if row[0] == "energy":
            continue
        curves[row[0]].append((float(row[1]), float(row[2])))

for energy, points in sorted(curves.items(), key=lambda kv: float(kv[0])):
    plt.plot([t for t, _ in points], [th for _, th in points], label=f"E={energy}")
plt.xlabel("t")
plt.ylabel("theta")
plt.legend()
plt.tight_layout()
plt.show()
''',
}


def _write_plot_script(out_path: str, command: str) -> Path:
    template = _PLOT_TEMPLATES[command]
    path = Path(out_path)
    script = path.with_name(path.stem + "_plot.py")
    script.write_text(template.replace("__CSV__", repr(path.name)), encoding="utf-8")
    return script


def _add_output_flags(p, plottable: bool) -> None:
    p.add_argument("--out", metavar="PATH", help="output CSV path (default stdout)")
    if plottable:
        p.add_argument("--plot-script", action="store_true",
                       help="also write a matplotlib script next to --out")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pendseries",
        description="Analytic pendulum trajectories as CSV artifacts.",
    )
    parser.add_argument("--version", action="version",
                        version=f"pendseries {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trajectory", help="one orbit sampled against the RK4 oracle")
    p.add_argument("--energy", type=_float_list, required=True,
                   help="orbit energy (single value)")
    p.add_argument("--order", type=int, default=20, help="truncation order N")
    p.add_argument("--method", choices=("raw", "resummed", "efficient", "auto"),
                   default="auto", help="auto = resummed, closed form at E=2")
    p.add_argument("--direction", choices=("cw", "ccw"), default="cw",
                   help="initial sense of motion")
    p.add_argument("--periods", type=int, default=1,
                   help="time span in full periods (2*pi units at E=2)")
    p.add_argument("--grid", type=int, default=1001, help="number of samples")
    p.add_argument("--oracle-dt", type=float, default=1e-4,
                   help="RK4 oracle step (1e-5 reproduces the reference runs)")
    p.add_argument("--degrees", action="store_true",
                   help="format angle columns in degrees")
    _add_output_flags(p, plottable=True)
    p.set_defaults(func=cmd_trajectory)

    p = sub.add_parser("error-sweep",
                       help="sup-norm or period error over energy/order grids")
    p.add_argument("--energy", type=_float_list, required=True,
                   help="comma-separated energy grid")
    p.add_argument("--order", type=_int_list, default=[5, 10, 20],
                   help="comma-separated truncation orders")
    p.add_argument("--method", choices=("raw", "resummed", "efficient", "auto"),
                   default="auto", help="auto = compare raw and resummed")
    p.add_argument("--direction", choices=("cw", "ccw"), default="cw")
    p.add_argument("--grid", type=int, default=1001,
                   help="samples per [0, T*] error grid")
    p.add_argument("--oracle-dt", type=float, default=1e-4)
    p.add_argument("--period", action="store_true",
                   help="sweep the effective-period error of K routes instead")
    p.add_argument("--degrees", action="store_true",
                   help="format sup_error in degrees")
    _add_output_flags(p, plottable=True)
    p.set_defaults(func=cmd_error_sweep)

    p = sub.add_parser("surface",
                       help="long-format (energy, t, theta) over several orbits")
    p.add_argument("--energy", type=_float_list, required=True,
                   help="comma-separated energy grid")
    p.add_argument("--order", type=int, default=40)
    p.add_argument("--direction", choices=("cw", "ccw"), default="cw")
    p.add_argument("--periods", type=int, default=2)
    p.add_argument("--grid", type=int, default=257, help="samples per energy")
    p.add_argument("--degrees", action="store_true")
    _add_output_flags(p, plottable=True)
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("roc", help="convergence radii, exact and estimated")
    p.add_argument("--energy", type=_float_list, required=True,
                   help="comma-separated energy grid")
    p.add_argument("--order", type=int, default=400,
                   help="coefficient count for the root-test estimate")
    _add_output_flags(p, plottable=False)
    p.set_defaults(func=cmd_roc)

    return parser


def _validate(parser: argparse.ArgumentParser, args) -> None:
    if any(e <= 0.0 for e in args.energy):
        parser.error("energies must be positive (E = 0 is the rest fixed point)")
    if args.command == "trajectory" and len(args.energy) != 1:
        parser.error("trajectory takes a single energy; use surface for grids")
    orders = args.order if isinstance(args.order, list) else [args.order]
    if args.command == "roc":
        if any(n < 2 for n in orders):
            parser.error("--order must be >= 2")
    elif any(n < 2 for n in orders):
        parser.error("series methods need order >= 2")
    grid = getattr(args, "grid", None)
    if grid is not None and grid < 2:
        parser.error("--grid must be >= 2")
    periods = getattr(args, "periods", None)
    if periods is not None and periods < 1:
        parser.error("--periods must be >= 1")
    dt = getattr(args, "oracle_dt", None)
    if dt is not None and dt <= 0.0:
        parser.error("--oracle-dt must be positive")
    if getattr(args, "plot_script", False) and not args.out:
        parser.error("--plot-script requires --out")


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    meta, header, rows, skipped = args.func(args)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as stream:
            _emit(stream, args, meta, header, rows)
        if getattr(args, "plot_script", False):
            _write_plot_script(args.out, args.command)
    else:
        _emit(sys.stdout, args, meta, header, rows)
    for line in skipped:
        print(f"skipped: {line}", file=sys.stderr)
    return 1 if skipped else 0


if __name__ == "__main__":
    sys.exit(main())
