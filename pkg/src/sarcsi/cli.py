"""Command-line front end: predict, predict3d, chart, simulate, analyze.

Exit codes: 0 success, 2 bad flags or config, 3 no propagating solution
(evanescent order or unrealizable Doppler), 4 scene exceeds the unambiguous
grid extent.  Error messages go to stderr; data goes to stdout unless an
output path is given.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from pathlib import Path

import numpy as np

from .analysis import merge_reports, report_to_json, verify_scene_against_model
from .csi import NORM_MODES, compose_rgb, encode_ppm, split_subbands
from .dispersion import (
    DiffractionSolution,
    GratingTarget,
    Orientation3D,
    chart_data,
    chart_to_csv,
    classify_hue,
    effective_squint_3d,
    orders_in_window,
)
from .errors import (
    AliasingError,
    ConfigError,
    DopplerRangeError,
    EvanescentOrderError,
)
from .params import (
    C,
    RadarParams,
    doppler_from_squint,
    make_params,
    observable,
)
from .scene import build_scenes, generate_scene, merge_scenes, parse_scene_config
from .simulator import azimuth_power_spectrum, azimuth_spectrum_csv, synth_spectrum

# Calculation defaults: X-band spaceborne case, 0.1 m resolution both axes.
DEFAULT_FC = 9.6e9       # [Hz]
DEFAULT_V = 7600.0       # [m/s]
DEFAULT_RHO_A = 0.1      # [m]
DEFAULT_RHO_R = 0.1      # [m]
DEFAULT_FDC = 0.0        # [Hz]
DEFAULT_DX = 0.05        # [m]

_ORDERS_RE = re.compile(r"(-?\d+):(-?\d+)")


def _parse_orders(text: str) -> tuple[int, int]:
    m = _ORDERS_RE.fullmatch(text.strip())
    if not m:
        raise ConfigError(f"--orders expects 'a:b' with integers, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise ConfigError(f"--orders range {text!r} is empty (need a <= b)")
    return lo, hi


def _glue_orders(argv: list[str]) -> list[str]:
    # argparse would read the value "-2:2" as an unknown option; fold it into
    # the flag so both "--orders -2:2" and "--orders=-2:2" work.
    out = []
    i = 0
    while i < len(argv):
        if argv[i] == "--orders" and i + 1 < len(argv):
            out.append(f"--orders={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def _add_radar_flags(sp: argparse.ArgumentParser, with_defaults: bool) -> None:
    d = {
        "fc": DEFAULT_FC,
        "v": DEFAULT_V,
        "rho_a": DEFAULT_RHO_A,
        "rho_r": DEFAULT_RHO_R,
        "fdc": DEFAULT_FDC,
    }
    get = d.get if with_defaults else (lambda k: None)
    sp.add_argument("--fc", type=float, default=get("fc"), help="carrier frequency [Hz]")
    sp.add_argument("--v", type=float, default=get("v"), help="platform speed [m/s]")
    sp.add_argument("--rho-a", type=float, default=get("rho_a"), help="azimuth resolution [m]")
    sp.add_argument("--rho-r", type=float, default=get("rho_r"), help="range resolution [m]")
    sp.add_argument("--fdc", type=float, default=get("fdc"), help="Doppler centroid [Hz]")


def _radar_from_flags(args: argparse.Namespace) -> RadarParams:
    return make_params(args.fc, args.v, args.rho_a, args.rho_r, args.fdc)


def _radar_with_overrides(base: RadarParams, args: argparse.Namespace) -> RadarParams:
    # Flags beat config values; resolutions come back out of the bandwidths.
    rho_a = base.V / base.B_a
    rho_r = C / (2 * base.B_r)
    return make_params(
        f_c=args.fc if args.fc is not None else base.f_c,
        V=args.v if args.v is not None else base.V,
        rho_a=args.rho_a if args.rho_a is not None else rho_a,
        rho_r=args.rho_r if args.rho_r is not None else rho_r,
        f_dc=args.fdc if args.fdc is not None else base.f_dc,
    )


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_predict(args: argparse.Namespace) -> int:
    p = _radar_from_flags(args)
    try:
        target = GratingTarget(theta_az=math.radians(args.theta_az), d_x=args.dx)
    except ValueError as e:
        raise ConfigError(str(e)) from e
    sols = orders_in_window(target, p, _parse_orders(args.orders))
    if not sols:
        raise EvanescentOrderError(
            f"no propagating order in {args.orders} for theta_az = {args.theta_az} deg"
        )
    lines = ["m,theta_sq_deg,f_d_hz,observable,hue"]
    for s in sols:
        lines.append(
            f"{s.m},{math.degrees(s.theta_sq)!r},{s.f_d!r},"
            f"{str(s.observable).lower()},{s.hue.value}"
        )
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_predict3d(args: argparse.Namespace) -> int:
    p = _radar_from_flags(args)
    try:
        o = Orientation3D(
            theta_h=math.radians(args.theta_h),
            theta_v=math.radians(args.theta_v),
            theta_inc=math.radians(args.theta_inc),
        )
    except ValueError as e:
        raise ConfigError(str(e)) from e
    theta_sq = effective_squint_3d(o)
    f_d = doppler_from_squint(p, theta_sq)
    row = (
        f"{math.degrees(theta_sq)!r},{math.degrees(-theta_sq)!r},{f_d!r},"
        f"{str(observable(p, f_d)).lower()},{classify_hue(p, f_d).value}"
    )
    _emit("theta_sq_deg,theta_az_deg,f_d_hz,observable,hue\n" + row + "\n", args.out)
    return 0


def _cmd_chart(args: argparse.Namespace) -> int:
    p = _radar_from_flags(args)
    lo, hi = _parse_orders(args.orders)
    if args.sq_step <= 0:
        raise ConfigError(f"--sq-step must be positive, got {args.sq_step}")
    if not args.sq_min < args.sq_max:
        raise ConfigError("need --sq-min < --sq-max")
    if not (abs(args.sq_min) < 90 and abs(args.sq_max) < 90):
        raise ConfigError("squint grid must stay inside (-90, 90) deg")
    steps = int(round((args.sq_max - args.sq_min) / args.sq_step))
    grid_deg = np.linspace(args.sq_min, args.sq_min + steps * args.sq_step, steps + 1)
    if grid_deg[-1] > args.sq_max + 1e-12:
        grid_deg = grid_deg[:-1]
    if args.dx <= 0:
        raise ConfigError(f"--dx must be positive, got {args.dx}")
    chart = chart_data(
        p, args.dx, list(range(lo, hi + 1)), [math.radians(v) for v in grid_deg]
    )
    _emit(chart_to_csv(chart), args.out)
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    cfg = parse_scene_config(args.scene)
    p = _radar_with_overrides(cfg.radar, args)
    na = args.na if args.na is not None else cfg.na
    nr = args.nr if args.nr is not None else cfg.nr
    try:
        scene = merge_scenes(build_scenes(cfg))
        g = synth_spectrum(scene, p, na, nr)
    except ValueError as e:
        raise ConfigError(str(e)) from e
    red, green, blue = split_subbands(g)
    rgb = compose_rgb(
        np.abs(red.data), np.abs(green.data), np.abs(blue.data), norm=args.norm
    )
    f_a, power = azimuth_power_spectrum(g)

    prefix = Path(args.out_prefix)
    if prefix.parent and not prefix.parent.exists():
        raise ConfigError(f"output directory {prefix.parent} does not exist")
    ppm_path = prefix.with_name(prefix.name + "_rgb.ppm")
    csv_path = prefix.with_name(prefix.name + "_azspec.csv")
    json_path = prefix.with_name(prefix.name + "_report.json")
    ppm_path.write_bytes(encode_ppm(rgb))
    csv_path.write_text(azimuth_spectrum_csv(f_a, power))

    energies = {
        name: float(np.sum(np.abs(img.data) ** 2))
        for name, img in (("red", red), ("green", green), ("blue", blue))
    }
    report = {
        "band_energy": energies,
        "files": {
            "azspec": csv_path.name,
            "report": json_path.name,
            "rgb": ppm_path.name,
        },
        "grid": {"na": na, "nr": nr},
        "norm": args.norm,
        "radar": {
            "ba_hz": p.B_a,
            "br_hz": p.B_r,
            "fc_hz": p.f_c,
            "fdc_hz": p.f_dc,
            "v_mps": p.V,
        },
        "targets": [t["label"] for t in cfg.targets],
        "total_energy": float(np.sum(np.abs(g.data) ** 2)),
    }
    json_path.write_text(json.dumps(report, sort_keys=True, indent=2) + "\n")
    sys.stdout.write(f"wrote {ppm_path} {csv_path} {json_path}\n")
    return 0


def _predictions_for_target(target: dict, p: RadarParams, m_range) -> list:
    kind = target["kind"]
    if kind == "line":
        t = GratingTarget(theta_az=math.radians(target["theta_az_deg"]))
        return orders_in_window(t, p, m_range)
    if kind == "array":
        t = GratingTarget(
            theta_az=math.radians(target["theta_az_deg"]), d_x=target["dx_m"]
        )
        return orders_in_window(t, p, m_range)
    if kind == "segment3d":
        o = Orientation3D(
            theta_h=math.radians(target["theta_h_deg"]),
            theta_v=math.radians(target["theta_v_deg"]),
            theta_inc=math.radians(target["theta_inc_deg"]),
        )
        theta_sq = effective_squint_3d(o)
        f_d = doppler_from_squint(p, theta_sq)
        return [
            DiffractionSolution(
                m=0,
                theta_sq=theta_sq,
                f_d=f_d,
                observable=observable(p, f_d),
                hue=classify_hue(p, f_d),
            )
        ]
    raise ConfigError(
        f"analyze supports line, array, and segment3d targets, not {kind!r}"
    )


def _cmd_analyze(args: argparse.Namespace) -> int:
    cfg = parse_scene_config(args.scene)
    p = _radar_with_overrides(cfg.radar, args)
    na = args.na if args.na is not None else cfg.na
    nr = args.nr if args.nr is not None else cfg.nr
    m_range = _parse_orders(args.orders)
    if args.tol_bins <= 0:
        raise ConfigError(f"--tol-bins must be positive, got {args.tol_bins}")
    reports = []
    for target in cfg.targets:
        predictions = _predictions_for_target(target, p, m_range)
        if not predictions:
            raise EvanescentOrderError(
                f"target {target['label']!r} has no propagating order in {args.orders}"
            )
        scene = generate_scene(target, p.lam)
        reports.append(
            verify_scene_against_model(
                scene, p, predictions, tol_bins=args.tol_bins, na=na, nr=nr
            )
        )
    _emit(report_to_json(merge_reports(reports)), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sarcsi",
        description="Geometric-dispersion SAR toolkit: predict diffraction "
        "orders, simulate spectra, compose colorized sub-aperture images.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("predict", help="diffraction-order table for an in-plane target")
    sp.add_argument("--theta-az", type=float, required=True, help="orientation [deg]")
    sp.add_argument("--dx", type=float, default=None,
                    help="azimuth period [m]; omit for a continuous target")
    sp.add_argument("--orders", default="-2:2", help="inclusive order range a:b")
    sp.add_argument("--out", default=None, help="output CSV path (default stdout)")
    _add_radar_flags(sp, with_defaults=True)
    sp.set_defaults(func=_cmd_predict)

    sp = sub.add_parser("predict3d", help="projected response of a 3D linear target")
    sp.add_argument("--theta-h", type=float, required=True, help="horizontal angle [deg]")
    sp.add_argument("--theta-v", type=float, required=True, help="vertical angle [deg]")
    sp.add_argument("--theta-inc", type=float, required=True, help="incidence angle [deg]")
    sp.add_argument("--out", default=None, help="output CSV path (default stdout)")
    _add_radar_flags(sp, with_defaults=True)
    sp.set_defaults(func=_cmd_predict3d)

    sp = sub.add_parser("chart", help="orientation-vs-squint interpretation chart")
    sp.add_argument("--dx", type=float, default=DEFAULT_DX, help="azimuth period [m]")
    sp.add_argument("--orders", default="-1:1", help="inclusive order range a:b")
    sp.add_argument("--sq-min", type=float, default=-6.0, help="squint grid start [deg]")
    sp.add_argument("--sq-max", type=float, default=6.0, help="squint grid end [deg]")
    sp.add_argument("--sq-step", type=float, default=0.25, help="squint grid step [deg]")
    sp.add_argument("--out", default=None, help="output CSV path (default stdout)")
    _add_radar_flags(sp, with_defaults=True)
    sp.set_defaults(func=_cmd_chart)

    sp = sub.add_parser("simulate", help="synthesize a scene and write its CSI product")
    sp.add_argument("--scene", required=True, help="scene config JSON path")
    sp.add_argument("--out-prefix", required=True, help="output file prefix")
    sp.add_argument("--na", type=int, default=None, help="azimuth grid size")
    sp.add_argument("--nr", type=int, default=None, help="range grid size")
    sp.add_argument("--norm", choices=NORM_MODES, default="linear",
                    help="RGB normalization rule")
    _add_radar_flags(sp, with_defaults=False)
    sp.set_defaults(func=_cmd_simulate)

    sp = sub.add_parser("analyze", help="verify simulated peaks against the model")
    sp.add_argument("--scene", required=True, help="scene config JSON path")
    sp.add_argument("--orders", default="-2:2", help="inclusive order range a:b")
    sp.add_argument("--tol-bins", type=float, default=2.0, help="match tolerance [bins]")
    sp.add_argument("--na", type=int, default=None, help="azimuth grid size")
    sp.add_argument("--nr", type=int, default=None, help="range grid size")
    sp.add_argument("--out", default=None, help="output JSON path (default stdout)")
    _add_radar_flags(sp, with_defaults=False)
    sp.set_defaults(func=_cmd_analyze)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    args = build_parser().parse_args(_glue_orders(argv))
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (EvanescentOrderError, DopplerRangeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except AliasingError as e:
        print(f"error: {e}", file=sys.stderr)
        return 4
