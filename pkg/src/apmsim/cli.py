"""Batch command line: design synthesis, sweep simulation, curve validation
and design-space sweeps. Deterministic machine-readable output; exit codes
0 = success, 2 = input error, 3 = model domain error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import geometry
from .actuation import ActuationState, simulate_sweep
from .config import ConfigError, load_config, parse_ratio
from .errors import DomainError
from .geometry import MyofibrilSpec
from .material import MATERIALS
from .validation import Curve, compare_curves, write_qq_csv

SIMULATE_COLUMNS = (
    "pressure_mpa",
    "lambda_jz",
    "c_m",
    "f_e_n",
    "f_r_n",
    "f_spa_n",
    "theta_rad",
    "f_contr_n",
    "r1_mm",
    "l_mf_mm",
    "length_ratio",
    "ratio_flag",
)


def _fmt(value: float) -> str:
    return f"{value:.6f}"


def _state_fields(state: ActuationState) -> list[str]:
    return [
        _fmt(state.pressure),
        _fmt(state.lambda_jz),
        _fmt(state.c_m),
        _fmt(state.f_e),
        _fmt(state.f_r),
        _fmt(state.f_spa),
        _fmt(state.theta),
        _fmt(state.f_contr),
        _fmt(state.r1),
        _fmt(state.l_mf),
        _fmt(state.length_ratio),
        state.ratio_flag,
    ]


def _state_json(state: ActuationState) -> dict:
    return {
        "pressure_mpa": state.pressure,
        "lambda_jz": state.lambda_jz,
        "c_m": state.c_m,
        "f_e_n": state.f_e,
        "f_r_n": state.f_r,
        "f_spa_n": state.f_spa,
        "theta_rad": state.theta,
        "f_contr_n": state.f_contr,
        "r1_mm": state.r1,
        "l_mf_mm": state.l_mf,
        "length_ratio": state.length_ratio,
        "ratio_flag": state.ratio_flag,
    }


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_design(args: argparse.Namespace) -> int:
    for label, value in (("a-band", args.a_band), ("t-w", args.t_w), ("h-ch", args.h_ch)):
        if value <= 0.0:
            print(f"error: --{label} must be positive, got {value}", file=sys.stderr)
            return 2
    sarc = geometry.design_from_a_band(args.a_band)
    low, high = geometry.myosin_height_bounds(args.a_band, args.t_w, args.h_ch)
    lines = [
        f"a_band_mm={_fmt(sarc.a_band)}",
        f"i_band_mm={_fmt(sarc.i_band)}",
        f"actin_arc_mm={_fmt(sarc.actin_arc)}",
        f"rest_radius_mm={_fmt(sarc.rest_radius)}",
        f"myosin_height_min_mm={_fmt(low)}",
        f"myosin_height_max_mm={_fmt(high)}",
    ]
    print("\n".join(lines))
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    spec = config.build_spec()
    sweep = config.sweep_for_material(config.material.name)
    states = simulate_sweep(spec, sweep)

    out_path = args.out or config.out_path
    fmt = args.format or config.out_format
    if fmt == "json":
        payload = {
            "metadata": {
                "material": config.material.name,
                "n": spec.n,
                "sweep": {"start": sweep.start, "end": sweep.end, "step": sweep.step},
            },
            "states": [_state_json(s) for s in states],
        }
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", out_path)
    else:
        lines = [",".join(SIMULATE_COLUMNS)]
        lines.extend(",".join(_state_fields(s)) for s in states)
        _emit("\n".join(lines) + "\n", out_path)
    return 0


def cmd_validate(args: argparse.Namespace) -> int:
    model = Curve.from_csv(args.model_csv, "model")
    reference = Curve.from_csv(args.reference_csv, "reference")
    report = compare_curves(model, reference, qq=args.qq, resample=args.resample)
    print(f"frechet_normalized_pct={_fmt(100.0 * report.frechet_normalized)}")
    print(f"frechet_raw={_fmt(report.frechet_raw)}")
    print(f"r_squared={_fmt(report.r_squared)}")
    if args.out:
        fmt = args.format or "json"
        if fmt == "json":
            Path(args.out).write_text(report.to_json(), encoding="utf-8")
        else:
            Path(args.out).write_text(report.to_csv_row(), encoding="utf-8")
            if report.qq_pairs is not None:
                write_qq_csv(report.qq_pairs, Path(args.out).with_suffix(".qq.csv"))
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    materials = [m.strip() for m in args.materials.split(",") if m.strip()]
    ratios = [parse_ratio(r) for r in args.ratios.split(",") if r.strip()]
    if not materials or not ratios:
        raise ConfigError("sweep needs non-empty material and ratio lists")
    for name in materials:
        if name not in MATERIALS:
            known = ", ".join(sorted(MATERIALS))
            raise ConfigError(f"unknown material {name!r}; known: {known}")

    header = (
        ["material", "tw_hch_ratio", "assumed_h_ch_mm"]
        + list(SIMULATE_COLUMNS)
        + ["max_f_spa_n", "mean_max_f_spa_n"]
    )
    rows: list[list[str]] = []
    json_cells = []
    for name in materials:
        material = MATERIALS[name]
        sweep = config.sweep_for_material(name)
        cell_states: list[tuple[float, list[ActuationState]]] = []
        for ratio in ratios:
            spa = config.spa_for_ratio(ratio)
            try:
                spec = MyofibrilSpec(
                    n=config.n, sarcomere=config.sarcomere, spa=spa, material=material
                )
            except DomainError as err:
                raise ConfigError(f"invalid design: {err}") from err
            cell_states.append((ratio, simulate_sweep(spec, sweep)))
        maxima = {ratio: max(s.f_spa for s in states) for ratio, states in cell_states}
        mean_max = math.fsum(maxima.values()) / len(maxima)
        for ratio, states in cell_states:
            for state in states:
                rows.append(
                    [name, _fmt(ratio), _fmt(config.assumed_h_ch)]
                    + _state_fields(state)
                    + [_fmt(maxima[ratio]), _fmt(mean_max)]
                )
            json_cells.append(
                {
                    "material": name,
                    "tw_hch_ratio": ratio,
                    "assumed_h_ch_mm": config.assumed_h_ch,
                    "max_f_spa_n": maxima[ratio],
                    "mean_max_f_spa_n": mean_max,
                    "states": [_state_json(s) for s in states],
                }
            )

    out_path = args.out or config.out_path
    fmt = args.format or config.out_format
    if fmt == "json":
        _emit(json.dumps({"cells": json_cells}, indent=2, sort_keys=True) + "\n", out_path)
    else:
        lines = [",".join(header)]
        lines.extend(",".join(row) for row in rows)
        _emit("\n".join(lines) + "\n", out_path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="apmsim",
        description="Design and simulate pneumatic myofibrils built from "
        "sarcomere-like contraction units.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_design = sub.add_parser("design", help="derive sarcomere geometry from the A-band")
    p_design.add_argument("--a-band", type=float, required=True, help="A-band length, mm")
    p_design.add_argument("--t-w", type=float, required=True, help="wall thickness, mm")
    p_design.add_argument("--h-ch", type=float, required=True, help="channel height, mm")
    p_design.set_defaults(func=cmd_design)

    p_sim = sub.add_parser("simulate", help="run a pressure sweep for one design")
    p_sim.add_argument("--config", required=True, help="run configuration file")
    p_sim.add_argument("--out", help="output file (default: [output] path or stdout)")
    p_sim.add_argument("--format", choices=("csv", "json"), help="output format")
    p_sim.set_defaults(func=cmd_simulate)

    p_val = sub.add_parser("validate", help="compare a model curve against a reference curve")
    p_val.add_argument("model_csv", help="model curve CSV (header x,y)")
    p_val.add_argument("reference_csv", help="reference curve CSV (header x,y)")
    p_val.add_argument("--qq", type=int, help="also compute K paired quantiles")
    p_val.add_argument(
        "--resample",
        action="store_true",
        help="resample the model onto the reference x grid for R^2",
    )
    p_val.add_argument("--out", help="write the agreement report here")
    p_val.add_argument("--format", choices=("csv", "json"), help="report format (default json)")
    p_val.set_defaults(func=cmd_validate)

    p_sweep = sub.add_parser("sweep", help="design-space sweep over materials and wall ratios")
    p_sweep.add_argument("--config", required=True, help="run configuration file")
    p_sweep.add_argument("--materials", required=True, help="comma-separated material names")
    p_sweep.add_argument("--ratios", required=True, help="comma-separated t_w/h_ch ratios (e.g. 1/5,1/4)")
    p_sweep.add_argument("--out", help="output file (default: [output] path or stdout)")
    p_sweep.add_argument("--format", choices=("csv", "json"), help="output format")
    p_sweep.set_defaults(func=cmd_sweep)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except DomainError as err:
        if args.command == "validate" or args.command == "design":
            print(f"error: {err}", file=sys.stderr)
            return 2
        print(f"model error: {err}", file=sys.stderr)
        return 3
    except KeyError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
