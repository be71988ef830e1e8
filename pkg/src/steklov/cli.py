"""Command-line driver.

Subcommands mirror the library surface: `construct` builds and certifies one
measure, `sweep` runs the growth sweep, `bounds` tables the upper bound
against the saturating family, `search` runs the direct ascent, `entropy`
the scaling study, and `appendix` the approximant/phase verification suites.

Every command writes CSV and JSON into --out; unless --no-plot is given a
figure lands next to them.  Exit codes: 0 on success, 2 on configuration
errors, 3 when a verification gate fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import report as rpt
from .approximants import BoundReport, verify_appendix_A, build_B, shifted_fejer
from .construction import (
    ConstructionError,
    ConstructionParams,
    VerificationError,
    build_construction,
    concatenated_measure_check,
    reconstruct_sigma,
    verify_lemma_conditions,
    GROWTH_BAND,
)
from .entropy import entropy_scaling_report
from .extremal import search_extremal, small_delta_measure, upper_bound
from .measures import steklov_margin
from .poly import circle_grid, eval_on_circle, polyval
from .specfact import fejer_riesz, verify_phase_bound

CONFIG_KEYS = {
    "n",
    "delta",
    "alpha",
    "rho",
    "delta1",
    "grid",
    "seed",
    "mass",
    "atoms",
    "iterations",
    "beta",
    "tail",
    "degrees",
}


class ConfigError(ValueError):
    pass


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in str(text).split(",") if part != ""]
    except ValueError as exc:
        raise ConfigError(f"bad integer list: {text!r}") from exc


def _as_float(value, name: str) -> float:
    try:
        return float(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{name} must be a number, got {value!r}") from exc


def _parse_float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in str(text).split(",") if part != ""]
    except ValueError as exc:
        raise ConfigError(f"bad float list: {text!r}") from exc


def _load_config(args: argparse.Namespace) -> dict:
    merged: dict = {}
    if args.config:
        try:
            with open(args.config) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(doc, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(doc) - CONFIG_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        merged.update(doc)
    for key in CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    return merged


def _params_from(config: dict, n: int) -> ConstructionParams:
    kwargs = {}
    if config.get("alpha") is not None:
        kwargs["alpha"] = float(config["alpha"])
    if config.get("rho") is not None:
        kwargs["rho"] = float(config["rho"])
    if config.get("delta1") is not None:
        kwargs["delta1"] = float(config["delta1"])
    if config.get("grid") is not None:
        kwargs["grid_size"] = int(config["grid"])
    try:
        return ConstructionParams(n=n, **kwargs)
    except ConstructionError as exc:
        raise ConfigError(str(exc)) from exc


def _resolved(config: dict, command: str) -> dict:
    doc = {"command": command}
    doc.update({k: config[k] for k in sorted(config)})
    return doc


def _cmd_construct(args) -> int:
    config = _load_config(args)
    if config.get("n") is None:
        raise ConfigError("construct requires --n")
    n = int(config["n"])
    params = _params_from(config, n)
    delta_raw = config.get("delta", "auto")
    target = None if delta_raw in (None, "auto") else _as_float(delta_raw, "delta")
    out_dir = _ensure_out(args)

    construction = build_construction(params)
    cond = verify_lemma_conditions(construction, target)
    sigma = reconstruct_sigma(construction)
    value = float(np.abs(polyval(construction.phi_star, 1.0)))
    floor = cond.certified_delta if target is None else target
    doc = {
        "config": _resolved(config, "construct"),
        "m": construction.m,
        "delta1_used": construction.delta1_used,
        "c_n": construction.c_n,
        "c_tilde": construction.herglotz.c_tilde,
        "c_tilde_closed_form": 1.0
        / (params.rho / (1 + params.eps) + (1 + params.eps) ** (-params.alpha)),
        "value_at_one": value,
        "value_per_sqrt_n": value / np.sqrt(n),
        "upper_bound_at_certified": upper_bound(n, cond.certified_delta),
        "conditions": cond.as_dict(),
        "sigma_total_mass": sigma.total_mass(),
        "steklov_margin": steklov_margin(sigma, floor),
    }
    if args.tail:
        doc["tail_deviation"] = {
            str(t): concatenated_measure_check(construction, t) for t in _parse_int_list(args.tail)
        }
    rpt.write_json(out_dir / "construction.json", doc)
    rpt.write_csv(out_dir / "sigma_density.csv", ["theta", "density"], sigma.density_rows())
    with open(out_dir / "sigma_measure.json", "w") as fh:
        fh.write(sigma.to_json())
        fh.write("\n")
    if not args.no_plot:
        rpt.figure_construction(out_dir / "construction.png", construction, sigma, cond.certified_delta)
    if not cond.all_pass:
        print(f"verification failed: {cond.as_dict()}", file=sys.stderr)
        return 3
    print(f"n = {n}: value {value:.6g}, certified delta {cond.certified_delta:.6g}")
    return 0


def _cmd_sweep(args) -> int:
    config = _load_config(args)
    if config.get("n") is None:
        raise ConfigError("sweep requires --n as a comma list")
    ns = _parse_int_list(config["n"]) if not isinstance(config["n"], list) else [int(v) for v in config["n"]]
    out_dir = _ensure_out(args)
    rows = []
    failed = False
    values = []
    for n in ns:
        params = _params_from(config, n)
        construction = build_construction(params)
        cond = verify_lemma_conditions(construction)
        value = float(np.abs(polyval(construction.phi_star, 1.0)))
        values.append(value)
        rows.append(
            (n, value, value / np.sqrt(n), construction.c_n, cond.certified_delta, cond.all_pass)
        )
        failed = failed or not cond.all_pass
    rpt.write_csv(
        out_dir / "sweep.csv",
        ["n", "value", "value_per_sqrt_n", "c_n", "certified_delta", "all_pass"],
        rows,
    )
    rpt.write_json(out_dir / "sweep.json", {"config": _resolved(config, "sweep"), "rows": rows})
    if not args.no_plot:
        rpt.figure_sweep(out_dir / "sweep.png", ns, values, GROWTH_BAND)
    if failed:
        print("verification failed for at least one n", file=sys.stderr)
        return 3
    print(f"sweep over {ns}: ratios {[f'{v / np.sqrt(n):.4f}' for n, v in zip(ns, values)]}")
    return 0


def _cmd_bounds(args) -> int:
    config = _load_config(args)
    if config.get("n") is None or config.get("delta") is None:
        raise ConfigError("bounds requires --n and --delta")
    n = int(config["n"])
    delta = _as_float(config["delta"], "delta")
    masses = _parse_float_list(str(config.get("mass", "1,10,100,1000,1e6")))
    out_dir = _ensure_out(args)
    bound = upper_bound(n, delta)
    rows = []
    values = []
    for mass in masses:
        _, _, value = small_delta_measure(n, delta, mass)
        rows.append((n, delta, mass, bound, value, value / bound))
        values.append(value)
    rpt.write_csv(
        out_dir / "bounds.csv",
        ["n", "delta", "mass", "upper_bound", "family_value", "ratio"],
        rows,
    )
    rpt.write_json(out_dir / "bounds.json", {"config": _resolved(config, "bounds"), "rows": rows})
    if not args.no_plot:
        rpt.figure_bounds(out_dir / "bounds.png", masses, values, bound)
    print(f"n = {n}, delta = {delta}: bound {bound:.6g}, best family value {max(values):.6g}")
    return 0


def _cmd_search(args) -> int:
    config = _load_config(args)
    if config.get("n") is None or config.get("delta") is None:
        raise ConfigError("search requires --n and --delta")
    n = int(config["n"])
    delta = _as_float(config["delta"], "delta")
    atoms = int(config.get("atoms", n))
    iterations = int(config.get("iterations", 60))
    seed = int(config.get("seed", 0))
    out_dir = _ensure_out(args)
    result = search_extremal(n, delta, atoms, iterations=iterations, seed=seed)
    rpt.write_csv(
        out_dir / "search.csv",
        ["sweep", "value"],
        [(i, v) for i, v in enumerate(result.trace)],
    )
    rpt.write_json(
        out_dir / "search.json",
        {
            "config": _resolved(config, "search"),
            "value": result.value,
            "bound": result.bound,
            "ratio": result.ratio,
            "atoms": [[t, m] for t, m in result.measure.atoms],
        },
    )
    with open(out_dir / "search_measure.json", "w") as fh:
        fh.write(result.measure.to_json())
        fh.write("\n")
    if not args.no_plot:
        rpt.figure_search(out_dir / "search.png", result)
    print(f"n = {n}, delta = {delta}: reached {result.value:.6g} of bound {result.bound:.6g} "
          f"(ratio {result.ratio:.4f})")
    return 0


def _cmd_entropy(args) -> int:
    config = _load_config(args)
    if config.get("n") is None:
        raise ConfigError("entropy requires --n as a comma list")
    ns = _parse_int_list(config["n"]) if not isinstance(config["n"], list) else [int(v) for v in config["n"]]
    out_dir = _ensure_out(args)
    if config.get("rho") is None:
        config["rho"] = 1.0  # slope of the log fit scales with the pole weight
    template = _params_from(config, max(ns))
    result = entropy_scaling_report(ns, params=template)
    envelope = float(np.max(np.log(result.sup_norms) - 0.5 * np.log(result.ns)))
    rpt.write_csv(
        out_dir / "entropy.csv",
        ["n", "entropy", "log_n", "sup_norm"],
        list(result.rows()),
    )
    rpt.write_json(
        out_dir / "entropy.json",
        {
            "config": _resolved(config, "entropy"),
            "slope": result.slope,
            "intercept": result.intercept,
            "residual": result.residual,
            "envelope_constant": envelope,
        },
    )
    if not args.no_plot:
        rpt.figure_entropy(out_dir / "entropy.png", result)
    print(f"entropy slope {result.slope:.4f} per log n over {[int(v) for v in result.ns]}")
    return 0


def _cmd_appendix(args) -> int:
    config = _load_config(args)
    ns = _parse_int_list(str(config.get("n", "64,128,256,512")))
    betas = _parse_float_list(str(config.get("beta", "0.3,0.375,0.5,0.75")))
    out_dir = _ensure_out(args)
    full = BoundReport()
    for n in ns:
        for beta in betas:
            full.extend(verify_appendix_A("A", n, beta))
            full.extend(verify_appendix_A("B", n, beta))
    for beta in betas:
        full.extend(verify_appendix_A("trifle", 0, beta))
    full.write_csv(out_dir / "appendix_bounds.csv")

    ms = _parse_int_list(str(config.get("degrees", "32,64,128,256")))
    alpha = float(config.get("alpha") or 0.75)
    phase_rows = []
    for m in ms:
        b = build_B(m, alpha / 2.0)
        grid = 1 << (max(2048, 64 * m) - 1).bit_length()
        w = shifted_fejer(m, circle_grid(grid)) + np.abs(eval_on_circle(b.coeffs, grid)) ** 2
        q = fejer_riesz(w, m, grid_size=grid)
        phase_rows.append((m, verify_phase_bound(q, m)))
    rpt.write_csv(out_dir / "phase_bound.csv", ["m", "max_phase_ratio"], phase_rows)
    rpt.write_json(
        out_dir / "appendix.json",
        {
            "config": _resolved(config, "appendix"),
            "bound_rows": [[r.lemma, r.n, r.beta, r.ratio_min, r.ratio_max] for r in full.rows],
            "phase_rows": phase_rows,
        },
    )
    if not args.no_plot:
        rpt.figure_appendix(out_dir / "appendix.png", full)
        rpt.figure_phase(out_dir / "phase_bound.png", [m for m, _ in phase_rows], [r for _, r in phase_rows])
    print(f"appendix suites over n in {ns}, beta in {betas}: {len(full.rows)} envelope rows")
    return 0


def _ensure_out(args) -> Path:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    return out_dir


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="steklov", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="JSON file of options; explicit flags win")
        p.add_argument("--out", default="steklov-out", help="output directory")
        p.add_argument("--no-plot", action="store_true", help="skip figure rendering")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--grid", type=int, default=None)

    p = sub.add_parser("construct", help="build and certify one measure")
    common(p)
    p.add_argument("--n", default=None)
    p.add_argument("--delta", default=None, help="target floor or 'auto'")
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--rho", type=float, default=None)
    p.add_argument("--delta1", type=float, default=None)
    p.add_argument("--tail", default=None, help="comma list of splice tails to check")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("sweep", help="growth sweep over degrees")
    common(p)
    p.add_argument("--n", default=None, help="comma list of degrees")
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--rho", type=float, default=None)
    p.add_argument("--delta1", type=float, default=None)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("bounds", help="upper bound vs the saturating family")
    common(p)
    p.add_argument("--n", default=None)
    p.add_argument("--delta", default=None)
    p.add_argument("--mass", default=None, help="comma list of atom masses")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("search", help="coordinate ascent over the class")
    common(p)
    p.add_argument("--n", default=None)
    p.add_argument("--delta", default=None)
    p.add_argument("--atoms", type=int, default=None)
    p.add_argument("--iterations", type=int, default=None)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("entropy", help="entropy scaling across degrees")
    common(p)
    p.add_argument("--n", default=None, help="comma list of degrees")
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--rho", type=float, default=None, help="field pole weight (default 1.0 here)")
    p.add_argument("--delta1", type=float, default=None)
    p.set_defaults(func=_cmd_entropy)

    p = sub.add_parser("appendix", help="approximant envelopes and phase bound")
    common(p)
    p.add_argument("--n", default=None, help="comma list of degrees")
    p.add_argument("--beta", default=None, help="comma list of exponents")
    p.add_argument("--degrees", default=None, help="comma list of outer-factor degrees")
    p.add_argument("--alpha", type=float, default=None)
    p.set_defaults(func=_cmd_appendix)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (ConstructionError, VerificationError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
