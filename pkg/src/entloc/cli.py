"""Command-line driver.

Subcommands cover every tabulated result: spin-model scans, oscillator
constants and limits, restricted-entanglement maps, classical probability
maps, surface fits, the partition inequality and the grid/basis
convergence study. Scans are emitted as plot-ready CSV
(axis_a,axis_b,value,prob,flag at 12 significant digits) or as JSON with a
metadata block echoing the run configuration; scalar results are JSON.

Exit codes: 0 success, 1 usage/configuration error, 2 numerical failure
(structured JSON description on stderr).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict

import numpy as np

from . import __version__
from .correlate import FitParams, fit_surface, probability_map, sigma_vs_alpha_scan
from .distribution import Distribution2D
from .errors import EntlocError
from .oscillator import (
    OscillatorModel,
    concurrence_density,
    ground_state_constants,
    small_a_entanglement_both,
    small_a_entanglement_one,
    small_a_epsilon_both,
    small_a_epsilon_one,
)
from .restrict import (
    DiscretizationSpec,
    Partition,
    Region,
    both_restricted_entropy,
    both_restricted_profile,
    entanglement_map,
    method_equivalence,
    non_discarding_two_path,
    one_restricted_entropy,
    partition_inequality_check,
)
from .spin import negativity_vanish_point, negativity_vs_purity, spin_scan

SUBCOMMANDS = (
    "spin-scan",
    "spin-negativity-scan",
    "spin-vanish-point",
    "gauss-constants",
    "gauss-one-restricted",
    "gauss-both-restricted",
    "gauss-limits",
    "gauss-classical-map",
    "gauss-fit",
    "gauss-sigma-scan",
    "gauss-inequality",
    "gauss-converge",
)


class UsageError(Exception):
    """Bad flags, bad config file, or unknown subcommand (exit code 1)."""


class UnknownSubcommand(UsageError):
    pass


class ConfigParse(UsageError):
    pass


class NumericalFailure(EntlocError):
    """Unexpected numeric breakdown outside the library's own errors."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); we map to 1
        raise UsageError(message)


def _fmt(value) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return "nan"
    if value == 0:
        value = 0.0  # normalize -0.0
    return f"{value:.12g}"


def _flag_token(masked: bool, empty: bool) -> str:
    if masked:
        return "masked"
    if empty:
        return "empty"
    return "ok"


def _json_safe(obj):
    if isinstance(obj, float):
        return None if math.isnan(obj) else obj
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _json_safe(obj.tolist())
    if isinstance(obj, (np.floating, np.integer)):
        return _json_safe(float(obj))
    return obj


def _write_text(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)


def distribution_rows(dist: Distribution2D, layer: str | None = None):
    """Row-major (axis_a, axis_b, value, prob, flag) records of a surface."""
    values = dist.extra[layer] if layer else dist.values
    prob = dist.extra.get("prob")
    empty = dist.extra.get("flag")
    rows = []
    for i, a in enumerate(dist.axis_a):
        for j, b in enumerate(dist.axis_b):
            masked = bool(dist.mask[i, j])
            value = math.nan if masked else float(values[i, j])
            p = math.nan if prob is None else float(prob[i, j])
            is_empty = bool(empty is not None and empty[i, j] > 0.5)
            rows.append((float(a), float(b), value, p,
                         _flag_token(masked, is_empty)))
    return rows


def emit_distribution(dist: Distribution2D, path: str | None, fmt: str,
                      metadata: dict | None = None,
                      layer: str | None = None) -> None:
    """Write a surface as CSV (pure data) or JSON (data plus metadata)."""
    rows = distribution_rows(dist, layer)
    name_a, name_b = dist.axis_names
    if fmt == "csv":
        lines = [f"{name_a},{name_b},value,prob,flag"]
        lines += [f"{_fmt(a)},{_fmt(b)},{_fmt(v)},{_fmt(p)},{flag}"
                  for a, b, v, p, flag in rows]
        _write_text(path, "\n".join(lines) + "\n")
        return
    payload = {
        "axes": {name_a: dist.axis_a.tolist(), name_b: dist.axis_b.tolist()},
        "kind": dist.kind,
        "values": [v for _, _, v, _, _ in rows],
        "prob": [p for _, _, _, p, _ in rows],
        "flag": [flag for *_, flag in rows],
        "metadata": metadata or {},
    }
    _write_text(path, json.dumps(_json_safe(payload), indent=2) + "\n")


def parse_distribution(path: str) -> Distribution2D:
    """Re-ingest a CSV surface produced by emit_distribution."""
    with open(path, "r", encoding="utf-8") as handle:
        lines = [line.strip() for line in handle if line.strip()]
    if not lines:
        raise ConfigParse(f"{path} is empty")
    header = lines[0].split(",")
    if len(header) < 3:
        raise ConfigParse(f"{path} does not look like a surface CSV")
    axis_a_vals, axis_b_vals, records = [], [], []
    for line in lines[1:]:
        parts = line.split(",")
        a, b, v = float(parts[0]), float(parts[1]), float(parts[2])
        flag = parts[4] if len(parts) > 4 else "ok"
        if a not in axis_a_vals:
            axis_a_vals.append(a)
        if b not in axis_b_vals:
            axis_b_vals.append(b)
        records.append((a, b, v, flag))
    axis_a = np.array(axis_a_vals)
    axis_b = np.array(axis_b_vals)
    values = np.full((axis_a.size, axis_b.size), np.nan)
    mask = np.zeros_like(values, dtype=bool)
    index_a = {a: i for i, a in enumerate(axis_a_vals)}
    index_b = {b: j for j, b in enumerate(axis_b_vals)}
    for a, b, v, flag in records:
        i, j = index_a[a], index_b[b]
        values[i, j] = v
        mask[i, j] = flag == "masked"
    return Distribution2D(axis_a=axis_a, axis_b=axis_b, values=values,
                          mask=mask, axis_names=(header[0], header[1]))


def _emit_json(payload: dict, path: str | None, config: dict) -> None:
    payload = dict(payload)
    payload["metadata"] = {"config": _json_safe(config), "version": __version__}
    _write_text(path, json.dumps(_json_safe(payload), indent=2) + "\n")


def _metadata(config: dict) -> dict:
    return {"config": _json_safe(config), "version": __version__}


def _float_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in str(text).split(",") if tok != ""]
    except ValueError as exc:
        raise UsageError(f"bad numeric list {text!r}") from exc


def _linspace(lo: float, hi: float, steps: int) -> np.ndarray:
    if steps < 2:
        raise UsageError("ranges need at least 2 steps")
    return np.linspace(lo, hi, int(steps))


def _spec(ns) -> DiscretizationSpec | None:
    n_bins = getattr(ns, "n_bins", None)
    if n_bins is None:
        return None
    return DiscretizationSpec(n_bins=int(n_bins))


def _require(ns, *names) -> None:
    """Presence check deferred to after the config-file merge."""
    missing = [name for name in names if getattr(ns, name, None) is None]
    if missing:
        flags = ", ".join("--" + name.replace("_", "-") for name in missing)
        raise UsageError(f"missing required flag(s): {flags}")


def _workers(ns) -> int:
    if getattr(ns, "workers", None) is not None:
        return max(1, int(ns.workers))
    env = os.environ.get("ENTLOC_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise ConfigParse(f"bad ENTLOC_THREADS value {env!r}") from exc
    return 1


# -- subcommand implementations ------------------------------------------------

def _cmd_spin_scan(ns, config):
    if getattr(ns, "f_range", None) is not None:
        lo, hi, steps = ns.f_range
        dist = negativity_vs_purity(ns.theta1, ns.theta2,
                                    _linspace(lo, hi, int(steps)),
                                    restricted=bool(ns.restricted))
        emit_distribution(dist, ns.output, ns.format, _metadata(config))
        return
    thetas = _linspace(ns.theta_min, ns.theta_max, ns.steps)
    restricted = bool(ns.restricted) or ns.surface == "delta"
    dist = spin_scan(thetas, thetas, measure=ns.measure,
                     restricted=restricted, F=ns.f_value)
    layer = "delta" if ns.surface == "delta" else None
    emit_distribution(dist, ns.output, ns.format, _metadata(config), layer)


def _cmd_spin_vanish_point(ns, config):
    _require(ns, "theta1", "theta2")
    f_star = negativity_vanish_point(ns.theta1, ns.theta2,
                                     restricted=bool(ns.restricted))
    _emit_json({"F_star": f_star}, ns.output, config)


def _cmd_gauss_constants(ns, config):
    _require(ns, "alpha")
    model = OscillatorModel(alpha=ns.alpha, m=ns.m, omega=ns.omega)
    gs = ground_state_constants(model)
    _emit_json({
        "alpha": model.alpha,
        "C1": gs.c1,
        "C2": gs.c2,
        "sigma": gs.sigma,
        "w": gs.w,
        "eof": gs.eof,
        "L": gs.l_matrix.tolist(),
    }, ns.output, config)


def _cmd_gauss_limits(ns, config):
    _require(ns, "alpha", "a")
    model = OscillatorModel(alpha=ns.alpha, m=ns.m, omega=ns.omega)
    a = ns.a
    b = ns.b if ns.b is not None else ns.a
    _emit_json({
        "epsilon_one": small_a_epsilon_one(model, a),
        "epsilon_both": small_a_epsilon_both(model, a, b),
        "concurrence_density": concurrence_density(model),
        "entanglement_one": small_a_entanglement_one(model, a),
        "entanglement_both": small_a_entanglement_both(model, a, b),
    }, ns.output, config)


def _cmd_gauss_one_restricted(ns, config):
    _require(ns, "alpha")
    model = OscillatorModel(alpha=ns.alpha, m=ns.m, omega=ns.omega)
    if ns.centers is None:
        if ns.qbar is None or ns.width is None:
            raise UsageError("need --qbar and --width, or --centers for a map")
        if ns.method == "basis":
            spec = DiscretizationSpec(method="basis", n_basis=ns.n_basis,
                                      quadrature_order=ns.quadrature_order)
        else:
            spec = _spec(ns)
        result = one_restricted_entropy(model, Region(ns.qbar, ns.width / 2.0),
                                        spec)
        _emit_json({
            "entanglement": result.entanglement,
            "prob": result.survival_probability,
            "spectrum_size": result.spectrum.size,
            "method": result.spec.method,
            "n_bins": result.spec.n_bins,
            "n_basis": result.spec.n_basis,
        }, ns.output, config)
        return
    lo, hi, steps = ns.centers
    centers = _linspace(lo, hi, int(steps))
    widths = _float_list(ns.widths) if ns.widths else [ns.width]
    if widths == [None]:
        raise UsageError("map mode needs --widths or --width")
    dist = entanglement_map(model, centers, widths=np.asarray(widths),
                            spec=_spec(ns), workers=_workers(ns))
    layer = "rescaled" if ns.surface == "rescaled" else None
    emit_distribution(dist, ns.output, ns.format, _metadata(config), layer)


def _cmd_gauss_both_restricted(ns, config):
    _require(ns, "alpha", "width")
    model = OscillatorModel(alpha=ns.alpha, m=ns.m, omega=ns.omega)
    half = ns.width / 2.0
    half_b = (ns.width_b / 2.0) if ns.width_b is not None else None
    if ns.mode == "point":
        if ns.qbar_a is None or ns.qbar_b is None:
            raise UsageError("point mode needs --qbar-a and --qbar-b")
        result = both_restricted_entropy(
            model, Region(ns.qbar_a, half),
            Region(ns.qbar_b, half_b if half_b is not None else half),
            _spec(ns))
        _emit_json({
            "entanglement": result.entanglement,
            "prob": result.survival_probability,
            "spectrum_size": result.spectrum.size,
            "n_bins": result.spec.n_bins,
        }, ns.output, config)
        return
    if ns.centers is None:
        raise UsageError(f"{ns.mode} mode needs --centers lo hi steps")
    lo, hi, steps = ns.centers
    centers = _linspace(lo, hi, int(steps))
    if ns.mode == "grid":
        dist = entanglement_map(model, centers, centers_b=centers,
                                half_width=half, half_width_b=half_b,
                                spec=_spec(ns), workers=_workers(ns))
        emit_distribution(dist, ns.output, ns.format, _metadata(config))
        return
    bob_center = None if ns.mode == "profile-equal" else ns.bob_center
    cs, values, probs, flags = both_restricted_profile(
        model, centers, half, bob_center=bob_center, spec=_spec(ns),
        workers=_workers(ns))
    rows = [(c, c if bob_center is None else bob_center, v, p,
             _flag_token(False, f > 0.5))
            for c, v, p, f in zip(cs, values, probs, flags)]
    if ns.format == "csv":
        lines = ["q_bar_A,q_bar_B,value,prob,flag"]
        lines += [f"{_fmt(a)},{_fmt(b)},{_fmt(v)},{_fmt(p)},{flag}"
                  for a, b, v, p, flag in rows]
        _write_text(ns.output, "\n".join(lines) + "\n")
    else:
        _emit_json({"rows": rows}, ns.output, config)


def _cmd_gauss_classical_map(ns, config):
    _require(ns, "alpha", "centers", "width")
    model = OscillatorModel(alpha=ns.alpha, m=ns.m, omega=ns.omega)
    lo, hi, steps = ns.centers
    centers = _linspace(lo, hi, int(steps))
    kind = ("joint_probability" if ns.kind == "joint"
            else "conditional_probability")
    dist = probability_map(model, centers, centers, ns.width / 2.0,
                           (ns.width_b / 2.0) if ns.width_b else None,
                           kind=kind, workers=_workers(ns))
    emit_distribution(dist, ns.output, ns.format, _metadata(config))


def _fit_payload(fit: FitParams) -> dict:
    return {key: value for key, value in asdict(fit).items() if value is not None}


def _cmd_gauss_fit(ns, config):
    _require(ns, "input")
    dist = parse_distribution(ns.input)
    form = "symmetric_pm" if ns.form == "symmetric" else "conditional"
    fit = fit_surface(dist, form, threshold=ns.threshold, window=ns.window)
    payload = {"fit": _fit_payload(fit)}
    if ns.jitter:
        rng = np.random.default_rng(ns.seed)
        noisy = Distribution2D(
            axis_a=dist.axis_a, axis_b=dist.axis_b,
            values=dist.values * (1.0 + ns.jitter * rng.standard_normal(dist.shape)),
            kind=dist.kind, mask=dist.mask, axis_names=dist.axis_names)
        payload["jitter_fit"] = _fit_payload(
            fit_surface(noisy, form, threshold=ns.threshold, window=ns.window))
        payload["jitter"] = ns.jitter
    if ns.window is not None:
        payload["fit_window"] = ns.window
    _emit_json(payload, ns.output, config)


def _cmd_gauss_sigma_scan(ns, config):
    _require(ns, "alphas")
    alphas = _float_list(ns.alphas)
    which = {"classical": "classical", "quantum": "quantum",
             "small-a-analytic": "small_a_analytic"}[ns.which]
    rows = sigma_vs_alpha_scan(alphas, which=which, half_width=ns.width / 2.0,
                               extent=ns.extent, steps=ns.steps,
                               workers=_workers(ns))
    header = "alpha,sigma_plus,sigma_minus,sigma_1,sigma_2,sigma_12"
    if ns.format == "csv":
        lines = [header]
        for row in rows:
            lines.append(",".join(_fmt(v) for v in (
                row.alpha, row.sigma_plus, row.sigma_minus,
                row.sigma_1, row.sigma_2, row.sigma_12)))
        _write_text(ns.output, "\n".join(lines) + "\n")
    else:
        _emit_json({"rows": [asdict(row) for row in rows]}, ns.output, config)


def _cmd_gauss_inequality(ns, config):
    _require(ns, "alpha")
    model = OscillatorModel(alpha=ns.alpha, m=ns.m, omega=ns.omega)
    partition_a = Partition.uniform(-ns.extent, ns.extent, int(ns.grid_a),
                                    ns.tail_handling)
    partition_b = Partition.uniform(-ns.extent, ns.extent, int(ns.grid_b),
                                    ns.tail_handling)
    report = partition_inequality_check(model, partition_a, partition_b,
                                        _spec(ns))
    payload = {
        "weighted_sum": report.weighted_sum,
        "full_entanglement": report.full_entanglement,
        "slack": report.slack,
        "cells": [{
            "a_lo": cell.region_a.lo, "a_hi": cell.region_a.hi,
            "b_lo": cell.region_b.lo, "b_hi": cell.region_b.hi,
            "probability": cell.probability,
            "entanglement": cell.entanglement,
        } for cell in report.cells],
    }
    if ns.nd_center is not None and ns.nd_half_width is not None:
        identity, mixture, gap = non_discarding_two_path(
            model, Region(ns.nd_center, ns.nd_half_width), _spec(ns))
        payload["non_discarding"] = {
            "entanglement": identity.entanglement,
            "prob": identity.survival_probability,
            "inside": identity.entanglement_inside,
            "outside": identity.entanglement_outside,
            "locally_accessible": identity.locally_accessible,
            "mixture_value": mixture,
            "two_path_gap": gap,
        }
    _emit_json(payload, ns.output, config)


def _cmd_gauss_converge(ns, config):
    _require(ns, "alpha")
    model = OscillatorModel(alpha=ns.alpha, m=ns.m, omega=ns.omega)
    widths = _float_list(ns.widths)
    entries = []
    for width in widths:
        eq = method_equivalence(model, Region(ns.qbar, width / 2.0),
                                n_bins=int(ns.n_bins), n_basis=int(ns.n_basis))
        entries.append({"width": width, **asdict(eq)})
    if ns.format == "csv":
        keys = ["width", "grid_coarse", "grid_fine", "basis_coarse",
                "basis_fine", "grid_limit", "basis_limit", "gap"]
        lines = [",".join(keys)]
        lines += [",".join(_fmt(entry[k]) for k in keys) for entry in entries]
        _write_text(ns.output, "\n".join(lines) + "\n")
    else:
        _emit_json({"rows": entries}, ns.output, config)


# -- argument plumbing -----------------------------------------------------------

def _add_common(parser: _Parser) -> None:
    parser.add_argument("--config", help="flat JSON file of flag defaults")
    parser.add_argument("--output", "-o", help="output path (default stdout)")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument("--seed", type=int, default=0)


def _add_model(parser: _Parser) -> None:
    parser.add_argument("--alpha", type=float, required=False)
    parser.add_argument("--m", type=float, default=1.0)
    parser.add_argument("--omega", type=float, default=1.0)


def _build_parser(subcommand: str) -> _Parser:
    parser = _Parser(prog=f"entloc {subcommand}", add_help=True)
    _add_common(parser)
    if subcommand in ("spin-scan", "spin-negativity-scan"):
        parser.add_argument("--steps", type=int, default=64)
        parser.add_argument("--theta-min", type=float, default=0.0)
        parser.add_argument("--theta-max", type=float, default=2.0 * math.pi)
        parser.add_argument("--restricted", action="store_true", default=None)
        parser.add_argument("--surface", choices=("value", "delta"),
                            default="value")
        parser.add_argument("--f-value", type=float, default=1.0)
        if subcommand == "spin-negativity-scan":
            parser.add_argument("--f-range", type=float, nargs=3, default=None,
                                metavar=("LO", "HI", "STEPS"),
                                help="sweep F at fixed angles instead")
            parser.add_argument("--theta1", type=float,
                                default=0.25 * math.pi)
            parser.add_argument("--theta2", type=float,
                                default=0.25 * math.pi)
        parser.set_defaults(
            measure="entropy" if subcommand == "spin-scan" else "negativity")
    elif subcommand == "spin-vanish-point":
        parser.add_argument("--theta1", type=float, default=None)
        parser.add_argument("--theta2", type=float, default=None)
        parser.add_argument("--restricted", action="store_true", default=None)
    elif subcommand == "gauss-constants":
        _add_model(parser)
    elif subcommand == "gauss-limits":
        _add_model(parser)
        parser.add_argument("--a", type=float, default=None)
        parser.add_argument("--b", type=float, default=None)
    elif subcommand == "gauss-one-restricted":
        _add_model(parser)
        parser.add_argument("--qbar", type=float, default=None)
        parser.add_argument("--width", type=float, default=None)
        parser.add_argument("--centers", type=float, nargs=3, default=None,
                            metavar=("LO", "HI", "STEPS"))
        parser.add_argument("--widths", type=str, default=None,
                            help="comma-separated widths for a map")
        parser.add_argument("--surface", choices=("value", "rescaled"),
                            default="value")
        parser.add_argument("--n-bins", type=int, default=None)
        parser.add_argument("--method", choices=("grid", "basis"),
                            default="grid")
        parser.add_argument("--n-basis", type=int, default=None)
        parser.add_argument("--quadrature-order", type=int, default=16)
    elif subcommand == "gauss-both-restricted":
        _add_model(parser)
        parser.add_argument("--mode", choices=("point", "grid",
                                               "profile-equal",
                                               "profile-fixed"),
                            default="point")
        parser.add_argument("--qbar-a", type=float, default=None)
        parser.add_argument("--qbar-b", type=float, default=None)
        parser.add_argument("--bob-center", type=float, default=0.0)
        parser.add_argument("--centers", type=float, nargs=3, default=None,
                            metavar=("LO", "HI", "STEPS"))
        parser.add_argument("--width", type=float, default=None)
        parser.add_argument("--width-b", type=float, default=None)
        parser.add_argument("--n-bins", type=int, default=None)
    elif subcommand == "gauss-classical-map":
        _add_model(parser)
        parser.add_argument("--centers", type=float, nargs=3, default=None,
                            metavar=("LO", "HI", "STEPS"))
        parser.add_argument("--width", type=float, default=None)
        parser.add_argument("--width-b", type=float, default=None)
        parser.add_argument("--kind", choices=("joint", "conditional"),
                            default="joint")
    elif subcommand == "gauss-fit":
        parser.add_argument("--input", default=None)
        parser.add_argument("--form", choices=("symmetric", "conditional"),
                            default="symmetric")
        parser.add_argument("--threshold", type=float, default=1e-3)
        parser.add_argument("--window", type=float, default=None)
        parser.add_argument("--jitter", type=float, default=0.0)
    elif subcommand == "gauss-sigma-scan":
        parser.add_argument("--alphas", type=str, default=None)
        parser.add_argument("--which", choices=("classical", "quantum",
                                                "small-a-analytic"),
                            default="classical")
        parser.add_argument("--width", type=float, default=0.5)
        parser.add_argument("--extent", type=float, default=4.0)
        parser.add_argument("--steps", type=int, default=33)
    elif subcommand == "gauss-inequality":
        _add_model(parser)
        parser.add_argument("--grid-a", type=int, default=4)
        parser.add_argument("--grid-b", type=int, default=4)
        parser.add_argument("--extent", type=float, default=4.0)
        parser.add_argument("--tail-handling",
                            choices=("truncate", "merge-into-end-segments"),
                            default="truncate")
        parser.add_argument("--n-bins", type=int, default=None)
        parser.add_argument("--nd-center", type=float, default=None)
        parser.add_argument("--nd-half-width", type=float, default=None)
    elif subcommand == "gauss-converge":
        _add_model(parser)
        parser.add_argument("--qbar", type=float, default=0.0)
        parser.add_argument("--widths", type=str, default="1,2,4")
        parser.add_argument("--n-bins", type=int, default=200)
        parser.add_argument("--n-basis", type=int, default=40)
    else:  # pragma: no cover - guarded by the dispatch table
        raise UnknownSubcommand(subcommand)
    return parser


_HANDLERS = {
    "spin-scan": _cmd_spin_scan,
    "spin-negativity-scan": _cmd_spin_scan,
    "spin-vanish-point": _cmd_spin_vanish_point,
    "gauss-constants": _cmd_gauss_constants,
    "gauss-one-restricted": _cmd_gauss_one_restricted,
    "gauss-both-restricted": _cmd_gauss_both_restricted,
    "gauss-limits": _cmd_gauss_limits,
    "gauss-classical-map": _cmd_gauss_classical_map,
    "gauss-fit": _cmd_gauss_fit,
    "gauss-sigma-scan": _cmd_gauss_sigma_scan,
    "gauss-inequality": _cmd_gauss_inequality,
    "gauss-converge": _cmd_gauss_converge,
}


def _load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            config = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigParse(f"cannot read config {path}: {exc}") from exc
    if not isinstance(config, dict):
        raise ConfigParse("config file must hold a flat JSON object")
    return config


def _parse(subcommand: str, argv: list[str]):
    """Parse flags, letting explicit flags override config-file values."""
    parser = _build_parser(subcommand)
    probe = parser.parse_args(argv)
    if not probe.config:
        return probe
    config = _load_config(probe.config)
    seeded = argparse.Namespace(**{key.replace("-", "_"): value
                                   for key, value in config.items()})
    return parser.parse_args(argv, namespace=seeded)


def run(argv: list[str]) -> int:
    """Entry point; returns the process exit code."""
    try:
        if not argv:
            raise UsageError(
                "usage: entloc <subcommand> [flags]; subcommands: "
                + ", ".join(SUBCOMMANDS))
        subcommand, rest = argv[0], argv[1:]
        if subcommand in ("-h", "--help"):
            sys.stdout.write("subcommands: " + ", ".join(SUBCOMMANDS) + "\n")
            return 0
        if subcommand not in _HANDLERS:
            raise UnknownSubcommand(f"unknown subcommand {subcommand!r}")
        ns = _parse(subcommand, rest)
        config_echo = {key: value for key, value in vars(ns).items()
                       if key not in ("config",) and value is not None}
        config_echo["subcommand"] = subcommand
        _HANDLERS[subcommand](ns, config_echo)
        return 0
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)
    except UsageError as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__,
                                     "message": str(exc)}) + "\n")
        return 1
    except EntlocError as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__,
                                     "message": str(exc)}) + "\n")
        return 2
    except (np.linalg.LinAlgError, FloatingPointError, OverflowError) as exc:
        sys.stderr.write(json.dumps({"error": "NumericalFailure",
                                     "message": str(exc)}) + "\n")
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
