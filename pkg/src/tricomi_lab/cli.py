"""Command-line front end.

Subcommands
-----------
  solve         deterministic solution on a (t, x) grid (+ residual check)
  mc-solve      Monte Carlo solution with standard errors
  xi-verify     checks on the self-similar phase xi(t)
  field-sample  random field U(t, x) driven by one Brownian path
  study         mollifier-limit studies (convergence / divergence / fractional)
  variance      closed-form and quadrature variances of the solution kernels

Examples
--------
  tricomi-lab solve --alpha 0 --phi cos --t 1 --x 0
  tricomi-lab solve --alpha 2 --phi gaussian-bump --t 0:2:21 --x=-3:3:61 --format csv
  tricomi-lab study --variant tricomi-lower --noise white
  tricomi-lab study --variant tricomi-lower --noise fractional --hurst 0.75
  tricomi-lab xi-verify --alpha 2 --T 0.5 --perturb 0.2

Parameters may also come from a flat ``key=value`` file (``--config``);
command-line flags win over the file, the file wins over defaults.  The
seed falls back to $TRICOMI_SEED, then 42.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

import numpy as np
from scipy import special

from . import __version__
from . import convergence as conv
from . import noise
from . import solvers
from . import xi_fixed_point as xfp
from .core import KernelSpec, KernelVariant, make_params
from .errors import (ArgumentError, DomainError, NonContractionError, NumericError,
                     ResourceError, SingularityError)

log = logging.getLogger("tricomi_lab")

EXIT_OK, EXIT_ARGS, EXIT_NUMERIC, EXIT_RESOURCE = 0, 2, 3, 4
DEFAULT_SEED = 42

CSV_HEADERS = {
    "solve": ("t", "x", "u"),
    "mc-solve": ("t", "x", "u", "std_error"),
    "field-sample": ("t", "x", "value"),
    "study": ("n", "r_n", "variance", "gap"),
    "variance": ("quantity", "value"),
    "xi-verify": ("t", "g", "g_prime"),
}


# ---------------------------------------------------------------------------
# option tables


def _bool(s) -> bool:
    if isinstance(s, bool):
        return s
    v = str(s).strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"not a boolean: {s!r}")


def _grid(s) -> list[float]:
    """'v' or 'start:stop:num' (inclusive linspace)."""
    if isinstance(s, list):
        return s
    parts = str(s).split(":")
    try:
        if len(parts) == 1:
            return [float(parts[0])]
        if len(parts) == 3:
            num = int(parts[2])
            if num < 1:
                raise ValueError
            return [float(v) for v in np.linspace(float(parts[0]), float(parts[1]), num)]
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected a value or start:stop:num, got {s!r}")


def _uint(s) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer")
    return v


def _posint(s) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


@dataclass(frozen=True)
class Opt:
    name: str
    type: Callable[[Any], Any]
    default: Any = None
    help: str = ""
    choices: tuple | None = None
    required: bool = False

    @property
    def dest(self) -> str:
        return self.name.replace("-", "_")


VARIANTS = tuple(v.value for v in KernelVariant)
FAMILIES = tuple(f.value for f in noise.MollifierFamily)

PHI_OPTS = [
    Opt("phi", str, "gaussian-bump", "initial velocity preset", solvers.PHI_PRESETS),
    Opt("amplitude", float, 1.0, "preset amplitude"),
    Opt("center", float, 0.0, "preset center"),
    Opt("width", float, 1.0, "preset width"),
]

COMMON_OPTS = [
    Opt("seed", _uint, None, "random seed (default $TRICOMI_SEED or 42)"),
    Opt("threads", _posint, None, "worker cap (default: available CPUs)"),
    Opt("format", str, "json", "output format", ("csv", "json", "both")),
    Opt("output-dir", str, None, "write <subcommand>.csv/.json here instead of stdout"),
]

SUBCOMMANDS: dict[str, tuple[str, list[Opt]]] = {
    "solve": ("deterministic solution on a (t, x) grid", [
        Opt("variant", str, "tricomi-alpha", "kernel variant", VARIANTS),
        Opt("alpha", float, None, "degeneracy exponent (tricomi-alpha)"),
        Opt("t", _grid, [1.0], "time value or start:stop:num"),
        Opt("x", _grid, [0.0], "space value or start:stop:num"),
        Opt("tol", float, 1e-13, "quadrature tolerance"),
        *PHI_OPTS,
    ]),
    "mc-solve": ("Monte Carlo solution with standard errors", [
        Opt("alpha", float, None, "degeneracy exponent", required=True),
        Opt("t", _grid, [1.0], "time value or start:stop:num"),
        Opt("x", _grid, [0.0], "space value or start:stop:num"),
        Opt("samples", _posint, 100_000, "samples per point"),
        *PHI_OPTS,
    ]),
    "xi-verify": ("checks on the phase function xi", [
        Opt("alpha", float, None, "degeneracy exponent", required=True),
        Opt("T", float, 1.0, "time horizon"),
        Opt("points", _posint, xfp.DEFAULT_POINTS, "grid points on [0, T]"),
        Opt("perturb", float, 0.0, "seed g0 = xi (1 + perturb sin t)"),
        Opt("tol", float, 1e-8, "fixed-point tolerance (sup derivative gap)"),
        Opt("max-iter", _posint, 500, "iteration cap"),
    ]),
    "field-sample": ("random field driven by one Brownian path", [
        Opt("variant", str, "tricomi-alpha", "kernel variant",
            ("tricomi-alpha", "wave", "tricomi-lower")),
        Opt("alpha", float, 0.0, "degeneracy exponent (tricomi-alpha)"),
        Opt("t", _grid, [1.0], "time value or start:stop:num"),
        Opt("x", _grid, [0.0], "space value or start:stop:num"),
        Opt("dx", float, 1e-3, "noise grid spacing"),
        Opt("paths", _posint, 1, "paths for the empirical variance check (1 = none)"),
    ]),
    "study": ("mollifier-limit study", [
        Opt("variant", str, "tricomi-alpha", "kernel variant", VARIANTS),
        Opt("noise", str, "white", "driving noise", ("white", "fractional")),
        Opt("hurst", float, None, "Hurst index for fractional noise"),
        Opt("alpha", float, 2.0, "degeneracy exponent (tricomi-alpha)"),
        Opt("t", float, 1.0, "time"),
        Opt("x", float, 0.0, "space"),
        Opt("family", str, "bump", "mollifier family", FAMILIES),
        Opt("k-max", _uint, 14, "schedule n = 2^0 .. 2^k-max"),
        Opt("paths", _posint, 10_000, "paths for the empirical cross-checks"),
        Opt("tolerance", float, 0.01, "relative gap tolerance at the final n"),
        Opt("empirical", _bool, True, "run the Monte Carlo cross-checks"),
    ]),
    "variance": ("variances of the solution kernels", [
        Opt("variant", str, "tricomi-alpha", "kernel variant", VARIANTS),
        Opt("alpha", float, 2.0, "degeneracy exponent (tricomi-alpha)"),
        Opt("t", float, 1.0, "time"),
        Opt("hurst", float, None, "also report the H-norm"),
        Opt("eps", float, None, "also report the truncated lower-order variance"),
    ]),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tricomi-lab", description=__doc__.split("\n\n")[0],
        formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name, (helptext, opts) in SUBCOMMANDS.items():
        p = sub.add_parser(name, help=helptext, description=helptext)
        p.add_argument("--config", default=argparse.SUPPRESS, help="key=value config file")
        p.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)
        for o in opts + COMMON_OPTS:
            kw = dict(type=o.type, default=argparse.SUPPRESS, dest=o.dest,
                      help=f"{o.help} (default: {o.default})" if o.default is not None else o.help)
            if o.choices:
                kw["choices"] = o.choices
            p.add_argument(f"--{o.name}", **kw)
    return parser


# ---------------------------------------------------------------------------
# configuration


@dataclass
class RunConfig:
    subcommand: str
    params: dict[str, Any]
    seed: int
    threads: int
    output_dir: Path | None
    format: str

    def echo(self) -> dict[str, Any]:
        """Re-runnable configuration (output plumbing excluded)."""
        out = {"subcommand": self.subcommand, **self.params, "seed": self.seed}
        return out


def read_config_file(path: str | Path) -> dict[str, str]:
    out: dict[str, str] = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ArgumentError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ArgumentError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def resolve_config(ns: argparse.Namespace, env=None) -> RunConfig:
    env = os.environ if env is None else env
    name = ns.subcommand
    opts = {o.dest: o for o in SUBCOMMANDS[name][1] + COMMON_OPTS}
    given = {k: v for k, v in vars(ns).items() if k in opts}
    filed = read_config_file(ns.config) if getattr(ns, "config", None) else {}
    unknown = sorted(set(filed) - set(opts))
    if unknown:
        raise ArgumentError(f"unknown config key(s) for {name}: {', '.join(unknown)}")
    merged: dict[str, Any] = {}
    for dest, o in opts.items():
        if dest in given:
            merged[dest] = given[dest]
        elif dest in filed:
            try:
                merged[dest] = o.type(filed[dest])
            except (ValueError, argparse.ArgumentTypeError) as exc:
                raise ArgumentError(f"config key {dest}: {exc}") from exc
            if o.choices and merged[dest] not in o.choices:
                raise ArgumentError(f"config key {dest}: {merged[dest]!r} not in {o.choices}")
        else:
            merged[dest] = o.default
    for o in SUBCOMMANDS[name][1]:
        if o.required and merged[o.dest] is None:
            raise ArgumentError(f"--{o.name} is required")
    seed = merged.pop("seed")
    if seed is None:
        env_seed = env.get("TRICOMI_SEED")
        try:
            seed = _uint(env_seed) if env_seed not in (None, "") else DEFAULT_SEED
        except (ValueError, argparse.ArgumentTypeError) as exc:
            raise ArgumentError(f"TRICOMI_SEED must be a non-negative integer: {env_seed!r}") from exc
    threads = merged.pop("threads") or (os.cpu_count() or 1)
    out_dir = merged.pop("output_dir")
    fmt = merged.pop("format")
    if fmt == "both" and out_dir is None:
        raise ArgumentError("--format both needs --output-dir")
    return RunConfig(name, merged, seed, threads, Path(out_dir) if out_dir else None, fmt)


# ---------------------------------------------------------------------------
# output


def fmt_float(v: float) -> str:
    return "%.17g" % v


def _json_value(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or obj is True or obj is False:
        return json.dumps(obj)
    if isinstance(obj, (bool, np.bool_)):
        return json.dumps(bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(float(obj)) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {_json_value(v, indent, level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(isinstance(v, (int, float, np.integer, np.floating)) or v is None for v in seq):
            return "[" + ", ".join(_json_value(v, indent, level + 1) for v in seq) + "]"
        return "[\n" + ",\n".join(pad + _json_value(v, indent, level + 1) for v in seq) + "\n" + end + "]"
    if hasattr(obj, "value"):  # enums
        return _json_value(obj.value, indent, level)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps_json(obj, indent: int = 2) -> str:
    """JSON with every float written to 17 significant digits (non-finite -> null)."""
    return _json_value(obj, indent, 0) + "\n"


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt_float(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


@dataclass
class Result:
    payload: dict
    rows: list = field(default_factory=list)
    exit_code: int = EXIT_OK


def envelope(cfg: RunConfig, payload: dict) -> dict:
    return {"tool_version": __version__, "config": _plain(cfg.echo()), "payload": payload}


def _plain(d: dict) -> dict:
    return {k: (v.value if hasattr(v, "value") else v) for k, v in d.items()}


def emit(cfg: RunConfig, result: Result, timings: dict, stdout=None) -> None:
    stdout = sys.stdout if stdout is None else stdout
    csv_text = to_csv(CSV_HEADERS[cfg.subcommand], result.rows)
    json_text = dumps_json(envelope(cfg, result.payload))
    if cfg.output_dir is None:
        stdout.write(csv_text if cfg.format == "csv" else json_text)
        return
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    stem = cfg.output_dir / cfg.subcommand
    if cfg.format in ("csv", "both"):
        stem.with_suffix(".csv").write_text(csv_text, encoding="utf-8")
    if cfg.format in ("json", "both"):
        stem.with_suffix(".json").write_text(json_text, encoding="utf-8")
    # timings vary run to run, so they live apart from the reproducible artifacts
    Path(f"{stem}.timings.json").write_text(json.dumps(timings, indent=2) + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# commands


def _phi(p) -> solvers.InitialVelocity:
    return solvers.preset_phi(p["phi"], p["amplitude"], p["center"], p["width"])


def _check_times(ts):
    if any(not (t >= 0 and math.isfinite(t)) for t in ts):
        raise DomainError("t values must be finite and >= 0")


def cmd_solve(cfg: RunConfig) -> Result:
    p = cfg.params
    variant = KernelVariant(p["variant"])
    params = None
    if variant is KernelVariant.TRICOMI_ALPHA:
        if p["alpha"] is None:
            raise ArgumentError("--alpha is required for the tricomi-alpha variant")
        params = make_params(p["alpha"])
    _check_times(p["t"])
    t_values = sorted(set(p["t"]))
    x_values = sorted(set(p["x"]))
    fld = solvers.solve_on_grid(variant, _phi(p), t_values, x_values, params, p["tol"])
    residual = None
    if len(t_values) >= 3 and len(x_values) >= 3:
        try:
            rep = solvers.residual_oracle(fld, variant, p["alpha"] or 0.0)
            residual = {"max_abs_residual": rep.max_abs_residual,
                        "grid_spacing": list(rep.grid_spacing),
                        "interior_region": [list(r) for r in rep.interior_region]}
        except ArgumentError as exc:
            residual = {"skipped": str(exc)}
    rows = list(fld.rows())
    payload = {"field": [{"t": t, "x": x, "u": u} for t, x, u in rows], "residual": residual}
    return Result(payload, rows)


def cmd_mc_solve(cfg: RunConfig) -> Result:
    p = cfg.params
    params = make_params(p["alpha"])
    _check_times(p["t"])
    phi = _phi(p)
    rows = []
    k = 0
    for t in p["t"]:
        for x in p["x"]:
            est, se = solvers.solve_mc(params, phi, t, x, p["samples"],
                                       seed=cfg.seed + 1_000_003 * k, threads=cfg.threads)
            rows.append((float(t), float(x), float(est), float(se)))
            k += 1
    payload = {"points": [dict(zip(CSV_HEADERS["mc-solve"], r)) for r in rows]}
    return Result(payload, rows)


def cmd_xi_verify(cfg: RunConfig) -> Result:
    p = cfg.params
    T = p["T"]
    if not (T > 0 and math.isfinite(T)):
        raise ArgumentError("--T must be > 0")
    params = make_params(p["alpha"])
    xi_g = xfp.xi_function(params, T, p["points"])
    res1, res2 = xfp.ode_residuals(params, xi_g)
    identity_gap = xfp.integral_identity_check(params, xi_g)
    t = xi_g.grid
    eps = p["perturb"]
    g0 = xfp.C1Function(t, xi_g.values * (1.0 + eps * np.sin(t)),
                        xi_g.derivative_values * (1.0 + eps * np.sin(t))
                        + xi_g.values * eps * np.cos(t))
    exit_code = EXIT_OK
    try:
        g, report = xfp.iterate_to_fixed_point(params, g0, tol=p["tol"], max_iter=p["max_iter"])
        if not report.converged:
            exit_code = EXIT_NUMERIC
    except NonContractionError as exc:
        report = exc.diagnostics["report"]
        g = None
        exit_code = EXIT_NUMERIC
    image_gap = xfp.sup_derivative_gap(xfp.apply_T(params, xi_g), xi_g)
    payload = {
        "alpha": p["alpha"], "gamma": params.gamma, "L": params.L,
        "ode_residuals": [res1, res2],
        "integral_identity_gap": identity_gap,
        "xi_image_gap": image_gap,
        "fixed_point": report.to_dict(),
        "gap_to_xi": None if g is None else xfp.sup_derivative_gap(g, xi_g),
        "converged": bool(report.converged),
    }
    rows = [] if g is None else list(zip(g.grid, g.values, g.derivative_values))
    return Result(payload, rows, exit_code)


def _cell_masses(kernel: KernelSpec, edges: np.ndarray) -> np.ndarray:
    """Exact integrals of the kernel over the cells between ``edges``."""
    lo, hi = kernel.support()
    if hi <= lo:  # t = 0: the field vanishes identically
        return np.zeros(edges.size - 1)
    e = np.clip(edges, lo, hi)
    if kernel.variant is KernelVariant.TRICOMI_LOWER:
        cdf = np.sqrt(e - lo)
    else:
        g = kernel.params.gamma if kernel.variant is KernelVariant.TRICOMI_ALPHA else 0.0
        cdf = kernel.t * special.betainc(1.0 - g, 1.0 - g, (e - lo) / (hi - lo))
    return np.diff(cdf)


def cmd_field_sample(cfg: RunConfig) -> Result:
    """U(t, x) = sum_i (int_cell_i K_{t,x}) dB_i on one shared Brownian grid."""
    p = cfg.params
    variant = KernelVariant(p["variant"])
    _check_times(p["t"])
    params = make_params(p["alpha"]) if variant is KernelVariant.TRICOMI_ALPHA else None
    kernels = [KernelSpec(variant, t, x, params) for t in p["t"] for x in p["x"]]
    half = max(k.half_width for k in kernels)
    span = max(abs(x) for x in p["x"])
    R = math.ceil((span + half + 1.0) / p["dx"]) * p["dx"]
    grid = noise.make_grid(R, p["dx"])
    masses = np.stack([_cell_masses(k, grid) for k in kernels])
    f = masses / p["dx"]  # sum f_i dB_i with f_i the cell average
    sums = noise.wiener_sums(f, (grid.size - 1, p["dx"]), p["paths"], cfg.seed)
    sums = sums.reshape(p["paths"], len(kernels))
    rows = [(float(k.t), float(k.x), float(v)) for k, v in zip(kernels, sums[0])]
    payload: dict[str, Any] = {"R": R, "dx": p["dx"], "cells": int(grid.size - 1),
                               "field": [dict(zip(CSV_HEADERS["field-sample"], r)) for r in rows]}
    if p["paths"] > 1:
        checks = []
        for j, k in enumerate(kernels):
            emp = float(np.mean(sums[:, j] ** 2))
            discrete = float(np.sum(masses[j] ** 2) / p["dx"])
            limit = noise.l2_variance(k)
            checks.append({
                "t": k.t, "x": k.x, "empirical_variance": emp,
                "discrete_variance": discrete,
                "l2_variance": limit.value if isinstance(limit, noise.Variance) else limit,
                "sigma": discrete * math.sqrt(2.0 / p["paths"]),
                "within_4sigma": abs(emp - discrete) <= 4.0 * discrete * math.sqrt(2.0 / p["paths"]),
            })
        payload["variance_checks"] = checks
    return Result(payload, rows)


def cmd_study(cfg: RunConfig) -> Result:
    p = cfg.params
    variant = KernelVariant(p["variant"])
    if p["noise"] == "fractional":
        if p["hurst"] is None or not (0.5 < p["hurst"] < 1.0):
            raise DomainError("--hurst must lie in (0.5, 1) for fractional noise")
        study = conv.study_fractional_restoration
    else:
        if p["hurst"] is not None:
            raise ArgumentError("--hurst only applies with --noise fractional")
        study = {KernelVariant.TRICOMI_ALPHA: conv.study_tricomi_convergence,
                 KernelVariant.TRICOMI_LOWER: conv.study_lower_order_divergence,
                 KernelVariant.WAVE: conv.study_wave_comparison,
                 KernelVariant.WAVE_LOWER: conv.study_wave_comparison}[variant]
    scfg = conv.StudyConfig(
        variant=variant, alpha=p["alpha"], t=p["t"], x=p["x"],
        family=noise.MollifierFamily(p["family"]),
        n_values=conv.default_schedule(p["k_max"]), hurst=p["hurst"],
        paths=p["paths"], seed=cfg.seed, tolerance=p["tolerance"],
        empirical=p["empirical"], threads=cfg.threads)
    report = study(scfg)
    return Result(report.to_dict(), list(report.rows()))


def cmd_variance(cfg: RunConfig) -> Result:
    p = cfg.params
    variant = KernelVariant(p["variant"])
    if not (p["t"] >= 0 and math.isfinite(p["t"])):
        raise DomainError("t must be finite and >= 0")
    params = make_params(p["alpha"]) if variant is KernelVariant.TRICOMI_ALPHA else None
    kernel = KernelSpec(variant, p["t"], 0.0, params)
    l2 = noise.l2_variance(kernel)
    rows = [("l2_variance", l2.value if isinstance(l2, noise.Variance) else l2)]
    if p["hurst"] is not None:
        rows.append(("h_norm_variance", noise.h_norm_variance(kernel, p["hurst"])))
        if variant is KernelVariant.TRICOMI_LOWER:
            rows.append(("h_norm_closed_form", noise.h_norm_closed_form(p["t"], p["hurst"])))
    if p["eps"] is not None:
        rows.append(("truncated_lower_variance", noise.truncated_lower_variance(p["t"], p["eps"])))
    return Result(dict(rows), rows)


COMMANDS: dict[str, Callable[[RunConfig], Result]] = {
    "solve": cmd_solve,
    "mc-solve": cmd_mc_solve,
    "xi-verify": cmd_xi_verify,
    "field-sample": cmd_field_sample,
    "study": cmd_study,
    "variance": cmd_variance,
}


def run(cfg: RunConfig, stdout=None) -> int:
    t0 = time.perf_counter()
    result = COMMANDS[cfg.subcommand](cfg)
    timings = {"subcommand": cfg.subcommand, "wall_seconds": time.perf_counter() - t0}
    log.info("%s finished in %.3f s", cfg.subcommand, timings["wall_seconds"])
    emit(cfg, result, timings, stdout)
    return result.exit_code


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)  # exits with status 2 on malformed flags
    logging.basicConfig(level=logging.INFO if getattr(ns, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        cfg = resolve_config(ns)
        return run(cfg)
    except (ArgumentError, DomainError) as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except (NumericError, SingularityError, ArithmeticError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ResourceError, MemoryError) as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
