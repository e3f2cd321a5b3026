"""Command-line interface.

Angles are degrees at this boundary and radians everywhere inside the
library.  Every command prints to stdout by default; with ``--out`` it
writes the same bytes to a file and drops a ``<out>.manifest.json``
beside it recording the command, all parameters, the package version
and a sha256 of the output, so any published number can be regenerated
(see :func:`replay`).

Serialization is deliberately rigid for reproducibility: JSON objects
have sorted keys, floats are printed with 9 significant digits, and
output is newline-terminated; CSV is comma-separated with a header row
and LF line endings.

Exit codes: 0 success, 2 usage or validation error, 3 internal
cross-check failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .born import chsh_expectation, correlation, joint_pmf
from .chsh_operator import chsh_spectrum
from .counterfactual import fine_feasibility, outcome_statistic, outcome_values, quantum_pair_marginals, sample_space
from .errors import InternalCheckError
from .polarization import AngleConfig, same_setting, singlet_state
from .quasiprob import f_jkl, find_negativity
from .realworld import enumerate_total_sample_space, run_experiments, statistic_histogram

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INTERNAL = 3

TWO_SQRT_TWO = 2.0 * math.sqrt(2.0)


def _worker_count() -> int:
    raw = os.environ.get("BELLCHECK_WORKERS")
    if raw is None:
        return 1
    try:
        return max(1, int(raw))
    except ValueError as exc:
        raise ValueError(f"BELLCHECK_WORKERS must be an integer, got {raw!r}") from exc


def _map_ordered(fn, items):
    """Apply fn over items, fanning out to the worker pool; output keeps input order."""
    workers = _worker_count()
    if workers == 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# canonical serialization

def _format_float(x: float) -> str:
    text = format(float(x), ".9g")
    # JSON has no -0 or bare "inf"; neither should ever reach here anyway.
    return "0" if text == "-0" else text


def _json_fragment(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _format_float(value)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        items = sorted(value.items())
        inner = ", ".join(f"{json.dumps(str(k))}: {_json_fragment(v)}" for k, v in items)
        return "{" + inner + "}"
    if isinstance(value, np.ndarray):
        value = value.tolist()
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_json_fragment(v) for v in value) + "]"
    raise TypeError(f"cannot serialize {type(value)!r}")


def canonical_json(value) -> str:
    """Deterministic JSON text: sorted keys, 9-significant-digit floats."""
    return _json_fragment(value) + "\n"


def _csv_cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        raise TypeError("CSV columns are numeric only")
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return _format_float(value)


def canonical_csv(header: list[str], rows: list[tuple], footer: list[str] | None = None) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_csv_cell(cell) for cell in row) for row in rows)
    if footer:
        lines.extend(footer)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# manifests

_POSITIONALS: dict[str, tuple[str, ...]] = {
    "correlate": ("alpha_deg", "beta_deg"),
    "chsh": ("alpha1_deg", "alpha2_deg", "beta1_deg", "beta2_deg"),
    "t-spectrum": ("alpha1_deg", "alpha2_deg", "beta1_deg", "beta2_deg"),
    "simulate": ("alpha1_deg", "alpha2_deg", "beta1_deg", "beta2_deg"),
    "enumerate": ("target",),
    "fine": ("alpha1_deg", "alpha2_deg", "beta1_deg", "beta2_deg"),
    "quasiprob": ("alpha_deg", "alpha_prime_deg", "beta_deg"),
}

_FLAGS: dict[str, str] = {
    "n": "--n",
    "seed": "--seed",
    "shards": "--shards",
    "sweep_deg": "--sweep",
    "scan_deg": "--scan",
    "format": "--format",
}


def _manifest_parameters(command: str, args: argparse.Namespace) -> dict:
    params: dict = {}
    for name in _POSITIONALS[command]:
        params[name] = getattr(args, name)
    for name in _FLAGS:
        if getattr(args, name, None) is not None:
            params[name] = getattr(args, name)
    return params


def _emit(text: str, command: str, args: argparse.Namespace) -> None:
    out = getattr(args, "out", None)
    if out is None:
        sys.stdout.write(text)
        return
    data = text.encode("utf-8")
    Path(out).write_bytes(data)
    manifest = {
        "artifact_version": __version__,
        "command": command,
        "output": os.path.basename(out),
        "parameters": _manifest_parameters(command, args),
        "sha256": hashlib.sha256(data).hexdigest(),
    }
    Path(str(out) + ".manifest.json").write_text(canonical_json(manifest), encoding="utf-8")


def replay(manifest_path: str, out_path: str) -> str:
    """Re-run the command recorded in a manifest, writing to ``out_path``.

    Returns the sha256 of the regenerated output; equal to the recorded
    checksum whenever the manifest and package version still match.
    """
    manifest = json.loads(Path(manifest_path).read_text(encoding="utf-8"))
    command = manifest["command"]
    params = manifest["parameters"]
    argv = [command]
    for name in _POSITIONALS[command]:
        if params.get(name) is not None:
            argv.append(repr(params[name]) if isinstance(params[name], float) else str(params[name]))
    for name, flag in _FLAGS.items():
        if params.get(name) is not None:
            value = params[name]
            argv.extend([flag, repr(value) if isinstance(value, float) else str(value)])
    argv.extend(["--out", out_path])
    code = main(argv)
    if code != EXIT_OK:
        raise RuntimeError(f"replay of {command} exited with code {code}")
    return hashlib.sha256(Path(out_path).read_bytes()).hexdigest()


# ---------------------------------------------------------------------------
# commands

def _config_from_args(args: argparse.Namespace) -> AngleConfig:
    return AngleConfig.from_degrees(args.alpha1_deg, args.alpha2_deg, args.beta1_deg, args.beta2_deg)


def cmd_correlate(args: argparse.Namespace) -> int:
    alpha, beta = math.radians(args.alpha_deg), math.radians(args.beta_deg)
    for value in (alpha, beta):
        if not math.isfinite(value):
            raise ValueError("angles must be finite")
    table = joint_pmf(singlet_state(), alpha, beta)
    corr = correlation(alpha, beta)
    if (args.format or "json") == "json":
        payload = {
            "alpha_deg": args.alpha_deg,
            "beta_deg": args.beta_deg,
            "correlation": corr,
            "pmf": table.p,
        }
        text = canonical_json(payload)
    else:
        header = ["alpha_deg", "beta_deg", "correlation", "p_pp", "p_pm", "p_mp", "p_mm"]
        row = (args.alpha_deg, args.beta_deg, corr, *table.p.reshape(-1))
        text = canonical_csv(header, [row])
    _emit(text, "correlate", args)
    return EXIT_OK


def _spectrum_row(cfg: AngleConfig) -> tuple[float, float, float, float, float]:
    spectrum = chsh_spectrum(cfg)
    return (
        chsh_expectation(cfg),
        spectrum.t0,
        spectrum.t1,
        spectrum.w_plus,
        spectrum.w_minus,
    )


def _chsh_like(args: argparse.Namespace, command: str) -> int:
    cfg = _config_from_args(args)
    header = ["alpha1", "alpha2", "beta1", "beta2", "e_qm", "t0", "t1", "w_plus", "w_minus"]
    sweep = getattr(args, "sweep_deg", None)
    if sweep is not None:
        if sweep <= 0.0:
            raise ValueError("--sweep step must be positive")
        # Sweep iterates beta2 over [0, 180); points colliding with beta1
        # (mod 180) are skipped because the configuration is degenerate there.
        beta2_grid = [
            b2 for b2 in np.arange(0.0, 180.0, sweep)
            if not same_setting(math.radians(b2), cfg.beta1)
        ]

        def one_row(b2_deg: float):
            swept = AngleConfig(cfg.alpha1, cfg.alpha2, cfg.beta1, math.radians(b2_deg))
            return (args.alpha1_deg, args.alpha2_deg, args.beta1_deg, b2_deg, *_spectrum_row(swept))

        rows = _map_ordered(one_row, beta2_grid)
        if (args.format or "csv") == "csv":
            text = canonical_csv(header, rows)
        else:
            text = canonical_json({"rows": [dict(zip(header, row)) for row in rows]})
    else:
        row = (args.alpha1_deg, args.alpha2_deg, args.beta1_deg, args.beta2_deg, *_spectrum_row(cfg))
        if (args.format or "json") == "json":
            text = canonical_json(dict(zip(header, row)))
        else:
            text = canonical_csv(header, [row])
    _emit(text, command, args)
    return EXIT_OK


def cmd_chsh(args: argparse.Namespace) -> int:
    return _chsh_like(args, "chsh")


def cmd_t_spectrum(args: argparse.Namespace) -> int:
    return _chsh_like(args, "t-spectrum")


def cmd_simulate(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    if args.shards < 1:
        raise ValueError("--shards must be at least 1")
    # Draw streams are counter-indexed, so the shard count cannot change
    # any sampled value; it is recorded for the manifest only.
    per_experiment, combined = run_experiments(cfg, args.n, args.seed)
    payload = {
        "alpha1_deg": args.alpha1_deg,
        "alpha2_deg": args.alpha2_deg,
        "beta1_deg": args.beta1_deg,
        "beta2_deg": args.beta2_deg,
        "n": args.n,
        "seed": args.seed,
        "shards": args.shards,
        "e_rw": {"mean": combined.mean, "n": combined.n, "stderr": combined.stderr},
        "flags": {
            "exceeds_2": abs(combined.mean) > 2.0,
            "exceeds_2sqrt2": abs(combined.mean) > TWO_SQRT_TWO,
            "exceeds_4": abs(combined.mean) > 4.0,
        },
    }
    for idx, est in enumerate(per_experiment, start=1):
        payload[f"c{idx}"] = {"mean": est.mean, "n": est.n, "stderr": est.stderr}
    _emit(canonical_json(payload), "simulate", args)
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    if args.target == "realworld":
        records = enumerate_total_sample_space()
        header = ["x1", "y1", "x2", "y2", "x3", "y3", "x4", "y4", "statistic"]
        rows = [
            tuple(v for o in r.outcomes for v in (o.x, o.y)) + (r.statistic,)
            for r in records
        ]
        hist = statistic_histogram(records)
        if (args.format or "csv") == "csv":
            footer = ["# statistic histogram: " + ",".join(f"{k}:{v}" for k, v in hist.items())]
            text = canonical_csv(header, rows, footer=footer)
        else:
            payload = {
                "histogram": {str(k): v for k, v in hist.items()},
                "rows": [dict(zip(header, row)) for row in rows],
            }
            text = canonical_json(payload)
    elif args.target == "counterfactual":
        header = ["k", "l", "m", "n", "a1", "a2", "b1", "b2", "statistic"]
        rows = [
            (w.k, w.l, w.m, w.n, *outcome_values(w), outcome_statistic(w))
            for w in sample_space()
        ]
        if (args.format or "csv") == "csv":
            text = canonical_csv(header, rows)
        else:
            text = canonical_json({"rows": [dict(zip(header, row)) for row in rows]})
    else:
        raise ValueError(f"unknown enumeration target {args.target!r}")
    _emit(text, "enumerate", args)
    return EXIT_OK


def cmd_fine(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    result = fine_feasibility(quantum_pair_marginals(cfg))
    payload = {
        "alpha1_deg": args.alpha1_deg,
        "alpha2_deg": args.alpha2_deg,
        "beta1_deg": args.beta1_deg,
        "beta2_deg": args.beta2_deg,
        "chsh_variants": result.chsh_value,
        "feasible": result.feasible,
        "marginal_residual": result.marginal_residual,
        # Witness probabilities flattened over (k, l, m, n), row-major.
        "witness": None if result.witness is None else result.witness.probabilities.reshape(-1),
    }
    _emit(canonical_json(payload), "fine", args)
    return EXIT_OK


def cmd_quasiprob(args: argparse.Namespace) -> int:
    given = [a for a in (args.alpha_deg, args.alpha_prime_deg, args.beta_deg) if a is not None]
    if len(given) not in (0, 3):
        raise ValueError("quasiprob needs all three angles: alpha, alpha', beta")
    point_mode = len(given) == 3
    if point_mode == (args.scan_deg is not None):
        raise ValueError("give either three angles or --scan <step_deg>")
    if point_mode:
        if not all(math.isfinite(a) for a in given):
            raise ValueError("angles must be finite")
        table = f_jkl(
            math.radians(args.alpha_deg),
            math.radians(args.alpha_prime_deg),
            math.radians(args.beta_deg),
        )
        pair = joint_pmf(singlet_state(), table.alpha, table.beta).p
        pair_prime = joint_pmf(singlet_state(), table.alpha_prime, table.beta).p
        values = table.values
        payload = {
            "alpha_deg": args.alpha_deg,
            "alpha_prime_deg": args.alpha_prime_deg,
            "beta_deg": args.beta_deg,
            "f": values,
            "residuals": {
                "marginal_alpha": float(np.max(np.abs(values.sum(axis=1) - pair))),
                "marginal_alpha_prime": float(np.max(np.abs(values.sum(axis=0) - pair_prime))),
                "total": abs(float(values.sum()) - 1.0),
            },
            "negative_cells": [
                {"j": int(j) + 1, "k": int(k) + 1, "l": int(l) + 1, "value": float(values[j, k, l])}
                for j, k, l in np.argwhere(values < -1e-12)
            ],
        }
    else:
        if args.scan_deg <= 0.0:
            raise ValueError("--scan step must be positive")
        witnesses = find_negativity(math.radians(args.scan_deg))
        payload = {
            "scan_step_deg": args.scan_deg,
            "witnesses": [
                {
                    "alpha_deg": math.degrees(w.alpha),
                    "alpha_prime_deg": math.degrees(w.alpha_prime),
                    "beta_deg": math.degrees(w.beta),
                    "j": w.j,
                    "k": w.k,
                    "l": w.l,
                    "value": w.value,
                }
                for w in witnesses
            ],
        }
    _emit(canonical_json(payload), "quasiprob", args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser

def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellcheck",
        description="Exact and Monte Carlo checks for CHSH experiment statistics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--out", help="write output to this path, with a .manifest.json beside it")
        sp.add_argument("--format", choices=("json", "csv"), default=None)

    def add_angles4(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("alpha1_deg", type=float, help="Alice setting 1, degrees")
        sp.add_argument("alpha2_deg", type=float, help="Alice setting 2, degrees")
        sp.add_argument("beta1_deg", type=float, help="Bob setting 1, degrees")
        sp.add_argument("beta2_deg", type=float, help="Bob setting 2, degrees")

    sp = sub.add_parser("correlate", help="singlet pair correlation and outcome table")
    sp.add_argument("alpha_deg", type=float)
    sp.add_argument("beta_deg", type=float)
    add_output(sp)
    sp.set_defaults(func=cmd_correlate)

    for name, func, help_text in (
        ("chsh", cmd_chsh, "CHSH expectation and operator spectrum"),
        ("t-spectrum", cmd_t_spectrum, "alias of chsh focused on the spectrum columns"),
    ):
        sp = sub.add_parser(name, help=help_text)
        add_angles4(sp)
        sp.add_argument(
            "--sweep", dest="sweep_deg", type=float, default=None,
            help="sweep beta2 over [0, 180) with this step in degrees",
        )
        add_output(sp)
        sp.set_defaults(func=func)

    sp = sub.add_parser("simulate", help="Monte Carlo run of the four experiments")
    add_angles4(sp)
    sp.add_argument("--n", type=_positive_int, required=True, help="pairs per experiment")
    sp.add_argument("--seed", type=_seed, required=True, help="master seed (required: no wall-clock seeding)")
    sp.add_argument("--shards", type=_positive_int, default=1, help="worker shards; results do not depend on it")
    add_output(sp)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("enumerate", help="exhaustive sample-space tables")
    sp.add_argument("target", choices=("realworld", "counterfactual"))
    add_output(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("fine", help="joint-distribution feasibility of the four quantum pair tables")
    add_angles4(sp)
    add_output(sp)
    sp.set_defaults(func=cmd_fine)

    sp = sub.add_parser("quasiprob", help="quasi-probability table or negativity scan")
    sp.add_argument("alpha_deg", type=float, nargs="?", default=None)
    sp.add_argument("alpha_prime_deg", type=float, nargs="?", default=None)
    sp.add_argument("beta_deg", type=float, nargs="?", default=None)
    sp.add_argument("--scan", dest="scan_deg", type=float, default=None, help="grid step in degrees")
    add_output(sp)
    sp.set_defaults(func=cmd_quasiprob)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalCheckError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
