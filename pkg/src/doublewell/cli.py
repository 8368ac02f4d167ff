"""Command-line front end.

Subcommands write CSV or JSON tables reproducing the data behind each
analysis (susceptibility scans, number-basis spectra, finite-size fits,
semiclassical bifurcation curves), plus a manifest with checksums.
Progress goes to stderr so piped output stays clean.

Exit status: 0 success, 2 usage error, 3 numerical failure.
"""

import argparse
import hashlib
import json
import math
import os
import sys
import tempfile
import time

import numpy as np

from . import __version__
from .errors import DoubleWellError
from .scaling import (
    SCAN_COLUMNS,
    ScanConfig,
    correlation_peaks,
    fit_position_exponent,
    fit_value_scaling,
    refined_chi_peaks,
    scan,
)
from .semiclassical import critical_lambda, z_min

EXIT_USAGE = 2
EXIT_NUMERICAL = 3

# scan columns that are filled only when the matching observable is requested
_COLUMN_SOURCES = {
    "chi_fd": "chi",
    "chi_fd_converged": "chi",
    "chi_sum": "chi_sum",
    "s1": ("entropy", "correlations"),
    "s2": ("entropy", "correlations"),
    "mutual_info": "correlations",
    "classical_corr": "correlations",
    "discord": "correlations",
    "theta_min": "correlations",
    "phi_min": "correlations",
    "phase_label": "phase",
}


def _fmt(value) -> str:
    """Floats with 17 significant digits (round-trip exact); NaN is empty."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        return f"{value:.17g}"
    return str(value)


def _atomic_write(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def _config_dict(args) -> dict:
    out = {}
    for k, v in vars(args).items():
        if k in ("func", "command"):
            continue
        if isinstance(v, tuple):
            v = list(v)
        out[k] = v
    return out


def _write_manifest(command: str, config: dict, outputs: list, started: float,
                    warnings: int = 0):
    manifest = {
        "command": command,
        "config": config,
        "version": __version__,
        "duration_seconds": time.monotonic() - started,
        "warnings": warnings,
        "outputs": [{"path": p, "sha256": _sha256(p)} for p in outputs],
    }
    path = outputs[0] + ".manifest.json"
    _atomic_write(path, json.dumps(manifest, indent=2) + "\n")
    return path


def _csv_table(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _max_workers() -> int:
    env = os.environ.get("DWLAB_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _parse_observables(text: str):
    mapping = {
        "chi": "chi",
        "chi-sum": "chi_sum",
        "entropy": "entropy",
        "correlations": "correlations",
        "phase": "phase",
    }
    out = []
    for token in text.split(","):
        token = token.strip()
        if token not in mapping:
            raise argparse.ArgumentTypeError(f"unknown observable {token!r}")
        out.append(mapping[token])
    return tuple(out)


def _row_values(row, observables):
    values = []
    for col in SCAN_COLUMNS:
        source = _COLUMN_SOURCES.get(col)
        if source is not None:
            wanted = (source,) if isinstance(source, str) else source
            if not any(s in observables for s in wanted):
                values.append(None)
                continue
        attr = "lam" if col == "lambda" else col
        values.append(getattr(row, attr))
    return values


def cmd_scan(args) -> int:
    started = time.monotonic()
    config = ScanConfig(
        n_particles=args.n,
        tilt=args.v0,
        lambda_min=args.lambda_min,
        lambda_max=args.lambda_max,
        lambda_steps=args.steps,
        observables=args.observables,
        delta_lambda=args.dlambda,
        discord_grid=args.discord_grid,
    )
    result = scan(config, _max_workers())
    for i, row in enumerate(result.rows):
        print(f"row {i + 1}/{len(result.rows)} lambda={row.lam:.6g}",
              file=sys.stderr)
    table = [_row_values(r, config.observables) for r in result.rows]
    if args.format == "csv":
        _atomic_write(args.out, _csv_table(SCAN_COLUMNS, table))
    else:
        payload = [dict(zip(SCAN_COLUMNS, row)) for row in table]
        payload = [
            {k: (None if isinstance(v, float) and math.isnan(v) else v)
             for k, v in row.items()}
            for row in payload
        ]
        _atomic_write(args.out, json.dumps(payload, indent=2) + "\n")
    _write_manifest("scan", _config_dict(args), [args.out], started,
                    result.warnings)
    return 0


def cmd_spectrum(args) -> int:
    from .fock import ModelParams, ground_state, spectrum_weights

    started = time.monotonic()
    lams = [float(x) for x in args.lambdas.split(",")]
    columns = []
    for lam in lams:
        gs = ground_state(ModelParams(args.n, lam, args.v0))
        columns.append(spectrum_weights(gs))
        print(f"lambda={lam:.6g} done", file=sys.stderr)
    header = ["k"] + [f"weight_lambda_{_fmt(lam)}" for lam in lams]
    rows = [[k] + [col[k] for col in columns] for k in range(args.n + 1)]
    _atomic_write(args.out, _csv_table(header, rows))
    _write_manifest("spectrum", _config_dict(args), [args.out], started)
    return 0


def cmd_scaling(args) -> int:
    started = time.monotonic()
    n_list = [int(x) for x in args.n_list.split(",")]
    if len(n_list) < 3:
        print("error: --n-list needs at least 3 sizes", file=sys.stderr)
        return EXIT_USAGE
    lo, hi = args.lambda_window

    peak_rows = []
    fits = {}
    if args.target == "chi-peaks":
        per_n = []
        for n in n_list:
            peaks = refined_chi_peaks(n, args.v0, lo, hi,
                                      max_workers=_max_workers())
            per_n.append(peaks)
            for j, p in enumerate(peaks):
                peak_rows.append({"n": n, "peak": j, "lambda_max": p.lambda_max,
                                  "height": p.height})
            print(f"N={n}: {len(peaks)} peak(s)", file=sys.stderr)
        n_peaks = min(len(p) for p in per_n)
        for j in range(n_peaks):
            positions = [p[j].lambda_max for p in per_n]
            heights = [p[j].height for p in per_n]
            fits[f"peak_{j}"] = {
                "position": _fit_dict(fit_position_exponent(n_list, positions)),
                "height_power": _fit_dict(fit_value_scaling(n_list, heights, "power")),
                "height_exponential": _fit_dict(
                    fit_value_scaling(n_list, heights, "exponential")),
            }
    else:
        field = {"discord-peak": "discord",
                 "mutual-info-peak": "mutual_info"}[args.target]
        positions, heights = [], []
        for n in n_list:
            peaks = correlation_peaks(n, args.v0, lo, hi)
            p = peaks[field]
            positions.append(p.lambda_max)
            heights.append(p.height)
            peak_rows.append({"n": n, "peak": 0, "lambda_max": p.lambda_max,
                              "height": p.height})
            print(f"N={n}: peak at lambda={p.lambda_max:.5f}", file=sys.stderr)
        fits["peak_0"] = {
            "position": _fit_dict(fit_position_exponent(n_list, positions)),
            "height_power": _fit_dict(fit_value_scaling(n_list, heights, "power")),
            "height_exponential": _fit_dict(
                fit_value_scaling(n_list, heights, "exponential")),
        }

    payload = {"target": args.target, "tilt": args.v0, "n_list": n_list,
               "peaks": peak_rows, "fits": fits}
    _atomic_write(args.out, json.dumps(payload, indent=2) + "\n")
    _write_manifest("scaling", _config_dict(args), [args.out], started)
    return 0


def _fit_dict(sf) -> dict:
    return {
        "exponent": sf.exponent,
        "slope": sf.fit.slope,
        "intercept": sf.fit.intercept,
        "r_squared": sf.fit.r_squared,
        "model": sf.model,
        "power_r_squared": sf.power_r_squared,
        "exponential_r_squared": sf.exponential_r_squared,
    }


def cmd_semiclassical(args) -> int:
    from .semiclassical import stationary_z

    started = time.monotonic()
    lams = np.linspace(args.lambda_min, args.lambda_max, args.steps)
    rows = []
    for lam in lams:
        point = z_min(float(lam), args.v0, args.n)
        n_st = len(stationary_z(float(lam), args.v0))
        rows.append([float(lam), point.z, point.energy_per_particle, n_st])
    crit = critical_lambda(args.v0, args.n)
    summary = "none" if math.isnan(crit) else _fmt(crit)
    text = _csv_table(
        ["lambda", "z_min", "energy_per_particle", "n_stationary_points"], rows
    )
    text += f"# critical_lambda,{summary}\n"
    _atomic_write(args.out, text)
    _write_manifest("semiclassical", _config_dict(args), [args.out], started)
    return 0


def _window(text: str):
    parts = [float(x) for x in text.split(",")]
    if len(parts) != 2 or parts[0] >= parts[1]:
        raise argparse.ArgumentTypeError("expected 'lo,hi' with lo < hi")
    return parts


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="doublewell",
        description="Ground-state analysis of bosons in a tilted double well",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", help="sweep the coupling and tabulate observables")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--v0", type=float, required=True)
    p.add_argument("--lambda-min", type=float, required=True)
    p.add_argument("--lambda-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--dlambda", type=float, default=None)
    p.add_argument("--observables", type=_parse_observables, default=("chi",))
    p.add_argument("--discord-grid", type=int, default=100)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("spectrum", help="number-basis weights of ground states")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--v0", type=float, required=True)
    p.add_argument("--lambdas", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("scaling", help="finite-size scaling of peak data")
    p.add_argument("--v0", type=float, required=True)
    p.add_argument("--n-list", required=True)
    p.add_argument("--target", required=True,
                   choices=("chi-peaks", "discord-peak", "mutual-info-peak"))
    p.add_argument("--lambda-window", type=_window, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_scaling)

    p = sub.add_parser("semiclassical", help="mean-field bifurcation curve")
    p.add_argument("--v0", type=float, required=True)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--lambda-min", type=float, default=0.5)
    p.add_argument("--lambda-max", type=float, default=4.0)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_semiclassical)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "lambda_window", "missing") is None:
        args.lambda_window = [1.8, 2.5] if args.target == "chi-peaks" else [2.0, 2.3]
    try:
        return args.func(args)
    except DoubleWellError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
