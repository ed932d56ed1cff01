"""Command-line interface.

Reproduces every figure's underlying data as CSV/JSON and runs the
built-in verification suite.  Output files carry no timestamps; run
metadata goes to a `.meta.json` sidecar so that identical configurations
produce byte-identical data files.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional

from . import __version__
from .algebra import (
    contraction_csv,
    contraction_error,
    eigensystem_check,
    verify_gdo_relations,
    verify_ladder_equation,
)
from .errors import ConvergenceError, HgstateError, InvalidParams
from .phasespace import (
    GridSpec,
    Q_KIND,
    WIGNER_KIND,
    evaluate_grid,
    grid_to_csv,
    grid_to_json,
)
from .states import (
    HgsParams,
    binomial_amplitudes,
    hgs_amplitudes,
    l_min,
    number_state,
    state_to_csv,
    state_to_json,
)
from .statistics import closed_form_stats, squeezing_scan, squeezing_scan_csv, stats_to_csv
from .verification import run_all

ADMISSIBILITY = "L >= max(M/eta, M/(1-eta))"

_DEFAULT_GRID = "-4:4:-4:4:161x161"
_DEFAULT_WIGNER_GRID = "-3:3:-3:3:121x121"

# Figure-reproduction presets: one command regenerates one figure's data.
PRESETS = {
    # squeezing index versus deformation parameter, M=5, eta=0.5
    "fig1a": {"command": "squeezing-scan", "M": 5, "eta": 0.5,
              "L_list": ",".join(str(v) for v in range(10, 131, 2))},
    # Q function versus L at M=5, eta=0.5, then the eta=0.9 companion
    "fig3a": {"command": "qfunc", "state": "hgs", "M": 5, "eta": 0.5, "L": "10"},
    "fig3b": {"command": "qfunc", "state": "hgs", "M": 5, "eta": 0.5, "L": "20"},
    "fig3c": {"command": "qfunc", "state": "hgs", "M": 5, "eta": 0.5, "L": "40"},
    "fig3d": {"command": "qfunc", "state": "binomial", "M": 5, "eta": 0.5},
    "fig3e": {"command": "qfunc", "state": "hgs", "M": 5, "eta": 0.9, "L": "50"},
    # Q contour sources
    "fig4a": {"command": "qfunc", "state": "hgs", "M": 5, "eta": 0.5, "L": "10"},
    "fig4b": {"command": "qfunc", "state": "hgs", "M": 5, "eta": 0.5, "L": "28"},
    "fig4c": {"command": "qfunc", "state": "binomial", "M": 5, "eta": 0.5},
    "fig4d": {"command": "qfunc", "state": "hgs", "M": 50, "eta": 0.5, "L": "100",
              "grid": "-9:9:-9:9:181x181"},
    # Wigner functions at M=2 with the smallest admissible L per eta
    "fig5a": {"command": "wigner", "state": "hgs", "M": 2, "eta": 0.2, "L": "min"},
    "fig5b": {"command": "wigner", "state": "hgs", "M": 2, "eta": 0.5, "L": "min"},
    "fig5c": {"command": "wigner", "state": "hgs", "M": 2, "eta": 0.9, "L": "min"},
    "fig5d": {"command": "wigner", "state": "number", "n": 2},
    # binomial-state Wigner references
    "fig6b": {"command": "wigner", "state": "binomial", "M": 2, "eta": 0.5},
    "fig6c": {"command": "wigner", "state": "binomial", "M": 2, "eta": 0.9},
}


@dataclass
class RunConfig:
    """Validated invocation: one command plus its resolved inputs."""

    command: str
    params: dict
    grid: Optional[GridSpec]
    tol: float
    output_path: Optional[str]
    format: str


def parse_grid(token: str) -> GridSpec:
    """Parse xmin:xmax:ymin:ymax:NXxNY into a GridSpec."""
    parts = token.split(":")
    if len(parts) != 5 or "x" not in parts[4]:
        raise argparse.ArgumentTypeError(
            f"grid must look like -4:4:-4:4:161x161, got {token!r}"
        )
    try:
        x_min, x_max, y_min, y_max = (float(p) for p in parts[:4])
        nx_token, ny_token = parts[4].split("x", 1)
        nx, ny = int(nx_token), int(ny_token)
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"bad grid token {token!r}: {err}") from None
    try:
        return GridSpec(x_min, x_max, y_min, y_max, nx, ny)
    except InvalidParams as err:
        raise argparse.ArgumentTypeError(str(err)) from None


def _workers() -> int:
    raw = os.environ.get("HGSTATE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _resolve_l(token, m, eta) -> float:
    if token is None:
        raise InvalidParams("--L is required for a hypergeometric state")
    if isinstance(token, str) and token.strip().lower() == "min":
        return l_min(m, eta)
    return float(token)


def _build_state(params: dict):
    kind = params.get("state", "hgs")
    if kind == "hgs":
        hp = HgsParams(_resolve_l(params.get("L"), params["M"], params["eta"]),
                       params["M"], params["eta"])
        return hgs_amplitudes(hp)
    if kind == "binomial":
        return binomial_amplitudes(params["M"], params["eta"])
    if kind == "number":
        n = params["n"]
        return number_state(n, n + 1)
    raise InvalidParams(f"unknown state kind {kind!r}")


def _emit(text: str, config: RunConfig):
    if config.output_path is None:
        sys.stdout.write(text)
        return
    with open(config.output_path, "w") as handle:
        handle.write(text)
    meta = {
        "command": config.command,
        "format": config.format,
        "params": config.params,
        "grid": None if config.grid is None else {
            "x_min": config.grid.x_min, "x_max": config.grid.x_max,
            "y_min": config.grid.y_min, "y_max": config.grid.y_max,
            "nx": config.grid.nx, "ny": config.grid.ny,
        },
        "tol": config.tol,
        "version": __version__,
    }
    with open(config.output_path + ".meta.json", "w") as handle:
        json.dump(meta, handle, indent=2, sort_keys=True)
        handle.write("\n")


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _run_amplitudes(config: RunConfig) -> int:
    state = hgs_amplitudes(HgsParams(
        _resolve_l(config.params.get("L"), config.params["M"], config.params["eta"]),
        config.params["M"], config.params["eta"]))
    text = _json_text(state_to_json(state)) if config.format == "json" else state_to_csv(state)
    _emit(text, config)
    return 0


def _run_stats(config: RunConfig) -> int:
    stats = closed_form_stats(HgsParams(
        _resolve_l(config.params.get("L"), config.params["M"], config.params["eta"]),
        config.params["M"], config.params["eta"]))
    text = _json_text(stats.as_dict()) if config.format == "json" else stats_to_csv(stats)
    _emit(text, config)
    return 0


def _parse_l_list(token, m, eta):
    values = []
    for piece in token.split(","):
        piece = piece.strip()
        if not piece:
            continue
        values.append(l_min(m, eta) if piece.lower() == "min" else float(piece))
    return values


def _run_squeezing_scan(config: RunConfig) -> int:
    m, eta = config.params["M"], config.params["eta"]
    l_values = _parse_l_list(config.params["L_list"], m, eta)
    rows, skipped = squeezing_scan(m, eta, l_values)
    for big_l, reason in skipped:
        print(f"warning: skipping L={big_l}: {reason}", file=sys.stderr)
    if config.format == "json":
        text = _json_text({"rows": [list(row) for row in rows],
                           "skipped": [list(rec) for rec in skipped]})
    else:
        text = squeezing_scan_csv(rows)
    _emit(text, config)
    return 0


def _run_grid_command(config: RunConfig, kind: str) -> int:
    state = _build_state(config.params)
    grid = evaluate_grid(state, kind, config.grid, tol=config.tol, workers=_workers())
    text = _json_text(grid_to_json(grid)) if config.format == "json" else grid_to_csv(grid)
    _emit(text, config)
    return 0


def _run_algebra_check(config: RunConfig) -> int:
    params = HgsParams(
        _resolve_l(config.params.get("L"), config.params["M"], config.params["eta"]),
        config.params["M"], config.params["eta"])
    devs = verify_gdo_relations(params)
    residual = verify_ladder_equation(params)
    eigenvalues, match = eigensystem_check(params)
    tol = config.tol
    checks = [
        ("commutator", devs.commutator <= tol, f"{devs.commutator:.3e}"),
        ("product-minus", devs.product_minus <= tol, f"{devs.product_minus:.3e}"),
        ("product-plus", devs.product_plus <= tol, f"{devs.product_plus:.3e}"),
        ("ladder-residual", residual <= tol, f"{residual:.3e}"),
        ("eigenvector-fidelity", match > 1.0 - tol, f"{match:.12f}"),
    ]
    for name, ok, detail in checks:
        print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail} (params {params})")
    report = {
        "params": {"L": params.L, "M": params.M, "eta": params.eta},
        "commutator": devs.commutator,
        "product_minus": devs.product_minus,
        "product_plus": devs.product_plus,
        "ladder_residual": residual,
        "eigenvalues": eigenvalues.tolist(),
        "hgs_match_fidelity": match,
    }
    contraction_token = config.params.get("contraction")
    if contraction_token:
        l_values = _parse_l_list(contraction_token, params.M, params.eta)
        rows, skipped = contraction_error(params.M, params.eta, l_values)
        for big_l, reason in skipped:
            print(f"warning: skipping L={big_l}: {reason}", file=sys.stderr)
        _emit(contraction_csv(rows), config)
    elif config.output_path is not None:
        _emit(_json_text(report), config)
    return 0 if all(ok for _, ok, _ in checks) else 1


def _run_verify(config: RunConfig) -> int:
    results = run_all()
    for result in results:
        print(f"{'PASS' if result.passed else 'FAIL'}  {result.name}: {result.detail}")
    failures = sum(1 for result in results if not result.passed)
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return 0 if failures == 0 else 1


_RUNNERS = {
    "amplitudes": _run_amplitudes,
    "stats": _run_stats,
    "squeezing-scan": _run_squeezing_scan,
    "qfunc": lambda config: _run_grid_command(config, Q_KIND),
    "wigner": lambda config: _run_grid_command(config, WIGNER_KIND),
    "algebra-check": _run_algebra_check,
    "verify": _run_verify,
}


def run(config: RunConfig) -> int:
    """Execute a validated configuration; returns the process exit code."""
    return _RUNNERS[config.command](config)


def _add_output_flags(sub):
    sub.add_argument("-o", "--output", default=None,
                     help="output file (default: stdout); a .meta.json sidecar is written next to it")
    sub.add_argument("--format", choices=("csv", "json"), default="csv",
                     help="output format (default: csv)")


def _add_hgs_flags(sub, require_l=True):
    sub.add_argument("--L", default=None,
                     help="deformation parameter; a number or 'min' for the smallest "
                          f"admissible value ({ADMISSIBILITY})"
                          + ("" if require_l else "; ignored for non-hgs states"))
    sub.add_argument("--M", type=int, default=None, help="top Fock level (default: preset value)")
    sub.add_argument("--eta", type=float, default=None, help="probability in (0,1) (default: preset value)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hgstate",
        description="Hypergeometric states: amplitudes, photon statistics, "
                    "deformed-algebra checks and phase-space grids. "
                    f"Admissibility constraint: {ADMISSIBILITY}.",
        epilog="Figure presets: " + ", ".join(sorted(PRESETS)) + ".",
    )
    parser.add_argument("--version", action="version", version=f"hgstate {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("amplitudes", help="hypergeometric state amplitudes")
    _add_hgs_flags(sub)
    _add_output_flags(sub)

    sub = subs.add_parser("stats", help="closed-form photon statistics record")
    _add_hgs_flags(sub)
    _add_output_flags(sub)

    sub = subs.add_parser("squeezing-scan", help="squeezing indices along an L ladder")
    sub.add_argument("--M", type=int, default=None, help="top Fock level")
    sub.add_argument("--eta", type=float, default=None, help="probability in (0,1)")
    sub.add_argument("--L", dest="L_list", default=None,
                     help="comma-separated L values; each may be a number or 'min'")
    sub.add_argument("--preset", choices=[k for k, v in PRESETS.items() if v["command"] == "squeezing-scan"],
                     default=None, help="figure preset supplying M, eta and the L ladder")
    _add_output_flags(sub)

    for name, help_text in (("qfunc", "Q function on a grid"),
                            ("wigner", "Wigner function on a grid")):
        sub = subs.add_parser(name, help=help_text)
        sub.add_argument("--state", choices=("hgs", "binomial", "number"), default=None,
                         help="state kind (default: hgs)")
        _add_hgs_flags(sub, require_l=False)
        sub.add_argument("--n", type=int, default=None, help="level for --state number")
        sub.add_argument("--grid", default=None,
                         help=f"xmin:xmax:ymin:ymax:NXxNY (default: {_DEFAULT_GRID} for qfunc, "
                              f"{_DEFAULT_WIGNER_GRID} for wigner)")
        sub.add_argument("--tol", type=float, default=1e-9,
                         help="per-point series tolerance (default: 1e-9; used by wigner)")
        sub.add_argument("--preset", choices=[k for k, v in PRESETS.items() if v["command"] == name],
                         default=None, help="figure preset supplying state and grid")
        _add_output_flags(sub)

    sub = subs.add_parser("algebra-check", help="ladder-equation and deformed-algebra checks")
    _add_hgs_flags(sub)
    sub.add_argument("--tol", type=float, default=1e-10,
                     help="pass threshold for the checks (default: 1e-10)")
    sub.add_argument("--contraction", default=None,
                     help="comma-separated L values; emits the contraction table CSV")
    _add_output_flags(sub)

    sub = subs.add_parser("verify", help="run the full verification suite")

    return parser


def _apply_preset(args):
    preset = PRESETS[args.preset]
    if preset["command"] != args.command:
        raise InvalidParams(f"preset {args.preset} belongs to {preset['command']}")
    for key, value in preset.items():
        if key == "command":
            continue
        if key == "grid":
            if args.grid is None:
                args.grid = value
            continue
        if getattr(args, key, None) is None:
            setattr(args, key, value)


def _config_from_args(args) -> RunConfig:
    command = args.command
    params = {}
    grid = None
    tol = getattr(args, "tol", 1e-9)
    if getattr(args, "preset", None):
        _apply_preset(args)
    if command in ("amplitudes", "stats", "algebra-check"):
        if args.M is None or args.eta is None:
            raise InvalidParams(f"{command} requires --M and --eta")
        params = {"L": args.L, "M": args.M, "eta": args.eta}
        if command == "algebra-check" and args.contraction:
            params["contraction"] = args.contraction
    elif command == "squeezing-scan":
        if args.M is None or args.eta is None or args.L_list is None:
            raise InvalidParams("squeezing-scan requires --M, --eta and --L (or --preset)")
        params = {"M": args.M, "eta": args.eta, "L_list": args.L_list}
    elif command in ("qfunc", "wigner"):
        state = args.state or "hgs"
        params = {"state": state}
        if state == "number":
            if args.n is None:
                raise InvalidParams("--state number requires --n")
            params["n"] = args.n
        else:
            if args.M is None or args.eta is None:
                raise InvalidParams(f"{command} requires --M and --eta (or --preset)")
            params.update(M=args.M, eta=args.eta)
            if state == "hgs":
                params["L"] = args.L
        default = _DEFAULT_GRID if command == "qfunc" else _DEFAULT_WIGNER_GRID
        grid = parse_grid(args.grid if args.grid is not None else default)
    output = getattr(args, "output", None)
    fmt = getattr(args, "format", "csv")
    return RunConfig(command, params, grid, tol, output, fmt)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        return run(config)
    except ConvergenceError as err:
        print(f"error: {err}", file=sys.stderr)
        return 3
    except (InvalidParams, HgstateError, IndexError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def console_main():
    sys.exit(main())


if __name__ == "__main__":
    console_main()
