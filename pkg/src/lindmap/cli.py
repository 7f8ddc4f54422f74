"""Command line front end.

    lindmap analyze phi-alpha 0.25
    lindmap choi phiC-beta 0.75 --out choi.json
    lindmap state noisy-w --p 0.95 --out rho.json
    lindmap detect rho.json --gamma 0.5 --witness --ngme
    lindmap sweep gamma --start -0.5 --stop 0.5 --steps 101 --state w --out fig1a.csv

Exit status is 0 on success, 1 for usage errors and 2 for data errors.
Detection verdicts are part of the output, never of the exit status.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

import numpy as np

from . import gme
from .errors import LindmapError, ParseError
from .families import FAMILIES, get_family
from .io import dumps_state, format_csv, matrix_to_json, read_state
from .linalg import default_psd_tol, eigvalsh
from .states import (
    DensityMatrix,
    InvalidState,
    ghz_state,
    maximally_mixed,
    noisy_mix,
    schmidt_state,
    w_state,
)
from .superop import choi, min_output_eigenvalue_over_pure

DEFAULT_SEED = 0
DEFAULT_SAMPLES = 20000
STATE_NAMES = ("w", "ghz", "noisy-w", "noisy-ghz", "mixed", "schmidt")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _param_value(args, symbol: str) -> float:
    flag = getattr(args, symbol, None)
    if args.value is not None and flag is not None and args.value != flag:
        raise UsageError(f"conflicting values {args.value} and --{symbol} {flag}")
    value = args.value if args.value is not None else flag
    if value is None:
        raise UsageError(f"missing parameter value (positional or --{symbol})")
    return value


# ---------------------------------------------------------------------------
# analyze / choi
# ---------------------------------------------------------------------------

def analyze(family: str, value: float, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
            tol: Optional[float] = None) -> dict:
    tol = default_psd_tol() if tol is None else tol
    fam = get_family(family)
    s = fam(value)
    spectrum = eigvalsh(choi(s))
    scan = min_output_eigenvalue_over_pure(s, samples=samples, seed=seed)
    if fam.closed_form_positive is not None:
        positive = bool(fam.closed_form_positive(value))
        method = "closed-form"
    else:
        positive = scan >= -tol
        method = "pure-state-scan"
    return {
        "family": fam.name,
        "parameter": fam.symbol,
        "value": value,
        "positive": positive,
        "positivity_method": method,
        "scan_min_output_eigenvalue": scan,
        "completely_positive": bool(spectrum[0] >= -tol),
        "choi_min_eigenvalue": float(spectrum[0]),
        "choi_spectrum": [float(x) for x in spectrum],
        "positive_range": list(fam.positive_range),
        "cp_range": list(fam.cp_range) if fam.cp_range else None,
        "tolerance": tol,
    }


def cmd_analyze(args) -> str:
    fam = get_family(args.family)
    value = _param_value(args, fam.symbol)
    report = analyze(args.family, value, args.samples, args.seed)
    return json.dumps(report) + "\n"


def cmd_choi(args) -> str:
    fam = get_family(args.family)
    value = _param_value(args, fam.symbol)
    s = fam(value)
    return json.dumps(matrix_to_json(choi(s), (s.dim, s.dim))) + "\n"


# ---------------------------------------------------------------------------
# state / detect
# ---------------------------------------------------------------------------

def build_state(name: str, p: Optional[float] = None, c1: Optional[float] = None,
                c2: Optional[float] = None) -> DensityMatrix:
    if name == "w":
        return w_state()
    if name == "ghz":
        return ghz_state()
    if name == "mixed":
        return maximally_mixed()
    if name in ("noisy-w", "noisy-ghz"):
        if p is None:
            raise UsageError(f"state {name} needs --p")
        return noisy_mix(w_state() if name == "noisy-w" else ghz_state(), p)
    if name == "schmidt":
        if c1 is None:
            raise UsageError("state schmidt needs --c1 (and optionally --c2)")
        if c2 is None:
            c2 = float(np.sqrt(max(0.0, 1.0 - c1 * c1)))
        return schmidt_state(c1, c2)
    raise UsageError(f"unknown state {name!r}; choose from {', '.join(STATE_NAMES)}")


def cmd_state(args) -> str:
    return dumps_state(build_state(args.name, args.p, args.c1, args.c2))


def _resolve_c(text: Optional[str], gamma: float) -> float:
    if text is None:
        return gme.DETECTION_C
    if text == "tight":
        return gme.default_c(gamma)
    return float(text)


def _resolve_K(text: Optional[str]) -> float:
    if text is None:
        return 1.0
    if text == "w":
        return gme.w_normalized_K()
    return float(text)


def cmd_detect(args) -> str:
    rho = read_state(args.state_file, raw=args.raw)
    m = rho.matrix if isinstance(rho, DensityMatrix) else rho
    if m.shape != (8, 8):
        raise ParseError(f"GME detection needs a three-qubit state, got dimension {m.shape[0]}")
    report = gme.detect_gme(m, args.gamma, rotated=args.rotated, c=_resolve_c(args.c, args.gamma),
                            witness=args.witness, ngme=args.ngme, K=_resolve_K(args.K))
    return json.dumps(report.to_dict()) + "\n"


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

def sweep_grid(start: float, stop: float, steps: int) -> np.ndarray:
    if steps < 2:
        raise UsageError("--steps must be at least 2")
    if not start < stop:
        raise UsageError("--start must be smaller than --stop")
    return np.linspace(start, stop, steps)


def _sweep_state(ref: str, p: Optional[float]) -> np.ndarray:
    if ref in STATE_NAMES:
        return build_state(ref, p).matrix
    rho = read_state(ref)
    return rho.matrix


def sweep_family(family: str, grid) -> str:
    fam = get_family(family)
    rows = [(x, float(eigvalsh(choi(fam(x)))[0])) for x in grid]
    return format_csv(["param", "min_eigenvalue"], rows)


def sweep_lifted(param: str, grid, state: str = "w", gamma: float = 0.5, p: Optional[float] = None,
                 rotated: bool = False, c: Optional[str] = None, witness: bool = False,
                 ngme: bool = False, K: Optional[str] = None) -> str:
    header = ["param", "min_eigenvalue"]
    if witness:
        header.append("witness_value")
    if ngme:
        header.append("n_gme")
    k = _resolve_K(K) if ngme else 1.0
    if param == "p":
        base = _sweep_state(state, None)
    else:
        fixed = _sweep_state(state, p)
    rows = []
    for x in grid:
        if param == "p":
            if not 0 <= x <= 1:
                raise UsageError("p sweeps must stay inside [0, 1]")
            m = x * base + (1 - x) * np.eye(8) / 8
            g = gamma
        else:
            m, g = fixed, x
        cc = _resolve_c(c, g)
        row = [x, gme.lifted_min_eigenvalue(m, g, rotated, cc)]
        if witness:
            row.append(gme.witness_value(m, g, c=cc, rotated=rotated))
        if ngme:
            row.append(gme.n_gme(m, k))
        rows.append(row)
    return format_csv(header, rows)


def cmd_sweep(args) -> str:
    grid = sweep_grid(args.start, args.stop, args.steps)
    if args.family:
        fam = get_family(args.family)
        if args.param != fam.symbol:
            raise UsageError(f"family {fam.name} is parameterized by {fam.symbol}, not {args.param}")
        return sweep_family(args.family, grid)
    if args.param not in ("gamma", "p"):
        raise UsageError(f"sweeping {args.param} needs --family")
    return sweep_lifted(args.param, grid, state=args.state, gamma=args.gamma if args.gamma is not None else 0.5,
                        p=args.p, rotated=args.rotated, c=args.c, witness=args.witness,
                        ngme=args.ngme, K=args.K)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lindmap", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    families = sorted(FAMILIES)

    def family_args(p):
        p.add_argument("family", choices=families)
        p.add_argument("value", nargs="?", type=float)
        p.add_argument("--gamma", type=float)
        p.add_argument("--alpha", type=float)
        p.add_argument("--beta", type=float)
        p.add_argument("--out")

    p = sub.add_parser("analyze", help="positivity, complete positivity and Choi spectrum of a map")
    family_args(p)
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("choi", help="dump the Choi matrix of a map as JSON")
    family_args(p)
    p.set_defaults(func=cmd_choi)

    p = sub.add_parser("state", help="write a reference state as JSON")
    p.add_argument("name", choices=STATE_NAMES)
    p.add_argument("--p", type=float)
    p.add_argument("--c1", type=float)
    p.add_argument("--c2", type=float)
    p.add_argument("--out")
    p.set_defaults(func=cmd_state)

    def lifted_args(p):
        p.add_argument("--rotated", action="store_true", help="compose each local map with sigma_x")
        p.add_argument("--witness", action="store_true")
        p.add_argument("--ngme", action="store_true")
        p.add_argument("--K", help="n_gme normalization: a positive number or 'w'")
        p.add_argument("--c", help="trace-term constant: a number or 'tight' for 2|gamma| (default 1)")
        p.add_argument("--out")

    p = sub.add_parser("detect", help="GME detection report for a three-qubit state file")
    p.add_argument("state_file")
    p.add_argument("--gamma", type=float, default=0.5)
    p.add_argument("--raw", action="store_true", help="skip density-matrix validation")
    lifted_args(p)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("sweep", help="CSV sweep over a map or state parameter")
    p.add_argument("param", choices=("gamma", "alpha", "beta", "p"))
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--family", choices=families)
    p.add_argument("--state", default="w", help=f"one of {', '.join(STATE_NAMES)} or a JSON file")
    p.add_argument("--gamma", type=float, help="fixed gamma for p sweeps (default 0.5)")
    p.add_argument("--p", type=float, help="noise weight for noisy-* states in gamma sweeps")
    lifted_args(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = args.func(args)
    except UsageError as exc:
        print(f"lindmap: error: {exc}", file=sys.stderr)
        return 1
    except (LindmapError, InvalidState, OSError, ValueError) as exc:
        print(f"lindmap: error: {exc}", file=sys.stderr)
        return 2
    _emit(text, getattr(args, "out", None))
    return 0


if __name__ == "__main__":
    sys.exit(main())
