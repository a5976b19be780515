"""Command-line front end.

Subcommands: ``sweep``, ``spectrum``, ``evolve``, ``random-ensemble``,
``hp``, ``check-pt``, ``export-operators``. Exit codes: 0 success, 1 usage
error, 2 numerical failure.

The coupling g is fixed to 1 internally; rates are set through
``--gamma-over-g``. CSV output uses 17 significant digits, ``,`` field
separators and LF line endings, so re-running a command reproduces the file
byte for byte (except the wallTimeMs column).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import time
from pathlib import Path
from typing import Optional

import numpy as np

from . import linalg
from .errors import PtlindError
from .hp import delta_from_moments, gaussian_oracle, hp_curves
from .liouvillian import mixedness_obstruction, pt_symmetry_check
from .operators import (
    LindbladModel,
    PTMapSpec,
    build_model,
    model_from_operators,
    parity_swap,
)
from .random_ensemble import random_model, sample_random_jump
from .spectra import classify_dynamics, evolve, liouvillian_spectrum, polarized_product_state
from .steadystate import compute_observables, solve_steady_state
from .tolerances import DEFAULT, Tolerances

G_INTERNAL = 1.0

MODEL_CHOICES = ("spin", "boson", "multijump", "generalized", "appendix-a", "random", "custom")
_KIND_BY_CHOICE = {
    "spin": "spin",
    "boson": "boson",
    "multijump": "multijump",
    "generalized": "generalized",
    "appendix-a": "appendixA",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's default 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.17g}"


def _write_csv(path, header: list[str], rows: list[list], to_stdout: bool = False):
    lines = [",".join(header)]
    lines += [",".join(_fmt(x) for x in row) for row in rows]
    text = "\n".join(lines) + "\n"
    if to_stdout:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, newline="\n")


def parse_gamma_grid(spec: str) -> np.ndarray:
    if spec.startswith("logspace:"):
        parts = spec[len("logspace:"):].split(",")
        if len(parts) != 3:
            raise ValueError("logspace grid needs min,max,points")
        lo, hi, npts = float(parts[0]), float(parts[1]), int(parts[2])
        if lo <= 0 or hi <= lo or npts < 2:
            raise ValueError("logspace grid needs 0 < min < max and points >= 2")
        return np.logspace(np.log10(lo), np.log10(hi), npts)
    vals = np.array([float(x) for x in spec.split(",") if x.strip() != ""])
    if len(vals) == 0:
        raise ValueError("empty rate grid")
    return vals


def tol_override(pair: str) -> tuple[str, float]:
    valid = {f.name: f.type for f in dataclasses.fields(Tolerances)}
    if "=" not in pair:
        raise ValueError(f"--tol expects key=value, got {pair!r}")
    key, val = pair.split("=", 1)
    if key not in valid:
        raise ValueError(f"unknown tolerance {key!r}; known: {sorted(valid)}")
    return key, (int(val) if valid[key] is int else float(val))


def parse_tol_overrides(pairs) -> Tolerances:
    if not pairs:
        return DEFAULT
    return DEFAULT.replaced(**dict(pairs))


def write_operator_file(path, d: int, h_dimless, jumps_dimless, O=None):
    """Plain-text operator file: ``d <int>``, then labeled matrix blocks."""

    def block(label, m):
        rows = []
        for row in np.asarray(m, dtype=complex):
            rows.append(" ".join(f"{z.real:.17g},{z.imag:.17g}" for z in row))
        return "\n".join([label] + rows)

    parts = [f"d {d}"]
    parts.append(block("H", h_dimless))
    for k, c in enumerate(jumps_dimless):
        parts.append(block(f"JUMP {k}", c))
    if O is not None:
        parts.append(block("O", O))
    Path(path).write_text("\n".join(parts) + "\n", newline="\n")


def read_operator_file(path):
    """Returns (d, H, jumps, O); H/O may be None when absent."""
    lines = [ln.rstrip() for ln in Path(path).read_text().splitlines()]
    if not lines or not lines[0].startswith("d "):
        raise PtlindError(f"operator file {path}: first line must be 'd <int>'")
    d = int(lines[0].split()[1])
    blocks: dict[str, list[list[complex]]] = {}
    label = None
    for ln in lines[1:]:
        if not ln.strip():
            continue
        head = ln.strip()
        if head == "H" or head == "O" or head.startswith("JUMP "):
            label = head
            blocks[label] = []
            continue
        if label is None:
            raise PtlindError(f"operator file {path}: data before any block label")
        row = []
        for tok in ln.split():
            re_s, im_s = tok.split(",")
            row.append(complex(float(re_s), float(im_s)))
        blocks[label].append(row)
    matrices = {k: np.array(v, dtype=complex) for k, v in blocks.items()}
    h = matrices.get("H")
    o = matrices.get("O")
    jumps = [matrices[k] for k in sorted(matrices) if k.startswith("JUMP ")]
    return d, h, jumps, o


def _model_for(args, ratio: float, tol: Tolerances) -> LindbladModel:
    gamma = ratio * G_INTERNAL
    if args.model == "random":
        if args.d is None:
            raise PtlindError("random model needs --d")
        model, _ = random_model(args.d, args.seed, G_INTERNAL, gamma, tol)
        return model
    if args.model == "custom":
        if not getattr(args, "operators", None):
            raise PtlindError("custom model needs --operators <path>")
        d, h, jumps, o = read_operator_file(args.operators)
        if o is not None:
            return build_model("custom", d, G_INTERNAL, gamma, {"O": o}, tol)
        if h is None or not jumps:
            raise PtlindError("operator file must contain O, or H plus JUMP blocks")
        return model_from_operators(d, h, jumps, G_INTERNAL, gamma, tol=tol)
    kind = _KIND_BY_CHOICE[args.model]
    if kind == "boson":
        if args.d is None:
            raise PtlindError("boson model needs --d")
        size = args.d
    else:
        if args.S is None:
            raise PtlindError(f"{args.model} model needs --S")
        size = args.S
    extra = {"p": args.p} if kind == "multijump" else None
    return build_model(kind, size, G_INTERNAL, gamma, extra, tol)


def _spin_label(model: LindbladModel) -> Optional[float]:
    if model.ops is not None and model.ops.kind == "spin":
        return (model.d - 1) / 2
    return None


def _sweep_rows(args, grid, tol):
    is_boson = args.model == "boson"
    zcols = ["nA", "nB"] if is_boson else ["szA", "szB"]
    header = (
        ["modelKind", "d", "S", "g", "gammaOverG", "delta", "purity", "negativity"]
        + zcols
        + ["occA", "occB", "residual", "solver", "seed", "wallTimeMs"]
    )
    rows = []
    for ratio in grid:
        t0 = time.perf_counter()
        model = _model_for(args, float(ratio), tol)
        res = solve_steady_state(model, args.solver, tol)
        obs = compute_observables(model, res.rho, tol)
        ms = 1000.0 * (time.perf_counter() - t0)
        rows.append(
            [
                args.model,
                model.d,
                _spin_label(model),
                model.g,
                float(ratio),
                obs.delta if obs.delta_defined else None,
                obs.purity,
                obs.negativity,
                obs.zA,
                obs.zB,
                obs.occA,
                obs.occB,
                res.residual,
                res.solver,
                model.extra.get("seed"),
                ms,
            ]
        )
    return header, rows


def cmd_sweep(args) -> int:
    tol = parse_tol_overrides(args.tol)
    grid = args.gamma_over_g
    header, rows = _sweep_rows(args, grid, tol)
    if args.format == "json":
        recs = [
            {k: (None if isinstance(v, float) and not np.isfinite(v) else v)
             for k, v in zip(header, row)}
            for row in rows
        ]
        Path(args.out).write_text(json.dumps(recs, indent=1) + "\n", newline="\n")
    else:
        _write_csv(args.out, header, rows)
    return 0


def cmd_spectrum(args) -> int:
    tol = parse_tol_overrides(args.tol)
    model = _model_for(args, args.gamma_over_g, tol)
    spec = liouvillian_spectrum(model, tol)
    _write_csv(args.out, ["re", "im"], [[z.real, z.imag] for z in spec.eigenvalues])
    return 0


def cmd_evolve(args) -> int:
    tol = parse_tol_overrides(args.tol)
    model = _model_for(args, args.gamma_over_g, tol)
    rho0 = polarized_product_state(model, "bottom", "top")
    traj = evolve(model, rho0, args.t_max, args.dt_out, tol)
    header = ["t", "szA", "szB", "traceError"]
    rows = [
        [t, za, zb, tr]
        for t, za, zb, tr in zip(traj.times, traj.zA, traj.zB, traj.trace_error)
    ]
    _write_csv(args.out, header, rows)
    if args.classify:
        print(classify_dynamics(traj, model, tol=tol))
    return 0


def cmd_random_ensemble(args) -> int:
    tol = parse_tol_overrides(args.tol)
    grid = args.gamma_over_g
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    manifest = {
        "d": args.d,
        "instances": args.instances,
        "seedBase": args.seed,
        "gammaOverG": [float(x) for x in grid],
        "files": [],
    }
    ns = argparse.Namespace(**vars(args))
    ns.model = "random"
    for k in range(args.instances):
        ns.seed = args.seed + k
        inst = sample_random_jump(args.d, ns.seed, tol)
        header, rows = _sweep_rows(ns, grid, tol)
        fname = f"instance_{k:03d}_seed{inst.seed}.csv"
        _write_csv(outdir / fname, header, rows)
        opname = f"instance_{k:03d}_seed{inst.seed}.ops"
        ref = build_model("custom", args.d, 1.0, 0.5, {"O": inst.O}, tol)
        write_operator_file(outdir / opname, args.d, ref.H, ref.jumps, O=inst.O)
        manifest["files"].append(
            {
                "csv": fname,
                "operators": opname,
                "seed": inst.seed,
                "traceO": abs(np.trace(inst.O)),
                "minSingularValue": float(np.sqrt(max(inst.eigenvalues_of_r_prime[0], 0.0))),
            }
        )
    (outdir / "manifest.json").write_text(json.dumps(manifest, indent=1) + "\n", newline="\n")
    return 0


def cmd_hp(args) -> int:
    grid = args.gamma_over_g
    header = ["gammaOverG", "purity", "negativity", "szDeviation", "deltaInfinity"]
    rows = []
    for ratio in grid:
        curves = hp_curves(G_INTERNAL, float(ratio) * G_INTERNAL)
        mom = gaussian_oracle(G_INTERNAL, float(ratio) * G_INTERNAL)
        if abs(delta_from_moments(mom) - curves.delta_infinity) > 1e-8:
            raise PtlindError("gaussian oracle disagrees with the closed forms")
        rows.append(
            [float(ratio), curves.purity, curves.negativity, curves.sz_deviation,
             curves.delta_infinity]
        )
    _write_csv(args.out, header, rows, to_stdout=args.out is None)
    return 0


def cmd_check_pt(args) -> int:
    tol = parse_tol_overrides(args.tol)
    model = _model_for(args, args.gamma_over_g, tol)
    if args.generalized_map:
        spec = model.pt_spec
    else:
        spec = PTMapSpec(parity=parity_swap(model.d))
    report = pt_symmetry_check(model, spec, tol)
    try:
        obstruction = mixedness_obstruction(model, spec, tol).value
        obs_text = f"{obstruction:.6e}"
    except PtlindError as exc:
        obs_text = f"unavailable ({exc})"
    print(f"PT residual: {report.residual:.6e} (||L||_F = {report.norm:.6e})")
    print(f"symmetric: {report.symmetric}")
    print(f"mixedness obstruction [units of Gamma]: {obs_text}")
    return 0 if report.symmetric else 2


def cmd_export_operators(args) -> int:
    tol = parse_tol_overrides(args.tol)
    # g = 1 and Gamma = 1/2 make the stored blocks exactly dimensionless
    saved = args.gamma_over_g
    args.gamma_over_g = 0.5
    model = _model_for(args, 0.5, tol)
    args.gamma_over_g = saved
    write_operator_file(args.out, model.d, model.H, model.jumps, O=model.O)
    return 0


def _add_model_args(p: _Parser, need_out: bool = True):
    p.add_argument("--model", required=True, choices=MODEL_CHOICES)
    p.add_argument("--S", type=float, default=None, help="spin magnitude (half-integer)")
    p.add_argument("--d", type=int, default=None, help="local dimension (boson/random)")
    p.add_argument("--p", type=float, default=0.8, help="multijump weight")
    p.add_argument("--seed", type=int, default=1, help="random-model seed")
    p.add_argument("--operators", default=None, help="operator file for custom models")
    p.add_argument("--tol", action="append", default=None, type=tol_override,
                   metavar="KEY=VALUE")
    if need_out:
        p.add_argument("--out", required=True)


def build_parser() -> _Parser:
    parser = _Parser(prog="ptlind", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="steady-state observables over a rate grid")
    _add_model_args(p)
    p.add_argument("--gamma-over-g", required=True, type=parse_gamma_grid,
                   help="comma list or logspace:min,max,points")
    p.add_argument("--solver", default="auto", choices=("direct", "relax", "auto"))
    p.add_argument("--format", default="csv", choices=("csv", "json"))
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("spectrum", help="full Liouvillian eigenvalues")
    _add_model_args(p)
    p.add_argument("--gamma-over-g", required=True, type=float)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("evolve", help="time evolution from the polarized state")
    _add_model_args(p)
    p.add_argument("--gamma-over-g", required=True, type=float)
    p.add_argument("--t-max", type=float, default=20.0)
    p.add_argument("--dt-out", type=float, default=0.05)
    p.add_argument("--classify", action="store_true",
                   help="print oscillatory/overdamped after writing the CSV")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("random-ensemble", help="sweep an ensemble of random models")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--instances", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--gamma-over-g", required=True, type=parse_gamma_grid)
    p.add_argument("--solver", default="auto", choices=("direct", "relax", "auto"))
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--tol", action="append", default=None, type=tol_override,
                   metavar="KEY=VALUE")
    p.set_defaults(func=cmd_random_ensemble, model="random", S=None, operators=None, p=0.8)

    p = sub.add_parser("hp", help="large-spin closed forms over a rate grid")
    p.add_argument("--gamma-over-g", required=True, type=parse_gamma_grid)
    p.add_argument("--out", default=None, help="CSV path (stdout when omitted)")
    p.set_defaults(func=cmd_hp)

    p = sub.add_parser("check-pt", help="PT-symmetry check and stationarity diagnostics")
    _add_model_args(p, need_out=False)
    p.add_argument("--gamma-over-g", type=float, default=1.0)
    p.add_argument("--generalized-map", action="store_true",
                   help="use the model's extra unitary in the PT map")
    p.set_defaults(func=cmd_check_pt)

    p = sub.add_parser("export-operators", help="write the model's operator file")
    _add_model_args(p)
    p.add_argument("--gamma-over-g", type=float, default=1.0)
    p.set_defaults(func=cmd_export_operators)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (PtlindError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
