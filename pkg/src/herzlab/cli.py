"""Command-line front end.

Subcommands: norm, decompose, atoms, sweep, verify, oracle.
Exit codes: 0 pass, 1 check failure, 2 usage/config error.

Outputs are deterministic for a fixed config and seed; per-check
runtimes are only written when --timings is passed so report files
byte-compare across runs.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import atoms as at
from . import operators as ops
from .config import SuiteConfig, load_config, parse_exponent
from .dilation import make_dilation, parse_matrix
from .errors import ConfigError, HerzlabError, IoError
from .grandseq import Sequence
from .grid import (
    GridFunction,
    GridSpec,
    descriptor_from_json,
    from_descriptor,
    load_csv,
    save_csv,
)
from .herz import (
    HerzSpaceParams,
    block_decompose,
    herz_norm_report,
)
from .oracles import oracle_run
from .reports import VerificationReport, all_passed, write_csv_summary, write_json
from .suites import run_suite


def _herz_params(raw: dict) -> HerzSpaceParams:
    kr = None
    if "herz.kmin" in raw and "herz.kmax" in raw:
        kr = (int(raw["herz.kmin"]), int(raw["herz.kmax"]))
    return HerzSpaceParams(
        alpha=parse_exponent(raw.get("herz.alpha", "const:0.5")),
        p=float(raw.get("herz.p", 1.0)),
        q=parse_exponent(raw.get("herz.q", "const:2")),
        theta=float(raw.get("herz.theta", 1.0)),
        lambda_morrey=float(raw.get("herz.lambda", 0.0)),
        homogeneous=bool(int(raw.get("herz.homogeneous", 1))),
        delta2=float(raw["herz.delta2"]) if "herz.delta2" in raw else None,
        krange=kr,
    )


def _load_input(path, raw: dict | None = None, dim: int = 1) -> GridFunction:
    p = Path(path)
    if not p.exists():
        raise IoError(f"input file {path} not found")
    if p.suffix == ".json":
        # synthetic-family descriptor; grid geometry comes from the config
        raw = raw or {}
        spec = GridSpec(radius=float(raw.get("grid.radius", 2.0)), dim=dim,
                        resolution=int(raw.get("grid.resolution", 1024)))
        return from_descriptor(spec, descriptor_from_json(p.read_text()))
    return load_csv(p)


def _dilation_from(raw: dict, matrix: str | None = None):
    text = matrix if matrix else str(raw.get("dilation.matrix", "2"))
    return make_dilation(parse_matrix(text))


def _emit(obj: dict, out: str | None) -> None:
    text = json.dumps(obj, indent=2, default=_json_default) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _json_default(v):
    if isinstance(v, float) and not math.isfinite(v):
        return repr(v)
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, (np.integer, np.floating, np.bool_)):
        return v.item()
    raise TypeError(f"not JSON serializable: {type(v)}")


# --- subcommands ------------------------------------------------------------

def _cmd_norm(args) -> int:
    raw = load_config(args.config) if args.config else {}
    d = _dilation_from(raw, args.matrix)
    f = _load_input(args.input, raw, d.dim)
    params = _herz_params(raw)
    rep = herz_norm_report(f, d, params, space=args.space)
    _emit(rep, args.out)
    return 0


def _cmd_decompose(args) -> int:
    raw = load_config(args.config) if args.config else {}
    d = _dilation_from(raw, args.matrix)
    f = _load_input(args.input, raw, d.dim)
    params = _herz_params(raw)
    dec = block_decompose(f, d, params)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    manifest = {
        "coefficients": dec.coefficients.to_json_dict(),
        "blocks": {},
    }
    for k in dec.block_indices():
        name = f"block_{k:+05d}.csv"
        save_csv(dec.blocks[k], outdir / name)
        manifest["blocks"][str(k)] = name
    (outdir / "manifest.json").write_text(
        json.dumps(manifest, indent=2, default=_json_default) + "\n")
    return 0


def _cmd_atoms(args) -> int:
    raw = load_config(args.config) if args.config else {}
    d = _dilation_from(raw, args.matrix)
    params = _herz_params(raw)
    res = int(args.resolution or raw.get("grid.resolution", 1024))
    radius = float(raw.get("grid.radius", 2.0))
    spec = GridSpec(radius=radius, dim=d.dim, resolution=res)

    if args.action == "make":
        atom = at.atom_make(args.kind, args.k, args.s, d, params, spec)
        outdir = Path(args.out or "atom_out")
        outdir.mkdir(parents=True, exist_ok=True)
        save_csv(atom.data, outdir / "atom.csv")
        rep = at.atom_validate(atom.data, atom.scale_index, d, params,
                               atom.moment_order)
        meta = {"k": atom.scale_index, "s": atom.moment_order,
                "kind": args.kind, "validation": rep}
        (outdir / "atom.json").write_text(
            json.dumps(meta, indent=2, default=_json_default) + "\n")
        return 0

    if args.action == "validate":
        f = _load_input(args.input)
        rep = at.atom_validate(f, args.k, d, params, args.s)
        _emit(rep, args.out)
        return 0 if rep["pass"] else 1

    # sumcheck: manifest lists atom CSVs, scales, moment orders, weights
    manifest = json.loads(Path(args.manifest).read_text())
    atoms = []
    for entry in manifest["atoms"]:
        data = _load_input(entry["path"])
        atoms.append(at.Atom(data=data, scale_index=int(entry["k"]),
                             moment_order=int(entry.get("s", 0)),
                             params=params))
    lam = Sequence(np.asarray(manifest["coefficients"], dtype=float))
    phi = at.make_mollifier(d, atoms[0].data.spec)
    rep = at.atomic_sum_check(atoms, lam, params, phi, d)
    _emit(rep, args.out)
    return 0


def _parse_range(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) == 1:
        return [float(parts[0])]
    if len(parts) != 3:
        raise ConfigError(f"range must be lo:hi:step, got {text!r}")
    lo, hi, step = (float(v) for v in parts)
    if step <= 0:
        raise ConfigError("range step must be positive")
    n = int(round((hi - lo) / step)) + 1
    return [lo + i * step for i in range(n) if lo + i * step <= hi + 1e-12]


def _viridis(t: float) -> str:
    stops = [(68, 1, 84), (59, 82, 139), (33, 145, 140),
             (94, 201, 98), (253, 231, 37)]
    t = min(max(t, 0.0), 1.0) * (len(stops) - 1)
    i = min(int(t), len(stops) - 2)
    frac = t - i
    rgb = [int(a + frac * (b - a)) for a, b in zip(stops[i], stops[i + 1])]
    return f"rgb({rgb[0]},{rgb[1]},{rgb[2]})"


def _write_svg_heatmap(rows: list[dict], path) -> None:
    alphas = sorted({r["alpha"] for r in rows})
    lams = sorted({r["lambda"] for r in rows})
    vals = {(r["alpha"], r["lambda"]): r["sup_ratio"] for r in rows}
    finite = [v for v in vals.values() if math.isfinite(v)]
    vmax = max(finite) if finite else 1.0
    vmin = min(finite) if finite else 0.0
    cell, margin = 28, 60
    width = margin + cell * len(alphas) + 20
    height = margin + cell * len(lams) + 20
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
             f'height="{height}">']
    for i, a in enumerate(alphas):
        for j, l in enumerate(lams):
            v = vals.get((a, l), float("nan"))
            t = 0.0 if vmax == vmin else (v - vmin) / (vmax - vmin)
            color = _viridis(t) if math.isfinite(v) else "rgb(200,200,200)"
            x, y = margin + i * cell, margin + j * cell
            parts.append(f'<rect x="{x}" y="{y}" width="{cell}" '
                         f'height="{cell}" fill="{color}">'
                         f'<title>alpha={a:g} lambda={l:g} sup={v:g}</title>'
                         f'</rect>')
    for i, a in enumerate(alphas):
        parts.append(f'<text x="{margin + i * cell + 4}" y="{margin - 8}" '
                     f'font-size="9">{a:g}</text>')
    for j, l in enumerate(lams):
        parts.append(f'<text x="4" y="{margin + j * cell + 16}" '
                     f'font-size="9">{l:g}</text>')
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n")


def _cmd_sweep(args) -> int:
    raw = load_config(args.config) if args.config else {}
    d = _dilation_from(raw, args.matrix)
    res = int(args.resolution or raw.get("grid.resolution", 512))
    radius = float(raw.get("grid.radius", 2.0))
    spec = GridSpec(radius=radius, dim=d.dim, resolution=res)

    x = spec.points()
    r = spec.radii()
    seeds = [
        GridFunction(spec, (r < 0.5).astype(float)),
        GridFunction(spec, np.exp(-8.0 * r**2)),
        GridFunction(spec, ((r >= 0.5) & (r < 1.0)).astype(float)),
    ]
    scales = 5
    if args.family:
        for part in args.family.split(","):
            key, _, val = part.partition("=")
            if key.strip() == "scales":
                scales = int(val)
    family = ops.scale_translate_family(seeds, d, scales * len(seeds),
                                        seed=args.seed)

    t_spec = ops.OperatorSpec(kind=args.operator, cutoff=args.cutoff)
    alphas = _parse_range(args.alpha)
    lams = _parse_range(getattr(args, "lambda"))
    delta2 = float(raw.get("herz.delta2", 0.5))
    rows = ops.boundedness_sweep(t_spec, d, alphas, lams, family,
                                 delta2=delta2)

    out = Path(args.out or "sweep.csv")
    with open(out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["alpha", "lambda", "family_size", "sup_ratio",
                         "admissible"])
        for row in rows:
            writer.writerow([row["alpha"], row["lambda"],
                             row["family_size"], repr(float(row["sup_ratio"])),
                             int(row["admissible"])])
    if args.svg:
        _write_svg_heatmap(rows, out.with_suffix(".svg"))
    return 0


def _cmd_verify(args) -> int:
    cfg = SuiteConfig.from_file(args.config) if args.config else SuiteConfig()
    if args.seed is not None:
        cfg.seed = args.seed
    if args.out:
        cfg.out_dir = args.out
    reports = run_suite(args.suite, cfg)
    outdir = Path(cfg.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    emitted = reports if args.timings else [
        VerificationReport(**{**r.__dict__, "runtime_s": 0.0})
        for r in reports
    ]
    if args.format == "csv":
        write_csv_summary(emitted, outdir / f"{args.suite}.csv")
    else:
        write_json(emitted, outdir / f"{args.suite}.json")
        write_csv_summary(emitted, outdir / f"{args.suite}.csv")
    n_fail = sum(0 if r.ok() else 1 for r in reports)
    for r in reports:
        status = "pass" if r.ok() else ("FAIL" if r.asserted else "info")
        sys.stdout.write(f"[{status}] {r.check}\n")
    sys.stdout.write(f"{len(reports) - n_fail}/{len(reports)} checks ok\n")
    return 0 if all_passed(reports) else 1


def _cmd_oracle(args) -> int:
    cfg = load_config(args.config) if args.config else {}
    sub = {k.split(".", 1)[1]: v for k, v in cfg.items()
           if k.startswith("oracle.")}
    rep = oracle_run(args.target, sub)
    _emit(rep, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="herzlab",
        description="Anisotropic grand Herz-type norms of discretized "
                    "functions: norms, decompositions, operator sweeps, "
                    "verification suites.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm", help="compute a Herz-type norm of a grid CSV")
    p.add_argument("--space", choices=["herz", "herz-morrey", "nonhomog"],
                   default="herz")
    p.add_argument("--config", default=None)
    p.add_argument("--matrix", default=None,
                   help="dilation rows, e.g. '2 1; 0 2' (overrides config)")
    p.add_argument("--input", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_norm)

    p = sub.add_parser("decompose", help="central-block decomposition")
    p.add_argument("--config", default=None)
    p.add_argument("--matrix", default=None)
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_decompose)

    p = sub.add_parser("atoms", help="make/validate/sumcheck central atoms")
    p.add_argument("action", choices=["make", "validate", "sumcheck"])
    p.add_argument("--matrix", default=None)
    p.add_argument("--kind", default="bump_corrected",
                   choices=["haar", "bump_corrected"])
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--config", default=None)
    p.add_argument("--input", default=None)
    p.add_argument("--manifest", default=None)
    p.add_argument("--resolution", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_atoms)

    p = sub.add_parser("sweep", help="operator boundedness sweep")
    p.add_argument("--operator", default="hardy",
                   choices=["hardy", "truncated_riesz", "maximal", "identity"])
    p.add_argument("--alpha", default="0.05:0.45:0.05")
    p.add_argument("--lambda", default="0")
    p.add_argument("--family", default="scales=5")
    p.add_argument("--cutoff", type=float, default=0.25)
    p.add_argument("--config", default=None)
    p.add_argument("--matrix", default=None)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--resolution", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--svg", action="store_true")
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", default="all")
    p.add_argument("--config", default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--timings", action="store_true",
                   help="include wall times in report files "
                        "(breaks byte-determinism)")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("oracle", help="emit independent reference values")
    p.add_argument("--target", required=True)
    p.add_argument("--config", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigError, IoError) as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return 2
    except HerzlabError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
