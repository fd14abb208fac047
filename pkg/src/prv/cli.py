"""Command-line interface.

Subcommands: ``compute`` (measures on a CSV or built-in table),
``reproduce`` (regenerate the built-in reference tables and diff),
``coverage`` (Monte Carlo interval coverage) and ``gen`` (emit generated
tables as CSV).  Data goes to stdout, diagnostics to stderr.  Exit codes:
0 ok, 1 reproduction mismatch, 2 bad input, 3 degenerate table, 4 boundary
case (point estimate still printed).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import datagen, reference
from .errors import (
    DEGENERATE_ERRORS,
    INPUT_ERRORS,
    BoundaryCase,
    PrvError,
    UnknownName,
)
from .ffamily import FSpec, resolve
from .inference import (
    CIConfig,
    bootstrap_summary,
    confidence_interval,
    coverage_sim,
)
from .measures import MeasureEstimate, phi_f, phi_geo
from .table import ContingencyTable, ProbabilityTable, from_counts, parse_csv

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_DEGENERATE = 3
EXIT_BOUNDARY = 4

_MEASURE_TOKENS = {"prv": "phi_f", "geoprv": "phi_geo"}
_KIND_TOKENS = {v: k for k, v in _MEASURE_TOKENS.items()}


@dataclass
class RunReport:
    """One computation, serialized losslessly to the stable JSON schema."""

    input: dict
    settings: dict
    result: dict
    diagnostics: dict
    timing_ms: float

    def to_json(self) -> str:
        return json.dumps(asdict(self))

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls(**json.loads(text))


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the message
        return int(exc.code or 0)
    try:
        return args.func(args)
    except BoundaryCase as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUNDARY
    except DEGENERATE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prv",
        description="Association measures for two-way contingency tables "
        "(arithmetic and geometric proportional reduction in variation).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fgrp = argparse.ArgumentParser(add_help=False)
    fgrp.add_argument("--f", choices=("power", "omega"), default="power",
                      help="generator family (default: power)")
    fgrp.add_argument("--lambda", dest="lam", type=float, default=None,
                      help="power-family parameter (> -1; default 0)")
    fgrp.add_argument("--omega", dest="omega", type=float, default=None,
                      help="omega-family parameter (in [0, 1); default 0)")

    seedgrp = argparse.ArgumentParser(add_help=False)
    seedgrp.add_argument("--seed", type=int, default=None,
                         help="RNG seed (default: $PRV_SEED, else 0)")
    seedgrp.add_argument("--workers", type=int, default=1,
                         help="worker threads for replicated computations; "
                         "never changes results")

    p_compute = sub.add_parser("compute", parents=[fgrp, seedgrp],
                               help="compute measures for one table")
    src = p_compute.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="CSV path of counts, or - for stdin")
    src.add_argument("--named", help="built-in table name "
                     "(artificial-1a/1b/1c, cannabis, occupation-1975/1985)")
    p_compute.add_argument("--measure", choices=("prv", "geoprv", "both"),
                           default="both")
    p_compute.add_argument("--alpha", type=float, default=0.05)
    p_compute.add_argument("--se-method", dest="se_method",
                           choices=("delta", "delta-numeric", "bootstrap", "none"),
                           default="delta")
    p_compute.add_argument("--boot-reps", dest="boot_reps", type=int, default=10000)
    p_compute.add_argument("--smooth", type=float, default=0.0,
                           help="add this amount to every count before normalizing")
    p_compute.add_argument("--drop-empty-cols", action="store_true",
                           help="drop all-zero rows and columns before validation")
    p_compute.add_argument("--header-row", choices=("auto", "yes", "no"), default="auto")
    p_compute.add_argument("--label-col", choices=("auto", "yes", "no"), default="auto")
    p_compute.add_argument("--json", action="store_true")
    p_compute.set_defaults(func=cmd_compute)

    p_rep = sub.add_parser("reproduce", parents=[seedgrp],
                           help="regenerate the built-in reference tables and diff")
    which = p_rep.add_mutually_exclusive_group(required=True)
    which.add_argument("--all", action="store_true",
                       help="reproduce every measure table (2, 5, 6, 8, 9)")
    which.add_argument("--table", action="append",
                       choices=("2", "4", "5", "6", "8", "9"),
                       help="reproduce one table (repeatable)")
    p_rep.add_argument("--out", default="prv-reproduce", help="output directory")
    p_rep.add_argument("--se-method", dest="se_method",
                       choices=("delta", "delta-numeric", "bootstrap"), default="delta")
    p_rep.add_argument("--boot-reps", dest="boot_reps", type=int, default=10000)
    p_rep.set_defaults(func=cmd_reproduce)

    p_cov = sub.add_parser("coverage", parents=[fgrp, seedgrp],
                           help="Monte Carlo confidence-interval coverage")
    csrc = p_cov.add_mutually_exclusive_group(required=True)
    csrc.add_argument("--bvn-rho", dest="bvn_rho", type=float,
                      help="truth: quartile-cut bivariate normal with this correlation")
    csrc.add_argument("--named", help="truth: built-in probability table")
    p_cov.add_argument("--measure", choices=("prv", "geoprv"), default="geoprv")
    p_cov.add_argument("--n", type=int, required=True, help="sample size per replicate")
    p_cov.add_argument("--reps", type=int, required=True)
    p_cov.add_argument("--alpha", type=float, default=0.05)
    p_cov.add_argument("--se-method", dest="se_method",
                       choices=("delta", "delta-numeric", "bootstrap"), default="delta")
    p_cov.add_argument("--boot-reps", dest="boot_reps", type=int, default=1000)
    p_cov.add_argument("--json", action="store_true")
    p_cov.set_defaults(func=cmd_coverage)

    p_gen = sub.add_parser("gen", parents=[seedgrp], help="emit a generated table as CSV")
    gsrc = p_gen.add_mutually_exclusive_group(required=True)
    gsrc.add_argument("--bvn-rho", dest="bvn_rho", type=float)
    gsrc.add_argument("--named")
    p_gen.add_argument("--cuts", default="q4",
                       help="'q4' for quartiles or comma-separated cutpoints")
    p_gen.add_argument("--sample", type=int, default=None,
                       help="emit counts of a multinomial sample of this size")
    p_gen.set_defaults(func=cmd_gen)

    return parser


def _resolve_seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("PRV_SEED")
    return int(env) if env else 0


def _resolve_fspec(args) -> FSpec:
    if args.f == "power":
        if args.omega is not None:
            raise UnknownName("--omega belongs to the omega family; use --f omega")
        return resolve("power", args.lam if args.lam is not None else 0.0)
    if args.lam is not None:
        raise UnknownName("--lambda belongs to the power family; use --f power")
    return resolve("omega", args.omega if args.omega is not None else 0.0)


def _tri(flag: str) -> bool | None:
    return None if flag == "auto" else flag == "yes"


def _load_named(name: str):
    """A built-in table: probability tables by name, count datasets by name."""
    if name in reference.ARTIFICIAL_TABLES:
        return datagen.fixed_table(name)
    if name in reference.COUNT_DATASETS:
        return ContingencyTable(np.array(reference.COUNT_DATASETS[name], dtype=np.int64))
    known = sorted(reference.ARTIFICIAL_TABLES) + sorted(reference.COUNT_DATASETS)
    raise UnknownName(f"no built-in table named {name!r}; known: {', '.join(known)}")


def _format_ci(ci: tuple[float, float] | None) -> str:
    if ci is None:
        return ""
    return f"ci=({ci[0]:.4f}, {ci[1]:.4f})"


def cmd_compute(args) -> int:
    fspec = _resolve_fspec(args)
    seed = _resolve_seed(args)

    if args.input:
        text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
        table = parse_csv(text, header_row=_tri(args.header_row),
                          label_col=_tri(args.label_col))
        if args.drop_empty_cols:
            table = table.compact()
        input_desc: dict = {"path": args.input}
    else:
        table = _load_named(args.named)
        input_desc = {"named": args.named}

    if isinstance(table, ContingencyTable):
        counts: ContingencyTable | None = table
        p = from_counts(table, smooth=args.smooth)
        n: int | None = table.total
    else:
        counts = None
        p = table
        n = None
    input_desc.update({"R": p.rows, "C": p.cols, "n": n})

    kinds = ["phi_f", "phi_geo"] if args.measure == "both" else [_MEASURE_TOKENS[args.measure]]
    reports: list[RunReport] = []
    any_boundary = False
    for kind in kinds:
        t0 = time.perf_counter()
        warnings: list[str] = []
        boundary = False
        est = phi_f(p, fspec) if kind == "phi_f" else phi_geo(p, fspec)
        se_method = args.se_method
        if se_method != "none":
            if counts is None:
                warnings.append("input is a probability table; no sampling "
                                "uncertainty is defined")
                se_method = "none"
            elif args.smooth > 0.0:
                warnings.append("smoothing applied; uncertainty uses the "
                                "unsmoothed counts")
        if se_method != "none":
            method = se_method
            if method == "delta" and kind == "phi_f":
                method = "delta-numeric"
                warnings.append("analytic delta method covers geoprv only; "
                                "used the numeric gradient for prv")
            cfg = CIConfig(alpha=args.alpha, method=method,
                           boot_reps=args.boot_reps, seed=seed,
                           workers=args.workers)
            try:
                est = confidence_interval(counts, fspec, kind, cfg)
                if method == "bootstrap":
                    summary = bootstrap_summary(counts, fspec, kind, cfg)
                    lo, hi = summary.ci_percentile
                    warnings.append(f"bootstrap percentile ci: ({lo:.4f}, {hi:.4f})")
                    warnings.extend(summary.messages)
            except BoundaryCase as exc:
                boundary = True
                warnings.append(str(exc))
        if est.value == 1.0:
            boundary = True
        any_boundary = any_boundary or boundary

        reports.append(RunReport(
            input=dict(input_desc),
            settings={
                "measure": _KIND_TOKENS[kind],
                "family": fspec.family,
                "param": fspec.param,
                "alpha": args.alpha,
                "se_method": args.se_method,
                "seed": seed,
            },
            result={
                "value": est.value,
                "se": est.se,
                "ci": list(est.ci) if est.ci else None,
            },
            diagnostics={
                "zero_cells": p.zero_cells(),
                "boundary": boundary,
                "warnings": warnings,
            },
            timing_ms=(time.perf_counter() - t0) * 1000.0,
        ))

    if args.json:
        payload = reports[0].to_json() if len(reports) == 1 else json.dumps(
            [asdict(r) for r in reports])
        print(payload)
    else:
        for rep in reports:
            bits = [f"{rep.settings['measure']:7s}",
                    f"{fspec.label:14s}",
                    f"value={rep.result['value']:.4f}"]
            if rep.result["se"] is not None:
                bits.append(f"se={rep.result['se']:.4f}")
            if rep.result["ci"] is not None:
                bits.append(_format_ci(tuple(rep.result["ci"])))
            if rep.diagnostics["boundary"]:
                bits.append("(boundary: no confidence interval)")
            print("  ".join(bits))
        for rep in reports:
            for w in rep.diagnostics["warnings"]:
                print(f"note: {w}", file=sys.stderr)

    return EXIT_BOUNDARY if any_boundary else EXIT_OK


def _reproduce_input(name: str):
    if name.startswith("bvn:"):
        return datagen.bvn_table(datagen.BvnSpec(float(name.split(":", 1)[1])))
    return _load_named(name)


def _reproduce_part(part: str, se_method: str, seed: int, boot_reps: int, workers: int):
    """Recompute one reference table part; returns (csv rows, strict failures)."""
    spec = reference.MEASURE_TABLES[part]
    kind, family = spec["kind"], spec["family"]
    rows_out: list[dict] = []
    failures = 0

    def add(param, input_name, metric, expected, computed, tol, strict):
        nonlocal failures
        err = abs(computed - expected)
        ok = err <= tol
        status = "ok" if ok else ("FAIL" if strict else "info")
        if strict and not ok:
            failures += 1
        rows_out.append({
            "table": part, "measure": _KIND_TOKENS[kind], "family": family,
            "param": param, "input": input_name, "metric": metric,
            "expected": expected, "computed": computed,
            "abs_error": err, "status": status,
        })

    for row in spec["rows"]:
        param, input_name, expected = row[0], row[1], row[2]
        fspec = resolve(family, param)
        table = _reproduce_input(input_name)
        if len(row) == 3:
            p = table if isinstance(table, ProbabilityTable) else from_counts(table)
            est = phi_f(p, fspec) if kind == "phi_f" else phi_geo(p, fspec)
            add(param, input_name, "estimate", expected, est.value,
                reference.ESTIMATE_TOL, strict=True)
            continue
        _, _, expected, exp_se, exp_ci = row
        method = se_method
        if method == "delta" and kind == "phi_f":
            method = "delta-numeric"
        cfg = CIConfig(method=method, boot_reps=boot_reps, seed=seed, workers=workers)
        est = confidence_interval(table, fspec, kind, cfg)
        strict_se = se_method == "delta"
        add(param, input_name, "estimate", expected, est.value,
            reference.ESTIMATE_TOL, strict=True)
        add(param, input_name, "se", exp_se, est.se,
            reference.UNCERTAINTY_TOL, strict=strict_se)
        add(param, input_name, "ci_lo", exp_ci[0], est.ci[0],
            reference.UNCERTAINTY_TOL, strict=strict_se)
        add(param, input_name, "ci_hi", exp_ci[1], est.ci[1],
            reference.UNCERTAINTY_TOL, strict=strict_se)
    return rows_out, failures


def _write_rows(path: Path, rows: list[dict]) -> None:
    cols = list(rows[0].keys())
    lines = [",".join(cols)]
    for r in rows:
        lines.append(",".join(
            f"{r[c]:.10g}" if isinstance(r[c], float) else str(r[c]) for c in cols))
    path.write_text("\n".join(lines) + "\n")


def cmd_reproduce(args) -> int:
    seed = _resolve_seed(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    table_ids = list(reference.TABLE_PARTS) if args.all else list(dict.fromkeys(args.table))

    total_failures = 0
    for tid in table_ids:
        if tid == "4":
            rows = []
            failures = 0
            for rho, expected in reference.BVN_CELLS.items():
                computed = datagen.bvn_table(datagen.BvnSpec(rho)).probs
                for i in range(4):
                    for j in range(4):
                        err = abs(computed[i, j] - expected[i][j])
                        ok = err <= reference.CELL_TOL
                        failures += 0 if ok else 1
                        rows.append({
                            "table": "4", "rho": rho, "cell": f"({i + 1},{j + 1})",
                            "expected": expected[i][j], "computed": computed[i, j],
                            "abs_error": err, "status": "ok" if ok else "FAIL",
                        })
            _write_rows(out / "table4.csv", rows)
            n_bad = sum(1 for r in rows if r["status"] == "FAIL")
            print(f"table 4: {len(rows)} cells compared, {n_bad} beyond tolerance")
            total_failures += failures
            continue
        for part in reference.TABLE_PARTS[tid]:
            rows, failures = _reproduce_part(
                part, args.se_method, seed, args.boot_reps, args.workers)
            _write_rows(out / f"table{part}.csv", rows)
            n_strict = sum(1 for r in rows if r["status"] != "info")
            n_info = len(rows) - n_strict
            msg = f"table {part}: {n_strict} values compared, {failures} beyond tolerance"
            if n_info:
                msg += f" ({n_info} informational)"
            print(msg)
            total_failures += failures

    print("all matched" if total_failures == 0
          else f"{total_failures} values beyond tolerance")
    return EXIT_OK if total_failures == 0 else EXIT_MISMATCH


def cmd_coverage(args) -> int:
    fspec = _resolve_fspec(args)
    seed = _resolve_seed(args)
    if args.bvn_rho is not None:
        p = datagen.bvn_table(datagen.BvnSpec(args.bvn_rho))
        source = f"bvn:{args.bvn_rho:g}"
    else:
        table = _load_named(args.named)
        p = table if isinstance(table, ProbabilityTable) else from_counts(table)
        source = args.named
    cfg = CIConfig(alpha=args.alpha, method=args.se_method,
                   boot_reps=args.boot_reps, seed=seed, workers=args.workers)
    rep = coverage_sim(p, fspec, args.n, args.reps, cfg,
                       kind=_MEASURE_TOKENS[args.measure])
    payload = {
        "input": {"named": source, "R": p.rows, "C": p.cols, "n": args.n},
        "settings": {
            "measure": args.measure, "family": fspec.family, "param": fspec.param,
            "alpha": args.alpha, "se_method": args.se_method, "seed": seed,
        },
        "result": {
            "true_value": rep.true_value, "coverage": rep.coverage,
            "bias": rep.bias, "mean_estimate": rep.mean_estimate,
            "replicates": rep.used, "excluded": rep.excluded,
        },
    }
    if args.json:
        print(json.dumps(payload))
    elif rep.coverage is None:
        print(f"coverage: no replicates (requested {rep.requested})")
    else:
        print(f"true={rep.true_value:.4f}  coverage={rep.coverage:.4f}  "
              f"bias={rep.bias:+.5f}  replicates={rep.used}  excluded={rep.excluded}")
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.bvn_rho is not None:
        if args.cuts == "q4":
            cuts = datagen.QUARTILE_CUTS
        else:
            cuts = tuple(float(c) for c in args.cuts.split(","))
        p = datagen.bvn_table(datagen.BvnSpec(args.bvn_rho, cuts, cuts))
    else:
        table = _load_named(args.named)
        p = table if isinstance(table, ProbabilityTable) else from_counts(table)

    if args.sample is not None:
        counts = datagen.sample_multinomial(p, args.sample, _resolve_seed(args))
        for row in counts.counts:
            print(",".join(str(int(c)) for c in row))
    else:
        for row in p.probs:
            print(",".join(repr(float(c)) for c in row))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
