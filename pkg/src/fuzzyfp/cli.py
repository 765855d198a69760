"""Configuration-driven command line entry point.

Subcommands: axioms, hypotheses, solve, suite.  Exit code contract:
0 = all checks passed; 1 = checks ran and some property failed
(informational, not an error); 2 = configuration or IO failure.  Summary
files embed the grid, seeds, tolerances and generator name so they are
self-contained; nothing in them depends on wall-clock time, so fixed seeds
reproduce byte-identical artifacts.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import os
import sys

import numpy as np

from . import config as cfgmod
from .axioms import check_fm_axioms, check_tnorm_axioms
from .errors import ConfigError, EmptySampleError
from .harness import run_suite
from .hypotheses import (
    estimate_k_pair,
    estimate_k_pair_dual,
    estimate_k_quad,
    estimate_k_self_quad,
)
from .rng import GENERATOR_NAME
from .solver import solve

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {k: _jsonable(v) for k, v in dataclasses.asdict(obj).items()}
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _write_json(path: str, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(_jsonable(obj), fh, indent=2, sort_keys=True)
        fh.write("\n")


def _report_dict(report) -> dict:
    return {
        "label": report.label,
        "k_hat": report.k_hat,
        "holds": report.holds,
        "witness": report.witness,
        "evaluated_count": report.evaluated_count,
        "skipped_count": report.skipped_count,
        "grid": report.grid.values,
        "sample_shape": report.sample_shape,
        "exclude_diagonal": report.exclude_diagonal,
    }


def _axiom_report_dict(report) -> dict:
    return {
        "subject": report.subject,
        "samples": report.samples,
        "seed": report.seed,
        "checks": report.checks,
        "violation_count": report.violation_count,
        "passed": report.passed,
        "violations": [
            {"axiom": v.axiom, "witness": v.witness, "magnitude": v.magnitude}
            for v in report.violations
        ],
    }


def cmd_axioms(doc: dict, args) -> int:
    grid = cfgmod.build_grid(doc, args.t_max)
    op = cfgmod.build_tnorm(doc)
    carrier_x, carrier_y, mu, nu = cfgmod.build_spaces(doc, grid)
    params = cfgmod.build_axiom_params(doc)
    seed = params["seed"] if args.seed is None else args.seed

    reports = [check_tnorm_axioms(op, params["tnorm_samples"], seed)]
    reports.append(
        check_fm_axioms(mu, op, params["fm_triples"], grid, seed + 1, params["window"])
    )
    if nu is not mu:
        reports.append(
            check_fm_axioms(nu, op, params["fm_triples"], grid, seed + 2, params["window"])
        )

    payload = {
        "generator": GENERATOR_NAME,
        "grid": grid.values,
        "tnorm": op.kind,
        "seed": seed,
        "reports": [_axiom_report_dict(r) for r in reports],
    }
    _write_json(os.path.join(args.out, "axioms_report.json"), payload)
    ok = all(r.passed for r in reports)
    for r in reports:
        print(f"axioms {r.subject}: {r.violation_count} violation(s) in {r.checks} checks")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_hypotheses(doc: dict, args) -> int:
    grid = cfgmod.build_grid(doc, args.t_max)
    carrier_x, carrier_y, mu, nu = cfgmod.build_spaces(doc, grid)
    scheme, problem = cfgmod.build_problem(doc, carrier_x, carrier_y)
    samples, dump = cfgmod.build_samples(
        doc, grid, carrier_x, carrier_y, include_diagonal=args.include_diagonal
    )
    keep = dump or args.format in ("csv", "both")

    reports = []
    note = None
    try:
        if scheme == "pair":
            reports.append(estimate_k_pair(problem, mu, nu, samples, keep_ratios=keep))
            if samples.points_y:
                reports.append(
                    estimate_k_pair_dual(problem, mu, nu, samples, keep_ratios=keep)
                )
        elif scheme == "quadruple":
            reports.extend(estimate_k_quad(problem, mu, nu, samples, keep_ratios=keep))
        else:
            reports.extend(estimate_k_self_quad(problem, mu, samples, keep_ratios=keep))
    except EmptySampleError as exc:
        note = str(exc)

    payload = {
        "generator": GENERATOR_NAME,
        "scheme": scheme,
        "grid": grid.values,
        "note": note,
        "reports": [_report_dict(r) for r in reports],
    }
    _write_json(os.path.join(args.out, "hypotheses_report.json"), payload)

    if keep and args.format in ("csv", "both"):
        path = os.path.join(args.out, "hypotheses_ratios.csv")
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["label", "indices", "t", "ratio"])
            for r in reports:
                for row in r.ratios or ():
                    writer.writerow([r.label, ";".join(str(v) for v in row[:-2]), row[-2], row[-1]])

    if note is not None:
        print(f"hypotheses: {note}")
        return EXIT_FAILED
    for r in reports:
        k_txt = "n/a" if r.k_hat is None else f"{r.k_hat:.6g}"
        print(
            f"hypotheses {r.label}: k_hat={k_txt} holds={r.holds} "
            f"evaluated={r.evaluated_count} skipped={r.skipped_count}"
        )
    ks = [r.k_hat for r in reports if r.k_hat is not None]
    ok = bool(ks) and all(k < 1.0 for k in ks)
    return EXIT_OK if ok else EXIT_FAILED


def _coord_labels(prefix: str, point) -> list[str]:
    if np.ndim(point) == 0:
        return [prefix]
    return [f"{prefix}_{i}" for i in range(len(point))]


def _coords(point) -> list:
    if np.ndim(point) == 0:
        return [int(point)]
    return [float(v) for v in point]


def cmd_solve(doc: dict, args) -> int:
    grid = cfgmod.build_grid(doc, args.t_max)
    carrier_x, carrier_y, mu, nu = cfgmod.build_spaces(doc, grid)
    scheme, problem = cfgmod.build_problem(doc, carrier_x, carrier_y)
    cfg, x0 = cfgmod.build_solve(doc, grid, carrier_x)
    if x0 is None:
        raise ConfigError("solve requires solve.x0")

    result = solve(problem, mu, nu, x0, cfg)

    payload = {
        "generator": GENERATOR_NAME,
        "scheme": scheme,
        "grid": grid.values,
        "eps": cfg.eps,
        "max_iter": cfg.max_iter,
        "stall_window": cfg.stall_window,
        "p_max": cfg.p_max,
        "verify_tol": cfg.verify_tol,
        "status": result.status,
        "iterations": result.iterations,
        "z": result.z,
        "w": result.w,
        "conclusion_checks": [
            {"name": c.name, "residual": c.residual, "passed": c.passed}
            for c in result.conclusion_checks
        ],
    }
    _write_json(os.path.join(args.out, "solve_summary.json"), payload)

    trace_path = os.path.join(args.out, "solve_trace.csv")
    ts = grid.values
    xs = result.trace_x.points
    ys = result.trace_y.points
    with open(trace_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        header = ["n", "t", "mu_step_x", "nu_step_y"]
        header += _coord_labels("x", xs[0])
        header += _coord_labels("y", xs[0] if not ys else ys[0])
        writer.writerow(header)
        for n in range(1, len(xs)):
            x_row = result.trace_x.nearness[n - 1]
            y_row = result.trace_y.nearness[n - 2] if n >= 2 and len(ys) >= n else None
            y_pt = ys[n - 1] if len(ys) >= n else None
            for k, t in enumerate(ts):
                row = [n, float(t), float(x_row[k])]
                row.append("" if y_row is None else float(y_row[k]))
                row += _coords(xs[n])
                row += [""] * len(_coord_labels("y", xs[0])) if y_pt is None else _coords(y_pt)
                writer.writerow(row)

    print(
        f"solve: status={result.status} iterations={result.iterations} "
        f"conclusions_passed={result.conclusions_passed}"
    )
    ok = result.converged and result.conclusions_passed
    return EXIT_OK if ok else EXIT_FAILED


def cmd_suite(doc: dict, args) -> int:
    grid = cfgmod.build_grid(doc, args.t_max)
    cfg, _ = cfgmod.build_solve(doc, grid, want_x0=False)
    specs, starts = cfgmod.build_suite_specs(doc, grid, args.seed)
    verdict = run_suite(specs, cfg, starts=starts)

    if args.format in ("json", "both"):
        _write_json(os.path.join(args.out, "suite_verdict.json"), verdict.to_jsonable())
    if args.format in ("csv", "both"):
        path = os.path.join(args.out, "suite_rows.csv")
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                [
                    "index",
                    "seed",
                    "scheme",
                    "status",
                    "iterations",
                    "k_hat",
                    "axiom_violations",
                    "conclusions_passed",
                    "min_residual",
                    "uniqueness_passed",
                    "uniqueness_max_distance",
                ]
            )
            for r in verdict.rows:
                writer.writerow(
                    [
                        r.index,
                        r.seed,
                        r.scheme,
                        r.status,
                        r.iterations,
                        "" if r.k_hat is None else float(r.k_hat),
                        r.axiom_violations,
                        r.conclusions_passed,
                        float(r.min_residual),
                        "" if r.uniqueness_passed is None else r.uniqueness_passed,
                        ""
                        if r.uniqueness_max_distance is None
                        else float(r.uniqueness_max_distance),
                    ]
                )

    agg = verdict.aggregates
    print(
        "suite: instances={instances} converged={converged} "
        "conclusions_passed={conclusions_passed} uniqueness_passed={uniqueness_passed}".format(
            **agg
        )
    )
    ok = (
        agg["converged"] == agg["instances"]
        and agg["conclusions_passed"] == agg["instances"]
        and agg["uniqueness_passed"] == agg["instances"]
        and agg["axiom_violations_total"] == 0
    )
    return EXIT_OK if ok else EXIT_FAILED


_COMMANDS = {
    "axioms": cmd_axioms,
    "hypotheses": cmd_hypotheses,
    "solve": cmd_solve,
    "suite": cmd_suite,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzyfp",
        description="Fuzzy-nearness fixed point toolkit: axiom checks, "
        "contraction estimates, coupled iteration, and a seeded suite.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("axioms", "check t-norm and nearness axioms by sampling"),
        ("hypotheses", "estimate the best contraction constant on a sample"),
        ("solve", "run the coupled iteration scheme and verify conclusions"),
        ("suite", "generate seeded instances and run the full property suite"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="path to the JSON run config")
        p.add_argument("--out", default="./out", help="output directory (default ./out)")
        p.add_argument("--seed", type=int, default=None, help="override the config seed")
        p.add_argument(
            "--format",
            choices=("json", "csv", "both"),
            default="json",
            help="artifact format for reports that support both",
        )
        p.add_argument(
            "--include-diagonal",
            action="store_true",
            help="diagnostic: keep x = x' tuples in hypothesis estimation",
        )
        p.add_argument("--t-max", type=float, default=None, help="override the grid t_max")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        doc = cfgmod.load_config(args.config)
        os.makedirs(args.out, exist_ok=True)
        return _COMMANDS[args.command](doc, args)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
