"""Command line front end: solve, experiment, analyze, serve."""

from __future__ import annotations

import argparse
import csv
import dataclasses
import os
import socket
import sys

from .analytics import build_study_report
from .equilibrium import solve_case1, solve_case2
from .market import DistributionSpec, MarketParams
from .population import figure_experiments, run_experiment
from .records import RecordFormatError, read_records
from .service import StorageError, StudyConfig, StudyService, create_app

EXIT_BAD_FLAG = 2
EXIT_UNWRITABLE = 3
EXIT_BAD_RECORD = 4
EXIT_PORT_BUSY = 5


def _fail(code: int, message: str) -> int:
    print(f"eml: error: {message}", file=sys.stderr)
    return code


def _dist(name: str) -> DistributionSpec:
    if name == "beta":
        return DistributionSpec.beta22()
    return DistributionSpec.uniform01()


def _fmt(x) -> str:
    return f"{float(x):.6f}"


def cmd_solve(args) -> int:
    if args.qo is None or args.qo <= 0:
        return _fail(EXIT_BAD_FLAG, "--qo must be a positive supply")
    if not 0 < args.delta < 1:
        return _fail(EXIT_BAD_FLAG, "--delta must lie strictly in (0, 1)")
    if args.a <= 0:
        return _fail(EXIT_BAD_FLAG, "--a must be positive")
    if args.n <= 0:
        return _fail(EXIT_BAD_FLAG, "--n must be a positive buyer count")
    if args.mode == "case1":
        if args.qs is None:
            return _fail(EXIT_BAD_FLAG, "--qs is required with --mode case1")
        if args.qs < 0:
            return _fail(EXIT_BAD_FLAG, "--qs must be non-negative")
        res = solve_case1(args.qo, args.qs, args.delta, args.n)
    else:
        if args.qs is not None:
            return _fail(EXIT_BAD_FLAG, "--qs only applies to --mode case1")
        dist = _dist(args.dist)
        params = MarketParams(q_o=args.qo, delta=args.delta, a=args.a,
                              n_buyers=args.n, dist_u=dist, dist_g=dist)
        res = solve_case2(params, step=args.pr_grid)

    lines = [f"mode: {args.mode}",
             f"p_o: {_fmt(res.prices.p_o)}",
             f"p_r: {_fmt(res.prices.p_r)}",
             f"region: {res.region.label}",
             f"revenue: {_fmt(res.revenue)}",
             f"q_s: {_fmt(res.q_s_at_opt)}",
             "candidates:"]
    for c in res.diagnostics:
        if c.prices is None:
            lines.append(f"  {c.label}: {c.note}")
            continue
        tag = "" if c.feasible else f"  [infeasible: {c.note}]"
        rev = "-" if c.revenue is None else _fmt(c.revenue)
        lines.append(f"  {c.label}: p_o={_fmt(c.prices.p_o)} "
                     f"p_r={_fmt(c.prices.p_r)} revenue={rev}{tag}")
    text = "\n".join(lines) + "\n"
    print(text, end="")
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            return _fail(EXIT_UNWRITABLE, f"--out not writable: {exc}")
    return 0


CSV_HEADER = ["experiment", "axis", "value", "p_o", "p_r", "q_s", "region",
              "revenue", "mean", "stderr", "reps"]


def cmd_experiment(args) -> int:
    try:
        specs = figure_experiments(args.figure, n=args.n, reps=args.reps,
                                   seed=args.seed)
    except ValueError as exc:
        return _fail(EXIT_BAD_FLAG, str(exc))
    rows = []
    for spec in specs:
        rows.extend(run_experiment(spec))
    try:
        fh = open(args.out, "w", encoding="utf-8", newline="")
    except OSError as exc:
        return _fail(EXIT_UNWRITABLE, f"--out not writable: {exc}")
    with fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for r in rows:
            writer.writerow([r.experiment, r.axis, _fmt(r.value),
                             _fmt(r.p_o), _fmt(r.p_r), _fmt(r.q_s), r.region,
                             _fmt(r.revenue), _fmt(r.mean), _fmt(r.stderr),
                             r.reps])
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def cmd_analyze(args) -> int:
    try:
        records = read_records(args.records)
    except OSError as exc:
        return _fail(EXIT_BAD_FLAG, f"--records not readable: {exc}")
    except RecordFormatError as exc:
        return _fail(EXIT_BAD_RECORD, str(exc))
    report = build_study_report(records, alpha=args.alpha)
    print(report.to_text())
    if args.out:
        try:
            fh = open(args.out, "w", encoding="utf-8", newline="")
        except OSError as exc:
            return _fail(EXIT_UNWRITABLE, f"--out not writable: {exc}")
        with fh:
            writer = csv.writer(fh)
            writer.writerow(["role", "region", "count", "agreement", "ks_d",
                             "ks_p", "distinct"])
            for row in report.rows:
                writer.writerow([
                    row.role, row.region, row.count,
                    "" if row.agreement is None else _fmt(row.agreement),
                    "" if row.ks_d is None else _fmt(row.ks_d),
                    "" if row.ks_p is None else _fmt(row.ks_p),
                    "" if row.distinct is None else str(row.distinct).lower(),
                ])
    return 0


def cmd_serve(args) -> int:
    try:
        config = (StudyConfig.from_file(args.config) if args.config
                  else StudyConfig())
    except (OSError, ValueError, KeyError, TypeError) as exc:
        return _fail(EXIT_BAD_FLAG, f"--config invalid: {exc}")

    port = config.port
    if os.environ.get("EML_PORT"):
        try:
            port = int(os.environ["EML_PORT"])
        except ValueError:
            return _fail(EXIT_BAD_FLAG, "EML_PORT must be an integer")
    if args.port is not None:
        port = args.port

    storage = config.storage
    if os.environ.get("EML_STORAGE"):
        storage = os.environ["EML_STORAGE"]
    if args.storage is not None:
        storage = args.storage
    if storage != config.storage or port != config.port:
        config = dataclasses.replace(config, storage=storage, port=port)

    try:
        service = StudyService(config, seed=args.seed)
    except StorageError as exc:
        return _fail(EXIT_UNWRITABLE, str(exc))

    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.bind((args.host, port))
    except OSError:
        return _fail(EXIT_PORT_BUSY, f"port {port} is already in use")
    finally:
        probe.close()

    import uvicorn

    uvicorn.run(create_app(service), host=args.host, port=port,
                log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eml", description="edge market lab command line")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="optimal prices for one market")
    p.add_argument("--qo", type=float, required=True)
    p.add_argument("--qs", type=float, default=None)
    p.add_argument("--delta", type=float, default=0.2)
    p.add_argument("--a", type=float, default=2.0)
    p.add_argument("--n", type=int, default=50)
    p.add_argument("--dist", choices=["uniform", "beta"], default="uniform")
    p.add_argument("--mode", choices=["case1", "case2"], default="case2")
    p.add_argument("--pr-grid", type=float, default=1e-3,
                   help="step of the p_r linear search")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("experiment", help="replicated sweeps to CSV")
    p.add_argument("--figure", required=True,
                   help="experiment id, e.g. 4a or 5c")
    p.add_argument("--out", required=True)
    p.add_argument("--n", type=int, default=50)
    p.add_argument("--reps", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("analyze", help="agreement and KS report for records")
    p.add_argument("--records", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--alpha", type=float, default=0.05)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("serve", help="run the decision-study service")
    p.add_argument("--config", default=None)
    p.add_argument("--port", type=int, default=None)
    p.add_argument("--storage", default=None)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
