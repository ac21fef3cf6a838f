"""Command line entry point: ``fracharm {verify,estimate,flow,norms}``.

Exit codes: 0 all checks pass, 1 a check fails, 2 configuration or input error.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from . import commutators, experiments, io, norms
from .errors import ConfigError, FracHarmError
from .flow import FlowConfig, flow_run
from .littlewood_paley import DyadicPartition

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _int_list(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _seed_list(text):
    """``"1-100"`` or ``"1,2,5"``."""
    if "-" in text and "," not in text:
        a, b = text.split("-", 1)
        try:
            return list(range(int(a), int(b) + 1))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad seed range {text!r}")
    return _int_list(text)


def _global_flags(p, default, seed_default):
    p.add_argument("--config", type=Path, default=default, help="JSON suite configuration")
    p.add_argument("--out", type=Path, default=default, help="output directory (overrides config output_dir)")
    p.add_argument("--threads", type=int, default=default, help="worker threads for suite cells")
    p.add_argument("--seed-base", type=int, default=seed_default, help="offset added to every seed")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fracharm", description=__doc__.splitlines()[0])
    _global_flags(p, None, 0)
    # the global flags are also accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, argparse.SUPPRESS, argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run the check suites and write reports")
    v.add_argument("--suites", type=lambda s: s.split(","), help="comma-separated suite names")

    e = sub.add_parser("estimate", parents=[common], help="ratio reports for one estimate")
    e.add_argument("--id", required=True, choices=sorted(commutators.ESTIMATES))
    e.add_argument("--seeds", type=_seed_list, default=list(range(1, 21)))
    e.add_argument("--grids", type=_int_list, help="grid sizes (default: N and 2N for the estimate's n)")

    f = sub.add_parser("flow", parents=[common], help="projected gradient flow from a perturbed circle map")
    f.add_argument("--n", type=int, default=1)
    f.add_argument("--N", type=int, default=256)
    f.add_argument("--m", type=int, default=2)
    f.add_argument("--tau", type=float)
    f.add_argument("--tol", type=float, default=1e-6)
    f.add_argument("--max-iter", type=int, default=5000)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--along-x1", action="store_true", help="perturbation depending on x_1 only")
    f.add_argument("--out-trace", type=Path)
    f.add_argument("--out-field", type=Path)

    nm = sub.add_parser("norms", parents=[common], help="norm table of a field snapshot")
    nm.add_argument("field", type=Path, help="snapshot path (.bin with .json sidecar)")
    return p


def _load_config(args) -> experiments.SuiteConfig:
    text = args.config.read_text() if args.config else "{}"
    cfg = experiments.parse_config(text)
    changes = {}
    if args.threads is not None:
        if args.threads < 1:
            raise ConfigError("--threads must be positive")
        changes["threads"] = args.threads
    if args.seed_base:
        changes["seeds"] = tuple(s + args.seed_base for s in cfg.seeds)
    if args.out is not None:
        changes["output_dir"] = str(args.out)
    return dataclasses.replace(cfg, **changes)


def cmd_verify(args, cfg) -> int:
    if args.suites:
        bad = [s for s in args.suites if s not in experiments.SUITES]
        if bad:
            raise ConfigError(f"unknown suite {bad[0]!r}")
        cfg = dataclasses.replace(cfg, suites=tuple(args.suites))
    results = experiments.run_suite(cfg)
    experiments.write_report(results, cfg.output_dir)
    failed = 0
    for res in results:
        for c in res.checks:
            print(f"{res.suite:10s} {c.check:32s} {'PASS' if c.passed else 'FAIL'}  {c.value:.3e} ({c.threshold:g})")
        failed += res.failed
    return EXIT_FAIL if failed else EXIT_OK


def cmd_estimate(args, cfg) -> int:
    seeds = [s + args.seed_base for s in args.seeds]
    reports = commutators.estimate_ratio(args.id, seeds, args.grids)
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"estimate_{args.id}.csv"
    path.write_text(experiments._csv_text(["id", "seed", "N", "left", "right", "ratio"], [r.row() for r in reports]))
    summary = commutators.summarize(reports)
    for N in sorted(summary):
        print(f"{args.id} N={N} max={summary[N]['max']:.4g} median={summary[N]['median']:.4g}")
    Ns = sorted(summary)
    ok = all(v["max"] <= 1e3 for v in summary.values())
    if len(Ns) >= 2:
        ok = ok and summary[Ns[-1]]["max"] <= 2 * summary[Ns[0]]["max"]
    return EXIT_OK if ok else EXIT_FAIL


def cmd_flow(args, cfg) -> int:
    try:
        fc = FlowConfig(n=args.n, N=args.N, m=args.m, tau=args.tau, tol=args.tol,
                        max_iter=args.max_iter, seed=args.seed + args.seed_base, along_x1=args.along_x1)
        fc.grid
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    state, trace = flow_run(fc)
    if args.out_trace:
        args.out_trace.parent.mkdir(parents=True, exist_ok=True)
        args.out_trace.write_text(experiments._csv_text(
            ["iter", "energy", "residual", "tau"], [[i, repr(e), repr(r), repr(t)] for i, e, r, t in trace]))
    if args.out_field:
        io.save_field(args.out_field, fc.grid, state.u)
    print(f"iterations={state.iteration} energy={state.energy:.12g} residual={state.residual:.3e} tau={state.tau:.3e}")
    return EXIT_OK if state.residual <= fc.tol else EXIT_FAIL


def cmd_norms(args, cfg) -> int:
    grid, field = io.load_field(args.field)
    rows = norms.norm_table(grid, field, DyadicPartition(grid))
    sys.stdout.write(experiments._csv_text(["norm", "params", "value"], [r.row() for r in rows]))
    return EXIT_OK


COMMANDS = {"verify": cmd_verify, "estimate": cmd_estimate, "flow": cmd_flow, "norms": cmd_norms}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        cfg = _load_config(args)
        return COMMANDS[args.command](args, cfg)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FracHarmError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
