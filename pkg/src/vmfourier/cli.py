"""Command-line front end for the verification harness.

Subcommands: ``list`` the available suites, ``run`` a battery against a
config, ``fixtures`` to dump the built-in group and dual tables.  Exit codes:
0 all checks pass, 1 at least one certified violation, 2 configuration error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .groups import build_group, builtin_group_specs, dump_dual_file, dump_group_file, unitary_dual
from .harness import (
    default_config,
    emit_report,
    load_config,
    run_suite,
    suite_names,
)

OUT_DIR_ENV = "VMFOURIER_OUT"


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="vmfourier",
        description="Run numerical verification suites for group-measure harmonic analysis.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list available suites")

    run = sub.add_parser("run", help="run verification suites")
    run.add_argument("--config", type=Path, default=None, help="key-value config file")
    run.add_argument("--seed", type=int, default=None, help="override the config seed")
    run.add_argument(
        "--suite", action="append", default=None, metavar="NAME",
        help="run only this suite (repeatable)",
    )
    run.add_argument("--trials", type=int, default=None, help="override per-suite trial counts")
    run.add_argument("--format", choices=("json", "markdown"), default="json")
    run.add_argument("--out", type=Path, default=None, help="report output path")
    # test instrumentation: switch a deliberately wrong constant into a suite
    run.add_argument("--fault", default=None, help=argparse.SUPPRESS)

    fx = sub.add_parser("fixtures", help="dump built-in group and dual tables")
    fx.add_argument("--out", type=Path, default=None, help="directory for table files")
    return ap


def _default_out(fmt: str) -> Path:
    base = os.environ.get(OUT_DIR_ENV)
    ext = "json" if fmt == "json" else "md"
    if base:
        return Path(base) / f"report.{ext}"
    return Path(f"report.{ext}")


def _cmd_list() -> int:
    for name in suite_names():
        print(name)
    return 0


def _cmd_run(args) -> int:
    try:
        cfg = load_config(args.config) if args.config else default_config()
        if args.seed is not None:
            cfg.seed = args.seed
        if args.trials is not None:
            cfg.trials = args.trials
        if args.suite:
            for s in args.suite:
                if s not in suite_names():
                    raise ValueError(f"unknown suite {s!r}")
            cfg.suites = list(args.suite)
        from .harness import FAULTS

        if args.fault is not None and args.fault not in FAULTS:
            raise ValueError(f"unknown fault {args.fault!r}")
        cfg.__post_init__()
    except (ValueError, OSError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2

    reports = []
    for name in cfg.suites:
        rep = run_suite(name, cfg, fault=args.fault)
        status = "FAIL" if rep.violations else "ok"
        print(
            f"{status:4s} {rep.suite:20s} instances={rep.instances:<6d} "
            f"violations={rep.violations:<3d} near_misses={rep.near_misses:<4d} "
            f"max_residual={rep.max_residual:.3g} ({rep.elapsed_s:.2f}s)"
        )
        reports.append(rep)

    out = args.out or (cfg.out_dir / f"report.{'json' if args.format == 'json' else 'md'}"
                       if cfg.out_dir else _default_out(args.format))
    try:
        out.parent.mkdir(parents=True, exist_ok=True)
        emit_report(reports, args.format, out, seed=cfg.seed)
    except OSError as exc:
        print(f"cannot write report: {exc}", file=sys.stderr)
        return 2
    print(f"report written to {out}")
    return 1 if any(r.violations for r in reports) else 0


def _cmd_fixtures(args) -> int:
    out_dir = args.out
    if out_dir is None and os.environ.get(OUT_DIR_ENV):
        out_dir = Path(os.environ[OUT_DIR_ENV])
    for spec in builtin_group_specs():
        g = build_group(spec)
        dual = unitary_dual(g)
        gtext = dump_group_file(g)
        dtext = dump_dual_file(dual)
        if out_dir is None:
            print(f"# group {g.label} ({spec})")
            print(gtext, end="")
            print(f"# dual {g.label}")
            print(dtext, end="")
        else:
            out_dir.mkdir(parents=True, exist_ok=True)
            (out_dir / f"group_{g.label}.txt").write_text(gtext)
            (out_dir / f"dual_{g.label}.txt").write_text(dtext)
    if out_dir is not None:
        print(f"tables written to {out_dir}")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "list":
        return _cmd_list()
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "fixtures":
        return _cmd_fixtures(args)
    return 2  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())
