"""Command line entry point ``lab``.

Usage::

    lab list [-v]
    lab run <experiment> [--config FILE] [--seed N] [--out DIR] [--set key=value ...]

Exit codes: 0 when every criterion passes, 2 when a criterion fails, 1 on an
execution or usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
import traceback
from pathlib import Path
from typing import List, Optional

from .config import ConfigError, ExperimentConfig, load_config, parse_assignments
from .experiments import REGISTRY, CriterionResult

EXIT_PASS, EXIT_ERROR, EXIT_FAIL = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lab", description="Run recurrence and complexity experiments.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    ls = sub.add_parser("list", help="list registered experiments")
    ls.add_argument("-v", "--verbose", action="store_true", help="show parameters and defaults")
    run = sub.add_parser("run", help="run one experiment")
    run.add_argument("experiment")
    run.add_argument("--config", help="key = value config file")
    run.add_argument("--seed", type=int)
    run.add_argument("--out")
    run.add_argument("--set", action="append", default=[], metavar="KEY=VALUE", help="override a parameter")
    return p


def _list(verbose: bool) -> int:
    for name, exp in REGISTRY.items():
        crit = ",".join(str(c) for c in exp.criteria) or "-"
        print(f"{name:24s} criteria {crit:8s} {exp.summary}")
        if verbose:
            for k, v in exp.defaults.items():
                print(f"    {k} = {v}")
    return EXIT_PASS


def _short(value, limit: int = 400) -> str:
    text = json.dumps(value, default=str)
    return text if len(text) <= limit else text[:limit] + "..."


def run_experiment(cfg: ExperimentConfig, verbose: bool = True) -> List[CriterionResult]:
    """Run ``cfg`` and write ``config.txt``, CSV files and ``summary.jsonl`` under ``cfg.out``."""
    exp = REGISTRY.get(cfg.experiment)
    if exp is None:
        raise ConfigError(f"unknown experiment {cfg.experiment!r}")
    unknown = set(cfg.params) - set(exp.defaults)
    if unknown:
        raise ConfigError(f"unknown keys for {exp.name}: {sorted(unknown)}")
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "config.txt").write_text(cfg.to_text())
    results = exp.run(cfg, out)
    with open(out / "summary.jsonl", "w") as fh:
        for r in results:
            fh.write(json.dumps(r.record(exp.name), sort_keys=True, default=str) + "\n")
    if verbose:
        for r in results:
            label = f"criterion {r.criterion}" if r.criterion is not None else "diagnostic"
            print(f"[{exp.name}] {label}: {'PASS' if r.passed else 'FAIL'} measured={_short(r.measured)} threshold={_short(r.threshold)}")
            if not r.passed and r.trajectory:
                for k, v in r.trajectory.items():
                    print(f"    {k}: {_short(v, 2000)}")
    return results


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list":
        return _list(args.verbose)
    try:
        if args.experiment not in REGISTRY:
            raise ConfigError(f"unknown experiment {args.experiment!r}; see 'lab list'")
        cfg = load_config(args.config, args.experiment) if args.config else ExperimentConfig(args.experiment)
        cfg = cfg.with_overrides(seed=args.seed, out=args.out, params=parse_assignments(args.set))
        results = run_experiment(cfg)
    except ConfigError as exc:
        print(f"lab: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except Exception:
        traceback.print_exc()
        return EXIT_ERROR
    return EXIT_PASS if all(r.passed for r in results) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
