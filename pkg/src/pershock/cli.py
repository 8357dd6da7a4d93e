"""Command-line entry point: run one scenario, a suite, or a convergence
study from TOML configs.  Exit code 0 iff every verdict passed."""

import argparse
import sys

from .errors import PershockError
from .harness import ExperimentConfig, convergence_study, run_scenario, run_suite


def _add_common(p):
    p.add_argument("--out", default=None, help="output directory override")
    p.add_argument("--seed", type=int, default=None, help="seed override")


def _report(verdict):
    mark = "PASS" if verdict["passed"] else "FAIL"
    print(f"[{mark}] {verdict['scenario']} ({verdict['runtime_seconds']:.1f}s)")
    for c in verdict["checks"]:
        cm = "ok " if c["passed"] else "BAD"
        tol = c.get("tolerance")
        exp = c.get("expected")
        detail = ""
        if exp is not None:
            detail += f" expected={exp}"
        if tol is not None:
            detail += f" tol={tol}"
        print(f"  {cm} {c['name']}: {c['measured']}{detail}")
    return verdict["passed"]


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="pershock",
        description="Numerical lab for shocks under time-periodic boundary data")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one scenario config")
    p_run.add_argument("config")
    _add_common(p_run)

    p_suite = sub.add_parser("suite", help="run every *.toml in a directory")
    p_suite.add_argument("directory")
    _add_common(p_suite)

    p_conv = sub.add_parser("converge", help="refinement-order study")
    p_conv.add_argument("config")
    p_conv.add_argument("--levels", type=int, default=3)
    _add_common(p_conv)

    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            cfg = ExperimentConfig.from_toml(args.config, out_dir=args.out,
                                             seed=args.seed)
            ok = _report(run_scenario(cfg))
        elif args.command == "suite":
            verdicts = run_suite(args.directory, out_root=args.out,
                                 seed=args.seed)
            ok = all(_report(v) for v in verdicts)
        else:
            cfg = ExperimentConfig.from_toml(args.config, out_dir=args.out,
                                             seed=args.seed)
            ok = _report(convergence_study(cfg, levels=args.levels))
    except PershockError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
