"""Command line entry point.

Exit codes: 0 on success (and for a stable grasp), 1 on usage or input
errors, 2 for a marginal grasp, 3 for an unstable grasp.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .config import ConfigError, load_run_config
from .harness import run_case_a, run_case_b, run_coeff_sweep, run_sense, run_stability

_EXIT_CODES = {"stable": 0, "marginal": 2, "unstable": 3}


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the contract reserves 2 for marginal
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(f"gstk: error: {message}")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gstk", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", metavar="PATH", help="run configuration file")
        p.add_argument("--seed", type=int, metavar="N", help="override the master seed")
        p.add_argument("--svg", action="store_true", help="also write an SVG chart")
        p.add_argument("--out", metavar="DIR", help="output directory (default from config)")
        return p

    add("coeffs", "tabulate contact stiffness coefficients over load")
    add("case-a", "sweep grasp stiffness floor over load and curvature")
    add("case-b", "compare the area index with lambda_min over random grasps")
    p = add("stability", "classify one grasp described in a file")
    p.add_argument("grasp_file", metavar="GRASP", help="grasp description file")
    p = add("sense", "estimate contacts from a wrench log")
    p.add_argument("wrench_log", metavar="LOG", help="CSV wrench log (t,fx,fy,fz,mx,my,mz)")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return 1
        return 0 if exc.code in (0, None) else 1

    try:
        cfg = load_run_config(args.config)
        if args.seed is not None:
            cfg = replace(cfg, seed=args.seed)
        out_dir = args.out if args.out is not None else cfg.output_dir

        if args.command == "coeffs":
            path = run_coeff_sweep(cfg, out_dir, svg=args.svg)
            print(f"wrote {path}")
        elif args.command == "case-a":
            path = run_case_a(cfg, out_dir, svg=args.svg)
            print(f"wrote {path}")
        elif args.command == "case-b":
            path, summaries = run_case_b(cfg, out_dir, svg=args.svg)
            print(f"wrote {path}")
            for s in summaries:
                mark = "yes" if s.symmetric_argmax_area and s.symmetric_argmax_lambda else "no"
                print(
                    f"group {s.group}: spearman(area, lambda_min) = {s.spearman:+.3f}, "
                    f"symmetric grasp is argmax of both: {mark}"
                )
        elif args.command == "stability":
            report = run_stability(args.grasp_file, cfg)
            print(
                f"{report.classification}: lambda_min = {report.lambda_min:.6g}, "
                f"eigenvalues = {[float(f'{v:.6g}') for v in report.eigenvalues]}"
            )
            return _EXIT_CODES[report.classification]
        elif args.command == "sense":
            path = run_sense(args.wrench_log, cfg, out_dir, svg=args.svg)
            print(f"wrote {path}")
    except (ConfigError, OSError, ValueError, KeyError, RuntimeError) as exc:
        print(f"gstk: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
