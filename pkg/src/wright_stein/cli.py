"""Command-line front door.

Verbs: eval, solve, sample, gof, plotdata.  Exit status contract: 0 success
or verdict "consistent"; 1 rejected verdicts, unmet solver tolerances, and
domain errors in evaluation; 2 usage or parse errors; 3 inconclusive
verdicts.  All numbers print with 17 significant digits so output
round-trips bit-faithfully.  WRIGHT_STEIN_TRUNC overrides the semi-infinite
truncation point (default 40).
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from fractions import Fraction

import numpy as np

from . import gof as gof_mod
from . import mwright, specfun, stein
from .errors import DomainError, RangeError, SolverAccuracyError, WrightSteinError
from .numerics import QuadratureConfig

__all__ = ["main", "build_parser"]

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _parse_number(text: str) -> float:
    text = text.strip()
    if "/" in text:
        return float(Fraction(text))
    return float(text)


def _parse_grid(spec: str) -> np.ndarray:
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid spec must be start:stop:step, got {spec!r}")
    start, stop, step = (_parse_number(p) for p in parts)
    if step <= 0:
        raise ValueError(f"grid step must be positive, got {step}")
    if stop < start:
        raise ValueError(f"grid stop {stop} is below start {start}")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(n)


def _config() -> QuadratureConfig:
    trunc = os.environ.get("WRIGHT_STEIN_TRUNC")
    if trunc is None:
        return QuadratureConfig()
    return QuadratureConfig(truncation_point=float(trunc))


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _solve_family() -> dict:
    fns = {tf.label: tf for tf in gof_mod.default_test_functions(16)}
    fns["const"] = stein.TestFunction(
        fn=lambda x: np.ones_like(np.asarray(x, dtype=float)),
        sup_norm=1.0,
        label="const",
        even=True,
    )
    return fns


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="wright-stein",
        description="M-Wright(1/3) special functions, Stein solver and goodness-of-fit",
    )
    sub = p.add_subparsers(dest="verb", required=True)

    pe = sub.add_parser("eval", help="tabulate a special function over a grid")
    pe.add_argument("function", choices=["ai", "bi", "gi", "ml", "mwright", "mwright-sym"])
    pe.add_argument("grid", nargs="?", default=None,
                    help="start:stop:step (for negative starts use --grid=...)")
    pe.add_argument("--grid", dest="grid_opt", default=None,
                    help="start:stop:step; the = form accepts negative starts")
    pe.add_argument("--beta", default=None, help="parameter for ml / mwright (fractions ok)")
    pe.add_argument("-o", "--output", default=None)

    ps = sub.add_parser("solve", help="solve the Stein equation for a named h")
    ps.add_argument("--h", required=True, dest="h_label",
                    help="test-function label (default family, or 'const')")
    ps.add_argument("--symmetric", action="store_true")
    ps.add_argument("--grid", default=None, help="start:stop:step")
    ps.add_argument("-o", "--output", default=None)

    pm = sub.add_parser("sample", help="draw M-Wright(1/3) samples")
    pm.add_argument("n", type=int)
    pm.add_argument("--seed", type=int, default=0)
    pm.add_argument("--symmetric", action="store_true")
    pm.add_argument("-o", "--output", default=None)

    pg = sub.add_parser("gof", help="Stein-discrepancy goodness of fit on a sample CSV")
    pg.add_argument("input", help="CSV path, one value per line, # comments ignored")
    pg.add_argument("--symmetric", action="store_true")
    pg.add_argument("--k", type=int, default=11, help="number of test functions (1..16)")
    pg.add_argument("--csv", action="store_true", help="emit CSV instead of a table")
    pg.add_argument("-o", "--output", default=None)

    pp = sub.add_parser("plotdata", help="symmetrized density curves as CSV")
    pp.add_argument("--betas", default="0,1/7,1/3,1/2",
                    help="comma-separated list, fractions ok, each in [0, 1/2]")
    pp.add_argument("--grid", default="-5:5:0.01", help="start:stop:step")
    pp.add_argument("-o", "--output", default=None)

    return p


def _cmd_eval(args, cfg: QuadratureConfig) -> int:
    spec = args.grid_opt if args.grid_opt is not None else args.grid
    if spec is None:
        print("error: eval needs a grid (positional or --grid=start:stop:step)",
              file=sys.stderr)
        return EXIT_USAGE
    try:
        xs = _parse_grid(spec)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    needs_beta = args.function in ("ml", "mwright", "mwright-sym")
    if needs_beta and args.beta is None:
        print(f"error: --beta is required for {args.function}", file=sys.stderr)
        return EXIT_USAGE
    if not needs_beta and args.beta is not None:
        print(f"error: --beta is not accepted for {args.function}", file=sys.stderr)
        return EXIT_USAGE
    beta = _parse_number(args.beta) if args.beta is not None else None

    try:
        if args.function in ("ai", "bi"):
            a = specfun.airy_many(xs)
            vals = a.ai if args.function == "ai" else a.bi
        elif args.function == "gi":
            vals = np.array([specfun.scorer_gi(float(x)) for x in xs])
        elif args.function == "ml":
            vals = np.array([specfun.mittag_leffler(beta, float(x)) for x in xs])
        elif args.function == "mwright":
            vals = np.asarray(mwright.density(beta, xs))
        else:
            vals = np.asarray(mwright.density_sym(beta, xs))
    except (DomainError, RangeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_REJECTED

    lines = ["x,value"]
    vals = np.atleast_1d(vals)
    for x, v in zip(xs, vals):
        lines.append(f"{_fmt(x)},{_fmt(v)}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def _cmd_solve(args, cfg: QuadratureConfig) -> int:
    family = _solve_family()
    if args.h_label not in family:
        print(
            f"error: unknown test function {args.h_label!r}; "
            f"choose from {sorted(family)}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    tf = family[args.h_label]
    grid = None
    if args.grid is not None:
        try:
            grid = _parse_grid(args.grid)
        except ValueError as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_USAGE
    try:
        if args.symmetric:
            sol = stein.solve_stein_sym(tf, grid, cfg)
        else:
            sol = stein.solve_stein(tf, grid, cfg)
    except SolverAccuracyError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_REJECTED
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    _emit(sol.to_csv(), args.output)
    return EXIT_OK


def _cmd_sample(args, cfg: QuadratureConfig) -> int:
    try:
        s = mwright.sample(args.n, seed=args.seed, symmetric=args.symmetric)
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    _emit(s.to_csv(), args.output)
    return EXIT_OK


def parse_samples_csv(text: str):
    """Values from one-per-line CSV; # comments ignored.  Raises ValueError
    carrying the 1-based line number on malformed content."""
    vals = []
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            vals.append(float(line))
        except ValueError:
            raise ValueError(f"line {i}: cannot parse {line!r} as a number") from None
    return np.array(vals)


def _cmd_gof(args, cfg: QuadratureConfig) -> int:
    try:
        with open(args.input) as fh:
            text = fh.read()
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        vals = parse_samples_csv(text)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        hs = gof_mod.default_test_functions(args.k)
        if args.symmetric:
            rep = gof_mod.discrepancy_sym(vals, hs, cfg=cfg)
        else:
            rep = gof_mod.discrepancy(vals, hs, cfg=cfg)
    except (DomainError, RangeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    _emit(rep.to_csv() if args.csv else rep.to_table(), args.output)
    return {
        "consistent": EXIT_OK,
        "rejected": EXIT_REJECTED,
        "inconclusive": EXIT_INCONCLUSIVE,
    }[rep.verdict]


def _cmd_plotdata(args, cfg: QuadratureConfig) -> int:
    try:
        betas = [_parse_number(b) for b in args.betas.split(",") if b.strip()]
        xs = _parse_grid(args.grid)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if not betas:
        print("error: no betas given", file=sys.stderr)
        return EXIT_USAGE
    for b in betas:
        if not (0 <= b <= 0.5):
            print(f"error: beta {b} outside [0, 1/2]", file=sys.stderr)
            return EXIT_USAGE
    cols = [np.asarray(mwright.density_sym(b, xs)) for b in betas]
    header = "x," + ",".join(f"beta={args.betas.split(',')[i].strip()}" for i in range(len(betas)))
    lines = [header]
    for i, x in enumerate(xs):
        lines.append(_fmt(x) + "," + ",".join(_fmt(c[i]) for c in cols))
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        # parse_known_args so that "eval fn --beta B start:stop:step" works:
        # argparse does not match an optional positional that appears after
        # an option, so a single non-flag leftover is accepted as the grid.
        args, extra = parser.parse_known_args(argv)
        if extra:
            if (
                getattr(args, "verb", None) == "eval"
                and getattr(args, "grid", None) is None
                and len(extra) == 1
                and not extra[0].startswith("-")
            ):
                args.grid = extra[0]
            else:
                parser.error(f"unrecognized arguments: {' '.join(extra)}")
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_USAGE
    cfg = _config()
    try:
        if args.verb == "eval":
            return _cmd_eval(args, cfg)
        if args.verb == "solve":
            return _cmd_solve(args, cfg)
        if args.verb == "sample":
            return _cmd_sample(args, cfg)
        if args.verb == "gof":
            return _cmd_gof(args, cfg)
        if args.verb == "plotdata":
            return _cmd_plotdata(args, cfg)
    except WrightSteinError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_REJECTED
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
