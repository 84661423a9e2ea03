"""Command-line front end.

Exit codes: 0 success, 1 a reproduction checkpoint failed, 2 bad input.

Noise convention: ``--noise-weight w`` mixes ``(1 - w) rho + w I/D``. The
chessboard example's ``p = 0.9`` is ``w = 0.1``; for the tiles family ``w = p``.
"""

from __future__ import annotations

import argparse
import io
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import bounds, criteria, states
from .criteria import Criterion, CriterionParams
from .linalg import BipartiteDensityMatrix, ValidationError

EXIT_OK, EXIT_CHECKPOINT, EXIT_INPUT = 0, 1, 2

BUILTINS = ("bell", "tiles", "chessboard", "separable")


class InputError(Exception):
    pass


def _fmt6(x: float) -> str:
    return f"{x:.6f}"


def _fmt17(x: float) -> str:
    return format(float(x), ".17g")


# -- state sources ------------------------------------------------------------


def _add_state_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("state")
    g.add_argument("--state", required=True, help=f"builtin ({', '.join(BUILTINS)}) or path to a state file")
    g.add_argument("--noise-weight", type=float, default=0.0, metavar="W", help="white-noise weight in [0, 1]")
    for name, default in vars(states.EXAMPLE_CHESSBOARD).items():
        g.add_argument(f"--cb-{name}", type=float, default=default, help=f"chessboard {name} (default {default})")
    g.add_argument("--dims", type=int, nargs=2, default=(3, 3), metavar=("DA", "DB"), help="dims for 'separable'")
    g.add_argument("--terms", type=int, default=4, help="product terms for 'separable'")
    g.add_argument("--seed", type=int, default=0, help="seed for 'separable'")


def load_state(args: argparse.Namespace) -> BipartiteDensityMatrix:
    src = args.state
    if src == "bell":
        rho = states.bell_state()
    elif src == "tiles":
        rho = states.tiles_ppt_state()
    elif src == "chessboard":
        params = states.ChessboardParams(
            a=args.cb_a, b=args.cb_b, c=args.cb_c, d=args.cb_d, m=args.cb_m, n=args.cb_n
        )
        rho = states.chessboard_state(params)
    elif src == "separable":
        rho = states.random_separable(*args.dims, terms=args.terms, seed=args.seed)
    else:
        rho = states.read_state(src)
    if args.noise_weight:
        rho = states.mix_white_noise(rho, args.noise_weight)
    return rho


def _params(args) -> CriterionParams:
    return CriterionParams(args.alpha, args.beta)


# -- commands -----------------------------------------------------------------


def cmd_eval(args, out) -> int:
    rho = load_state(args)
    params = _params(args)
    print(f"state: {args.state} ({rho.dim_a}x{rho.dim_b}), noise weight {args.noise_weight:g}", file=out)
    if args.measure:
        report = bounds.lower_bound(rho, params, args.measure)
        print(f"measure: {report.measure.value}  alpha={params.alpha:g} beta={params.beta:g}", file=out)
        print(f"bound: {_fmt6(report.bound)}", file=out)
        print(f"raw: {_fmt6(report.raw)}", file=out)
        print(f"clamped: {'yes' if report.clamped else 'no'}", file=out)
    else:
        verdict = criteria.run_criterion(rho, args.criterion, params)
        line = f"criterion: {verdict.criterion.value}"
        if verdict.criterion is Criterion.KY_FAN:
            line += f"  alpha={params.alpha:g} beta={params.beta:g}"
        print(line, file=out)
        print(f"margin: {_fmt6(verdict.margin)}", file=out)
        print(f"detected: {'yes' if verdict.detected else 'no'}", file=out)
    return EXIT_OK


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start: float
    stop: float
    steps: int
    params: CriterionParams

    def __post_init__(self):
        if self.variable not in ("noise_weight", "alpha_beta_diagonal"):
            raise ValidationError("sweep", f"unknown sweep variable {self.variable!r}")
        if not self.start <= self.stop:
            raise ValidationError("sweep", f"start {self.start} exceeds stop {self.stop}")
        if self.steps < 2:
            raise ValidationError("sweep", f"steps must be >= 2, got {self.steps}")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


def sweep_rows(rho: BipartiteDensityMatrix, spec: SweepSpec, measure: str, noise_weight: float = 0.0):
    """Yield ``(x, bound, raw, clamped)`` along the sweep."""
    for x in spec.values():
        x = float(x)
        if spec.variable == "noise_weight":
            state, params = states.mix_white_noise(rho, x), spec.params
        else:
            state, params = states.mix_white_noise(rho, noise_weight), CriterionParams(x, x)
        r = bounds.lower_bound(state, params, measure)
        yield x, r.bound, r.raw, r.clamped


def write_sweep_csv(rows, fh, first_column: str = "w") -> None:
    fh.write(f"{first_column},value,raw,clamped\n")
    for x, value, raw, clamped in rows:
        fh.write(f"{_fmt17(x)},{_fmt17(value)},{_fmt17(raw)},{'true' if clamped else 'false'}\n")


def cmd_sweep(args, out) -> int:
    base = load_state(args)
    spec = SweepSpec(args.variable, args.start, args.stop, args.steps, _params(args))
    if spec.variable == "noise_weight":
        # the loaded state is the family's base; --noise-weight already applied is rejected
        if args.noise_weight:
            raise InputError("--noise-weight conflicts with a noise_weight sweep")
        first = "w"
    else:
        first = "alpha_beta"
    buf = io.StringIO(newline="\n")
    write_sweep_csv(sweep_rows(base, spec, args.measure), buf, first)
    text = buf.getvalue()
    if args.output == "-":
        out.write(text)
    else:
        try:
            with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputError(f"cannot write {args.output}: {exc.strerror}") from exc
        print(f"wrote {spec.steps} rows to {args.output}", file=out)
    return EXIT_OK


def cmd_optimize(args, out) -> int:
    rho = load_state(args)
    if args.grid_min <= 0 or args.grid_max < args.grid_min:
        raise InputError("grid bounds must satisfy 0 < --grid-min <= --grid-max")
    lo, hi = math.log10(args.grid_min), math.log10(args.grid_max)
    grid = [CriterionParams()] + criteria.make_grid(
        alphas=np.logspace(lo, hi, args.axis_points),
        betas=np.logspace(lo, hi, args.axis_points),
        diagonal=np.logspace(lo, hi, args.diagonal_points),
    )
    best, verdict = criteria.optimize_params(rho, grid)
    print(f"state: {args.state} ({rho.dim_a}x{rho.dim_b}), noise weight {args.noise_weight:g}", file=out)
    print(f"grid points: {len(grid)}", file=out)
    print(f"best alpha: {best.alpha:.6g}", file=out)
    print(f"best beta: {best.beta:.6g}", file=out)
    print(f"margin: {_fmt6(verdict.margin)}", file=out)
    print(f"entanglement certified: {'yes' if verdict.detected else 'no'}", file=out)
    return EXIT_OK


@dataclass(frozen=True)
class Checkpoint:
    name: str
    computed: float
    expected: float
    tol: float

    @property
    def error(self) -> float:
        return abs(self.computed - self.expected)

    @property
    def passed(self) -> bool:
        return self.error <= self.tol


def reproduction_checkpoints(chessboard_alpha: float = 250.0) -> list[Checkpoint]:
    """Worked-example values: chessboard margin, two tiles bounds, tiles noise threshold."""
    chess = states.mix_white_noise(states.chessboard_state(), 0.1)  # p = 0.9
    tiles = states.tiles_ppt_state()
    ex1 = criteria.kyfan_criterion_test(chess, CriterionParams(chessboard_alpha, 240.0)).margin
    c1 = bounds.concurrence_lower_bound(tiles, CriterionParams(1.0, 1.0)).raw
    c100 = bounds.concurrence_lower_bound(tiles, CriterionParams(100.0, 100.0)).raw
    thr = bounds.detection_threshold(tiles, CriterionParams(5.0, 5.0), "concurrence")  # w = p
    return [
        Checkpoint(f"chessboard p=0.9 margin (alpha={chessboard_alpha:g}, beta=240)", ex1, 0.0027, 5e-4),
        Checkpoint("tiles concurrence bound (alpha=beta=1)", c1, 0.05399, 1e-4),
        Checkpoint("tiles concurrence bound (alpha=beta=100)", c100, 0.055549, 1e-5),
        Checkpoint("tiles noise threshold (alpha=beta=5)", thr, 0.1177, 2e-3),
    ]


def cmd_reproduce(args, out) -> int:
    checks = reproduction_checkpoints(args.debug_alpha)
    width = max(len(c.name) for c in checks)
    print(f"{'checkpoint':<{width}}  {'computed':>10}  {'expected':>10}  {'|diff|':>10}  {'tol':>7}  result", file=out)
    for c in checks:
        print(
            f"{c.name:<{width}}  {c.computed:>10.6f}  {c.expected:>10.6f}  {c.error:>10.2e}  {c.tol:>7.0e}  "
            f"{'PASS' if c.passed else 'FAIL'}",
            file=out,
        )
    failed = [c for c in checks if not c.passed]
    print(f"{len(checks) - len(failed)}/{len(checks)} pass", file=out)
    if failed:
        for c in failed:
            print(f"failed checkpoint: {c.name}", file=sys.stderr)
        return EXIT_CHECKPOINT
    return EXIT_OK


# -- entry point --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kyfan", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate one criterion or lower bound")
    _add_state_args(p)
    sel = p.add_mutually_exclusive_group(required=True)
    sel.add_argument("--criterion", choices=[c.value for c in Criterion])
    sel.add_argument("--measure", choices=[m.value for m in bounds.Measure])
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="write a lower-bound curve as CSV")
    _add_state_args(p)
    p.add_argument("--variable", choices=["noise_weight", "alpha_beta_diagonal"], default="noise_weight")
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--stop", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--measure", choices=[m.value for m in bounds.Measure], default="concurrence")
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--output", "-o", default="-", help="CSV path, '-' for stdout")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("optimize", help="grid search for the best (alpha, beta)")
    _add_state_args(p)
    p.add_argument("--grid-min", type=float, default=1e-2)
    p.add_argument("--grid-max", type=float, default=1e4)
    p.add_argument("--diagonal-points", type=int, default=60)
    p.add_argument("--axis-points", type=int, default=15)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("reproduce", help="check the worked-example values")
    p.add_argument("--debug-alpha", type=float, default=250.0, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (ValidationError, states.StateFileError, InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
