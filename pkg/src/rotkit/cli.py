"""Command-line interface.

Subcommands expose the library over CSV/JSON: ``validate``, ``rho``,
``staircase``, ``cycle``, ``phi``, ``cantor`` and ``orbit``.  Numbers are
parsed per the active mode: ``float`` (default, or set ROTKIT_MODE) takes
decimals as binary floats, ``exact`` parses both ``p/q`` tokens and
decimal strings into exact rationals.  Value columns are printed with 17
significant digits in float mode and as ``p/q`` tokens in exact mode, so
output is deterministic for a fixed configuration.

Exit codes: 0 success, 2 invalid parameters, 3 series convergence failure,
4 classification unresolved or of the wrong kind for the command.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import conjugacy
from .boundary import Enclosure, PlateauMembership, rho_of_a
from .conjugacy import LimitKind
from .errors import ConvergenceError, DomainError, IterationLimitError, ValidationError
from .pam import orbit, rotation_estimate
from .params import Params, Scalar, a_interval, inequality_report, validate_params, validate_quad

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NO_CONVERGENCE = 3
EXIT_UNRESOLVED = 4


@dataclass(frozen=True)
class RunConfig:
    mode: str  # "float" | "exact"
    tol: float
    max_q: int
    seed: Optional[int]
    out: Optional[str]
    fmt: str  # "csv" | "json"

    @property
    def exact(self) -> bool:
        return self.mode == "exact"


def parse_scalar(text: str, exact: bool) -> Scalar:
    """Parse ``p/q`` tokens always exactly; decimals per the mode."""
    text = text.strip()
    if "/" in text:
        return Fraction(text)
    if exact:
        return Fraction(text)
    return float(text)


def format_value(x: Union[Scalar, int, str, None]) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)  # int and Fraction round-trip exactly


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        mode=args.mode,
        tol=args.tol,
        max_q=args.max_q,
        seed=args.seed,
        out=args.out,
        fmt=args.format,
    )


def _emit(rows: list[dict], fieldnames: list[str], cfg: RunConfig) -> None:
    if cfg.fmt == "json":
        payload = [
            {name: format_value(row.get(name)) for name in fieldnames} for row in rows
        ]
        text = json.dumps(payload, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({name: format_value(row.get(name)) for name in fieldnames})
        text = buf.getvalue()
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_params(args: argparse.Namespace, cfg: RunConfig) -> Params:
    return validate_params(
        parse_scalar(args.lam, cfg.exact),
        parse_scalar(args.mu, cfg.exact),
        parse_scalar(args.a, cfg.exact),
        parse_scalar(args.b, cfg.exact),
        parse_scalar(args.c, cfg.exact),
    )


def cmd_validate(args: argparse.Namespace) -> int:
    cfg = _config(args)
    lam = parse_scalar(args.lam, cfg.exact)
    mu = parse_scalar(args.mu, cfg.exact)
    a = parse_scalar(args.a, cfg.exact)
    b = parse_scalar(args.b, cfg.exact)
    c = parse_scalar(args.c, cfg.exact)
    report = inequality_report(lam, mu, a, b, c)
    for label, holds in report:
        print(f"{'ok  ' if holds else 'FAIL'} {label}")
    try:
        p = validate_params(lam, mu, a, b, c)
    except DomainError as exc:
        print(f"invalid: {exc}")
        return EXIT_INVALID
    lo, hi = a_interval(p.quad)
    print(f"eta = {format_value(p.eta)}")
    print(f"a interval = ({format_value(lo)}, {format_value(hi)})")
    return EXIT_OK


def _solve_rows(p: Params, cfg: RunConfig) -> tuple[dict, object]:
    res = rho_of_a(p, max_q=cfg.max_q, tol=cfg.tol)
    if res.is_exact:
        cert: PlateauMembership = res.certificate
        row = {
            "kind": "exact",
            "p": res.rho.numerator,
            "q": res.rho.denominator,
            "rho_lo": res.rho if cfg.exact else float(res.rho),
            "rho_hi": res.rho if cfg.exact else float(res.rho),
            "a_lo": cert.plateau.a_lo,
            "a_hi": cert.plateau.a_hi,
        }
    else:
        cert: Enclosure = res.certificate
        row = {
            "kind": "enclosure",
            "p": None,
            "q": None,
            "rho_lo": cert.lo if cfg.exact else float(cert.lo),
            "rho_hi": cert.hi if cfg.exact else float(cert.hi),
            "a_lo": None,
            "a_hi": None,
        }
    return row, res


RHO_FIELDS = ["kind", "p", "q", "rho_lo", "rho_hi", "a_lo", "a_hi"]


def cmd_rho(args: argparse.Namespace) -> int:
    cfg = _config(args)
    p = _parse_params(args, cfg)
    row, res = _solve_rows(p, cfg)
    if args.oracle:
        estimate = rotation_estimate(p, args.oracle)
        row = dict(row)
        row["oracle"] = float(estimate)
        row["discrepancy"] = abs(float(res.value) - float(estimate))
        _emit([row], RHO_FIELDS + ["oracle", "discrepancy"], cfg)
    else:
        _emit([row], RHO_FIELDS, cfg)
    return EXIT_OK


def cmd_staircase(args: argparse.Namespace) -> int:
    cfg = _config(args)
    quad = validate_quad(
        parse_scalar(args.lam, cfg.exact),
        parse_scalar(args.mu, cfg.exact),
        parse_scalar(args.b, cfg.exact),
        parse_scalar(args.c, cfg.exact),
    )
    lo, hi = a_interval(quad)
    a_min = parse_scalar(args.a_min, cfg.exact) if args.a_min else None
    a_max = parse_scalar(args.a_max, cfg.exact) if args.a_max else None
    steps = args.steps
    if a_min is None or a_max is None:
        # default grid strictly inside the open interval, endpoints excluded
        grid = [lo + (hi - lo) * Fraction(i + 1, steps + 1) for i in range(steps)]
        if not cfg.exact:
            grid = [float(g) for g in grid]
    else:
        if steps < 2:
            raise DomainError("need at least 2 steps for an explicit range")
        span = a_max - a_min
        grid = [a_min + span * Fraction(i, steps - 1) for i in range(steps)]
        if not cfg.exact:
            grid = [float(g) for g in grid]
    rows = []
    skipped = 0
    for a in grid:
        try:
            p = validate_params(quad.lam, quad.mu, a, quad.b, quad.c)
        except DomainError:
            skipped += 1
            continue
        row, _ = _solve_rows(p, cfg)
        rows.append({"a": a, **row})
    if skipped:
        print(f"warning: skipped {skipped} grid points outside the valid interval", file=sys.stderr)
    _emit(rows, ["a"] + RHO_FIELDS, cfg)
    return EXIT_OK


def cmd_cycle(args: argparse.Namespace) -> int:
    cfg = _config(args)
    p = _parse_params(args, cfg)
    cls = conjugacy.classify(p, max_q=cfg.max_q, tol=cfg.tol)
    if cls.kind is not LimitKind.RATIONAL_CYCLE:
        print(
            f"no attracting cycle: classification is {cls.kind.value}"
            + (f", enclosure ({cls.enclosure[0]}, {cls.enclosure[1]})" if cls.enclosure else ""),
            file=sys.stderr,
        )
        return EXIT_UNRESOLVED
    cyc = conjugacy.limit_cycle(p, (cls.p, cls.q), tol=max(cfg.tol, 1e-12))
    rows = [{"m": m, "point": pt} for m, pt in enumerate(cyc.points)]
    _emit(rows, ["m", "point"], cfg)
    print(f"period = {cyc.period}, winding = {cyc.winding}", file=sys.stderr)
    return EXIT_OK


def cmd_phi(args: argparse.Namespace) -> int:
    cfg = _config(args)
    p = _parse_params(args, cfg)
    rho = parse_scalar(args.rho, cfg.exact)
    n = args.n
    exact_grid = isinstance(rho, Fraction)
    rows = []
    for k in range(n):
        y = Fraction(k, n) if (cfg.exact or exact_grid) else k / n
        rows.append({"y": y if cfg.exact else float(y), "phi": conjugacy.phi_eval(p, rho, y, cfg.tol)})
    _emit(rows, ["y", "phi"], cfg)
    return EXIT_OK


def cmd_cantor(args: argparse.Namespace) -> int:
    cfg = _config(args)
    p = _parse_params(args, cfg)
    if args.rho:
        rho = parse_scalar(args.rho, cfg.exact)
    else:
        cls = conjugacy.classify(p, max_q=cfg.max_q, tol=cfg.tol)
        if cls.kind is not LimitKind.IRRATIONAL_CANDIDATE:
            print(
                f"limit set is not a Cantor candidate: {cls.kind.value}; "
                "use the cycle command or pass --rho explicitly",
                file=sys.stderr,
            )
            return EXIT_UNRESOLVED
        rho = float(cls.solve.value) if not cfg.exact else cls.solve.value
    sample = conjugacy.cantor_sample(p, rho, args.n, cfg.tol)
    rows = [{"y": y, "phi": v} for y, v in zip(sample.inputs, sample.values)]
    _emit(rows, ["y", "phi"], cfg)
    stats = sample.gap_stats
    print(
        f"gaps: smallest = {stats.smallest:.6g}, largest = {stats.largest:.6g}, "
        f"mean = {stats.mean:.6g}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_orbit(args: argparse.Namespace) -> int:
    cfg = _config(args)
    p = _parse_params(args, cfg)
    x0 = parse_scalar(args.x0, cfg.exact) if args.x0 is not None else p.c
    sample = orbit(p, x0, args.n)
    rows = [
        {"k": k, "lift": v, "wrap": w}
        for k, (v, w) in enumerate(zip(sample.values, sample.wraps))
    ]
    _emit(rows, ["k", "lift", "wrap"], cfg)
    return EXIT_OK


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--mode",
        choices=["float", "exact"],
        default=os.environ.get("ROTKIT_MODE", "float"),
        help="numeric mode (default from ROTKIT_MODE, else float)",
    )
    sub.add_argument("--tol", type=float, default=1e-10, help="series tolerance")
    sub.add_argument("--max-q", dest="max_q", type=int, default=1000,
                     help="largest plateau denominator searched")
    sub.add_argument("--seed", type=int, default=None, help="seed for sampling commands")
    sub.add_argument("--out", default=None, help="output path (default stdout)")
    sub.add_argument("--format", choices=["csv", "json"], default="csv")


def _add_quad(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--lambda", dest="lam", required=True, help="left slope, in (0,1)")
    sub.add_argument("--mu", required=True, help="slope ratio, > 0")
    sub.add_argument("--b", required=True, help="left-branch top, in (0,1]")
    sub.add_argument("--c", required=True, help="right-branch base, in [0,1)")


def _add_params(sub: argparse.ArgumentParser) -> None:
    _add_quad(sub)
    sub.add_argument("--a", required=True, help="offset at 0, in the open valid interval")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rotkit",
        description="rotation numbers, plateaus and conjugacies of two-slope circle maps",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", help="check the parameter inequalities")
    _add_params(sp)
    _add_common(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("rho", help="solve the rotation number for an offset")
    _add_params(sp)
    _add_common(sp)
    sp.add_argument("--oracle", type=int, default=0,
                    help="append a brute-force orbit estimate over N iterations")
    sp.set_defaults(func=cmd_rho)

    sp = sub.add_parser("staircase", help="sweep the offset and tabulate the staircase")
    _add_quad(sp)
    _add_common(sp)
    sp.add_argument("--steps", type=int, default=100)
    sp.add_argument("--a-min", dest="a_min", default=None)
    sp.add_argument("--a-max", dest="a_max", default=None)
    sp.set_defaults(func=cmd_staircase)

    sp = sub.add_parser("cycle", help="emit the attracting cycle")
    _add_params(sp)
    _add_common(sp)
    sp.set_defaults(func=cmd_cycle)

    sp = sub.add_parser("phi", help="sample the semi-conjugacy on a grid")
    _add_params(sp)
    _add_common(sp)
    sp.add_argument("--rho", required=True, help="rotation value (p/q or decimal)")
    sp.add_argument("--n", type=int, default=256)
    sp.set_defaults(func=cmd_phi)

    sp = sub.add_parser("cantor", help="sample the Cantor attractor via phi")
    _add_params(sp)
    _add_common(sp)
    sp.add_argument("--rho", default=None, help="rotation value (defaults to the solver midpoint)")
    sp.add_argument("--n", type=int, default=1024)
    sp.set_defaults(func=cmd_cantor)

    sp = sub.add_parser("orbit", help="emit lift iterates and wrap counts")
    _add_params(sp)
    _add_common(sp)
    sp.add_argument("--x0", default=None, help="start point (default c)")
    sp.add_argument("--n", type=int, default=100)
    sp.set_defaults(func=cmd_orbit)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ConvergenceError as exc:
        print(f"series did not converge: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except (IterationLimitError, ValidationError) as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
