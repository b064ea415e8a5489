"""Command-line interface.

Subcommands: poly (exact polynomials, JSON, with an on-disk cache), eval
(one Jones value at t = e^(xi/N) or e^(eta/N)), growth (convergence tables,
JSON or CSV), cs (Chern-Simons results), verify (the check suites).

Precision resolves flags > environment > defaults: --digits, then
FIG8CABLE_DIGITS, then 30 decimal digits (160 working bits); --working-bits
overrides the derived bit count.  Exit codes: 0 success / all checks pass,
1 verification failure, 2 usage or domain error, 3 internal failure
(inexact division, quadrature breakdown).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import gmpy2

from . import asymptotics as asy
from . import chern_simons as cs
from . import jones, verify
from .jones import CableSpec
from .laurent import LaurentPoly, NotDivisibleError
from .numerics import DomainError, PrecisionContext, format_real

ENV_DIGITS = "FIG8CABLE_DIGITS"
ENV_WORKING_BITS = "FIG8CABLE_WORKING_BITS"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


@dataclass(frozen=True)
class RunConfig:
    """One resolved invocation: command, knot parameters, precision, output."""

    command: str
    ctx: PrecisionContext
    knot: str | None = None
    N: int | None = None
    N_list: tuple[int, ...] | None = None
    b: int = 0
    xi: str | None = None
    eta: str | None = None
    tol: str = cs.DEFAULT_TOL
    out: Path | None = None
    fmt: str = "json"
    cache_dir: Path | None = None
    cap: int = jones.DEFAULT_EXACT_CAP
    suites: tuple[str, ...] = ()
    deep: bool = False


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fig8cable",
        description="Colored Jones polynomials of (2,2b+1)-cables of the figure-eight knot: "
        "exact polynomials, growth-rate tables, and Chern-Simons invariants.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--digits", type=int, default=None,
        help="decimal digits to trust (default: $FIG8CABLE_DIGITS or 30)",
    )
    common.add_argument(
        "--working-bits", type=int, default=None,
        help="binary working precision (default: derived from digits)",
    )
    common.add_argument("--out", type=Path, default=None, help="write the result here instead of stdout")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", parents=[common], help="exact colored Jones polynomial as JSON")
    p.add_argument("--knot", choices=("fig8", "cable"), required=True)
    p.add_argument("--N", type=int, required=True, help="color (dimension)")
    p.add_argument("--b", type=int, default=0, help="cable parameter (cable only)")
    p.add_argument("--cap", type=int, default=jones.DEFAULT_EXACT_CAP,
                   help="refuse exact cable computation above this color")
    p.add_argument("--cache-dir", type=Path, default=None, help="reuse/store polynomials here")

    p = sub.add_parser("eval", parents=[common], help="evaluate one Jones value at t = e^(xi/N) or e^(eta/N)")
    p.add_argument("--knot", choices=("fig8", "cable"), required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--b", type=int, default=0)
    p.add_argument("--xi", type=str, default=None, help="cable evaluation parameter (> 0)")
    p.add_argument("--eta", type=str, default=None, help="figure-eight evaluation parameter (> 0)")

    p = sub.add_parser("growth", parents=[common],
                       help="convergence table of growth rates against the dilogarithm limit")
    p.add_argument("--knot", choices=("fig8", "cable"), required=True)
    p.add_argument("--b", type=int, default=0)
    p.add_argument("--xi", type=str, default=None, help="cable: requires xi > kappa = arccosh(3/2)/2 ~ 0.4812")
    p.add_argument("--eta", type=str, default=None, help="fig8: requires eta > 2 kappa ~ 0.9624")
    p.add_argument("--N-list", type=str, required=True, help="comma-separated ascending colors, e.g. 500,1000,2000")
    p.add_argument("--format", dest="fmt", choices=("json", "csv"), default="csv")

    p = sub.add_parser("cs", parents=[common], help="Chern-Simons invariant (reported modulo pi^2)")
    p.add_argument("--knot", choices=("fig8", "cable"), required=True)
    p.add_argument("--xi", type=str, default=None, help="cable: requires xi > kappa")
    p.add_argument("--eta", type=str, default=None, help="fig8: requires eta > 2 kappa")
    p.add_argument("--tol", type=str, default=cs.DEFAULT_TOL, help="absolute quadrature tolerance")

    p = sub.add_parser("verify", parents=[common], help="run the verification suites")
    p.add_argument("--suite", choices=verify.SUITES + ("all",), default="all")
    p.add_argument("--deep", action="store_true", help="include the slow convergence tables")

    return parser


def _int_env(name: str) -> int | None:
    raw = os.environ.get(name)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None


def _resolve_context(args: argparse.Namespace) -> PrecisionContext:
    # flags beat environment beats defaults
    digits = args.digits
    if digits is None:
        digits = _int_env(ENV_DIGITS)
    if digits is None:
        digits = 30
    bits = getattr(args, "working_bits", None)
    if bits is None:
        bits = _int_env(ENV_WORKING_BITS)
    if bits is None:
        return PrecisionContext.from_digits(digits)
    return PrecisionContext(digits, bits)


def _parse_n_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise ValueError(f"--N-list must be comma-separated integers, got {text!r}") from None
    if not values or list(values) != sorted(values):
        raise ValueError(f"--N-list must be ascending and nonempty, got {text!r}")
    return values


def config_from_args(args: argparse.Namespace) -> RunConfig:
    ctx = _resolve_context(args)
    fields: dict = {"command": args.command, "ctx": ctx, "out": args.out}
    for name in ("knot", "b", "xi", "eta", "cap", "cache_dir", "fmt", "tol", "deep"):
        if hasattr(args, name):
            fields[name] = getattr(args, name)
    if getattr(args, "N", None) is not None:
        if args.N < 1:
            raise ValueError(f"--N must be >= 1, got {args.N}")
        fields["N"] = args.N
    if getattr(args, "N_list", None) is not None:
        fields["N_list"] = _parse_n_list(args.N_list)
    if args.command == "verify":
        fields["suites"] = tuple(verify.SUITES) if args.suite == "all" else (args.suite,)
    return RunConfig(**fields)


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        out.write_text(text if text.endswith("\n") else text + "\n")


def _cache_path(cache_dir: Path, knot: str, N: int, b: int) -> Path:
    name = f"fig8_N{N}.json" if knot == "fig8" else f"cable_N{N}_b{b}.json"
    return cache_dir / name


def _load_cached(path: Path) -> LaurentPoly:
    text = path.read_text()  # OSError surfaces as an i/o failure (exit 3)
    try:
        return LaurentPoly.from_json(text)
    except ValueError as exc:
        raise ValueError(f"corrupted cache file {path}: {exc}") from exc


def cmd_poly(config: RunConfig) -> int:
    poly = None
    cache_path = None
    if config.cache_dir is not None:
        cache_path = _cache_path(config.cache_dir, config.knot, config.N, config.b)
        if cache_path.exists():
            poly = _load_cached(cache_path)
            print(f"cache hit: {cache_path}", file=sys.stderr)
    if poly is None:
        if config.knot == "fig8":
            poly = jones.habiro_fig8_poly(config.N)
        else:
            poly = jones.cable_poly(CableSpec(config.N, config.b), cap=config.cap)
        if cache_path is not None:
            cache_path.parent.mkdir(parents=True, exist_ok=True)
            cache_path.write_text(poly.to_json() + "\n")
    _emit(poly.to_json(), config.out)
    return EXIT_OK


def cmd_eval(config: RunConfig) -> int:
    ctx = config.ctx
    digits = ctx.target_digits
    if config.knot == "cable":
        if config.xi is None:
            raise ValueError("cable evaluation needs --xi (a positive real)")
        jv = jones.eval_cable_jones(CableSpec(config.N, config.b), config.xi, ctx)
        payload = {
            "knot": "cable",
            "N": config.N,
            "b": config.b,
            "xi": config.xi,
            "sign": jv.sign,
            "log_abs": format_real(jv.log_abs, digits),
            "value": format_real(jv.value(ctx), digits),
        }
    else:
        if config.eta is None:
            raise ValueError("figure-eight evaluation needs --eta (a positive real)")
        value = jones.eval_fig8_jones(config.N, config.eta, ctx)
        with ctx.active():
            payload = {
                "knot": "fig8",
                "N": config.N,
                "eta": config.eta,
                "sign": 1,
                "log_abs": format_real(gmpy2.log(value), digits),
                "value": format_real(value, digits),
            }
    _emit(json.dumps(payload, indent=2), config.out)
    return EXIT_OK


def cmd_growth(config: RunConfig) -> int:
    ctx = config.ctx
    if config.knot == "cable":
        if config.xi is None:
            raise ValueError("cable growth table needs --xi, with xi > kappa = arccosh(3/2)/2")
        rows = asy.growth_table(config.b, config.xi, list(config.N_list), ctx)
    else:
        if config.eta is None:
            raise ValueError("figure-eight growth table needs --eta, with eta > 2 kappa = arccosh(3/2)")
        rows = asy.growth_table_fig8(config.eta, list(config.N_list), ctx)
    digits = ctx.target_digits
    if config.fmt == "csv":
        lines = ["N,rate,limit,gap"]
        for row in rows:
            lines.append(
                f"{row.N},{format_real(row.rate, digits)},"
                f"{format_real(row.limit, digits)},{format_real(row.gap, digits)}"
            )
        _emit("\n".join(lines), config.out)
    else:
        payload = [
            {
                "N": row.N,
                "rate": format_real(row.rate, digits),
                "limit": format_real(row.limit, digits),
                "gap": format_real(row.gap, digits),
            }
            for row in rows
        ]
        _emit(json.dumps(payload, indent=2), config.out)
    return EXIT_OK


def cmd_cs(config: RunConfig) -> int:
    ctx = config.ctx
    if config.knot == "cable":
        if config.xi is None:
            raise ValueError("cable Chern-Simons needs --xi, with xi > kappa = arccosh(3/2)/2")
        result = cs.cs_cable(config.xi, ctx, config.tol)
        param = {"xi": config.xi}
    else:
        if config.eta is None:
            raise ValueError("figure-eight Chern-Simons needs --eta, with eta > 2 kappa = arccosh(3/2)")
        result = cs.cs_fig8(config.eta, ctx, config.tol)
        param = {"eta": config.eta}
    digits = ctx.target_digits
    payload = {
        "knot": config.knot,
        **param,
        "ell": format_real(result.ell, digits),
        "v": format_real(result.v, digits),
        "S": format_real(result.S, digits),
        "cs": format_real(result.cs, digits),
        "cs_modulus": "pi^2 (no reduction applied)",
        "integral_residual": format_real(result.integral_residual, 3),
        "tol": config.tol,
    }
    _emit(json.dumps(payload, indent=2), config.out)
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    reports = verify.run_suites(list(config.suites), config.ctx, deep=config.deep)
    payload = {
        "suites": [r.to_dict() for r in reports],
        "passed": all(r.passed for r in reports),
    }
    _emit(json.dumps(payload, indent=2), config.out)
    return EXIT_OK if payload["passed"] else EXIT_CHECK_FAILED


_COMMANDS = {
    "poly": cmd_poly,
    "eval": cmd_eval,
    "growth": cmd_growth,
    "cs": cmd_cs,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        return _COMMANDS[config.command](config)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotDivisibleError, cs.QuadratureError, ArithmeticError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
