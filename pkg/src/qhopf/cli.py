"""Command line: ``qhopf verify``, ``qhopf nf``, ``qhopf eval``, ``qhopf list``.

Exit codes: 0 all checks pass, 1 a check fails (or an expression cannot be
evaluated), 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .coeff import CoefficientError
from .expr import ExprSyntaxError, NotSpecializable, UnknownSymbol, canonical, evaluate, specialize_value
from .ncalg.algebra import NCError
from .ncalg.letters import DEFAULT_ORDER
from .report import verify
from .suites import Context, UnknownSuite, expand, suite_names

PAIR_CODES = {"11": 0, "12": 1, "21": 2, "22": 3}


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _order(text) -> tuple:
    items = text if isinstance(text, (list, tuple)) else [t.strip() for t in str(text).split(",")]
    try:
        codes = tuple(PAIR_CODES[str(t)] for t in items)
    except KeyError as exc:
        raise UsageError(f"bad index pair {exc.args[0]!r} in order") from None
    if sorted(codes) != [0, 1, 2, 3]:
        raise UsageError("order must list each of 11, 12, 21, 22 once")
    return codes


def _load_config(path: str) -> dict:
    with open(path, "rb") as fh:
        raw = fh.read()
    if path.endswith(".json"):
        return json.loads(raw)
    try:
        import tomllib
    except ImportError:  # Python < 3.11
        import tomli as tomllib
    return tomllib.loads(raw.decode())


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qhopf", description="Exact checks for the q-deformed instanton calculus.")
    sub = p.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", help="run verification suites, JSON report on stdout")
    v.add_argument("suites", nargs="*", help="suite names or prefixes (e.g. gauge), or 'all'")
    v.add_argument("--variant", choices=["standard", "hat"])
    v.add_argument("--n", type=int, help="number of braided copies (default 2)")
    v.add_argument("--q-numeric", type=_fraction, metavar="P/R", help="also run every check with q fixed to P/R")
    v.add_argument("--order", help="within-block index order, e.g. 11,22,12,21")
    v.add_argument("--max-overlap", type=int, help="overlap word length for confluence checks (default 3)")
    v.add_argument("--strategy-cases", type=int, help="random elements for the strategy check (default 1000)")
    v.add_argument("--seed", type=int)
    v.add_argument("--jobs", type=int, default=1, help="worker processes")
    v.add_argument("--dump-dir", help="write full residuals per check to this directory")
    v.add_argument("--config", help="TOML or JSON file with order, suites, variant, n, max_overlap")
    v.add_argument("--indent", type=int, default=None)

    n = sub.add_parser("nf", help="normal form of an expression")
    n.add_argument("expr")
    n.add_argument("--variant", choices=["standard", "hat"], default="standard")
    n.add_argument("--q", type=_fraction, metavar="P/R", help="fix q to a rational")

    e = sub.add_parser("eval", help="exact rational value of a scalar expression")
    e.add_argument("expr")
    e.add_argument("--q", type=_fraction, required=True, metavar="P/R")
    e.add_argument("--u", type=_fraction, metavar="P/R", help="value of |x|^2")
    e.add_argument("--p", type=_fraction, metavar="P/R", help="value of rho^2")
    e.add_argument("--variant", choices=["standard", "hat"], default="standard")

    sub.add_parser("list", help="list suite names")
    return p


def _context(args) -> tuple[Context, list]:
    cfg = _load_config(args.config) if args.config else {}
    known = {"order", "suites", "variant", "n", "max_overlap", "strategy_cases", "seed"}
    extra = set(cfg) - known
    if extra:
        raise UsageError(f"unknown config keys: {sorted(extra)}")

    def pick(flag, key, default):
        val = getattr(args, flag)
        return val if val is not None else cfg.get(key, default)

    order = args.order if args.order is not None else cfg.get("order")
    ctx = Context(
        variant=pick("variant", "variant", "standard"),
        n=pick("n", "n", 2),
        order=_order(order) if order is not None else DEFAULT_ORDER,
        max_overlap=pick("max_overlap", "max_overlap", 3),
        strategy_cases=pick("strategy_cases", "strategy_cases", 1000),
        seed=pick("seed", "seed", 0),
    )
    if ctx.variant not in ("standard", "hat"):
        raise UsageError(f"unknown variant {ctx.variant!r}")
    if ctx.n < 1 or ctx.max_overlap < 3:
        raise UsageError("--n must be >= 1 and --max-overlap >= 3")
    names = args.suites or cfg.get("suites") or []
    if not names:
        raise UsageError("no suites given")
    return ctx, expand(names)


def cmd_verify(args) -> int:
    ctx, names = _context(args)
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    rep = verify(names, ctx, qnumeric=args.q_numeric, jobs=args.jobs, dump_dir=args.dump_dir)
    json.dump(rep, sys.stdout, indent=args.indent, sort_keys=False)
    sys.stdout.write("\n")
    ok = rep["ok"] and rep.get("numeric_agrees", True)
    return 0 if ok else 1


def cmd_nf(args) -> int:
    print(canonical(evaluate(args.expr, args.variant, args.q)))
    return 0


def cmd_eval(args) -> int:
    value = evaluate(args.expr, args.variant)
    print(specialize_value(value, args.q, args.u, args.p))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.cmd == "list":
            print("\n".join(suite_names()))
            return 0
        if args.cmd == "verify":
            return cmd_verify(args)
        if args.cmd == "nf":
            return cmd_nf(args)
        return cmd_eval(args)
    except (UsageError, UnknownSuite, ExprSyntaxError, UnknownSymbol, OSError, ValueError) as exc:
        if isinstance(exc, NotSpecializable):
            print(f"error: {exc}", file=sys.stderr)
            return 1
        msg = exc.args[0] if isinstance(exc, UnknownSuite) else exc
        print(f"error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return 2
    except (CoefficientError, NCError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
