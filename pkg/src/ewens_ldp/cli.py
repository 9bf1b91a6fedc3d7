"""Command line interface.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 numeric error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import secrets
import sys

from . import selftest
from ._backend import NAME as BACKEND
from .concentration import bound_report
from .core import ModelParams
from .errors import DomainError, NumericError
from .harness import verify_bound
from .ldp import rate_alpha, rate_ewens
from .mgf import METHODS, mgf
from .mittag import ml3_series, ml_integral, ml_series
from .partition import crp_sample_batch, ewens_bernoulli_sample_batch
from .rng import DEFAULT_SEED

EXIT_USAGE, EXIT_DOMAIN, EXIT_NUMERIC = 1, 2, 3

_METHOD_ALIASES = {m.lower(): m for m in METHODS}
_METHOD_ALIASES.update({"ml-integral": "MlIntegral", "ml": "MlIntegral", "gf": "GfCoeff", "gf-coeff": "GfCoeff"})


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _seed(text):
    if text == "random":
        return secrets.randbits(64)
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _method(text):
    try:
        return _METHOD_ALIASES[text.lower()]
    except KeyError:
        raise argparse.ArgumentTypeError(f"unknown method {text!r}") from None


def _fmt(v, decimals, echo=False):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, str):
        return v
    v = float(v)
    if math.isinf(v) or math.isnan(v) or decimals is None or echo:
        return repr(v)  # shortest string that round-trips
    return f"{v:.{decimals}f}"


def _emit(args, header, rows, echo=(), meta=None):
    """Write rows as CSV (header first) or JSON; ``echo`` columns are inputs, printed verbatim."""
    if args.format == "json":
        payload = [dict(zip(header, r)) for r in rows]
        if meta is not None:
            payload = {"meta": meta, "rows": payload}
        text = json.dumps(payload, indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_fmt(v, args.decimals, h in echo) for h, v in zip(header, r)])
        text = buf.getvalue()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _params(args):
    return ModelParams(args.alpha, args.theta)


def cmd_sample(args):
    p = _params(args)
    if args.ewens:
        ks = ewens_bernoulli_sample_batch(args.theta, args.n, args.reps, args.seed)
    else:
        ks = crp_sample_batch(p, args.n, args.reps, args.seed)
    _emit(args, ["replicate", "k_n"], [(i, int(k)) for i, k in enumerate(ks)])


def cmd_mgf(args):
    r = mgf(_params(args), args.n, args.t, args.method)
    _emit(args, ["value", "log_value", "method", "terms_used", "remainder"],
          [(r.value, r.log_value, r.method, r.terms_used, r.remainder)])


def cmd_rate(args):
    rows = []
    for x in args.x:
        if args.ewens:
            t_x = math.log(x / args.theta) if x > 0 else -math.inf
            rows.append((x, t_x, rate_ewens(args.theta, x)))
        else:
            r = rate_alpha(args.alpha, x)
            rows.append((x, r.t_x, r.rate))
    _emit(args, ["x", "t_x", "rate"], rows, echo={"x"})


def cmd_bound(args):
    p = _params(args)
    rows = []
    for x in args.x:
        b = bound_report(p, args.n, x, chernoff=not args.no_chernoff)
        rows.append((b.x, b.n, b.paper_bound, b.exact_tail, b.exact_chernoff))
    _emit(args, ["x", "n", "paper_bound", "exact_tail", "exact_chernoff"], rows, echo={"x"})


def cmd_verify(args):
    p = _params(args)
    rep = verify_bound(p, args.n, args.x, args.reps, args.seed, chernoff=not args.no_chernoff)
    header = ["x", "p_hat", "ci_lower_95", "ci_upper_95", "exact_tail", "paper_bound",
              "exact_chernoff", "violation", "confirmed"]
    rows = [
        (r.x, r.mc.p_hat, r.mc.ci_lower_95, r.mc.ci_upper_95, r.exact_tail, r.paper_bound,
         r.exact_chernoff, r.violation, r.confirmed)
        for r in rep.rows
    ]
    # wall time stays out of the payload so output is byte-identical across runs
    meta = {"alpha": p.alpha, "theta": p.theta, "n": args.n, "reps": args.reps, "seed": args.seed}
    _emit(args, header, rows, echo={"x"}, meta=meta)
    print(f"verify: {len(rows)} rows, {rep.violations} violations, {rep.wall_time:.2f}s", file=sys.stderr)


def cmd_ml(args):
    if args.gamma is not None or args.beta is not None:
        v = ml3_series(args.alpha, args.beta or 1.0, args.gamma or 1.0, args.z)
        method = "series3"
    elif args.method == "integral":
        v = ml_integral(args.alpha, args.z)
        method = "integral"
    else:
        v = ml_series(args.alpha, args.z)
        method = "series"
    _emit(args, ["alpha", "z", "value", "method"], [(args.alpha, args.z, v, method)], echo={"alpha", "z"})


def cmd_selftest(args):
    print(f"backend: {BACKEND}", file=sys.stderr)
    return 0 if selftest.run(sys.stdout) else EXIT_NUMERIC


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="write to PATH instead of stdout")
    common.add_argument("--decimals", type=int, default=None, help="fixed decimals for computed values")

    model = _Parser(add_help=False)
    model.add_argument("--alpha", type=float, required=True)
    model.add_argument("--theta", type=float, default=0.0)

    parser = _Parser(prog="ewens-ldp", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("sample", parents=[common, model], help="simulate K_n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--reps", type=int, default=1)
    s.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    s.add_argument("--ewens", action="store_true", help="alpha = 0 Bernoulli-sum sampler")
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("mgf", parents=[common, model], help="moment-generating function of K_n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--t", type=float, required=True)
    s.add_argument("--method", type=_method, default="Series",
                   help="series | ml-integral | sharp | gf | enumeration | exact")
    s.set_defaults(func=cmd_mgf)

    s = sub.add_parser("rate", parents=[common], help="rate function")
    s.add_argument("--alpha", type=float, default=None)
    s.add_argument("--theta", type=float, default=None)
    s.add_argument("--x", type=float, nargs="+", required=True)
    s.add_argument("--ewens", action="store_true", help="alpha = 0 rate with --theta")
    s.set_defaults(func=cmd_rate)

    s = sub.add_parser("bound", parents=[common, model], help="concentration bound vs exact tail")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--x", type=float, nargs="+", required=True)
    s.add_argument("--no-chernoff", action="store_true")
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("verify", parents=[common, model], help="Monte Carlo check of the bound")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--x", type=float, nargs="*", default=[])
    s.add_argument("--reps", type=int, default=10**5)
    s.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    s.add_argument("--no-chernoff", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("ml", parents=[common], help="Mittag-Leffler functions")
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--z", type=float, required=True)
    s.add_argument("--beta", type=float, default=None)
    s.add_argument("--gamma", type=float, default=None)
    s.add_argument("--method", choices=("series", "integral"), default="series")
    s.set_defaults(func=cmd_ml)

    s = sub.add_parser("selftest", help="run the built-in invariant checks")
    s.set_defaults(func=cmd_selftest)
    return parser


def run_cli(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "rate":
            if args.ewens and args.theta is None:
                raise UsageError("rate --ewens needs --theta")
            if not args.ewens and args.alpha is None:
                raise UsageError("rate needs --alpha (or --ewens --theta)")
        return args.func(args) or 0
    except UsageError as exc:
        print(f"ewens-ldp: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"ewens-ldp: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NumericError as exc:
        print(f"ewens-ldp: numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def main():
    sys.exit(run_cli())
