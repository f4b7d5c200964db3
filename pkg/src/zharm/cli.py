"""Command-line surface: kernel tables, operator application, verification.

    zharm kernel   --kind heat --t 0 --range -3:3
    zharm apply    --op laplacian --in seq.csv
    zharm verify   --suite semigroup
    zharm spectrum --op riesz --samples 64

Sequences travel as ``n,value`` rows (shortest round-trip decimals) or as
JSON ``{"lo": ..., "values": [...]}``.  Exit codes: 0 success, 1 numeric
failure (achieved tolerance on stderr), 2 usage errors.
"""

import argparse
import math
import sys

import numpy as np

from . import kernels, operators, verify
from .quadrature import ConvergenceError, QuadratureSpec
from .sequences import Sequence, format_float, read_sequence, write_sequence
from .spectral import OperatorSpec, multiplier_eval, oracle_apply

_APPLY_OPS = ("laplacian", "forward_difference", "backward_difference",
              "heat", "poisson", "frac_laplacian", "frac_integral",
              "riesz", "riesz_tilde", "conj_poisson", "conj_poisson_tilde",
              "square_function")

_SPECTRUM_OPS = ("heat", "poisson", "forward_difference", "backward_difference",
                 "laplacian", "riesz", "riesz_tilde", "frac_laplacian",
                 "frac_integral", "conj_poisson", "conj_poisson_tilde")


def _parse_range(text):
    try:
        lo, hi = text.split(":")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"range must be lo:hi, got {text!r}")
    if hi < lo:
        raise argparse.ArgumentTypeError("range must be nondecreasing")
    return lo, hi


def _build_parser():
    parser = argparse.ArgumentParser(prog="zharm", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p):
        p.add_argument("--out", default=None, help="output file (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--tol", type=float, default=None,
                       help="quadrature relative tolerance")

    pk = sub.add_parser("kernel", help="evaluate one kernel family on a window")
    pk.add_argument("--kind", required=True, choices=kernels.KERNEL_KINDS)
    pk.add_argument("--t", type=float, default=None)
    pk.add_argument("--sigma", type=float, default=None)
    pk.add_argument("--alpha", type=float, default=None)
    pk.add_argument("--range", required=True, type=_parse_range, dest="window")
    add_io(pk)

    pa = sub.add_parser("apply", help="apply an operator to a sequence file")
    pa.add_argument("--op", required=True, choices=_APPLY_OPS)
    pa.add_argument("--in", dest="infile", default=None,
                    help="input sequence (default stdin)")
    pa.add_argument("--t", type=float, default=None)
    pa.add_argument("--sigma", type=float, default=None)
    pa.add_argument("--alpha", type=float, default=None)
    pa.add_argument("--parity", choices=("plus", "tilde"), default="plus")
    pa.add_argument("--route",
                    choices=("kernel", "spectral", "integral_of_dp",
                             "time_integral", "kernel_sum"),
                    default="kernel")
    pa.add_argument("--range", type=_parse_range, dest="window", default=None)
    add_io(pa)

    pv = sub.add_parser("verify", help="run the verification suites")
    pv.add_argument("--suite", default="all",
                    choices=verify.SUITES + ("all",))
    pv.add_argument("--tol", type=float, default=None,
                    help="tolerance floor; loosens checks, never tightens")

    ps = sub.add_parser("spectrum", help="sample a multiplier on [0, 2pi)")
    ps.add_argument("--op", required=True, choices=_SPECTRUM_OPS)
    ps.add_argument("--t", type=float, default=None)
    ps.add_argument("--sigma", type=float, default=None)
    ps.add_argument("--alpha", type=float, default=None)
    ps.add_argument("--samples", type=int, required=True)
    ps.add_argument("--out", default=None)
    return parser


def _kernel_param(args, parser):
    kind = args.kind
    if kind in ("heat", "poisson", "conj_poisson", "conj_poisson_tilde"):
        if args.t is None:
            parser.error(f"--kind {kind} needs --t")
        return args.t
    if kind == "frac_laplacian":
        if args.sigma is None:
            parser.error("--kind frac_laplacian needs --sigma")
        return args.sigma
    if kind == "frac_integral":
        if args.alpha is None:
            parser.error("--kind frac_integral needs --alpha")
        return args.alpha
    return None


def _quad(args):
    if args.tol is None:
        return None
    return QuadratureSpec(rel_tol=args.tol)


def _emit(seq, args):
    if args.out:
        with open(args.out, "w") as handle:
            write_sequence(handle, seq, fmt=args.format)
    else:
        write_sequence(sys.stdout, seq, fmt=args.format)


def _cmd_kernel(args, parser):
    param = _kernel_param(args, parser)
    try:
        table = kernels.kernel_table(args.kind, param, args.window,
                                     quad=_quad(args))
    except ValueError as exc:
        parser.error(str(exc))
    _emit(Sequence(lo=table.lo, values=table.values), args)
    return 0


def _cmd_apply(args, parser):
    if args.infile:
        with open(args.infile) as handle:
            f = read_sequence(handle)
    else:
        f = read_sequence(sys.stdin)
    op = args.op
    quad = _quad(args)
    window = args.window

    if args.route == "spectral":
        spec_kind = op
        spec = OperatorSpec(kind=spec_kind, t=args.t, sigma=args.sigma,
                            alpha=args.alpha)
        if window is None:
            window = operators.default_window(
                f, "heat" if op == "heat" else op, args.t or 0.0)
        out = oracle_apply(spec, f, window)
        _emit(out, args)
        return 0

    if op == "laplacian":
        out = operators.discrete_laplacian(f)
    elif op == "forward_difference":
        out = operators.forward_difference(f)
    elif op == "backward_difference":
        out = operators.backward_difference(f)
    elif op == "heat":
        if args.t is None:
            parser.error("--op heat needs --t")
        out = operators.heat_apply(f, args.t, window=window)
    elif op == "poisson":
        if args.t is None:
            parser.error("--op poisson needs --t")
        out = operators.poisson_apply(f, args.t, window=window, quad=quad)
    elif op == "frac_laplacian":
        if args.sigma is None:
            parser.error("--op frac_laplacian needs --sigma")
        route = "time_integral" if args.route == "kernel" else args.route
        out = operators.fractional_laplacian_apply(f, args.sigma, window=window,
                                                   quad=quad, route=route)
    elif op == "frac_integral":
        if args.alpha is None:
            parser.error("--op frac_integral needs --alpha")
        out = operators.fractional_integral_apply(f, args.alpha, window=window,
                                                  quad=quad)
    elif op in ("riesz", "riesz_tilde"):
        parity = "plus" if op == "riesz" else "tilde"
        out = operators.riesz_apply(f, parity=parity, window=window)
    elif op in ("conj_poisson", "conj_poisson_tilde"):
        if args.t is None:
            parser.error(f"--op {op} needs --t")
        parity = "plus" if op == "conj_poisson" else "tilde"
        route = "integral_of_dp" if args.route == "integral_of_dp" else "kernel"
        out = operators.conjugate_poisson_apply(f, args.t, parity=parity,
                                                window=window, quad=quad,
                                                route=route)
    else:  # square_function
        out = operators.square_function(f, window=window, quad=quad)
    _emit(out, args)
    return 0


def _cmd_verify(args):
    results = verify.run_suite(args.suite, tol_floor=args.tol)
    for res in results:
        print(res.line())
    return 0 if all(r.passed for r in results) else 1


def _cmd_spectrum(args, parser):
    if args.samples < 2:
        parser.error("--samples must be at least 2")
    try:
        spec = OperatorSpec(kind=args.op, t=args.t, sigma=args.sigma,
                            alpha=args.alpha)
    except ValueError as exc:
        parser.error(str(exc))
    theta = 2.0 * math.pi * np.arange(args.samples) / args.samples
    values = multiplier_eval(spec, theta)
    lines = ["theta,re,im"]
    for th, val in zip(theta, values):
        lines.append(f"{format_float(th)},{format_float(val.real)},"
                     f"{format_float(val.imag)}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _join_range_flag(argv):
    # argparse reads "-3:3" as an option; accept "--range -3:3" by joining
    out = []
    it = iter(argv)
    for token in it:
        if token == "--range":
            try:
                out.append(f"--range={next(it)}")
            except StopIteration:
                out.append(token)
        else:
            out.append(token)
    return out


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    parser = _build_parser()
    args = parser.parse_args(_join_range_flag(argv))
    try:
        if args.command == "kernel":
            return _cmd_kernel(args, parser)
        if args.command == "apply":
            return _cmd_apply(args, parser)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_spectrum(args, parser)
    except ConvergenceError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
