"""Command line interface.

Subcommands: denoise1d, denoise2d, synth, noise, metrics, check.  Each
run prints a one-line JSON summary to stdout; human-readable errors go
to stderr.  Exit codes: 0 success, 1 validation error, 2 I/O error.
"""

import argparse
import json
import sys
import time

import numpy as np

from .fileio import FORMATS, ParseError, read_phase_data, write_phase_data
from .lifting import check_convergence_conditions
from .solver import Params1D, Params2D, cppa_denoise_1d, cppa_denoise_2d
from .synth import NoiseSpec, add_wrapped_gaussian, cmse, synth_signal_1d, synth_surface_2d

PI = np.pi


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad flags; the contract wants 1 for
    # validation problems and reserves 2 for I/O
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_io_flags(p):
    p.add_argument("--in", dest="in_", required=True, metavar="PATH")
    p.add_argument("--format", choices=FORMATS, default=None,
                   help="input/output format (default: inferred from extension)")


def build_parser():
    parser = _Parser(prog="phasetv",
                     description="TV denoising of circle-valued signals and images")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("denoise1d", parents=[], help="denoise a 1-D phase signal")
    _add_io_flags(p)
    p.add_argument("--out", required=True)
    p.add_argument("--alpha", type=float, default=0.0, help="first-difference weight")
    p.add_argument("--beta", type=float, default=0.0, help="second-difference weight")
    p.add_argument("--lambda0", type=float, default=PI, help="initial prox step")
    p.add_argument("--cycles", type=int, default=4000)
    p.add_argument("--stop-tol", type=float, default=None,
                   help="optional early stop on cycle change")
    p.add_argument("--truth", default=None, help="clean reference for the cMSE report")
    p.set_defaults(func=_cmd_denoise1d)

    p = sub.add_parser("denoise2d", help="denoise a 2-D phase image")
    _add_io_flags(p)
    p.add_argument("--out", required=True)
    p.add_argument("--alpha1", type=float, default=0.0, help="vertical first differences")
    p.add_argument("--alpha2", type=float, default=0.0, help="horizontal first differences")
    p.add_argument("--beta1", type=float, default=0.0, help="vertical second differences")
    p.add_argument("--beta2", type=float, default=0.0, help="horizontal second differences")
    p.add_argument("--gamma", type=float, default=0.0, help="diagonal second differences")
    p.add_argument("--lambda0", type=float, default=PI)
    p.add_argument("--cycles", type=int, default=4000)
    p.add_argument("--stop-tol", type=float, default=None)
    p.add_argument("--truth", default=None)
    p.set_defaults(func=_cmd_denoise2d)

    p = sub.add_parser("synth", help="write a benchmark signal or surface")
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--signal1d", action="store_true")
    kind.add_argument("--surface2d", action="store_true")
    p.add_argument("--n", type=int, default=500, help="samples (1-D) or rows (2-D)")
    p.add_argument("--m", type=int, default=None, help="columns (2-D; defaults to --n)")
    p.add_argument("--out", required=True)
    p.add_argument("--truth-out", default=None,
                   help="also write the unwrapped 2-D surface here")
    p.add_argument("--format", choices=FORMATS, default=None)
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("noise", help="add wrapped Gaussian noise")
    _add_io_flags(p)
    p.add_argument("--out", required=True)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_noise)

    p = sub.add_parser("metrics", help="cyclic mean squared error between two files")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--format", choices=FORMATS, default=None)
    p.set_defaults(func=_cmd_metrics)

    p = sub.add_parser("check", help="report the convergence-condition flags")
    _add_io_flags(p)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--lambda0", type=float, default=PI)
    p.add_argument("--cycles", type=int, default=4000)
    p.add_argument("--alpha", type=float, default=0.0, help="1-D weight")
    p.add_argument("--beta", type=float, default=0.0, help="1-D weight")
    p.add_argument("--alpha1", type=float, default=0.0)
    p.add_argument("--alpha2", type=float, default=0.0)
    p.add_argument("--beta1", type=float, default=0.0)
    p.add_argument("--beta2", type=float, default=0.0)
    p.add_argument("--gamma", type=float, default=0.0)
    p.set_defaults(func=_cmd_check)

    return parser


def _emit(payload):
    print(json.dumps(payload))


def _cmd_denoise1d(args):
    t0 = time.monotonic()
    data = read_phase_data(args.in_, args.format)
    if data.ndim != 1:
        raise ValueError("denoise1d expects 1-D data (one value per line / one row)")
    params = Params1D(alpha=args.alpha, beta=args.beta, lambda0=args.lambda0,
                      max_cycles=args.cycles, stop_tol=args.stop_tol)
    report = cppa_denoise_1d(data, params)
    write_phase_data(args.out, report.result, args.format)
    summary = {
        "command": "denoise1d",
        "energy": report.energy_trace[-1],
        "cycles": report.cycles_run,
        "wall_time_s": round(time.monotonic() - t0, 3),
    }
    if args.truth is not None:
        summary["cmse"] = cmse(read_phase_data(args.truth, args.format), report.result)
    _emit(summary)
    return 0


def _cmd_denoise2d(args):
    t0 = time.monotonic()
    data = read_phase_data(args.in_, args.format)
    if data.ndim != 2:
        raise ValueError("denoise2d expects 2-D data")
    params = Params2D(alpha=(args.alpha1, args.alpha2),
                      beta=(args.beta1, args.beta2), gamma=args.gamma,
                      lambda0=args.lambda0, max_cycles=args.cycles,
                      stop_tol=args.stop_tol)
    report = cppa_denoise_2d(data, params)
    write_phase_data(args.out, report.result, args.format)
    summary = {
        "command": "denoise2d",
        "energy": report.energy_trace[-1],
        "cycles": report.cycles_run,
        "wall_time_s": round(time.monotonic() - t0, 3),
    }
    if args.truth is not None:
        summary["cmse"] = cmse(read_phase_data(args.truth, args.format), report.result)
    _emit(summary)
    return 0


def _cmd_synth(args):
    t0 = time.monotonic()
    if args.signal1d:
        data = synth_signal_1d(args.n)
        shape = [int(data.size)]
    else:
        m = args.m if args.m is not None else args.n
        data, unwrapped = synth_surface_2d(args.n, m)
        shape = list(data.shape)
        if args.truth_out is not None:
            # unwrapped values exceed [-pi, pi); only text formats keep them
            write_phase_data(args.truth_out, unwrapped, args.format)
    write_phase_data(args.out, data, args.format)
    _emit({"command": "synth", "shape": shape,
           "wall_time_s": round(time.monotonic() - t0, 3)})
    return 0


def _cmd_noise(args):
    t0 = time.monotonic()
    data = read_phase_data(args.in_, args.format)
    noisy = add_wrapped_gaussian(data, NoiseSpec(sigma=args.sigma, seed=args.seed))
    write_phase_data(args.out, noisy, args.format)
    _emit({"command": "noise", "sigma": args.sigma, "seed": args.seed,
           "wall_time_s": round(time.monotonic() - t0, 3)})
    return 0


def _cmd_metrics(args):
    a = read_phase_data(args.a, args.format)
    b = read_phase_data(args.b, args.format)
    _emit({"command": "metrics", "cmse": cmse(a, b)})
    return 0


def _cmd_check(args):
    data = read_phase_data(args.in_, args.format)
    if data.ndim == 1:
        params = Params1D(alpha=args.alpha, beta=args.beta,
                          lambda0=args.lambda0, max_cycles=args.cycles)
    else:
        params = Params2D(alpha=(args.alpha1, args.alpha2),
                          beta=(args.beta1, args.beta2), gamma=args.gamma,
                          lambda0=args.lambda0, max_cycles=args.cycles)
    chk = check_convergence_conditions(data, params, epsilon=args.epsilon)
    _emit({
        "command": "check",
        "d_inf_f": chk.d_inf_f,
        "tv_budget": chk.tv_budget,
        "epsilon": chk.epsilon,
        "lambda_l2": chk.lambda_l2,
        "lambda_inf": chk.lambda_inf,
        "c": chk.c,
        "cond_density": chk.cond_density,
        "cond_tv_budget": chk.cond_tv_budget,
        "cond_schedule": chk.cond_schedule,
    })
    return 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, OSError) as exc:
        print(f"phasetv: i/o error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"phasetv: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
