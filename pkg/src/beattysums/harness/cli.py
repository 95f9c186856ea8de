"""Command-line entry point: `beattysums <subcommand> ...`."""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from ..beatty import BeattyParams, member_indices
from ..characters import build_group, burgess_threshold, character_from_index, quadratic_character
from ..diophantine import beatty_frac_points, cfrac_expand, discrepancy, estimate_type
from ..smoothing import build_psi_delta, psi_closed_array, psi_fourier_array, smoothed_charsum
from ..sums import charsum_S, expsum_U, expsum_U_rational
from .config import ExperimentConfig, parse_real


def _character(k: int, spec: str):
    if spec == "quadratic":
        return quadratic_character(k)
    if spec.startswith("index:"):
        return character_from_index(build_group(k), int(spec.split(":", 1)[1]))
    raise argparse.ArgumentTypeError(f"--chi must be 'quadratic' or 'index:<i>', got {spec!r}")


def _length(args) -> int:
    if args.n is not None:
        return args.n
    return math.ceil(burgess_threshold(args.k, args.eps))


def _cplx(z: complex) -> dict:
    return {"re": z.real, "im": z.imag, "abs": abs(z)}


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=1, default=str)
    sys.stdout.write("\n")


def cmd_charsum(args) -> int:
    params = BeattyParams(parse_real(args.alpha), parse_real(args.beta))
    chi = _character(args.k, args.chi)
    N = _length(args)
    S = charsum_S(params, chi, N)
    out = {"k": args.k, "chi": chi.label, "N": N, "S": _cplx(S), "abs_S_over_N": abs(S) / N}
    if args.delta is not None:
        rep = smoothed_charsum(params, chi, N, Fraction(args.delta), args.fourier_j or 1,
                               fourier=args.fourier_j is not None)
        out["smoothed"] = {"closed_form": _cplx(rep.smoothed), "boundary_count": rep.boundary_count,
                           "sandwich_ok": rep.sandwich_ok,
                           "fourier": _cplx(rep.fourier) if rep.fourier is not None else None,
                           "fourier_truncation_bound": rep.fourier_truncation_bound}
    _emit(out)
    return 0


def cmd_expsum(args) -> int:
    chi = _character(args.k, args.chi)
    N = _length(args)
    M0 = args.m0
    if args.t is None:
        U = expsum_U_rational(chi, args.a, args.k, M0, M0 + N)
        t = f"{args.a}/{args.k}"
    else:
        U = expsum_U(chi, parse_real(args.t), M0, M0 + N)
        t = args.t
    _emit({"k": args.k, "chi": chi.label, "t": t, "M0": M0, "M": M0 + N, "U": _cplx(U),
           "abs_U_over_N": abs(U) / N if N else None})
    return 0


def cmd_membership(args) -> int:
    params = BeattyParams(parse_real(args.alpha), parse_real(args.beta))
    pairs = member_indices(params, args.m_min - 1, args.m_max)
    _emit({"members": [m for m, _ in pairs], "indices": [n for _, n in pairs]})
    return 0


def cmd_discrepancy(args) -> int:
    M = args.n
    rep = discrepancy(beatty_frac_points(parse_real(args.alpha), parse_real(args.beta), M))
    _emit({"M": M, "D": rep.D, "M_times_D": M * rep.D, "witness": list(rep.witness)})
    return 0


def cmd_cfrac(args) -> int:
    cf = cfrac_expand(parse_real(args.alpha), args.levels)
    est = estimate_type(cf)
    _emit({"quotients": list(cf.quotients), "preperiod": cf.preperiod, "period": cf.period,
           "convergents": [f"{p}/{q}" for p, q in zip(cf.p, cf.q)], "tau_est": est.tau,
           "tau_levels": list(est.levels)})
    return 0


def cmd_psi(args) -> int:
    gamma = parse_real(args.gamma) if args.gamma else parse_real(args.alpha).inverse()
    S = build_psi_delta(gamma, Fraction(args.delta), args.fourier_j)
    xs = [float(parse_real(x)) for x in args.x]
    closed = psi_closed_array(S, xs)
    series = psi_fourier_array(S, xs)
    _emit({"gamma": float(gamma), "delta": str(S.delta), "J": S.J,
           "coefficient_constant": S.coefficient_constant(),
           "points": [{"x": x, "closed": c, "fourier": f} for x, c, f in zip(xs, closed, series)]})
    return 0


def cmd_experiment(args) -> int:
    from .experiment import run_experiment
    from .io import report_path, write_report, write_results

    config = ExperimentConfig.load(args.config)
    overrides = {"threads": args.threads, "seed": args.seed, "format": args.format,
                 "output": args.out}
    for key, value in overrides.items():
        if value is not None:
            setattr(config, key, value)
    config.validate()
    result = run_experiment(config)
    if config.output:
        write_results(result.rows, config.format, config.output)
        write_report(result.report, report_path(config.output),
                     {"sandwich_failures": result.sandwich_failures, "rows": len(result.rows)})
    if not args.quiet:
        rep = result.report
        print(f"{len(result.rows)} rows; fit {rep.quantity}: "
              + (f"{rep.exponent:.4f}" if rep.fitted else rep.note))
    return 0


def cmd_verify(args) -> int:
    from .checks import run_all
    results = run_all(args.only)
    for r in results:
        print(r.line, flush=True)
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="beattysums",
                                description="Character sums over Beatty sequences.")
    sub = p.add_subparsers(dest="command", required=True)

    def real_args(sp, beta=True):
        sp.add_argument("--alpha", default="sqrt:2",
                        help="sqrt:n | golden | quad:p,q,d,r | rat:p/q")
        if beta:
            sp.add_argument("--beta", default="0")

    def length_args(sp):
        sp.add_argument("--k", type=int, required=True)
        sp.add_argument("--chi", default="quadratic", help="quadratic | index:<i>")
        sp.add_argument("--n", type=int, help="length N (default ceil(B_eps(k)))")
        sp.add_argument("--eps", type=float, default=0.05)

    sp = sub.add_parser("charsum", help="S_k(alpha, beta, chi; N)")
    real_args(sp)
    length_args(sp)
    sp.add_argument("--delta", help="also report the smoothed sum with this Delta")
    sp.add_argument("--fourier-j", type=int)
    sp.set_defaults(func=cmd_charsum)

    sp = sub.add_parser("expsum", help="U_k(t, chi; M0, M0+N)")
    length_args(sp)
    sp.add_argument("--a", type=int, default=1, help="rational phase a/k (default)")
    sp.add_argument("--t", help="real phase in the --alpha grammar, overrides --a")
    sp.add_argument("--m0", type=int, default=0)
    sp.set_defaults(func=cmd_expsum)

    sp = sub.add_parser("membership", help="Beatty terms in [m_min, m_max] with their indices")
    real_args(sp)
    sp.add_argument("--m-min", type=int, default=1)
    sp.add_argument("--m-max", type=int, required=True)
    sp.set_defaults(func=cmd_membership)

    sp = sub.add_parser("discrepancy", help="discrepancy of {alpha m + beta}, m <= N")
    real_args(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_discrepancy)

    sp = sub.add_parser("cfrac", help="continued fraction and type estimate")
    real_args(sp, beta=False)
    sp.add_argument("--levels", type=int, default=30)
    sp.set_defaults(func=cmd_cfrac)

    sp = sub.add_parser("psi", help="smoothed indicator values")
    real_args(sp, beta=False)
    sp.add_argument("--gamma", help="interval length (default 1/alpha)")
    sp.add_argument("--delta", required=True)
    sp.add_argument("--fourier-j", type=int, default=1000)
    sp.add_argument("--x", nargs="+", default=["0", "rat:1/4", "rat:1/2"])
    sp.set_defaults(func=cmd_psi)

    sp = sub.add_parser("experiment", help="run an experiment from a JSON config")
    esub = sp.add_subparsers(dest="action", required=True)
    run = esub.add_parser("run")
    run.add_argument("config")
    run.add_argument("--threads", type=int)
    run.add_argument("--seed", type=int)
    run.add_argument("--format", choices=("csv", "json"))
    run.add_argument("--out")
    run.add_argument("--quiet", action="store_true")
    run.set_defaults(func=cmd_experiment)

    sp = sub.add_parser("verify", help="run the acceptance suite")
    sp.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
