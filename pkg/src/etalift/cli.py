"""Command-line entry point: ``etalift <command> ...``.

Series are read and written as JSON, tables and reports as CSV.  Exit status is
0 on success, 1 when a check fails or the input violates a contract, and 2 for
usage errors.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from .arith import RealCharacter, hasse_exponent, is_suitable_numeric


class CheckFailed(Exception):
    pass


def _dump(obj, out):
    out.write(json.dumps(obj, sort_keys=True, default=_json_default) + "\n")


def _json_default(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if hasattr(x, "item"):
        return x.item()
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _read_series(path):
    from .qseries import series_from_json

    with (sys.stdin if path == "-" else open(path)) as fh:
        obj = json.load(fh)
    return series_from_json(obj.get("series", obj))


def _meta(text):
    from .hecke import HalfIntegralMeta

    return HalfIntegralMeta.from_json(json.loads(text))


# ---------------------------------------------------------------- commands

def cmd_expand(args, out):
    from .forms import EtaQuotient, expand_eta_quotient

    q = EtaQuotient.parse(args.eta)
    s = expand_eta_quotient(q, args.prec, args.modulus)
    _dump({"eta": str(q), "weight": str(q.weight), "series": s.to_json()}, out)


def cmd_hecke(args, out):
    from .hecke import al_eigen_check, t_p2_eta, t_p2_theta, t_p_integral

    F = _read_series(args.input)
    if args.op == "tp2":
        res = t_p2_eta(_meta(args.meta), F, args.p)
    elif args.op == "tp2-theta":
        psi = RealCharacter.parse(args.chi, args.level)
        res = t_p2_theta(args.lam, args.level, psi, F, args.p)
    elif args.op == "tp":
        res = t_p_integral(F, args.p, args.k, RealCharacter.parse(args.chi, args.level))
    else:
        rep = al_eigen_check(F, args.p, args.k, args.eps)
        _dump({"op": "al", "p": args.p, "passed": rep.passed, "checked": rep.checked,
               "detail": rep.detail}, out)
        if not rep.passed:
            raise CheckFailed(rep.detail)
        return
    _dump({"op": args.op, "p": args.p, "series": res.to_json()}, out)


def cmd_lift(args, out):
    from .lift import shimura_lift

    meta = _meta(args.meta)
    res = shimura_lift(meta, _read_series(args.input), args.t, args.prec)
    _dump({"t": args.t, "meta": meta.to_json(), "target_weight": res.target_weight,
           "target_level": res.target_level, "wrong_class": res.wrong_class,
           "eps": None if res.eps is None else [res.eps.eps2, res.eps.eps3],
           "series": res.coeffs.to_json()}, out)


def cmd_compare(args, out):
    from .lift import compare_lifts

    d = compare_lifts(_meta(args.meta), _read_series(args.input), args.t, args.prec)
    _dump({"t": args.t, "max_discrepancy": d}, out)
    if d:
        raise CheckFailed(f"lifts differ by {d}")


def cmd_verify_example(args, out):
    from .examples import verify_example

    lines = verify_example(args.n, nmax=args.prec)
    failed = 0
    for line in lines:
        failed += not line.passed
        extra = f"  ({line.detail})" if line.detail else ""
        out.write(f"{'PASS' if line.passed else 'FAIL'}  {line.name}{extra}\n")
    out.write(f"example {args.n}: {len(lines) - failed}/{len(lines)} checks passed\n")
    if failed:
        raise CheckFailed(f"{failed} checks failed")


def cmd_check_multiplier(args, out):
    from .forms import theta_series
    from .multipliers import (check_eta_to_theta, check_nu_v_t, make_rng, nu_eta, nu_theta,
                              random_gamma0, verify_transform_numeric)
    from .qseries import eta_series

    rng = make_rng(args.seed)
    worst, fails = 0.0, 0
    if args.which in ("eta", "theta"):
        F = eta_series(3000) ** args.r if args.which == "eta" else theta_series(12000)
        N = 1 if args.which == "eta" else 4
        for _ in range(args.samples):
            g = random_gamma0(N, rng, kmax=50 // N, dmax=50)
            mult = nu_eta(g) ** args.r if args.which == "eta" else nu_theta(g)
            w = Fraction(args.r, 2) if args.which == "eta" else Fraction(1, 2)
            res = verify_transform_numeric(F, w, g, mult)
            worst = max(worst, res)
            fails += res >= args.tol
    elif args.which == "nu-v-t":
        for _ in range(args.samples):
            fails += not check_nu_v_t(random_gamma0(args.t, rng), args.r, args.t)
    else:
        N = 576 if args.r % 3 else 64
        for _ in range(args.samples):
            g = random_gamma0(N, rng, kmax=3 if N == 576 else 10)
            fails += not check_eta_to_theta(args.r, args.lam, g, tol=args.tol)
    out.write("which,samples,seed,failures,worst_residual,status\n")
    out.write(f"{args.which},{args.samples},{args.seed},{fails},{worst:.3e},"
              f"{'pass' if not fails else 'fail'}\n")
    if fails:
        raise CheckFailed(f"{fails} samples failed")


def cmd_build_fl(args, out):
    from .frobenius import build_Fl

    F = build_Fl(args.ell, args.prec)
    _dump({"ell": args.ell, "zero": F.is_zero(), "series": F.to_json()}, out)


def cmd_cphi(args, out):
    from .forms import cphi_series

    s = cphi_series(args.m, args.prec, args.modulus)
    _dump({"m": args.m, "series": s.to_json()}, out)


def cmd_scan(args, out):
    from .frobenius import classify_Q, recover_g6_mod13, scan_congruence

    if args.ell != 13:
        raise ValueError("direct scans are implemented for ell = 13")
    eps = args.eps
    if eps is None:
        eps = classify_Q(args.Q, recover_g6_mod13(args.Q + 1))
        if eps is None:
            raise CheckFailed(f"Q = {args.Q} gives no congruence")
    rep = scan_congruence(args.Q, eps, n_max=args.nmax, ell=args.ell)
    out.write(rep.to_csv())
    if not rep.passed and not args.expect_violations:
        raise CheckFailed(f"{len(rep.violations)} violations")
    if args.expect_violations and rep.passed:
        raise CheckFailed("expected violations, found none")


def cmd_table(args, out):
    from .frobenius import q_table

    rows = q_table(args.lmax)
    out.write("eps_Q,Q\n")
    for eps in (1, -1):
        out.write(f"{eps},\"{', '.join(map(str, rows[eps]))}\"\n")


def cmd_suitability(args, out):
    _dump({"k": args.k, "ell": args.ell, "suitable": is_suitable_numeric(args.k, args.ell),
           "hasse_exponent": hasse_exponent(args.ell)}, out)


def cmd_acceptance(args, out):
    from .acceptance import run

    results = run(args.criterion, seed=args.seed)
    for r in results:
        out.write(r.line() + "\n")
        if args.verbose or not r.passed:
            for d in r.details:
                out.write(f"    {d}\n")
    if not all(r.passed for r in results):
        raise CheckFailed("acceptance failures")


# ---------------------------------------------------------------- parser

def build_parser():
    p = argparse.ArgumentParser(prog="etalift", description=__doc__.splitlines()[0])
    p.add_argument("--threads", type=int, default=None, help="cap on kernel worker threads")
    p.add_argument("--out", default="-", help="output file (default stdout)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("expand", help="expand an eta quotient")
    s.add_argument("--eta", required=True, help='e.g. "1^5" or "1^2 2^2 3^2 6^2"')
    s.add_argument("--prec", type=int, default=20)
    s.add_argument("--modulus", type=int, default=None)
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("hecke", help="apply a Hecke operator to a JSON series")
    s.add_argument("--op", choices=["tp2", "tp2-theta", "tp", "al"], default="tp2")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--meta", default=None, help='{"lambda":2,"N":1,"psi":"1","r":5}')
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--lam", type=int, default=1)
    s.add_argument("--level", type=int, default=1)
    s.add_argument("--chi", default="1")
    s.add_argument("--eps", type=int, choices=[1, -1], default=1)
    s.set_defaults(func=cmd_hecke)

    for name, fn in (("lift", cmd_lift), ("compare-lifts", cmd_compare)):
        s = sub.add_parser(name)
        s.add_argument("--t", type=int, required=True)
        s.add_argument("--meta", required=True)
        s.add_argument("--in", dest="input", required=True)
        s.add_argument("--prec", type=int, default=None)
        s.set_defaults(func=fn)

    s = sub.add_parser("verify-example", help="run the checks of a worked example")
    s.add_argument("--n", type=int, choices=[1, 2, 3, 4], required=True)
    s.add_argument("--prec", type=int, default=200)
    s.set_defaults(func=cmd_verify_example)

    s = sub.add_parser("check-multiplier")
    s.add_argument("--which", choices=["eta", "theta", "nu-v-t", "eta-to-theta"], required=True)
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--r", type=int, default=1)
    s.add_argument("--t", type=int, default=5)
    s.add_argument("--lam", type=int, default=0)
    s.add_argument("--tol", type=float, default=1e-9)
    s.set_defaults(func=cmd_check_multiplier)

    s = sub.add_parser("build-fl")
    s.add_argument("--ell", type=int, choices=[7, 11, 13], required=True)
    s.add_argument("--prec", type=int, default=100)
    s.set_defaults(func=cmd_build_fl)

    s = sub.add_parser("cphi")
    s.add_argument("--m", type=int, default=5)
    s.add_argument("--prec", type=int, default=20)
    s.add_argument("--modulus", type=int, default=None)
    s.set_defaults(func=cmd_cphi)

    s = sub.add_parser("scan-congruence")
    s.add_argument("--ell", type=int, default=13)
    s.add_argument("--Q", type=int, required=True)
    s.add_argument("--eps", type=int, choices=[1, -1], default=None)
    s.add_argument("--nmax", type=int, default=None)
    s.add_argument("--expect-violations", action="store_true")
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("table")
    s.add_argument("--lmax", type=int, default=2000)
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("suitability")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--ell", type=int, required=True)
    s.set_defaults(func=cmd_suitability)

    s = sub.add_parser("acceptance", help="run acceptance criteria")
    s.add_argument("--criterion", type=int, action="append", choices=range(1, 13))
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-v", "--verbose", action="store_true")
    s.set_defaults(func=cmd_acceptance)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.threads is not None:
        os.environ["ETALIFT_THREADS"] = str(max(1, args.threads))
    out = sys.stdout if args.out == "-" else open(args.out, "w")
    try:
        args.func(args, out)
        return 0
    except CheckFailed as e:
        sys.stderr.write(json.dumps({"status": "fail", "command": args.command,
                                     "reason": str(e)}) + "\n")
        return 1
    except (ValueError, ArithmeticError, KeyError, OSError) as e:
        sys.stderr.write(json.dumps({"status": "error", "command": args.command,
                                     "error": type(e).__name__, "reason": str(e)}) + "\n")
        return 1
    finally:
        if out is not sys.stdout:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
