"""Command-line entry point.

Exit codes: 0 success, 1 a verification or convergence check failed,
2 usage or parameter-validation error.  Rationals are read as ``p/q``
strings and written the same way; output is deterministic.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from fractions import Fraction
from typing import List, Optional

from . import bipoly, cbi, certificate, dunklop, limits, spectra
from .dunklop import BIParams
from .errors import InvariantError, NearSingularError, ParameterError
from .numcore import format_rat, parse_rat
from .report import VerificationReport

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_PARAMS = {"r1": "1/3", "r2": "5/4", "rho1": "1/5", "rho2": "2/7"}


class UsageError(Exception):
    pass


# -- argument helpers ------------------------------------------------------------

def _rat(text: str) -> Fraction:
    try:
        return parse_rat(text.strip())
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _rat_list(text: str) -> List[Fraction]:
    return [_rat(t) for t in text.split(",") if t.strip()]


def _float_list(text: str) -> List[float]:
    out = []
    for t in text.split(","):
        t = t.strip()
        if not t:
            continue
        try:
            out.append(float(_rat(t)) if "/" in t else float(t))
        except ValueError:
            raise UsageError(f"not a number: {t!r}") from None
    return out


def _params(args) -> BIParams:
    vals = [_rat(getattr(args, k)) for k in ("r1", "r2", "rho1", "rho2")]
    return BIParams(*vals, max_degree=max(args.N + 2, 2))


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _report_exit(args, rep: VerificationReport, extra: Optional[dict] = None) -> int:
    doc = {
        "ok": rep.ok,
        "checks": len(rep),
        "families": rep.families(),
        "failures": [c.to_dict() for c in rep.failures()],
        "results": rep.to_dict(),
    }
    if extra:
        doc.update(extra)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["family", "relation", "degree", "status"])
        for c in rep.checks:
            w.writerow([c.family, c.relation, "" if c.degree is None else c.degree, "pass" if c.status else "fail"])
        _emit(args, buf.getvalue())
    else:
        _emit(args, _dump(doc))
    for c in rep.failures():
        where = "" if c.degree is None else f" at degree {c.degree}"
        print(f"FAILED [{c.family}] {c.relation}{where}", file=sys.stderr)
    return EXIT_OK if rep.ok else EXIT_FAIL


# -- subcommands ---------------------------------------------------------------

def cmd_coeffs(args) -> int:
    t = bipoly.recurrence_coeffs(_params(args), args.N)
    _emit(args, t.to_csv() if args.format == "csv" else _dump(t.to_dict()))
    return EXIT_OK


def cmd_gen(args) -> int:
    p = _params(args)
    if args.family == "cbi":
        polys = cbi.cbi_table(p, args.N).W
    else:
        polys = bipoly.generate_P(p, args.N)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "k", "coefficient"])
        for n, P in enumerate(polys):
            for k, c in enumerate(P.coeffs):
                w.writerow([n, k, format_rat(c)])
        _emit(args, buf.getvalue())
    else:
        doc = {"family": args.family, "params": p.to_dict(), "N": args.N,
               "polynomials": [[format_rat(c) for c in P.coeffs] for P in polys]}
        _emit(args, _dump(doc))
    return EXIT_OK


def cmd_verify_operator(args) -> int:
    p = _params(args)
    rep = VerificationReport()
    rep.extend(certificate.check_eigen_equation(p, args.N))
    rep.extend(certificate.check_two_diagonal(p, args.N))
    rep.extend(certificate.check_constructions(p, args.N))
    return _report_exit(args, rep)


def cmd_verify_algebra(args) -> int:
    p = _params(args)
    rep = dunklop.verify_algebra(p, args.N)
    rep.extend(certificate.check_ladder(p, args.N))
    return _report_exit(args, rep)


def _truncated(args):
    free = _rat_list(args.free) if args.free else None
    if args.truncation == "even":
        if args.N % 2:
            raise UsageError("--truncation even needs an even --N")
        r1, e, d = free or certificate.EVEN_TRUNCATION[:3]
        return bipoly.truncation_even(r1, e, d, args.N)
    if args.N % 2 == 0:
        raise UsageError("--truncation odd needs an odd --N")
    zeta, eta, xi = free or certificate.ODD_TRUNCATION[:3]
    return bipoly.truncation_odd(zeta, eta, xi, args.N)


def cmd_ortho(args) -> int:
    q = _truncated(args)
    try:
        osys = spectra.exact_weights(q, args.N)
    except InvariantError as exc:
        print(f"FAILED [finite orthogonality] {exc}", file=sys.stderr)
        return EXIT_FAIL
    _emit(args, osys.to_csv() if args.format == "csv" else _dump(osys.certificate()))
    return EXIT_OK


def cmd_weights(args) -> int:
    q = _truncated(args)
    try:
        osys = spectra.exact_weights(q, args.N)
    except InvariantError as exc:
        print(f"FAILED [finite orthogonality] {exc}", file=sys.stderr)
        return EXIT_FAIL
    ratios = spectra.weight_factor_ratios(osys)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["s", "x_s", "w_s", "w_s_over_factor_normalized"])
        for s, (x, wt, r) in enumerate(zip(osys.nodes, osys.weights, ratios)):
            w.writerow([s, format_rat(x), format_rat(wt), f"{r:.15f}"])
        _emit(args, buf.getvalue())
    else:
        doc = osys.certificate()
        doc["factor_ratio_max_deviation"] = max(abs(r - 1) for r in ratios)
        _emit(args, _dump(doc))
    return EXIT_OK if max(abs(r - 1) for r in ratios) < 1e-9 else EXIT_FAIL


def cmd_limits_aw(args) -> int:
    p = _params(args)
    eps = _float_list(args.eps_list)
    if not eps:
        raise UsageError("--eps-list is empty")
    try:
        kinds = ("bi", "cbi") if args.family == "both" else (args.family,)
        sweeps = {"bi": limits.aw_to_bi_limit, "cbi": limits.aw_to_cbi_limit}
        reps = [sweeps[k](p, eps, args.N) for k in kinds]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "csv":
        text = reps[0].to_csv() + "".join(r.to_csv().split("\n", 1)[1] for r in reps[1:])
        _emit(args, text)
    else:
        _emit(args, _dump([r.summary() for r in reps]))
    bad = [r.kind for r in reps if not r.monotone()]
    for k in bad:
        print(f"FAILED [q -> -1 limit] {k} errors do not decrease with eps", file=sys.stderr)
    return EXIT_FAIL if bad else EXIT_OK


def cmd_limits_jacobi(args) -> int:
    hs = _rat_list(args.h_list)
    if not hs or any(h <= 0 for h in hs):
        raise UsageError("--h-list needs positive rationals")
    a = [_rat(getattr(args, k)) for k in ("a1", "a2", "b1", "b2")]
    rep = limits.contraction_sweep(*a, hs, args.N)
    _emit(args, rep.to_csv() if args.format == "csv" else _dump(rep.summary()))
    bad = [k for k, rs in rep.norm_ratios().items() if any(r >= 1 for r in rs)]
    for k in bad:
        print(f"FAILED [Dunkl differential limit] residual on x^{k} does not decrease with h", file=sys.stderr)
    return EXIT_FAIL if bad else EXIT_OK


def cmd_symmetric(args) -> int:
    r1, r2 = _rat(args.r1), _rat(args.r2)
    rep = cbi.verify_symmetric_difference_eq(r1, r2, args.N)
    S = cbi.symmetric_stilde(r1, r2, args.N)
    extra = {"S_tilde": [[format_rat(c) for c in P.coeffs] for P in S]}
    return _report_exit(args, rep, extra)


def _random_params(rng: random.Random, horizon: int) -> BIParams:
    while True:
        vals = [Fraction(rng.randint(-30, 30), rng.randint(1, 12)) for _ in range(4)]
        try:
            return BIParams(*vals, max_degree=horizon)
        except ParameterError:
            continue


def cmd_verify(args) -> int:
    p = _params(args)
    rep = certificate.full_certificate(p, args.N, fault=args.inject_fault)
    extra = {"params": p.to_dict(), "N": args.N}
    if args.seed is not None:
        rng = random.Random(args.seed)
        for _ in range(args.random_sets):
            rep.extend(certificate.check_eigen_equation(_random_params(rng, args.N + 2), args.N))
        extra["seed"] = args.seed
    return _report_exit(args, rep, extra)


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bannai-ito", description="Exact Bannai-Ito polynomial toolkit.")
    common = argparse.ArgumentParser(add_help=False)
    for k, v in DEFAULT_PARAMS.items():
        common.add_argument(f"--{k}", default=v, help=f"rational p/q (default {v})")
    common.add_argument("--N", type=int, default=10, help="top degree (default 10)")
    common.add_argument("--max-degree", type=int, default=60, help="cap on --N")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized extra checks")

    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    add("coeffs", cmd_coeffs, "recurrence coefficients A_n, C_n, b_n, u_n, h_n")
    sp = add("gen", cmd_gen, "monic polynomial coefficients")
    sp.add_argument("--family", choices=("bi", "cbi"), default="bi")
    add("verify-operator", cmd_verify_operator, "eigen-equation and construction checks")
    add("verify-algebra", cmd_verify_algebra, "algebra relations and ladder operators")
    for name, fn, h in (("ortho", cmd_ortho, "discrete orthogonality certificate"),
                        ("weights", cmd_weights, "discrete weights and symmetry-factor ratios")):
        sp = add(name, fn, h)
        sp.add_argument("--truncation", choices=("even", "odd"), default="even")
        sp.add_argument("--free", help="three free rationals: 'r1,e,d' (even) or 'zeta,eta,xi' (odd)")
    sp = add("limits-aw", cmd_limits_aw, "q -> -1 limit error sweep")
    sp.add_argument("--eps-list", default="1e-2,1e-3,1e-4")
    sp.add_argument("--family", choices=("bi", "cbi", "both"), default="both")
    sp = add("limits-jacobi", cmd_limits_jacobi, "h -> 0 contraction sweep")
    sp.add_argument("--h-list", default="1/256,1/512,1/1024,1/2048,1/4096")
    for k, v in (("a1", "1/3"), ("a2", "-2/5"), ("b1", "3/7"), ("b2", "1/4")):
        sp.add_argument(f"--{k}", default=v)
    add("symmetric", cmd_symmetric, "symmetric case: difference equations and S~_n")
    sp = add("verify", cmd_verify, "full exact certificate")
    sp.add_argument("--inject-fault", choices=("u3",), default=None, help="corrupt u_3 (exercises the failure path)")
    sp.add_argument("--random-sets", type=int, default=5, help="extra random parameter sets when --seed is given")
    return ap


def _glue_negatives(argv: List[str]) -> List[str]:
    # argparse reads "-1/2" as an option; attach such values to their flag
    out: List[str] = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and tok[:1] == "-" and tok[1:2].isdigit():
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = ap.parse_args(_glue_negatives(argv))
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        if args.N < 0 or args.N > args.max_degree:
            raise UsageError(f"--N must lie in [0, {args.max_degree}]")
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParameterError as exc:
        print(f"error: parameter validation failed: {exc.condition}", file=sys.stderr)
        return EXIT_USAGE
    except NearSingularError as exc:
        print(f"FAILED {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
