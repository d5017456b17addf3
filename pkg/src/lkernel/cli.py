"""Command-line front end.

Every quantity the library computes is individually addressable:

    lkernel zeta 2.0
    lkernel hurwitz "0.5+3j" 1/3
    lkernel dshift --alpha 10 --beta -3 --shift 1 --s 20
    lkernel lvalue --weight 12 --s 13
    lkernel kernel-coeff --k 12 --r 1 --l 2
    lkernel verify --suite kernel

JSON output (--json) renders every float as a 17-significant-digit decimal
string so reports are bit-faithful across platforms.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from . import checks, conv, kernel, lfun
from .cacheio import CACHE_DIR_ENV, cached_eigenform
from .special import hurwitz_zeta, riemann_zeta

__all__ = ["main", "encode_report"]


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _jnum(z) -> dict:
    z = complex(z)
    return {"re": _fmt(z.real), "im": _fmt(z.imag)}


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from exc


def _parse_rational(text: str) -> float:
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _emit(payload: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload, indent=1))
    else:
        for key, val in payload.items():
            print(f"{key}: {val}")


def encode_report(report: dict) -> dict:
    """JSON-safe image of a run_suite report (all floats as strings)."""
    return {
        "suite": report["suite"],
        "started_at": report["started_at"],
        "passed": report["passed"],
        "failed": report["failed"],
        "results": [
            {
                "check_id": r.check_id,
                "status": r.status,
                "measured": _jnum(r.measured),
                "expected": _jnum(r.expected),
                "rel_err": _fmt(r.rel_err),
                "runtime_ms": r.runtime_ms,
                "notes": r.notes,
            }
            for r in report["results"]
        ],
    }


def _build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--tol", type=float, default=1e-9)
    shared.add_argument("--max-terms", type=int, default=5_000_000)
    shared.add_argument("--max-modulus", type=int, default=512)
    shared.add_argument("--threads", type=int, default=1)
    shared.add_argument("--cache-dir", default=None)
    shared.add_argument("--json", action="store_true", dest="as_json")

    top = argparse.ArgumentParser(prog="lkernel", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zeta", parents=[shared], help="Riemann zeta value")
    p.add_argument("s", type=_parse_complex)

    p = sub.add_parser("hurwitz", parents=[shared], help="Hurwitz zeta value")
    p.add_argument("s", type=_parse_complex)
    p.add_argument("x", type=_parse_rational)

    p = sub.add_parser("dshift", parents=[shared], help="shifted convolution D_l")
    p.add_argument("--alpha", type=_parse_complex, required=True)
    p.add_argument("--beta", type=_parse_complex, required=True)
    p.add_argument("--shift", type=int, required=True)
    p.add_argument("--s", type=_parse_complex, required=True)
    p.add_argument("--strategy", choices=["direct", "continued", "auto"], default="auto")

    p = sub.add_parser("lvalue", parents=[shared], help="(completed) L-value")
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--s", type=_parse_complex, required=True)
    p.add_argument("--n-terms", type=int, default=80)

    p = sub.add_parser("kernel-coeff", parents=[shared], help="kernel Fourier coefficient")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--l", type=int, required=True)

    p = sub.add_parser("verify", parents=[shared], help="run verification suites")
    p.add_argument("--suite", default="all", choices=list(checks.suite_names()))

    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.cache_dir:
        os.environ[CACHE_DIR_ENV] = args.cache_dir

    if args.command == "zeta":
        _emit({"s": _jnum(args.s), "value": _jnum(riemann_zeta(args.s))}, args.as_json)
        return 0

    if args.command == "hurwitz":
        value = hurwitz_zeta(args.s, args.x)
        _emit({"s": _jnum(args.s), "x": _fmt(args.x), "value": _jnum(value)}, args.as_json)
        return 0

    if args.command == "dshift":
        tol = min(max(args.tol, 1e-12), 1e-3)
        q = conv.ConvolutionQuery(
            alpha=args.alpha,
            beta=args.beta,
            l=args.shift,
            s=args.s,
            strategy=args.strategy,
            tol=tol,
            max_terms=args.max_terms,
            max_modulus=args.max_modulus,
        )
        res = conv.d_auto(q)
        _emit(
            {
                "value": _jnum(res.value),
                "strategy": res.strategy,
                "terms_used": res.terms_used,
                "tail_bound": _fmt(res.tail_bound),
            },
            args.as_json,
        )
        return 0

    if args.command == "lvalue":
        f = cached_eigenform(args.weight, args.n_terms)
        completed = lfun.completed_l(f, args.s)
        plain = lfun.l_value(f, args.s)
        _emit(
            {"weight": args.weight, "s": _jnum(args.s),
             "completed": _jnum(completed), "value": _jnum(plain)},
            args.as_json,
        )
        return 0

    if args.command == "kernel-coeff":
        p = kernel.canonical_params(args.k, args.r)
        tol = min(max(args.tol, 1e-12), 1e-3)
        rep = kernel.kernel_coefficient(args.l, p, d_tol=tol, max_modulus=args.max_modulus)
        payload = {
            "l": rep.l,
            "value": _jnum(rep.value),
            "prefactor": _jnum(rep.prefactor),
            "finite_part": _jnum(rep.finite),
            "negative_tail": _jnum(rep.tail),
            "rows": [
                {
                    "j": row.j,
                    "mu": row.mu,
                    "nu": _jnum(row.nu),
                    "weight": _jnum(row.weight),
                    "d_value": _jnum(row.d_value),
                    "modulus": row.modulus,
                }
                for row in rep.rows
            ],
        }
        if args.as_json:
            print(json.dumps(payload, indent=1))
        else:
            print(f"l = {rep.l}  value = {rep.value!r}")
            print(f"  prefactor     = {rep.prefactor!r}")
            print(f"  finite part   = {rep.finite!r}")
            print(f"  negative tail = {rep.tail!r}")
            for row in rep.rows:
                print(
                    f"  (j={row.j}, mu={row.mu}) nu={row.nu!r} "
                    f"weight={row.weight!r} D={row.d_value!r} M={row.modulus}"
                )
        return 0

    if args.command == "verify":
        report = checks.run_suite(args.suite, threads=args.threads)
        if args.as_json:
            print(json.dumps(encode_report(report), indent=1))
        else:
            for r in report["results"]:
                print(
                    f"[{r.status:>4}] {r.check_id}  rel_err={r.rel_err:.3e}  "
                    f"({r.runtime_ms} ms)  {r.notes}"
                )
            print(
                f"suite {report['suite']}: {report['passed']} passed, "
                f"{report['failed']} failed"
            )
        return 0 if report["failed"] == 0 else 1

    return 2


if __name__ == "__main__":
    sys.exit(main())
