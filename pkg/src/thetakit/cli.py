"""Command-line front end: eval, verify, catalog, zeros, reduce.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 unknown identity id.  All randomness is seeded and recorded in the
report; JSON output contains no timestamps, so identical invocations
produce byte-identical reports (wall times go to the console only).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import dataclass, field

from . import __version__
from .core import (
    DEFAULT_SETTINGS,
    Characteristics,
    EvalSettings,
    ModularParameter,
    TruncationError,
    theta_char,
)
from .identities import (
    DEFAULT_BOX,
    STRESS_BOX,
    UnknownIdentityError,
    builtin_catalog,
    catalog_tsv,
    verify,
)
from .notation import big_theta
from .reduction import eval_reduced, eval_reduced_product, full_reduction, reduce_tau

__all__ = ["main", "app", "parse_complex", "format_complex"]

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_UNKNOWN_ID = 3

# complex literal: A, Bi, or A+Bi with plain decimal parts (no exponents)
_NUM = r"\d+(?:\.\d+)?"
_COMPLEX_RE = re.compile(
    rf"^(?:(?P<re>[+-]?{_NUM})(?:(?P<im>[+-]{_NUM})i)?|(?P<imonly>[+-]?{_NUM})i)$"
)


def parse_complex(text: str) -> complex:
    """Parse 'A', 'Bi', or 'A+Bi' with decimal A, B; unicode minus allowed."""
    cleaned = text.strip().replace("−", "-")
    m = _COMPLEX_RE.match(cleaned)
    if not m:
        raise ValueError(f"malformed complex literal {text!r} (expected e.g. 0.3+0.9i)")
    if m.group("imonly") is not None:
        return complex(0.0, float(m.group("imonly")))
    re_part = float(m.group("re"))
    im_part = float(m.group("im")) if m.group("im") else 0.0
    return complex(re_part, im_part)


def format_complex(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}i"


def _complex_arg(text: str) -> complex:
    try:
        return parse_complex(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _char_arg(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(
            f"expected two comma-separated reals, got {text!r}"
        )
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad characteristics {text!r}") from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thetakit",
        description="Jacobi theta functions: evaluation, reduction, identity verification.",
    )
    parser.add_argument("--version", action="version", version=f"thetakit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a theta function")
    which = p_eval.add_mutually_exclusive_group(required=True)
    which.add_argument("--r", type=int, choices=(1, 2, 3, 4), help="theta index")
    which.add_argument(
        "--char", type=_char_arg, metavar="A,B", help="characteristics a,b"
    )
    p_eval.add_argument("--u", type=_complex_arg, default=0j, metavar="COMPLEX")
    p_eval.add_argument("--tau", type=_complex_arg, required=True, metavar="COMPLEX")
    p_eval.add_argument("--tol", type=float, default=DEFAULT_SETTINGS.tol)
    p_eval.add_argument("--max-terms", type=int, default=DEFAULT_SETTINGS.max_terms)
    p_eval.add_argument(
        "--product", action="store_true", help="also evaluate the product form"
    )
    p_eval.add_argument(
        "--big-theta", action="store_true", help="elliptic-integral normalization"
    )
    p_eval.add_argument("--json", action="store_true", help="JSON output")

    p_verify = sub.add_parser("verify", help="verify catalog identities")
    sel = p_verify.add_mutually_exclusive_group(required=True)
    sel.add_argument("--id", action="append", dest="ids", metavar="ID")
    sel.add_argument("--all", action="store_true")
    p_verify.add_argument("--trials", type=int, default=200)
    p_verify.add_argument("--seed", type=int, default=42)
    p_verify.add_argument("--tol", type=float, default=1e-9)
    p_verify.add_argument(
        "--stress", action="store_true", help="low-Im-tau sampling box"
    )
    p_verify.add_argument("--json", metavar="PATH", help="write the JSON report here")

    p_cat = sub.add_parser("catalog", help="print the identity catalog as TSV")
    p_cat.add_argument("--out", metavar="PATH", help="write to a file instead")

    p_zeros = sub.add_parser("zeros", help="enumerate lattice zeros")
    p_zeros.add_argument("--r", type=int, choices=(1, 2, 3, 4), required=True)
    p_zeros.add_argument("--tau", type=_complex_arg, required=True, metavar="COMPLEX")
    p_zeros.add_argument("--nmax", type=int, default=1)
    p_zeros.add_argument("--mmax", type=int, default=1)

    p_red = sub.add_parser("reduce", help="reduce (u, tau) to the fast regime")
    p_red.add_argument("--tau", type=_complex_arg, required=True, metavar="COMPLEX")
    p_red.add_argument("--u", type=_complex_arg, metavar="COMPLEX")
    p_red.add_argument("--r", type=int, choices=(1, 2, 3, 4), default=1)
    return parser


def _modular(tau: complex, flag: str) -> ModularParameter:
    try:
        return ModularParameter(tau)
    except ValueError as exc:
        raise SystemExit(_usage_error(f"{flag}: {exc}"))


def _usage_error(message: str) -> int:
    print(f"thetakit: error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _cmd_eval(args) -> int:
    tau = _modular(args.tau, "--tau")
    try:
        settings = EvalSettings(tol=args.tol, max_terms=args.max_terms)
    except ValueError as exc:
        return _usage_error(str(exc))
    out: dict = {"tau": format_complex(tau.tau), "u": format_complex(args.u)}
    if args.char is not None and args.big_theta:
        return _usage_error("--big-theta needs --r, not --char")
    try:
        if args.char is not None:
            a, b = args.char
            value = theta_char(Characteristics(a, b), args.u, tau, settings)
            out["char"] = [a, b]
        elif args.big_theta:
            value = big_theta(args.r, args.u, tau, settings)
            out["r"] = args.r
        else:
            value = eval_reduced(args.r, args.u, tau, settings)
            out["r"] = args.r
        out["value"] = format_complex(value)
        if args.product:
            if args.char is not None:
                return _usage_error("--product needs --r, not --char")
            series = value
            product = eval_reduced_product(args.r, args.u, tau, settings)
            out["series"] = format_complex(series)
            out["product"] = format_complex(product)
            out["difference"] = abs(series - product)
    except TruncationError as exc:
        print(f"thetakit: evaluation failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAIL
    if args.json:
        print(json.dumps(out, sort_keys=True))
    else:
        print(out["value"])
        if args.product:
            print(f"product    {out['product']}")
            print(f"difference {out['difference']:.3e}")
    return EXIT_OK


@dataclass
class RunReport:
    """Verification run summary.

    Serialization covers everything except the wall time, so identical
    invocations produce byte-identical JSON; timing is console-only.
    """

    version: str
    seed: int
    trials: int
    tol: float
    stress: bool
    reports: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def all_pass(self) -> bool:
        return all(r.max_rel_residual <= self.tol for r in self.reports)

    def to_payload(self) -> dict:
        return {
            "version": self.version,
            "command": "verify",
            "seed": self.seed,
            "trials": self.trials,
            "tol": self.tol,
            "stress": self.stress,
            "all_pass": self.all_pass,
            "reports": [
                {
                    "id": r.identity_id,
                    "trials": r.trials,
                    "seed": self.seed,
                    "max_abs": r.max_abs_residual,
                    "max_rel": r.max_rel_residual,
                    "status": "pass" if r.max_rel_residual <= self.tol else "fail",
                }
                for r in self.reports
            ],
        }


def _cmd_verify(args) -> int:
    if args.trials < 1:
        return _usage_error("--trials must be >= 1")
    ids = [ident.id for ident in builtin_catalog()] if args.all else args.ids
    box = STRESS_BOX if args.stress else DEFAULT_BOX
    started = time.perf_counter()
    try:
        reports = verify(ids, trials=args.trials, seed=args.seed, box=box, rel_tol=args.tol)
    except UnknownIdentityError as exc:
        print(f"thetakit: error: unknown identity id {exc.args[0]!r}", file=sys.stderr)
        return EXIT_UNKNOWN_ID
    run = RunReport(
        version=__version__,
        seed=args.seed,
        trials=args.trials,
        tol=args.tol,
        stress=bool(args.stress),
        reports=reports,
        wall_time=time.perf_counter() - started,
    )

    for report in run.reports:
        status = "pass" if report.max_rel_residual <= args.tol else "FAIL"
        print(
            f"{status}  {report.identity_id:<14} trials={report.trials} "
            f"max_rel={report.max_rel_residual:.3e} max_abs={report.max_abs_residual:.3e}"
        )
    print(
        f"# {len(run.reports)} identities, seed={args.seed}, trials={args.trials}, "
        f"tol={args.tol:g}, {'all pass' if run.all_pass else 'FAILURES PRESENT'} "
        f"({run.wall_time:.2f}s)"
    )

    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(run.to_payload(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return EXIT_OK if run.all_pass else EXIT_VERIFY_FAIL


def _cmd_catalog(args) -> int:
    text = catalog_tsv() + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_zeros(args) -> int:
    from .reduction import zeros_of

    tau = _modular(args.tau, "--tau")
    if args.nmax < 0 or args.mmax < 0:
        return _usage_error("--nmax and --mmax must be >= 0")
    n_range = range(-args.nmax, args.nmax + 1)
    m_range = range(-args.mmax, args.mmax + 1)
    for z in zeros_of(args.r, tau, n_range, m_range):
        print(format_complex(z))
    return EXIT_OK


def _cmd_reduce(args) -> int:
    tau = _modular(args.tau, "--tau")
    reduced, word = reduce_tau(tau)
    word_text = " ".join(step.value for step in word) if word else "(none)"
    print(f"word       {word_text}")
    print(f"tau'       {format_complex(reduced.tau)}")
    if args.u is not None:
        record = full_reduction(args.r, args.u, tau)
        print(f"u'         {format_complex(record.new_u)}")
        print(f"index      {args.r} -> {record.map_index(args.r)}")
        print(f"log_mult   {format_complex(record.log_multiplier)}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "catalog":
            return _cmd_catalog(args)
        if args.command == "zeros":
            return _cmd_zeros(args)
        if args.command == "reduce":
            return _cmd_reduce(args)
    except SystemExit as exc:  # raised by _modular with a code
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    raise AssertionError("unreachable")


def app() -> None:
    """Console-script entry point."""
    raise SystemExit(main())


if __name__ == "__main__":
    app()
