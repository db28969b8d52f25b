"""Command-line front end: frame generation, selection, sweeps, verification.

Subcommands
    gen     write a frame file (harmonic or modulated-harmonic)
    select  run the greedy selector on a frame file, write a certificate
    sweep   run selections over an n-range or an N-list, emit a CSV table
    katz    build the set-system counterexample and check its dichotomy
    verify  replay a certificate against a frame file

Exit codes: 0 success, 1 verification or selection failure, 2 usage or
input error, 3 I/O error. Every command is deterministic given its flags;
randomness flows only through --seed (default 0, never wall clock). Floats
in CSV output carry 17 significant digits, the lossless text form of a
double.
"""

from __future__ import annotations

import argparse
import json
import sys

from .config import DEFAULT_TOLS, Tolerances
from .errors import (
    BarrierError,
    CertificateMismatchError,
    ConvergenceError,
    FrameError,
    SelectionError,
    ToleranceBreachError,
)
from .frames import (
    harmonic_frame,
    load_frame,
    modulated_harmonic_frame,
    save_frame,
    validate_frame,
)
from .katz import build_katz, dichotomy_check, save_dichotomy_report
from .selector import (
    complement_lower_bound,
    load_certificate,
    save_certificate,
    select_subset,
    verify_certificate,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3

DEFAULT_SEED = 0

CSV_COLUMNS = (
    "k",
    "N",
    "m",
    "n",
    "lambda_max",
    "a_n",
    "excess",
    "excess_sqrt_N",
    "complement_lambda_min",
)


def _fmt(x: float) -> str:
    return "%.17g" % float(x)


def _tols_from_args(args: argparse.Namespace) -> Tolerances:
    if getattr(args, "tol", None) is not None:
        return DEFAULT_TOLS.with_overrides(frame_tol=float(args.tol))
    return DEFAULT_TOLS


def cmd_gen(args: argparse.Namespace) -> int:
    tols = _tols_from_args(args)
    if args.kind == "harmonic":
        frame = harmonic_frame(args.k, args.N, tols)
    else:
        frame = modulated_harmonic_frame(args.k, args.N, seed=args.seed, tols=tols)
    report = validate_frame(frame, tols.frame_tol, tols)
    save_frame(frame, args.out)
    print(f"wrote {args.out}")
    print(report.summary())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_select(args: argparse.Namespace) -> int:
    tols = _tols_from_args(args)
    frame = load_frame(args.frame)
    cert = select_subset(frame, args.n, tols)
    save_certificate(cert, args.out)
    n, m = cert.n, cert.schedule.m
    print(f"wrote {args.out}")
    print(f"selected {n} of {m} vectors")
    print(f"lambda_max = {_fmt(cert.lambda_max)}")
    print(f"a_n        = {_fmt(cert.bound)}")
    print(f"margin     = {_fmt(cert.margin)}")
    print(f"excess     = {_fmt(cert.excess)}  (lambda_max - n/m)")
    return EXIT_OK


def _sweep_rows(args: argparse.Namespace, tols: Tolerances):
    if args.N_list:
        for N in args.N_list:
            frame = harmonic_frame(args.k, N, tols)
            n = round(args.ratio * frame.m)
            yield frame, n
    else:
        frame = harmonic_frame(args.k, args.N, tols)
        for n in range(args.n_min, args.n_max + 1):
            yield frame, n


def cmd_sweep(args: argparse.Namespace) -> int:
    tols = _tols_from_args(args)
    if args.N_list is None and args.N is None:
        raise UsageError("sweep needs --N with an n-range, or --N-list with --ratio")
    if args.N_list is not None and (args.n_min is not None or args.n_max is not None):
        raise UsageError("--N-list uses --ratio; an n-range applies only with --N")
    if args.N_list is None:
        if args.n_min is None or args.n_max is None:
            raise UsageError("sweep over one frame needs both --n-min and --n-max")
    out = open(args.out, "w", encoding="utf-8", newline="") if args.out else sys.stdout
    try:
        out.write(",".join(CSV_COLUMNS) + "\n")
        for frame, n in _sweep_rows(args, tols):
            cert = select_subset(frame, n, tols)
            comp_min, _ = complement_lower_bound(frame, cert, tols)
            root = frame.N ** 0.5
            row = (
                str(frame.k),
                str(frame.N),
                str(frame.m),
                str(n),
                _fmt(cert.lambda_max),
                _fmt(cert.bound),
                _fmt(cert.excess),
                _fmt(cert.excess * root),
                _fmt(comp_min),
            )
            out.write(",".join(row) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def cmd_katz(args: argparse.Namespace) -> int:
    tols = _tols_from_args(args)
    if args.N < 1:
        raise UsageError(f"--N must be positive, got {args.N}")
    if not args.sampled and args.N > tols.katz_exhaustive_max_n:
        raise UsageError(
            f"exhaustive check over 2^{2 * args.N} subsets is out of reach for N = {args.N}; "
            f"pass --sampled (with --trials and --seed) instead"
        )
    system = build_katz(args.N, tols)
    mode = "sampled" if args.sampled else "exhaustive"
    report = dichotomy_check(system, mode=mode, trials=args.trials, seed=args.seed, tols=tols)
    save_dichotomy_report(report, args.out)
    print(f"wrote {args.out}")
    print(
        f"N = {report.N}, {report.mode}: {report.subsets_checked} subsets, "
        f"{report.min_pinned} with min 0, {report.max_pinned} with max 1, "
        f"{len(report.violations)} confined"
    )
    if not report.passed:
        print("dichotomy FAILED")
        return EXIT_FAIL
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    tols = _tols_from_args(args)
    frame = load_frame(args.frame)
    cert = load_certificate(args.cert)
    report = verify_certificate(frame, cert, tols)
    print(report.summary())
    if report.passed:
        print("certificate verified")
        return EXIT_OK
    print("certificate REJECTED")
    return EXIT_FAIL


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="framesel",
        description="Greedy norm-bounded frame subset selection with verifiable certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a frame file")
    p.add_argument("--k", type=_positive_int, required=True, help="ambient dimension")
    p.add_argument("--N", type=int, required=True, help="norm parameter (>= 2); m = k*N vectors")
    p.add_argument("--kind", choices=("harmonic", "modulated"), default="harmonic")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for --kind modulated (default 0)")
    p.add_argument("--out", default="frame.json", help="output path (default frame.json)")
    p.add_argument("--tol", type=float, default=None, help="frame validation tolerance override")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("select", help="greedily select n vectors from a frame file")
    p.add_argument("--frame", required=True, help="input frame file")
    p.add_argument("--n", type=int, required=True, help="number of vectors to select (1 <= n < m)")
    p.add_argument("--out", default="certificate.json", help="output path (default certificate.json)")
    p.add_argument("--tol", type=float, default=None, help="frame validation tolerance override")
    p.add_argument("--threads", type=int, default=None,
                   help="hint for the candidate scan; never changes any output byte")
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("sweep", help="selections over an n-range or an N-list, as CSV")
    p.add_argument("--k", type=_positive_int, required=True)
    p.add_argument("--N", type=int, default=None, help="single N; sweep n over --n-min..--n-max")
    p.add_argument("--n-min", dest="n_min", type=int, default=None)
    p.add_argument("--n-max", dest="n_max", type=int, default=None)
    p.add_argument("--N-list", dest="N_list", type=_int_list, default=None,
                   help="comma-separated N values, each run at --ratio")
    p.add_argument("--ratio", type=float, default=0.5, help="n/m for --N-list runs (default 0.5)")
    p.add_argument("--out", default=None, help="CSV path (default: standard output)")
    p.add_argument("--tol", type=float, default=None, help="frame validation tolerance override")
    p.add_argument("--threads", type=int, default=None,
                   help="hint for the candidate scan; never changes any output byte")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("katz", help="set-system dichotomy check")
    p.add_argument("--N", type=int, required=True, help="half the ground-set size")
    p.add_argument("--sampled", action="store_true", help="sample subsets instead of enumerating all")
    p.add_argument("--trials", type=int, default=None, help="sample count for --sampled")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="sampling seed (default 0)")
    p.add_argument("--out", default="katz_report.json", help="output path (default katz_report.json)")
    p.add_argument("--tol", type=float, default=None, help="tolerance record override")
    p.set_defaults(func=cmd_katz)

    p = sub.add_parser("verify", help="replay a certificate against a frame file")
    p.add_argument("--frame", required=True, help="frame file the certificate claims to describe")
    p.add_argument("--cert", required=True, help="certificate file")
    p.add_argument("--tol", type=float, default=None, help="frame validation tolerance override")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help and 2 for usage errors; pass both through
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FrameError, CertificateMismatchError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SelectionError, ToleranceBreachError, BarrierError, ConvergenceError) as exc:
        print(f"failure: {exc}", file=sys.stderr)
        if isinstance(exc, SelectionError) and exc.u_profile is not None:
            profile = exc.u_profile
            print(
                f"diagnostic: {profile.size} candidates, min U = {profile.min():.6g}, "
                f"median U = {float(sorted(profile)[len(profile) // 2]):.6g}",
                file=sys.stderr,
            )
        return EXIT_FAIL
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
