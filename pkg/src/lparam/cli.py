"""Command-line front-end for the verification suite.

    lparam run --check steinberg-image -n 3 --q-sqrt 2
    lparam run --check all -n 2 --out certs.json
    lparam list-checks [filter]

Exit codes: 0 no verdict failed (skipped and unverified do not count),
2 usage error, 3 at least one check failed or raised.  The certificate
file is written in every case except a usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
import traceback
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone

from .certificate import Certificate, dump_certificates
from .exact import to_q

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_MISMATCH = 3


class UsageError(Exception):
    pass


def _rational(text: str):
    try:
        return to_q(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lparam", description="Exact verification checks for GL_n L-parameters.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run verification checks and write certificates")
    r.add_argument("--check", action="append", default=None,
                   help="claim id, comma separated ids, or 'all' (repeatable; default all)")
    r.add_argument("-n", type=int, default=None, help="rank; omit to use each check's default scope")
    r.add_argument("--q-sqrt", type=_rational, default=to_q(2), help="square root of q (default 2)")
    r.add_argument("--lambda", dest="lam", type=_rational, default=to_q(1), help="base eigenvalue (default 1)")
    r.add_argument("--trunc", type=int, default=4, help="truncation order k of the deformation base")
    r.add_argument("--degree-bound", type=int, default=6)
    r.add_argument("--imax", type=int, default=6, help="largest Ext index")
    r.add_argument("--out", default="certificates.json", help="output path, '-' for stdout")
    r.add_argument("--jobs", type=int, default=None, help="worker processes (fallback: LPARAM_JOBS, then 1)")
    r.add_argument("--seed", type=int, default=0, help="seed for sampled points")
    r.add_argument("--quiet", action="store_true", help="suppress the per-check summary")

    ls = sub.add_parser("list-checks", help="list claim ids with anchors and default scope")
    ls.add_argument("filter", nargs="?", default="", help="substring filter on id or anchor")
    return p


def _claims(values) -> list[str]:
    from .functor.verify import CHECKS

    if not values:
        return sorted(CHECKS)
    out: list[str] = []
    for v in values:
        for c in filter(None, (s.strip() for s in v.split(","))):
            if c == "all":
                out.extend(CHECKS)
            elif c in CHECKS:
                out.append(c)
            else:
                raise UsageError(f"unknown check {c!r}; see 'lparam list-checks'")
    return sorted(set(out))


def _jobs(value: int | None) -> int:
    if value is None:
        env = os.environ.get("LPARAM_JOBS", "").strip()
        if not env:
            return 1
        try:
            value = int(env)
        except ValueError:
            raise UsageError(f"LPARAM_JOBS must be an integer, got {env!r}")
    if value < 1:
        raise UsageError("--jobs must be at least 1")
    return value


def config_from_args(args):
    from .functor.verify import RunConfig

    if args.n is not None and args.n < 1:
        raise UsageError("-n must be at least 1")
    if args.q_sqrt <= 0 or args.q_sqrt == 1:
        raise UsageError("--q-sqrt must be positive and different from 1")
    if args.lam == 0:
        raise UsageError("--lambda must be nonzero")
    if args.trunc < 1:
        raise UsageError("--trunc must be at least 1")
    if args.degree_bound < 0 or args.imax < 0:
        raise UsageError("--degree-bound and --imax must be non-negative")
    return RunConfig(n=args.n, q_sqrt=args.q_sqrt, lam=args.lam, k=args.trunc,
                     degree_bound=args.degree_bound, i_max=args.imax, seed=args.seed)


def _run_one(claim: str, cfg) -> Certificate:
    """One check; an exception becomes a failed certificate."""
    from .functor.verify import CHECKS, run_check

    t0 = time.perf_counter()
    try:
        return run_check(claim, cfg)
    except Exception as exc:  # internal mismatch surfaces as a failed verdict
        tb = traceback.format_exception_only(type(exc), exc)[-1].strip()
        return Certificate(claim, CHECKS[claim].anchor, cfg.to_json(), {}, {}, "fail",
                           time.perf_counter() - t0, [f"raised: {tb}"])


def run_checks(claims: list[str], cfg, jobs: int = 1) -> list[Certificate]:
    """Run checks, in parallel when ``jobs > 1``; results ordered by claim id."""
    if jobs == 1 or len(claims) <= 1:
        certs = [_run_one(c, cfg) for c in claims]
    else:
        with ProcessPoolExecutor(max_workers=min(jobs, len(claims))) as ex:
            certs = list(ex.map(_run_one, claims, [cfg] * len(claims)))
    return sorted(certs, key=lambda c: c.claim)


def cmd_run(args) -> int:
    cfg = config_from_args(args)
    claims = _claims(args.check)
    jobs = _jobs(args.jobs)
    certs = run_checks(claims, cfg, jobs)
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    text = dump_certificates(certs, stamp)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    if not args.quiet:
        stream = sys.stderr if args.out == "-" else sys.stdout
        for c in certs:
            print(f"{c.verdict.upper():7s} {c.claim:20s} {c.runtime:7.2f}s", file=stream)
    return EXIT_MISMATCH if any(c.verdict == "fail" for c in certs) else EXIT_OK


def list_checks(filt: str = "") -> list[str]:
    from .functor.verify import CHECKS

    f = filt.lower()
    rows = []
    for cid in sorted(CHECKS):
        c = CHECKS[cid]
        if f and f not in cid.lower() and f not in c.anchor.lower():
            continue
        rows.append(f"{cid} → {c.anchor}  [{c.scope}]")
    return rows


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    try:
        if args.command == "list-checks":
            for row in list_checks(args.filter):
                print(row)
            return EXIT_OK
        return cmd_run(args)
    except UsageError as exc:
        print(f"lparam: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
