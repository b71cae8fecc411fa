"""Command-line front end.

Every command is deterministic: identical flags produce byte-identical csv
and json output, regardless of --threads.  Exit codes: 0 success, 1 module
error or failed validation, 2 usage error, 3 resource or cap error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Sequence

from . import asymptotics, chains, construct, sieve
from .errors import CapExceededError, LpfchainsError, ResourceBudgetError

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _parse_range(spec: str, geometric: bool) -> list[int]:
    parts = spec.split(":")
    if len(parts) == 2:
        raw_lo, raw_hi = parts
        raw_step = None
    elif len(parts) == 3:
        raw_lo, raw_hi, raw_step = parts
    else:
        raise ValueError(f"--range wants lo:hi[:step], got {spec!r}")
    lo = int(float(raw_lo))
    hi = int(float(raw_hi))
    if lo < 1 or hi < lo:
        raise ValueError(f"--range needs 1 <= lo <= hi, got {spec!r}")
    if geometric:
        factor = float(raw_step) if raw_step is not None else 10.0
        if factor <= 1.0:
            raise ValueError("geometric --range needs a factor > 1")
        vals = []
        v = float(lo)
        while v <= hi * (1 + 1e-12):
            vals.append(int(round(v)))
            v *= factor
    else:
        if raw_step is None:
            raise ValueError("arithmetic --range wants lo:hi:step")
        step = int(float(raw_step))
        if step < 1:
            raise ValueError("--range step must be >= 1")
        vals = list(range(lo, hi + 1, step))
    vals = sorted(set(vals))
    if not vals:
        raise ValueError(f"--range {spec!r} selects nothing")
    return vals


def _parse_bounds_sweep(spec: str) -> list[float]:
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(f"--bounds-sweep wants lo:hi:count, got {spec!r}")
    lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 1 or lo < 2 or hi < lo:
        raise ValueError(f"--bounds-sweep needs 2 <= lo <= hi and count >= 1")
    if count == 1 or hi == lo:
        return [lo]
    factor = (hi / lo) ** (1.0 / (count - 1))
    vals = [lo * factor**k for k in range(count - 1)]
    vals.append(hi)
    return vals


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _witness_json(result: chains.GResult) -> str:
    obj = {
        "n": result.n,
        "g": result.g,
        "witness": None
        if result.witness is None
        else [{"a": a, "p": p} for a, p in result.witness.elements],
    }
    return json.dumps(obj, indent=2) + "\n"


def _cmd_exact(args) -> tuple[int, str]:
    result = chains.exact_g(
        args.n,
        want_witness=args.witness,
        segment_size=args.segment_size,
        witness_cap=args.witness_cap,
    )
    if args.format == "json":
        return EXIT_OK, _witness_json(result)
    if args.format == "csv":
        if args.witness:
            return EXIT_OK, result.witness.to_csv()
        return EXIT_OK, f"n,g\n{result.n},{result.g}\n"
    lines = [f"g({result.n}) = {result.g}"]
    if result.witness is not None:
        lines.append("witness (i, a, p):")
        lines += [
            f"  {i}  {a}  {p}"
            for i, (a, p) in enumerate(result.witness.elements, start=1)
        ]
    return EXIT_OK, "\n".join(lines) + "\n"


def _cmd_greedy(args) -> tuple[int, str]:
    trace = construct.interval_greedy(args.n)
    if args.format == "csv":
        return EXIT_OK, trace.to_csv()
    if args.format == "json":
        obj = {
            "n": trace.n,
            "overshoot_index": trace.overshoot_index,
            "elements": [
                {
                    "i": i + 1,
                    "a": a,
                    "p": p,
                    "q": trace.qs[i],
                    "partial_sum": trace.partial_sums[i],
                    "overshoot_flag": int(
                        trace.overshoot_index is not None and i >= trace.overshoot_index
                    ),
                }
                for i, (a, p) in enumerate(trace.elements)
            ],
        }
        return EXIT_OK, json.dumps(obj, indent=2) + "\n"
    lines = [
        f"interval greedy for n={trace.n}: {len(trace.primes_used)} primes in "
        f"(sqrt(n), sqrt(n ln n)), chain length {len(trace.chain)}"
    ]
    lines += [
        f"  i={i + 1}  a={a}  p={p}  q={trace.qs[i]}  sum={trace.partial_sums[i]}"
        for i, (a, p) in enumerate(trace.elements)
    ]
    if trace.overshoot_index is not None:
        lines.append(f"  overshoot at i={trace.overshoot_index + 1} (a > n)")
    return EXIT_OK, "\n".join(lines) + "\n"


def _cmd_adaptive(args) -> tuple[int, str]:
    start = args.start_bound
    if start is None:
        start = max(2.0, min(float(args.n), math.sqrt(args.n * math.log(args.n))))
    chain = construct.adaptive_greedy(args.n, start)
    if args.format == "csv":
        return EXIT_OK, chain.to_csv()
    if args.format == "json":
        return EXIT_OK, chain.to_json() + "\n"
    lines = [f"adaptive greedy for n={args.n}, start bound {start:g}: length {len(chain)}"]
    lines += [f"  a={a}  p={p}" for a, p in chain.elements]
    return EXIT_OK, "\n".join(lines) + "\n"


def _rows_output(rows, fmt: str) -> str:
    if fmt == "csv":
        return asymptotics.scan_csv(rows)
    if fmt == "json":
        return asymptotics.scan_json(rows)
    lo, hi = asymptotics.RATIO_WINDOW
    lines = []
    for r in rows:
        if r.error is not None:
            lines.append(f"n={r.n}: error: {r.error}")
            continue
        g = "?" if r.g_exact is None else str(r.g_exact)
        window = "in" if r.in_asymptotic_window else "out"
        lines.append(
            f"n={r.n}: {r.lower_len} <= g={g} <= {r.upper}   "
            f"ratio={r.ratio:.4f}  window[{lo:.2f},{hi:.2f}]: {window}"
        )
    return "\n".join(lines) + "\n"


def _cmd_bounds(args) -> tuple[int, str]:
    rows = asymptotics.scan(
        [args.n],
        exact_cap=args.exact_cap,
        bounds=args.bounds,
        segment_size=args.segment_size,
    )
    return EXIT_OK, _rows_output(rows, args.format)


def _cmd_scan(args) -> tuple[int, str]:
    ns = _parse_range(args.range, args.geometric)
    rows = asymptotics.scan(
        ns,
        exact_cap=args.exact_cap,
        bounds=args.bounds,
        segment_size=args.segment_size,
        threads=args.threads,
    )
    return EXIT_OK, _rows_output(rows, args.format)


def _cmd_primesum(args) -> tuple[int, str]:
    if args.x < 3:
        total = asymptotics.prime_sum(args.x, args.segment_size)
        if args.format == "csv":
            return EXIT_OK, f"x,exact_sum\n{args.x},{total}\n"
        if args.format == "json":
            return EXIT_OK, json.dumps({"x": args.x, "exact_sum": total}) + "\n"
        return EXIT_OK, f"sum of primes <= {args.x} = {total}\n"
    report = asymptotics.prime_sum_expansion(args.x, args.segment_size)
    if args.format == "csv":
        return EXIT_OK, asymptotics.expansion_csv([report])
    if args.format == "json":
        return EXIT_OK, asymptotics.expansion_json([report])
    return EXIT_OK, (
        f"sum of primes <= {report.x} = {report.exact_sum}\n"
        f"  x^2/(2 ln x)        = {report.term1:.6f}\n"
        f"  x^2/(4 ln^2 x)      = {report.term2:.6f}\n"
        f"  |exact - terms|     = {report.abs_err:.6f}  "
        f"(relative {report.rel_err:.6%})\n"
        f"  err * ln^3(x)/x^2   = {report.err_over_x2_log3:.6f}\n"
    )


def _cmd_pi(args) -> tuple[int, str]:
    report = asymptotics.pi_report(args.x)
    if args.format == "csv":
        return EXIT_OK, (
            "x,pi_exact,estimate,residual_constant\n"
            f"{report.x!r},{report.pi_exact},{report.estimate!r},"
            f"{report.residual_constant!r}\n"
        )
    if args.format == "json":
        obj = {
            "x": report.x,
            "pi_exact": report.pi_exact,
            "estimate": report.estimate,
            "residual_constant": report.residual_constant,
        }
        return EXIT_OK, json.dumps(obj, indent=2) + "\n"
    return EXIT_OK, (
        f"pi({report.x:g}) = {report.pi_exact}\n"
        f"  (x/ln x)(1 + 1/ln x) = {report.estimate:.4f}\n"
        f"  residual constant (excluded O(1)/ln^2 x term) = "
        f"{report.residual_constant:.4f}\n"
    )


def _cmd_validate(args) -> tuple[int, str]:
    with open(args.file) as fh:
        text = fh.read()
    if text.lstrip().startswith("["):
        chain = chains.Chain.from_json(text, n=args.n)
    else:
        chain = chains.Chain.from_csv(text, n=args.n)
    verdict = chains.validate_chain(chain)
    if args.format == "json":
        obj = {
            "ok": verdict.ok,
            "code": verdict.code,
            "index": verdict.index,
            "message": verdict.message,
        }
        text_out = json.dumps(obj, indent=2) + "\n"
    else:
        text_out = (
            f"valid chain of length {len(chain)} under n={args.n}\n"
            if verdict.ok
            else f"invalid chain: {verdict.message} [{verdict.code}]\n"
        )
    return (EXIT_OK if verdict.ok else EXIT_ERROR), text_out


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--format", choices=("csv", "json", "human"), default="human",
        help="output format (default human)",
    )
    sub.add_argument("--out", default=None, help="write output to this path")
    sub.add_argument(
        "--segment-size", type=int, default=sieve.DEFAULT_SEGMENT_SIZE,
        help="sieve window size in entries (default %(default)s)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lpfchains",
        description=(
            "Longest chains of integers <= n with strictly decreasing largest "
            "prime factor: exact g(n), greedy constructions, counting bounds, "
            "prime-sum asymptotics."
        ),
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("exact", help="exact g(n), optionally with a witness chain")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--witness", action="store_true", help="reconstruct one optimal chain")
    p.add_argument(
        "--witness-cap", type=int, default=chains.DEFAULT_WITNESS_CAP,
        help="largest n allowed with --witness (default %(default)s)",
    )
    _add_common(p)
    p.set_defaults(handler=_cmd_exact)

    p = subs.add_parser("greedy", help="interval greedy construction trace")
    p.add_argument("--n", type=int, required=True)
    _add_common(p)
    p.set_defaults(handler=_cmd_greedy)

    p = subs.add_parser("adaptive", help="adaptive greedy chain from a start bound")
    p.add_argument("--n", type=int, required=True)
    p.add_argument(
        "--start-bound", type=float, default=None,
        help="largest prime to start from (default sqrt(n ln n))",
    )
    _add_common(p)
    p.set_defaults(handler=_cmd_adaptive)

    p = subs.add_parser("bounds", help="lower/exact/upper bracket for one n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--exact-cap", type=int, default=10**6)
    p.add_argument(
        "--bounds-sweep", type=str, default=None,
        help="lo:hi:count geometric sweep of adaptive start bounds",
    )
    _add_common(p)
    p.set_defaults(handler=_cmd_bounds)

    p = subs.add_parser("scan", help="bracket g(n) over a range of n")
    p.add_argument("--range", type=str, required=True, help="lo:hi:step")
    p.add_argument(
        "--geometric", action="store_true",
        help="treat step as a multiplicative factor (default 10)",
    )
    p.add_argument("--exact-cap", type=int, default=10**6)
    p.add_argument("--bounds-sweep", type=str, default=None)
    p.add_argument(
        "--threads", type=int, default=os.cpu_count() or 1,
        help="row workers; output is identical for any value",
    )
    _add_common(p)
    p.set_defaults(handler=_cmd_scan)

    p = subs.add_parser("primesum", help="exact prime sum and its expansion")
    p.add_argument("--x", type=int, required=True)
    _add_common(p)
    p.set_defaults(handler=_cmd_primesum)

    p = subs.add_parser("pi", help="two-term prime-counting estimate vs exact pi")
    p.add_argument("--x", type=float, required=True)
    _add_common(p)
    p.set_defaults(handler=_cmd_pi)

    p = subs.add_parser("validate", help="validate a chain file (csv or json)")
    p.add_argument("--file", type=str, required=True)
    p.add_argument("--n", type=int, required=True, help="ambient bound for the chain")
    _add_common(p)
    p.set_defaults(handler=_cmd_validate)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "bounds_sweep"):
        try:
            args.bounds = (
                construct.DEFAULT_BOUNDS_SWEEP
                if args.bounds_sweep is None
                else _parse_bounds_sweep(args.bounds_sweep)
            )
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    try:
        code, text = args.handler(args)
    except (ResourceBudgetError, CapExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except LpfchainsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    _emit(text, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
