"""Command-line front end.

Every subcommand prints compact JSON by default (``--format csv`` for the
tabular ones).  Exit codes: 0 success, 1 a verification failed, 2 bad usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import ffgroups, identities, measures, tvdist
from .exactnum import RationalInterval, as_fraction, decimal_hint, format_fraction
from .measures import Family
from .partitions import Partition


class UsageError(Exception):
    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


# ---------------------------------------------------------------------------
# argument parsing helpers


def parse_int_list(text: str) -> list[int]:
    """``"3"``, ``"1..4"`` (inclusive) or ``"2,3,5"``; the forms may be mixed with commas."""
    out: list[int] = []
    for piece in text.split(","):
        piece = piece.strip()
        if ".." in piece:
            a, b = piece.split("..", 1)
            lo, hi = int(a), int(b)
            if lo > hi:
                raise ValueError(f"empty range {piece!r}")
            out.extend(range(lo, hi + 1))
        else:
            out.append(int(piece))
    return out


def _ints(flag: str, text: str) -> list[int]:
    try:
        return parse_int_list(text)
    except ValueError as exc:
        raise UsageError(flag, f"expected an integer, a range a..b or a comma list ({exc})") from None


def _family(text: str) -> Family:
    try:
        return Family.parse(text)
    except ValueError as exc:
        raise UsageError("--family", str(exc)) from None


def _partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise UsageError("--partition", str(exc)) from None


def _qs(family: Family, text: str) -> list[int]:
    qs = _ints("--q", text)
    for q in qs:
        try:
            measures.check_q(family, q)
        except ValueError as exc:
            raise UsageError("--q", str(exc)) from None
    return qs


def _ns(text: str, minimum: int = 1) -> list[int]:
    ns = _ints("--n", text)
    if any(n < minimum for n in ns):
        raise UsageError("--n", f"values must be at least {minimum}")
    return ns


def _rational(flag: str, text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(flag, f"expected a rational such as 1/2, got {text!r}") from None


# ---------------------------------------------------------------------------
# output helpers


def interval_json(iv: RationalInterval) -> dict:
    return {"lo": format_fraction(iv.lo), "hi": format_fraction(iv.hi), "decimal_hint": decimal_hint(iv.mid)}


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


# ---------------------------------------------------------------------------
# subcommands; each returns (exit code, output text)


def cmd_aut(args):
    fam = _family(args.family)
    qs = _qs(fam, args.q)
    lam = _partition(args.partition)
    if not fam.support.admits(lam):
        raise UsageError("--partition", f"{lam} is outside the support of {fam.value}")
    out = [{"family": fam.value, "q": q, "partition": list(lam.parts), "value": format_fraction(measures.aut_order(fam, lam, q))} for q in qs]
    return 0, "\n".join(_dump(o) for o in out)


def cmd_limit_measure(args):
    fam = _family(args.family)
    qs = _qs(fam, args.q)
    lam = _partition(args.partition)
    u = _rational("--u", args.u)
    if not 0 <= u <= 1:
        raise UsageError("--u", "must lie in [0, 1]")
    if not fam.support.admits(lam):
        raise UsageError("--partition", f"{lam} is outside the support of {fam.value}")
    lines = []
    for q in qs:
        iv = measures.limit_measure(measures.MeasureParams(fam, q, u), lam, args.truncation)
        lines.append(_dump({"family": fam.value, "q": q, "u": format_fraction(u), "partition": list(lam.parts), "value": interval_json(iv)}))
    return 0, "\n".join(lines)


def cmd_lambda(args):
    fam = _family(args.family)
    qs = _qs(fam, args.q)
    ns = _ns(args.n)
    lam = _partition(args.partition)
    lines = []
    for n in ns:
        for q in qs:
            value = measures.lambda_measure(fam, n, q, lam)
            record = {"partition": list(lam.parts), "value": format_fraction(value)}
            if len(ns) > 1 or len(qs) > 1:
                record = {"n": n, "q": q, **record}
            lines.append(_dump(record))
    return 0, "\n".join(lines)


def cmd_distribution(args):
    fam = _family(args.family)
    qs = _qs(fam, args.q)
    ns = _ns(args.n)
    status, blocks, rows = 0, [], []
    for n in ns:
        for q in qs:
            table = measures.distribution_table(fam, n, q)
            ok = table.mass == 1 and all(p >= 0 for p in table.entries.values())
            status = status or (0 if ok else 1)
            entries = [{"partition": list(lam.parts), "value": format_fraction(p)} for lam, p in table.entries.items()]
            blocks.append(_dump({"family": fam.value, "n": n, "q": q, "mass": format_fraction(table.mass), "entries": entries}))
            rows.extend([fam.value, n, q, str(lam), format_fraction(p)] for lam, p in table.entries.items())
    if args.format == "csv":
        return status, _csv(["family", "n", "q", "partition", "value"], rows)
    return status, "\n".join(blocks)


def cmd_tv(args):
    fam = _family(args.family)
    qs = _qs(fam, args.q)
    ns = _ns(args.n)
    if args.truncation < 2 or args.truncation > tvdist.TRUNCATION_CAP:
        raise UsageError("--truncation", f"must lie in 2..{tvdist.TRUNCATION_CAP}")
    status, records = 0, []
    for n in ns:
        for q in qs:
            cut = max(args.truncation, n + 1)
            results = []
            if args.method in ("proposition", "both"):
                results.append(tvdist.tv_proposition(fam, n, q, tail_cut=cut, product_trunc=args.truncation))
            if args.method in ("direct", "both"):
                results.append(tvdist.tv_direct(fam, n, q, product_trunc=args.truncation))
            agree = True
            if len(results) == 2:
                agree = results[0].interval.intersects(results[1].interval)
                status = status or (0 if agree else 1)
            for r in results:
                records.append((r, agree))
    if args.format == "csv":
        rows = [[fam.value, r.n, r.q, r.method, format_fraction(r.interval.lo), format_fraction(r.interval.hi), decimal_hint(r.interval.mid)] for r, _ in records]
        return status, _csv(["family", "n", "q", "method", "lo", "hi", "decimal_hint"], rows)
    lines = []
    for r, agree in records:
        rec = {"family": fam.value, "n": r.n, "q": r.q, "method": r.method, "tv": interval_json(r.interval)}
        if args.method == "both":
            rec["methods_agree"] = agree
        lines.append(_dump(rec))
    return status, "\n".join(lines)


def cmd_verify_bounds(args):
    fam = _family(args.family)
    qs = _qs(fam, args.q)
    ns = _ns(args.n)
    status, checks = 0, []
    for q in qs:
        for n in ns:
            chk = tvdist.verify_theorem_bounds(fam, n, q, cap=args.cap)
            if chk.verdict != "contained":
                status = 1
            checks.append(chk)
    if args.format == "csv":
        rows = [
            [c.family.value, c.n, c.q, format_fraction(c.lower_bound), format_fraction(c.upper_bound), format_fraction(c.tv.interval.lo), format_fraction(c.tv.interval.hi), c.verdict]
            for c in checks
        ]
        return status, _csv(["family", "n", "q", "lower", "upper", "tv_lo", "tv_hi", "verdict"], rows)
    lines = [
        _dump(
            {
                "family": c.family.value,
                "n": c.n,
                "q": c.q,
                "lower": format_fraction(c.lower_bound),
                "upper": format_fraction(c.upper_bound),
                "tv": interval_json(c.tv.interval),
                "verdict": c.verdict,
            }
        )
        for c in checks
    ]
    return status, "\n".join(lines)


def cmd_identities(args):
    if args.which == "all":
        tags = list(identities.IDENTITY_TAGS)
    else:
        tags = [t.strip() for t in args.which.split(",")]
        unknown = [t for t in tags if t not in identities.IDENTITY_TAGS]
        if unknown:
            raise UsageError("--which", f"unknown identities {unknown}; expected {list(identities.IDENTITY_TAGS)}")
    qs = _ints("--q", args.q)
    if any(q < 2 for q in qs):
        raise UsageError("--q", "identities need q >= 2")
    if args.degree < 1:
        raise UsageError("--degree", "must be positive")
    status, lines = 0, []
    for q in qs:
        for tag in tags:
            rep = identities.identity_check(tag, q, args.degree)
            status = status or (0 if rep.passed else 1)
            rec = {"identity": tag, "q": q, "degree": args.degree, "passed": rep.passed}
            if not rep.passed:
                rec["mismatched_degrees"] = list(rep.mismatches)
                rec["enclosure_misses"] = list(rep.enclosure_misses)
            lines.append(rec)
    if args.format == "csv":
        return status, _csv(["identity", "q", "degree", "passed"], [[r["identity"], r["q"], r["degree"], r["passed"]] for r in lines])
    return status, "\n".join(_dump(r) for r in lines)


def cmd_oracle(args):
    fam = _family(args.family)
    qs = _qs(fam, args.q)
    ns = _ns(args.n)
    status, lines = 0, []
    for n in ns:
        for q in qs:
            rec = {"family": fam.value, "n": n, "q": q}
            try:
                rep = ffgroups.oracle_compare(fam, n, q, workers=args.threads)
            except ffgroups.BudgetExceeded as exc:
                status = 1
                rec.update(status="excluded", reason=str(exc))
                lines.append(_dump(rec))
                continue
            status = status or (0 if rep.passed else 1)
            rec["status"] = "equal" if rep.passed else "mismatch"
            rec["partitions"] = rep.partitions
            if rep.mismatches:
                rec["mismatches"] = [
                    {"partition": list(lam.parts), "empirical": format_fraction(e), "formula": format_fraction(f)} for lam, e, f in rep.mismatches
                ]
            if rep.order_mismatches:
                rec["order_mismatches"] = [{"type": t, "enumerated": got, "expected": want} for t, got, want in rep.order_mismatches]
            lines.append(_dump(rec))
    return status, "\n".join(lines)


def cmd_sample(args):
    fam = _family(args.family)
    qs = _qs(fam, args.q)
    if len(qs) != 1:
        raise UsageError("--q", "sample takes a single q")
    u = _rational("--u", args.u)
    if not 0 <= u <= 1:
        raise UsageError("--u", "must lie in [0, 1]")
    eps = _rational("--tail-epsilon", args.tail_epsilon)
    if eps <= 0:
        raise UsageError("--tail-epsilon", "must be positive")
    if args.count < 0:
        raise UsageError("--count", "must be non-negative")
    params = measures.MeasureParams(fam, qs[0], u)
    try:
        res = measures.sample(params, args.count, seed=args.seed, tail_epsilon=eps, size_cap=args.size_cap)
    except measures.SampleSizeCapExceeded as exc:
        raise UsageError("--size-cap", str(exc)) from None
    if args.format == "csv":
        rows = [[i, "overflow" if d is None else str(d)] for i, d in enumerate(res.draws)]
        return 0, _csv(["draw", "partition"], rows)
    draws = [None if d is None else list(d.parts) for d in res.draws]
    return 0, _dump({"family": fam.value, "q": qs[0], "u": format_fraction(u), "seed": args.seed, "overflow_mass": format_fraction(res.overflow_mass), "draws": draws})


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clp", description="Cohen-Lenstra type partition measures for finite classical groups")
    parser.add_argument("--threads", type=int, default=1, help="worker processes for group enumeration")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, *, family=True, n=False, q=True, partition=False, fmt=False):
        p = sub.add_parser(name, help=help)
        if family:
            p.add_argument("--family", required=True, help="gl, u, sp, o-odd or o-even")
        if n:
            p.add_argument("--n", required=True, help="rank: integer, a..b or comma list")
        if q:
            p.add_argument("--q", required=True, help="field size: integer, a..b or comma list")
        if partition:
            p.add_argument("--partition", required=True, help='parts like "3,1,1"; "-" is the empty partition')
        p.add_argument("--format", choices=("json", "csv") if fmt else ("json",), default="json")
        p.set_defaults(func=func)
        return p

    add("aut", cmd_aut, "automorphism-order weight of a partition", partition=True)
    p = add("limit-measure", cmd_limit_measure, "certified limit probability of a partition", partition=True)
    p.add_argument("--u", default="1", help="deformation parameter in [0, 1]")
    p.add_argument("--truncation", type=int, default=60)
    add("lambda", cmd_lambda, "exact finite-rank probability of a partition", n=True, partition=True)
    add("distribution", cmd_distribution, "full finite-rank distribution", n=True, fmt=True)
    p = add("tv", cmd_tv, "certified total variation distance", n=True, fmt=True)
    p.add_argument("--method", choices=("proposition", "direct", "both"), default="both")
    p.add_argument("--truncation", type=int, default=tvdist.DEFAULT_TRUNCATION)
    p = add("verify-bounds", cmd_verify_bounds, "check the proved TV bounds on a grid", n=True, fmt=True)
    p.add_argument("--cap", type=int, default=tvdist.TRUNCATION_CAP, help="largest truncation tried")
    p = add("identities", cmd_identities, "verify product identities coefficient-wise", family=False, fmt=True)
    p.add_argument("--which", default="all", help="comma list of identity tags or 'all'")
    p.add_argument("--degree", type=int, default=30)
    add("oracle", cmd_oracle, "compare brute-force enumeration with the exact distribution", n=True)
    p = add("sample", cmd_sample, "draw partitions from a limit measure", fmt=True)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--u", default="1")
    p.add_argument("--tail-epsilon", default="1/1000000000")
    p.add_argument("--size-cap", type=int, default=60)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads < 1:
        print("clp: error: --threads: must be at least 1", file=stderr)
        return 2
    try:
        code, text = args.func(args)
    except UsageError as exc:
        print(f"clp: error: {exc}", file=stderr)
        return 2
    if text:
        print(text, file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
