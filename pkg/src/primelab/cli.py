"""Command-line table generators and verification suites.

Exit codes: 0 success, 1 a verification case failed, 2 usage error,
3 sieve limit above the memory ceiling or tables too small.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import constellations as cons
from . import hardy_littlewood as hl
from . import pnt_suite, primitive_roots, twisted_sums
from .ap_sums import ApClass, power_sum_ap
from .constellations import ConstellationSpec, parse_pattern
from .mangoldt import mangoldt_via_mobius
from .quadratic_residues import roots_mod_squarefree
from .sieve_core import SieveRangeError, SieveSizeError, build_tables, mangoldt

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SIEVE = 0, 1, 2, 3

Row = Dict[str, object]


class UsageError(Exception):
    pass


def _grid(x: Optional[int], grid: Optional[str]) -> List[int]:
    if grid:
        try:
            start, stop, step = (int(v) for v in grid.split(":"))
        except ValueError:
            raise UsageError(f"--grid expects START:STOP:STEP, got {grid!r}")
        if step < 1 or start > stop:
            raise UsageError(f"empty grid {grid!r}")
        return list(range(start, stop + 1, step))
    if x is None:
        raise UsageError("give --x or --grid")
    return [x]


def _tables(limit: int, err):
    limit = max(limit, 2)
    print(f"# sieve limit {limit}", file=err)
    return build_tables(limit)


def _emit(rows: List[Row], columns: Sequence[str], fmt: str, out) -> None:
    if fmt == "json":
        json.dump([{c: r.get(c) for c in columns} for r in rows], out, indent=2)
        out.write("\n")
        return
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow(["" if r.get(c) is None else _fmt(r[c]) for c in columns])


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


# subcommands --------------------------------------------------------------


def cmd_count(args, out, err) -> int:
    try:
        spec = parse_pattern(args.pattern, args.weight)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc))
    xs = _grid(args.x, args.grid)
    limit = max(cons.sieve_limit(spec, x) for x in xs)
    if spec.kind == "germain":
        limit = max(limit, spec.params[0] * max(xs) + spec.params[1])
    tables = _tables(limit, err)
    rows = []
    for x in xs:
        c = cons.count(tables, spec, x)
        row: Row = {"pattern": spec.label, "x": x, "count": c}
        if args.predict and x >= 10:
            pred = cons.predict(spec, x, args.truncation)
            row["prediction"] = pred
            row["ratio"] = pred / c if c else None
        rows.append(row)
    cols = ["pattern", "x", "count"] + (["prediction", "ratio"] if args.predict else [])
    _emit(rows, cols, args.format, out)
    return EXIT_OK


FUBINI_SPECS = (
    ConstellationSpec.twin(2),
    ConstellationSpec.twin(4),
    ConstellationSpec.germain(2, 1),
    ConstellationSpec.linear_ap(4, 3),
    ConstellationSpec.quadratic(1),
)


def _suite_fubini(limit: int, seed: int, err) -> Tuple[int, int, List[str]]:
    need = max(cons.sieve_limit(s, limit) for s in FUBINI_SPECS)
    tables = _tables(need, err)
    failures = []
    for spec in FUBINI_SPECS:
        failures += [f"{spec.label} x={x}" for x in cons.fubini_scan(tables, spec, limit)]
    return len(FUBINI_SPECS) * limit - len(failures), len(FUBINI_SPECS) * limit, failures


def _suite_mangoldt(limit: int, seed: int, err):
    tables = _tables(limit, err)
    failures = [f"n={n}" for n in range(1, limit + 1) if mangoldt_via_mobius(tables, n) != mangoldt(tables, n)]
    return limit - len(failures), limit, failures


def _suite_psi(limit: int, seed: int, err):
    tables = _tables(limit, err)
    failures = [f"x={x}" for x in pnt_suite.psi_identity_scan(tables, limit)]
    return limit - len(failures), limit, failures


def _suite_lemma83(limit: int, seed: int, err):
    rng = random.Random(seed)
    failures = []
    for _ in range(limit):
        q = rng.randint(1, 50)
        a = rng.randrange(q)
        e = rng.randint(0, 3)
        x = rng.randint(1, 10**4)
        brute = sum(n**e for n in range(1, x + 1) if n % q == a)
        if power_sum_ap(x, ApClass(q, a), e) != brute:
            failures.append(f"x={x} q={q} a={a} e={e}")
    return limit - len(failures), limit, failures


def _suite_qres(limit: int, seed: int, err):
    tables = _tables(limit, err)
    failures = []
    total = 0
    for q in range(3, limit + 1, 2):
        if not tables.mu[q]:
            continue
        total += 1
        roots = roots_mod_squarefree(-1, q)
        law = len(roots) in (0, 2 ** int(tables.omega[q]))
        if not law or any((r * r + 1) % q for r in roots):
            failures.append(f"q={q}")
    return total - len(failures), total, failures


def _suite_theorem91(limit: int, seed: int, err):
    tables = _tables(4 * limit + 1, err)
    report = primitive_roots.theorem91_scan(tables, limit)
    total = sum(report.counts.values())
    failures = [f"case {c} q={q} p={p}" for c, q, p in report.violations]
    return total - len(failures), total, failures


def _suite_selberg(limit: int, seed: int, err):
    tables = _tables(limit, err)
    res = pnt_suite.selberg_check(tables, limit)
    ok = 0.94 <= res.ratio <= 1.06
    return int(ok), 1, [] if ok else [f"x={limit} ratio={res.ratio!r}"]


SUITES: Dict[str, Callable] = {
    "fubini": _suite_fubini,
    "mangoldt": _suite_mangoldt,
    "psi-mobius": _suite_psi,
    "lemma83": _suite_lemma83,
    "qres": _suite_qres,
    "theorem91": _suite_theorem91,
    "selberg": _suite_selberg,
}


def cmd_verify(args, out, err) -> int:
    if args.limit < 1:
        raise UsageError("--limit must be positive")
    passed, total, failures = SUITES[args.suite](args.limit, args.seed, err)
    for f in failures:
        print(f"FAIL {f}", file=out)
    status = "PASS" if passed == total else "FAIL"
    print(f"{status} {passed}/{total}", file=out)
    return EXIT_OK if passed == total else EXIT_FAIL


def _parse_ints(text: str, n: int, what: str) -> Tuple[int, ...]:
    try:
        vals = tuple(int(v) for v in text.split(","))
    except ValueError:
        vals = ()
    if len(vals) != n:
        raise UsageError(f"{what} expects {n} comma separated integers, got {text!r}")
    return vals


def cmd_constants(args, out, err) -> int:
    which = args.which
    name, _, arg = which.partition(":")
    kw: dict = {}
    kind = {"c2": "twin_c2", "artin": "artin_Ca", "theta": "theta_singular", "quadtwin": "quad_twin"}.get(name)
    if name == "cf":
        kind, kw = "quadratic_Cf", {"f": _parse_ints(arg, 3, "cf")}
    elif name == "depolignac":
        kind, kw = "depolignac_2k", {"k": _parse_ints(arg, 1, "depolignac")[0]}
    if kind is None:
        raise UsageError(f"unknown constant {which!r}")
    if args.truncation < 1000:
        raise UsageError("--truncation must be >= 1000")
    res = hl.hl_constant_with_tail(kind, args.truncation, **kw)
    row = {"constant": which, "truncation": args.truncation, "value": res.value, "tail": res.tail}
    _emit([row], ["constant", "truncation", "value", "tail"], args.format, out)
    return EXIT_OK


def cmd_sums(args, out, err) -> int:
    xs = _grid(args.x, args.grid)
    name, _, arg = args.kind.partition(":")
    top = max(xs)
    if name == "twisted":
        try:
            s = float(arg)
        except ValueError:
            raise UsageError(f"twisted needs an exponent, got {args.kind!r}")
        tables = _tables(top, err)
        values = twisted_sums.twisted_mobius_partials(tables, xs, s)
    elif name == "mobius-log":
        tables = _tables(top, err)
        values = [twisted_sums.mobius_log_sum(tables, x) for x in xs]
    elif name == "mertens-logp":
        tables = _tables(top, err)
        values = [pnt_suite.mertens_logp_sum(tables, x) for x in xs]
    elif name == "brun":
        tables = _tables(top + 2, err)
        values = [cons.brun_partial(tables, x) for x in xs]
    elif name == "germain-const":
        tables = _tables(2 * top + 1, err)
        values = [cons.germain_partial(tables, x) for x in xs]
    else:
        raise UsageError(f"unknown sum {args.kind!r}")
    rows = [{"kind": args.kind, "x": x, "value": v} for x, v in zip(xs, values)]
    _emit(rows, ["kind", "x", "value"], args.format, out)
    return EXIT_OK


def cmd_scan(args, out, err) -> int:
    if args.step < 1:
        raise UsageError("--step must be positive")
    xs = list(range(args.step, args.xmax + 1, args.step))
    if args.what == "sign-change":
        tables = _tables(args.xmax + 2, err)
        scan = cons.sign_scan(tables, args.xmax, args.step, args.truncation)
        rows = [{"x": x, "count": c, "prediction": m, "difference": d} for x, c, m, d in scan.rows]
        print(f"# sign changes at {scan.crossings}", file=err)
        _emit(rows, ["x", "count", "prediction", "difference"], args.format, out)
    elif args.what == "chebyshev-band":
        tables = _tables(args.xmax, err)
        rows = []
        for x in xs:
            if x < 2:
                continue
            r = pnt_suite.chebyshev_ratio(tables, x)
            rows.append({"x": x, "ratio": r, "in_band": 0.9 <= r <= 1.2})
        _emit(rows, ["x", "ratio", "in_band"], args.format, out)
    elif args.what == "hl-ratio":
        tables = _tables(args.xmax + 2, err)
        spec = ConstellationSpec.twin(2)
        rows = []
        for x in xs:
            if x < 10:
                continue
            c = cons.count(tables, spec, x)
            pred = cons.predict(spec, x, args.truncation)
            rows.append({"pattern": spec.label, "x": x, "count": c, "prediction": pred,
                         "ratio": pred / c if c else None})
        _emit(rows, ["pattern", "x", "count", "prediction", "ratio"], args.format, out)
    return EXIT_OK


# entry points ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="primelab", description="Prime pattern tables and identity checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--truncation", type=int, default=10**6, help="Euler product bound P")

    p = sub.add_parser("count", help="counting tables for a prime pattern")
    p.add_argument("--pattern", required=True, help="primes | twin:K | germain:M,B | ap:Q,A | quad:C | quadtwin")
    p.add_argument("--x", type=int)
    p.add_argument("--grid", help="START:STOP:STEP")
    p.add_argument("--weight", default="n", choices=cons.WEIGHTS)
    p.add_argument("--predict", action="store_true", help="add prediction and ratio columns")
    common(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", help="run an invariant suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument("--limit", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("constants", help="truncated Euler products")
    p.add_argument("--which", required=True, help="c2 | cf:A,B,C | artin | theta | quadtwin | depolignac:K")
    common(p)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("sums", help="partial-sum tables")
    p.add_argument("--kind", required=True, help="twisted:S | mobius-log | mertens-logp | brun | germain-const")
    p.add_argument("--x", type=int)
    p.add_argument("--grid", help="START:STOP:STEP")
    common(p)
    p.set_defaults(func=cmd_sums)

    p = sub.add_parser("scan", help="grid reports")
    p.add_argument("--what", required=True, choices=("sign-change", "chebyshev-band", "hl-ratio"))
    p.add_argument("--xmax", type=int, required=True)
    p.add_argument("--step", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_scan)
    return parser


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out, err)
    except (SieveSizeError, SieveRangeError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_SIEVE
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
