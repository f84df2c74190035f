"""Command-line surface.

Exit codes: 0 on success, 2 when a requested check reports holds = false,
1 on usage or domain errors.  Records stream to stdout in a deterministic
order; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys

from . import acceptance, bounds, matcensus, ntheory, permcensus
from .cyclotomic import cyclotomic, stewart_in_width, stewart_row
from .errors import DomainError, RangeError
from .ntheory import factorize, primitive_prime_divisors
from .records import OutputRecord, emit

CHECK_COMMANDS = {
    "verify-lemma1", "verify-lemma2", "verify-ppd", "verify-dihedral",
    "alt-bound", "exceptional-bound", "verify-all",
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mprkit",
        description="Censuses of prime-order classes in small simple groups, "
                    "and the number-theoretic checks built on them.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "jsonl"), default="jsonl")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--limit", type=int, default=None,
                        help="census enumeration ceiling override")
    common.add_argument("--exceptional-table", default=None,
                        help="extra exceptional rows: family<TAB>exponent<TAB>dimension")
    common.add_argument("--cache", default=None,
                        help="factorization cache file (read at startup, appended to)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cyclotomic", parents=[common])
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("factor", parents=[common])
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("zsigmondy", parents=[common])
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--exp", type=int, required=True)

    p = sub.add_parser("stewart-table", parents=[common])
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--n-min", type=int, default=4)

    p = sub.add_parser("alt-census", parents=[common])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--brute", action="store_true",
                   help="use the full-enumeration oracle (5 <= m <= 8)")

    p = sub.add_parser("mat-census", parents=[common])
    p.add_argument("--group", required=True, help='e.g. "PSL(2,7)"')
    p.add_argument("--p", type=int, required=True)

    p = sub.add_parser("verify-lemma1", parents=[common])

    p = sub.add_parser("verify-lemma2", parents=[common])
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--q", type=int, default=None)

    p = sub.add_parser("verify-ppd", parents=[common])
    p.add_argument("--group", default=None, help="restrict to one PSL group")

    p = sub.add_parser("verify-dihedral", parents=[common])
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--s", type=int, default=None)

    p = sub.add_parser("alt-bound", parents=[common])
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--m-max", type=int, default=40)

    p = sub.add_parser("exceptional-bound", parents=[common])
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--a", type=int, default=1)

    sub.add_parser("verify-all", parents=[common])
    return parser


# --- record builders -----------------------------------------------------------

def _mat_census_records(spec, prime, result):
    records = []
    q = spec.q
    for i, rec in enumerate(result.records):
        code = 0
        for v in rec.representative:
            code = code * q + v
        records.append(OutputRecord("census", {
            "group": spec.name(),
            "prime": prime,
            "mpr_p": result.mpr_p,
            "m_p": result.m_p,
            "class_index": i,
            "rep": code,
            "class_size": rec.class_size,
            "nc_index": rec.n_over_c_index,
            "mpr_star": rec.mpr_star,
            "generator_orbits": rec.generator_orbit_count,
            "source": "brute-force",
        }))
    if not records:
        records.append(OutputRecord("census", {
            "group": spec.name(), "prime": prime, "mpr_p": 0, "m_p": result.m_p,
            "class_index": 0, "rep": 0, "class_size": 0, "nc_index": 0,
            "mpr_star": 0, "generator_orbits": 0, "source": "brute-force",
        }))
    return records


def _alt_census_records(m, p, brute):
    if brute and m != 6:
        row = permcensus.brute_force_alt_census(m, p)
    elif m == 6:
        mpr = permcensus.alt_mpr_p(6, p)
        types = permcensus.order_p_cycle_types(6, p)
        row = permcensus.AltCensusRow(
            degree=6, prime=p, class_cycle_types=tuple(types),
            mpr_p=mpr, m_p=mpr, source="brute-force")
    else:
        types = permcensus.order_p_cycle_types(m, p)
        row = permcensus.AltCensusRow(
            degree=m, prime=p, class_cycle_types=tuple(types),
            mpr_p=len(types), m_p=len(types), source="closed-form")
    records = []
    for i, t in enumerate(row.class_cycle_types):
        records.append(OutputRecord("census", {
            "group": f"Alt({m})",
            "prime": p,
            "mpr_p": row.mpr_p,
            "m_p": row.m_p,
            "class_index": i,
            "rep": str(t),
            "class_size": 0 if row.source == "closed-form" else _type_class_size(m, t),
            "nc_index": 0,
            "mpr_star": permcensus.mpr_star_alt(m, p, t) if m != 6 else 1,
            "generator_orbits": 1,
            "source": row.source,
        }))
    return records


def _type_class_size(m, t):
    import math
    size = math.factorial(m)
    mult = {}
    for part in t.parts:
        size //= part
        mult[part] = mult.get(part, 0) + 1
    for k in mult.values():
        size //= math.factorial(k)
    return size


def _stewart_records(base, n_min, n_max):
    records = []
    for n in range(n_min, n_max + 1):
        if not stewart_in_width(base, n):
            print(f"note: skipping n={n} (value exceeds the 2^127 width)",
                  file=sys.stderr)
            continue
        row = stewart_row(base, n)
        records.append(OutputRecord("stewart", {
            "base": row.base, "n": row.n, "phi_value": row.phi_value,
            "lhs": row.lhs, "rhs": row.rhs, "holds": row.holds,
            "marginal": row.marginal,
        }))
    return records


def _ppd_record(base, exp):
    res = primitive_prime_divisors(base, exp)
    return OutputRecord("ppd", {
        "base": res.a,
        "exponent": res.d,
        "primitive_primes": "/".join(map(str, res.primitive_primes)),
        "largest": res.largest,
        "exception": res.is_zsigmondy_exception,
    })


def run(argv) -> tuple[int, bytes]:
    """Execute one CLI invocation; returns (exit_status, output_bytes)."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (1 if exc.code else 0), b""

    if args.cache:
        ntheory.configure_cache(args.cache)

    try:
        records = _dispatch(args)
    except (DomainError, RangeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1, b""
    finally:
        if args.cache:
            ntheory.configure_cache(None)

    try:
        payload = emit(records, args.format)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1, b""

    status = 0
    if args.command in CHECK_COMMANDS:
        failed = any(
            r.payload.get("holds") is False for r in records
            if r.schema == "bound"
        )
        if failed:
            status = 2
    return status, payload


def _dispatch(args) -> list[OutputRecord]:
    cmd = args.command
    if cmd == "cyclotomic":
        poly = cyclotomic(args.n)
        return [OutputRecord("cyclotomic", {
            "n": args.n,
            "degree": poly.degree,
            "coefficients": "/".join(map(str, poly.coefficients)),
        })]
    if cmd == "factor":
        f = factorize(args.n)
        return [OutputRecord("factorization", {
            "value": f.value,
            "factors": "/".join(f"{p}^{e}" for p, e in f.factors),
        })]
    if cmd == "zsigmondy":
        return [_ppd_record(args.base, args.exp)]
    if cmd == "stewart-table":
        return _stewart_records(args.base, args.n_min, args.n_max)
    if cmd == "alt-census":
        return _alt_census_records(args.m, args.p, args.brute)
    if cmd == "mat-census":
        spec = matcensus.parse_group(args.group)
        result = matcensus.census(spec, args.p, args.limit)
        return _mat_census_records(spec, args.p, result)
    if cmd == "verify-lemma1":
        reports = bounds.check_lemma1_sweep(limit=args.limit, workers=args.workers)
        return [r.to_record() for r in reports]
    if cmd == "verify-lemma2":
        d_values = (args.d,) if args.d else (2, 3)
        q_values = (args.q,) if args.q else (2, 3, 4, 5, 7, 8, 9)
        reports = bounds.check_lemma2_sweep(d_values, q_values,
                                            limit=args.limit, workers=args.workers)
        return [r.to_record() for r in reports]
    if cmd == "verify-ppd":
        if args.group:
            spec = matcensus.parse_group(args.group)
            if spec.family != "PSL":
                raise DomainError("verify-ppd needs a PSL group")
            fam = bounds.derive_family_spec("PSL", spec.d, spec.p, spec.a,
                                            strict=False)
            reports = [bounds.check_ppd(fam, args.limit)]
        else:
            reports = acceptance.criterion_9_ppd_bound(workers=args.workers,
                                                       limit=args.limit)
        return [r.to_record() for r in reports]
    if cmd == "verify-dihedral":
        if (args.p is None) != (args.s is None):
            raise DomainError("give both --p and --s, or neither")
        if args.p is not None:
            reports = [matcensus.verify_dihedral_structure(args.p, args.s,
                                                           limit=args.limit)]
        else:
            reports = acceptance.criterion_8_dihedral(workers=args.workers,
                                                      limit=args.limit)
        return [r.to_record() for r in reports]
    if cmd == "alt-bound":
        if args.m is not None:
            reports = [bounds.alt_bound_chain(args.m)]
        else:
            reports = [bounds.alt_bound_chain(m) for m in range(5, args.m_max + 1)]
        return [r.to_record() for r in reports]
    if cmd == "exceptional-bound":
        rows = [bounds.E8_ROW]
        if args.exceptional_table:
            rows.extend(bounds.load_exceptional_table(args.exceptional_table))
        if args.p is not None:
            cases = [(args.p, args.a)]
        else:
            cases = [(p, a) for p, a, _ in acceptance.EXCEPTIONAL_CASES]
        reports = [bounds.exceptional_lower_bound(row, p, a)
                   for row in rows for p, a in cases]
        return [r.to_record() for r in reports]
    if cmd == "verify-all":
        records = []
        for num, name, fn in acceptance.CRITERIA:
            reports = fn(workers=args.workers, limit=args.limit)
            ok = all(r.holds for r in reports)
            print(f"criterion {num:2d} [{'PASS' if ok else 'FAIL'}] {name} "
                  f"({len(reports)} checks)", file=sys.stderr)
            records.extend(r.to_record() for r in reports)
        return records
    raise DomainError(f"unknown command {cmd!r}")


def main() -> None:
    status, payload = run(sys.argv[1:])
    if payload:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
    sys.exit(status)


if __name__ == "__main__":
    main()
