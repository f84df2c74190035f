"""The one-shot verification suite.

Each criterion function returns a list of BoundReport values; a criterion
passes when every report holds.  The CLI's verify-all subcommand and the
acceptance test module both run exactly these functions, so "verify-all"
and the test suite can never drift apart.
"""

from __future__ import annotations

from fractions import Fraction

from . import bounds, matcensus, permcensus
from .cyclotomic import IntPolynomial, cyclotomic, stewart_in_width, stewart_row
from .errors import WIDTH_BOUND
from .ntheory import divisors, is_prime, primitive_prime_divisors
from .records import BoundReport, emit

ZSIGMONDY_A_MAX = 20
ZSIGMONDY_D_MAX = 30
ALT_SWEEP_MAX = 40
STEWART_BASES = (2, 3, 5)
STEWART_N_MAX = 120
DIHEDRAL_PAIRS = ((11, 5), (13, 3), (19, 3), (29, 7), (31, 5))
PPD_TARGETS = tuple((2, q) for q in (4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27)) \
    + tuple((3, q) for q in (2, 3))
EXCEPTIONAL_CASES = ((2, 1, 331), (3, 1, 271), (2, 2, 1321))


def _report(label, context, lhs, rhs, relation="eq"):
    if relation == "eq":
        holds = lhs == rhs
    elif relation == "ge":
        holds = lhs >= rhs
    elif relation == "le":
        holds = lhs <= rhs
    else:
        raise ValueError(relation)
    return BoundReport(label=label, context=context, lhs=Fraction(lhs),
                       rhs=Fraction(rhs), relation=relation, holds=holds)


def criterion_1_cyclotomic_identity(workers=1, limit=None):
    """Product of cyclotomics over the divisors of n equals x^n - 1, n <= 200."""
    good = 0
    for n in range(1, 201):
        prod = IntPolynomial((1,))
        for d in divisors(n):
            prod = prod * cyclotomic(d)
        target = IntPolynomial((-1,) + (0,) * (n - 1) + (1,))
        if prod == target:
            good += 1
    return [_report("cyclotomic-identity", "n<=200", good, 200)]


def _zsigmondy_sweep():
    for a in range(2, ZSIGMONDY_A_MAX + 1):
        for d in range(2, ZSIGMONDY_D_MAX + 1):
            if a**d - 1 < WIDTH_BOUND:
                yield primitive_prime_divisors(a, d)


def criterion_2_zsigmondy(workers=1, limit=None):
    """Empty primitive-prime sets occur exactly at (2,6) and at d=2 with
    a+1 a power of two, over the in-width sweep."""
    bad = 0
    for res in _zsigmondy_sweep():
        expected = (res.a, res.d) == (2, 6) or (
            res.d == 2 and (res.a + 1) & res.a == 0)
        if res.is_zsigmondy_exception != expected:
            bad += 1
    return [_report("zsigmondy-exceptions",
                    f"a<={ZSIGMONDY_A_MAX} d<={ZSIGMONDY_D_MAX}", bad, 0)]


def criterion_3_ppd_congruence(workers=1, limit=None):
    bad = sum(
        1 for res in _zsigmondy_sweep()
        for s in res.primitive_primes if s % res.d != 1
    )
    return [_report("ppd-congruence",
                    f"a<={ZSIGMONDY_A_MAX} d<={ZSIGMONDY_D_MAX}", bad, 0)]


def criterion_4_lemma1(workers=1, limit=None):
    return bounds.check_lemma1_sweep(limit=limit, workers=workers)


def criterion_5_lemma2(workers=1, limit=None):
    return bounds.check_lemma2_sweep(limit=limit, workers=workers)


def criterion_6_involutions(workers=1, limit=None):
    reports = []
    for m in range(5, ALT_SWEEP_MAX + 1):
        if m == 6:
            continue
        reports.append(_report("involution-count", f"m={m}",
                               permcensus.alt_mpr_p(m, 2), m // 4))
    reports.append(_report("involution-count", "m=6 (via PSL(2,9))",
                           permcensus.alt_mpr_p(6, 2), 1))
    return reports


def criterion_7_isomorphisms(workers=1, limit=None):
    reports = []
    psl24 = matcensus.parse_group("PSL(2,4)")
    psl25 = matcensus.parse_group("PSL(2,5)")
    for p in (2, 3, 5):
        alt5 = permcensus.brute_force_alt_census(5, p)
        c4 = matcensus.census(psl24, p, limit)
        c5 = matcensus.census(psl25, p, limit)
        agree = (c4.mpr_p == c5.mpr_p == alt5.mpr_p
                 and c4.m_p == c5.m_p == alt5.m_p)
        reports.append(_report("isomorphism-deg5", f"p={p}",
                               int(agree), 1))
    # class sizes of the degree-6 realization must match the element
    # counts by order in Alt(6) itself
    alt6 = permcensus.alternating_elements(6)
    counts = {}
    for x in alt6:
        o = permcensus.perm_order(x)
        counts[o] = counts.get(o, 0) + 1
    psl29 = matcensus.parse_group("PSL(2,9)")
    for p in (2, 3, 5):
        c = matcensus.census(psl29, p, limit)
        total = sum(r.class_size for r in c.records)
        reports.append(_report("isomorphism-deg6", f"p={p} elements",
                               total, counts.get(p, 0)))
        reports.append(_report("isomorphism-deg6", f"p={p} classes",
                               c.mpr_p, 1))
    return reports


def criterion_8_dihedral(workers=1, limit=None):
    def run(pair):
        return matcensus.verify_dihedral_structure(*pair, limit=limit)

    results = bounds._run_tasks(list(DIHEDRAL_PAIRS), run, workers)
    return [results[pair] for pair in DIHEDRAL_PAIRS]


def criterion_9_ppd_bound(workers=1, limit=None):
    from .ntheory import factorize

    def run(target):
        d, q = target
        p, a = factorize(q).factors[0]
        spec = bounds.derive_family_spec("PSL", d, p, a, strict=False)
        if bounds.zsig_prime_for(spec) is None:
            return None  # Mersenne branch / named exception: no prime to test
        return bounds.check_ppd(spec, limit)

    results = bounds._run_tasks(list(PPD_TARGETS), run, workers)
    return [results[t] for t in PPD_TARGETS if results[t] is not None]


def criterion_10_alt_chain(workers=1, limit=None):
    return [bounds.alt_bound_chain(m) for m in range(5, ALT_SWEEP_MAX + 1)]


def criterion_11_stewart(workers=1, limit=None):
    """Emit the full in-width comparison table and check the spot values."""
    rows = []
    for a in STEWART_BASES:
        for n in range(4, STEWART_N_MAX + 1):
            if stewart_in_width(a, n):
                rows.append(stewart_row(a, n))
    by_key = {(r.base, r.n): r for r in rows}
    reports = [
        _report("stewart-spot", "lhs(2,13)", by_key[(2, 13)].lhs, 8191),
        _report("stewart-spot", "lhs(2,6)", by_key[(2, 6)].lhs, 3),
        _report("stewart-spot", "holds(2,6)", int(by_key[(2, 6)].holds), 0),
        _report("stewart-spot", "holds(2,13)", int(by_key[(2, 13)].holds), 1),
    ]
    # every emitted lhs is exact: the factored largest prime divides the value
    bad = sum(1 for r in rows if r.phi_value % r.lhs and r.lhs != 1)
    reports.append(_report("stewart-exactness", f"{len(rows)} rows", bad, 0))
    return reports


def criterion_12_exceptional(workers=1, limit=None):
    reports = []
    for p, a, s_expected in EXCEPTIONAL_CASES:
        rep = bounds.exceptional_lower_bound(bounds.E8_ROW, p, a)
        s = int(rep.context.rsplit("s=", 1)[1])
        reports.append(_report("exceptional-s", f"E8 p={p} a={a}", s, s_expected))
        reports.append(_report(
            "exceptional-bound", f"E8 p={p} a={a}",
            rep.lhs, Fraction(s_expected - 1, 2 * a * 248),
        ))
    return reports


def determinism_payload(workers=1, limit=None) -> bytes:
    """The serialized output of criteria 4 through 9, used byte-for-byte
    in the determinism check."""
    reports = []
    for fn in (criterion_4_lemma1, criterion_5_lemma2, criterion_6_involutions,
               criterion_7_isomorphisms, criterion_8_dihedral,
               criterion_9_ppd_bound):
        reports.extend(fn(workers=workers, limit=limit))
    return emit((r.to_record() for r in reports), "jsonl")


def criterion_13_determinism(workers=1, limit=None):
    one = determinism_payload(workers=1, limit=limit)
    eight = determinism_payload(workers=8, limit=limit)
    return [_report("worker-determinism", "criteria 4-9, workers 1 vs 8",
                    int(one == eight), 1)]


CRITERIA = (
    (1, "cyclotomic product identity", criterion_1_cyclotomic_identity),
    (2, "Zsigmondy exception census", criterion_2_zsigmondy),
    (3, "primitive prime divisor congruence", criterion_3_ppd_congruence),
    (4, "generator-class formula equality", criterion_4_lemma1),
    (5, "index bound in PGL_d(q)", criterion_5_lemma2),
    (6, "involution class counts", criterion_6_involutions),
    (7, "isomorphism cross-checks", criterion_7_isomorphisms),
    (8, "split-torus dihedral structure", criterion_8_dihedral),
    (9, "primitive-prime-divisor lower bound", criterion_9_ppd_bound),
    (10, "alternating bound chain", criterion_10_alt_chain),
    (11, "largest-prime-factor comparison table", criterion_11_stewart),
    (12, "exceptional-family lower bound", criterion_12_exceptional),
    (13, "worker-count determinism", criterion_13_determinism),
)
