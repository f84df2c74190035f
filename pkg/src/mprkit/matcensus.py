"""Projective matrix groups PSL_d(q) / PGL_d(q) at desk scale: exact
enumeration, the full automorphism action (inner, diagonal, field, graph),
and censuses of prime-order elements under that action.

Matrices are flat tuples of d*d field elements in canonical projective
form: the first nonzero entry in row-major order is 1.  All orbit and
sweep computations are set-based and deterministic.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, RangeError
from .gf import GF, build_field
from .ntheory import euler_phi, factorize
from .records import BoundReport

DEFAULT_CEILING = 100_000

FAMILIES = ("PSL", "PGL")


# --- matrix primitives over a GF table --------------------------------------

def identity(d: int):
    return tuple(1 if i % (d + 1) == 0 else 0 for i in range(d * d))


def matmul(gf: GF, d: int, A, B):
    mul, add = gf.mul, gf.add
    out = []
    for i in range(d):
        row = A[i * d:(i + 1) * d]
        for j in range(d):
            acc = 0
            for k in range(d):
                acc = add[acc][mul[row[k]][B[k * d + j]]]
            out.append(acc)
    return tuple(out)


def mat_inverse(gf: GF, d: int, A):
    """Inverse by Gaussian elimination; raises on singular input."""
    mul, add, neg, inv = gf.mul, gf.add, gf.neg, gf.inv
    M = [list(A[i * d:(i + 1) * d]) + [1 if i == j else 0 for j in range(d)]
         for i in range(d)]
    for col in range(d):
        piv = next((r for r in range(col, d) if M[r][col]), None)
        if piv is None:
            raise DomainError("matrix is singular")
        M[col], M[piv] = M[piv], M[col]
        scale = inv[M[col][col]]
        M[col] = [mul[scale][v] for v in M[col]]
        for r in range(d):
            if r != col and M[r][col]:
                f = neg[M[r][col]]
                M[r] = [add[u][mul[f][w]] for u, w in zip(M[r], M[col])]
    return tuple(M[i][d + j] for i in range(d) for j in range(d))


def det(gf: GF, d: int, A):
    mul, add, neg, inv = gf.mul, gf.add, gf.neg, gf.inv
    M = [list(A[i * d:(i + 1) * d]) for i in range(d)]
    out = 1
    for col in range(d):
        piv = next((r for r in range(col, d) if M[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            out = mul[out][neg[1]]
        out = mul[out][M[col][col]]
        scale = inv[M[col][col]]
        for r in range(col + 1, d):
            if M[r][col]:
                f = neg[mul[M[r][col]][scale]]
                M[r] = [add[u][mul[f][w]] for u, w in zip(M[r], M[col])]
    return out


def canonical(gf: GF, A):
    """Scale so the first nonzero entry in row-major order is 1."""
    nz = next(v for v in A if v)
    if nz == 1:
        return A
    scale = gf.inv[nz]
    mul = gf.mul
    return tuple(mul[scale][v] for v in A)


def frobenius_map(gf: GF, A):
    fr = gf.frobenius
    return tuple(fr[v] for v in A)


def inverse_transpose(gf: GF, d: int, A):
    B = mat_inverse(gf, d, A)
    return tuple(B[j * d + i] for i in range(d) for j in range(d))


# --- group specifications ----------------------------------------------------

@dataclass(frozen=True)
class GroupSpec:
    """A target group PSL_d(q) or PGL_d(q) with q = p^a."""

    family: str
    d: int
    p: int
    a: int

    @property
    def q(self) -> int:
        return self.p**self.a

    @property
    def gf(self) -> GF:
        return build_field(self.p, self.a)

    @property
    def order(self) -> int:
        return group_order(self.family, self.d, self.q)

    def name(self) -> str:
        return f"{self.family}({self.d},{self.q})"


def group_order(family: str, d: int, q: int) -> int:
    pgl = q ** (d * (d - 1) // 2)
    for i in range(2, d + 1):
        pgl *= q**i - 1
    if family == "PGL":
        return pgl
    from math import gcd
    return pgl // gcd(d, q - 1)


def group_spec(family: str, d: int, p: int, a: int) -> GroupSpec:
    family = family.upper()
    if family not in FAMILIES:
        raise DomainError(f"family must be one of {FAMILIES}, got {family}")
    if d not in (2, 3, 4):
        raise DomainError(f"dimension must be 2, 3 or 4, got {d}")
    build_field(p, a)  # validates p prime and p^a <= 128
    return GroupSpec(family, d, p, a)


def parse_group(text: str) -> GroupSpec:
    """Parse compact group names like "PSL(2,9)" (case-insensitive)."""
    s = text.strip().upper().replace(" ", "")
    for fam in FAMILIES:
        if s.startswith(fam + "(") and s.endswith(")"):
            body = s[len(fam) + 1:-1].split(",")
            if len(body) != 2:
                break
            try:
                d, q = int(body[0]), int(body[1])
            except ValueError:
                break
            f = factorize(q).factors
            if len(f) != 1:
                raise DomainError(f"{q} is not a prime power")
            p, a = f[0]
            return group_spec(fam, d, p, a)
    raise DomainError(f"cannot parse group name {text!r} (expected e.g. PSL(2,9))")


# --- enumeration --------------------------------------------------------------

_data_lock = threading.Lock()
_group_cache: dict[GroupSpec, tuple] = {}


def enumerate_group(spec: GroupSpec, limit: int | None = None):
    """All elements in canonical projective form, ascending as tuples.

    Scans candidate matrices whose first nonzero entry is 1 (each projective
    class has exactly one such lift), keeps the invertible ones, and for PSL
    keeps those whose canonical lift has determinant a d-th power.
    """
    limit = DEFAULT_CEILING if limit is None else limit
    if spec.order > limit:
        raise RangeError(
            f"{spec.name()} has order {spec.order}, above the ceiling {limit}"
        )
    cached = _group_cache.get(spec)
    if cached is not None:
        return cached[0]
    gf, d = spec.gf, spec.d
    q = gf.q
    n2 = d * d
    from math import gcd
    g = gcd(d, q - 1)
    check_exp = (q - 1) // g
    elements = []
    for lead in range(d):  # first nonzero entry must lie in row 0
        prefix = (0,) * lead + (1,)
        free = n2 - lead - 1
        rest = [0] * free
        while True:
            A = prefix + tuple(rest)
            dv = det(gf, d, A)
            if dv and (spec.family == "PGL" or gf.power(dv, check_exp) == 1):
                elements.append(A)
            # odometer over the free entries
            i = free - 1
            while i >= 0 and rest[i] == q - 1:
                rest[i] = 0
                i -= 1
            if i < 0:
                break
            rest[i] += 1
            if free == 0:
                break
    elements.sort()
    if len(elements) != spec.order:
        raise AssertionError(
            f"{spec.name()}: enumerated {len(elements)} elements, closed form says {spec.order}"
        )
    result = tuple(elements)
    with _data_lock:
        _group_cache[spec] = (result, None, None)
    return result


def _group_data(spec: GroupSpec, limit: int | None = None, with_orders: bool = True):
    """Elements plus per-element inverses, and (on request) projective
    orders.  All three are cached per spec."""
    elements = enumerate_group(spec, limit)
    cached = _group_cache.get(spec)
    gf, d = spec.gf, spec.d
    if cached[1] is None:
        inverses = tuple(canonical(gf, mat_inverse(gf, d, A)) for A in elements)
        with _data_lock:
            cached = (elements, inverses, _group_cache[spec][2])
            _group_cache[spec] = cached
    if with_orders and cached[2] is None:
        ident = identity(d)
        orders = []
        for A in elements:
            k, B = 1, A
            while B != ident:
                B = canonical(gf, matmul(gf, d, B, A))
                k += 1
            orders.append(k)
        with _data_lock:
            cached = (elements, _group_cache[spec][1], tuple(orders))
            _group_cache[spec] = cached
    return cached


def element_order(spec: GroupSpec, A) -> int:
    """Least k >= 1 with A^k projectively trivial."""
    gf, d = spec.gf, spec.d
    ident = identity(d)
    A = canonical(gf, A)
    k, B = 1, A
    while B != ident:
        B = canonical(gf, matmul(gf, d, B, A))
        k += 1
    return k


def _pgl_spec(spec: GroupSpec) -> GroupSpec:
    return GroupSpec("PGL", spec.d, spec.p, spec.a)


def _pgl_pairs(spec: GroupSpec, limit: int | None = None):
    pgl = _pgl_spec(spec)
    elements, inverses, _ = _group_data(pgl, limit, with_orders=False)
    return elements, inverses


# --- the automorphism action --------------------------------------------------

def aut_orbit(spec: GroupSpec, x, limit: int | None = None) -> frozenset:
    """Orbit of x under conjugation by all of PGL_d(q), the entrywise
    Frobenius (a > 1), and inverse-transpose (d >= 3), closed to a fixed
    point.  Conjugation uses every PGL element, so one pass per inner class.
    """
    gf, d = spec.gf, spec.d
    lim = max(limit or DEFAULT_CEILING, group_order("PGL", d, spec.q))
    conj, conj_inv = _pgl_pairs(spec, lim)
    orbit: set = set()
    pending = [canonical(gf, x)]
    while pending:
        y = pending.pop()
        if y in orbit:
            continue
        for c, ci in zip(conj, conj_inv):
            orbit.add(canonical(gf, matmul(gf, d, matmul(gf, d, ci, y), c)))
        if spec.a > 1:
            pending.append(canonical(gf, frobenius_map(gf, y)))
        if spec.d >= 3:
            pending.append(canonical(gf, inverse_transpose(gf, d, y)))
    return frozenset(orbit)


def _aut_parameterization(spec: GroupSpec, limit: int | None = None):
    """Triples (c, c_inverse, frobenius_power, graph_flag) covering each
    automorphism of PSL_d(q) exactly once."""
    conj, conj_inv = _pgl_pairs(spec, limit)
    field_powers = range(spec.a)
    graph_flags = (0, 1) if spec.d >= 3 else (0,)
    return conj, conj_inv, field_powers, graph_flags


def _apply_aut(gf: GF, d: int, x, c, ci, j: int, e: int):
    y = x
    if e:
        y = inverse_transpose(gf, d, y)
    for _ in range(j):
        y = frobenius_map(gf, y)
    return canonical(gf, matmul(gf, d, matmul(gf, d, ci, y), c))


def _power_set(gf: GF, d: int, x, order: int):
    """Nonidentity powers of x, as a set of canonical matrices."""
    powers = set()
    y = x
    for _ in range(order - 1):
        powers.add(y)
        y = canonical(gf, matmul(gf, d, y, x))
    return powers


def normalizer_centralizer_index(spec: GroupSpec, x, acting: str = "pgl",
                                 limit: int | None = None) -> int:
    """|N(<x>) : C(x)| inside PGL_d(q) or the full automorphism group,
    computed by a literal sweep over the acting group."""
    n, c = _normalizer_centralizer_orders(spec, x, acting, limit)
    if n % c:
        raise AssertionError("centralizer order must divide normalizer order")
    return n // c


def _normalizer_centralizer_orders(spec: GroupSpec, x, acting: str,
                                   limit: int | None = None) -> tuple[int, int]:
    gf, d = spec.gf, spec.d
    x = canonical(gf, x)
    order = element_order(spec, x)
    powers = _power_set(gf, d, x, order)
    lim = max(limit or DEFAULT_CEILING, group_order("PGL", d, spec.q))
    n_count = c_count = 0
    if acting == "pgl":
        conj, conj_inv = _pgl_pairs(spec, lim)
        for c_el, ci in zip(conj, conj_inv):
            y = canonical(gf, matmul(gf, d, matmul(gf, d, ci, x), c_el))
            if y in powers:
                n_count += 1
                if y == x:
                    c_count += 1
    elif acting == "aut":
        conj, conj_inv, field_powers, graph_flags = _aut_parameterization(spec, lim)
        for e in graph_flags:
            for j in field_powers:
                base = x
                if e:
                    base = inverse_transpose(gf, d, base)
                for _ in range(j):
                    base = frobenius_map(gf, base)
                for c_el, ci in zip(conj, conj_inv):
                    y = canonical(gf, matmul(gf, d, matmul(gf, d, ci, base), c_el))
                    if y in powers:
                        n_count += 1
                        if y == x:
                            c_count += 1
    else:
        raise DomainError(f"acting must be 'pgl' or 'aut', got {acting!r}")
    return n_count, c_count


# --- censuses ------------------------------------------------------------------

@dataclass(frozen=True)
class AutClassRecord:
    """One Aut(T)-class of prime-order elements.

    The two counts at the end are the two sides of the generator-class
    formula: mpr_star = phi(order) / |N:C|, and generator_orbit_count is
    the same number measured directly on the generators of <x>.
    """

    representative: tuple
    element_order: int
    class_size: int
    n_over_c_index: int
    mpr_star: int
    generator_orbit_count: int

    def __post_init__(self):
        phi = euler_phi(self.element_order)
        if phi % self.n_over_c_index:
            raise AssertionError("|N:C| must divide phi(order)")
        if self.mpr_star != phi // self.n_over_c_index:
            raise AssertionError("mpr_star must equal phi(order)/|N:C|")
        if self.generator_orbit_count != self.mpr_star:
            raise AssertionError(
                "generator orbit count disagrees with phi(order)/|N:C| "
                f"({self.generator_orbit_count} vs {self.mpr_star})"
            )


@dataclass(frozen=True)
class CensusResult:
    spec: GroupSpec
    prime: int
    records: tuple[AutClassRecord, ...]
    mpr_p: int
    m_p: int


@lru_cache(maxsize=None)
def census(spec: GroupSpec, p: int, limit: int | None = None) -> CensusResult:
    """Partition the order-p elements of the group into Aut(T)-classes.

    Also counts classes of all elements of p-power order (m_p).  Every
    record's internal consistency is checked at construction: class sizes
    partition the order-p elements, and the generator-class formula holds
    with the independently measured generator orbit count.
    """
    elements, _, orders = _group_data(spec, limit)
    gf, d = spec.gf, spec.d

    def p_power(k: int) -> bool:
        if k < p:
            return False
        while k % p == 0:
            k //= p
        return k == 1

    targets = [A for A, o in zip(elements, orders) if p_power(o)]
    class_of: dict[tuple, int] = {}
    orbits: list[frozenset] = []
    for A in targets:
        if A in class_of:
            continue
        orb = aut_orbit(spec, A, limit)
        idx = len(orbits)
        orbits.append(orb)
        for y in orb:
            class_of[y] = idx

    order_p_orbits = sorted(
        (o for o in orbits if element_order(spec, min(o)) == p),
        key=min,
    )
    total_order_p = sum(1 for A, o in zip(elements, orders) if o == p)
    if sum(len(o) for o in order_p_orbits) != total_order_p:
        raise AssertionError("census classes do not partition the order-p elements")

    records = []
    for orb in order_p_orbits:
        rep = min(orb)
        index = normalizer_centralizer_index(spec, rep, acting="aut", limit=limit)
        gen_classes = set()
        y = rep
        for _ in range(p - 1):
            gen_classes.add(class_of[y])
            y = canonical(gf, matmul(gf, d, y, rep))
        records.append(AutClassRecord(
            representative=rep,
            element_order=p,
            class_size=len(orb),
            n_over_c_index=index,
            mpr_star=euler_phi(p) // index,
            generator_orbit_count=len(gen_classes),
        ))
    return CensusResult(
        spec=spec, prime=p, records=tuple(records),
        mpr_p=len(order_p_orbits), m_p=len(orbits),
    )


# --- the split-torus construction ----------------------------------------------

def psl2_torus_element(p: int, s: int):
    """The canonical projective image of diag(z, z^-1) in PSL_2(p), where z
    is the least positive residue of multiplicative order s modulo p.

    Requires s an odd prime dividing p - 1 (and p > 3 so the torus is
    nontrivial).  The result has projective order s.
    """
    if p <= 3:
        raise DomainError(f"need a prime p > 3, got {p}")
    if s % 2 == 0 or s < 3:
        raise DomainError(f"s must be an odd prime, got {s}")
    if (p - 1) % s:
        raise DomainError(f"{s} does not divide p - 1 = {p - 1}")
    spec = group_spec("PSL", 2, p, 1)
    zeta = next(
        (z for z in range(2, p) if pow(z, s, p) == 1), None
    )
    if zeta is None:
        raise DomainError(f"no element of order {s} modulo {p}")
    gf = spec.gf
    x = canonical(gf, (zeta % p, 0, 0, pow(zeta, -1, p)))
    if element_order(spec, x) != s:
        raise AssertionError("torus element has unexpected order")
    return spec, x


def verify_dihedral_structure(p: int, s: int, limit: int | None = None) -> BoundReport:
    """Check the normalizer/centralizer structure of the split-torus element.

    Verified clauses: |N| = 2(p-1); C is cyclic of order p-1 (witnessed by
    an element of that order); every element of N outside C inverts x; and
    the generator-class count equals (s-1)/2.  Any failure is reported with
    the failed clause named, holds = False.
    """
    spec, x = psl2_torus_element(p, s)
    gf, d = spec.gf, spec.d
    lim = max(limit or DEFAULT_CEILING, group_order("PGL", 2, p))
    conj, conj_inv = _pgl_pairs(spec, lim)
    _, _, orders = _group_data(_pgl_spec(spec), lim)
    powers = _power_set(gf, d, x, s)
    x_inv = canonical(gf, mat_inverse(gf, d, x))

    n_count = c_count = 0
    c_has_full_order = False
    all_invert = True
    for c_el, ci, o in zip(conj, conj_inv, orders):
        y = canonical(gf, matmul(gf, d, matmul(gf, d, ci, x), c_el))
        if y not in powers:
            continue
        n_count += 1
        if y == x:
            c_count += 1
            if o == p - 1:
                c_has_full_order = True
        elif y != x_inv:
            all_invert = False

    failures = []
    if n_count != 2 * (p - 1):
        failures.append(f"|N|={n_count}, expected {2 * (p - 1)}")
    if c_count != p - 1:
        failures.append(f"|C|={c_count}, expected {p - 1}")
    if not c_has_full_order:
        failures.append(f"no order-{p - 1} witness in C (not visibly cyclic)")
    if not all_invert:
        failures.append("an element of N - C does not invert x")
    mpr_star = euler_phi(s) // (n_count // c_count) if c_count else 0
    if mpr_star != (s - 1) // 2:
        failures.append(f"mpr_star={mpr_star}, expected {(s - 1) // 2}")

    return BoundReport(
        label="dihedral-structure",
        context=f"p={p} s={s}" + (" clause:" + ";".join(failures) if failures else ""),
        lhs=Fraction(mpr_star),
        rhs=Fraction(s - 1, 2),
        relation="eq",
        holds=not failures,
    )
