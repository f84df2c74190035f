"""Alternating-group censuses: cycle-type combinatorics in closed form and
a small brute-force oracle that enumerates Alt(m) directly.

Permutations are tuples of images on {0..m-1}.  Conjugacy classes under the
full symmetric group are computed by explicit orbit closure, never by
assuming the cycle-type classification (that theorem is what the closed
forms rely on, so the oracle must not).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, RangeError

BRUTE_FORCE_MAX_DEGREE = 8


# --- permutation primitives -------------------------------------------------

def compose(p, q):
    """Permutation applying q first, then p."""
    return tuple(p[i] for i in q)


def inverse(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def conjugate(x, g):
    """x^g = g^-1 x g."""
    gi = inverse(g)
    return compose(gi, compose(x, g))


def cycles_of(p):
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        j = p[start]
        while j != start:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        out.append(tuple(cyc))
    return out


def cycle_type_of(p) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in cycles_of(p)), reverse=True))


def parity(p) -> int:
    """0 for even, 1 for odd: (m - number of cycles) mod 2."""
    return (len(p) - len(cycles_of(p))) % 2


def perm_order(p) -> int:
    return math.lcm(*(len(c) for c in cycles_of(p)))


@dataclass(frozen=True)
class CycleType:
    """Weakly decreasing positive parts summing to the degree."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if not self.parts or any(x < 1 for x in self.parts):
            raise DomainError("parts must be positive")
        if list(self.parts) != sorted(self.parts, reverse=True):
            raise DomainError("parts must be weakly decreasing")

    @property
    def degree(self) -> int:
        return sum(self.parts)

    def canonical_perm(self):
        """Cycles placed left-to-right over {0..m-1} in the order given."""
        images = list(range(self.degree))
        offset = 0
        for part in self.parts:
            for i in range(part):
                images[offset + i] = offset + (i + 1) % part
            offset += part
        return tuple(images)

    def __str__(self) -> str:
        return "/".join(str(x) for x in self.parts)


@dataclass(frozen=True)
class AltCensusRow:
    degree: int
    prime: int
    class_cycle_types: tuple[CycleType, ...]
    mpr_p: int
    m_p: int
    source: str  # "closed-form" | "brute-force"


def order_p_cycle_types(m: int, p: int) -> list[CycleType]:
    """Cycle types of order-p elements of Alt(m), by ascending p-part count.

    Parts lie in {p, 1} with at least one p; k parts of size p give an even
    permutation iff k*(p-1) is even, which only constrains p = 2.
    """
    if m < 5:
        raise DomainError(f"degree must be >= 5, got {m}")
    out = []
    for k in range(1, m // p + 1):
        if (k * (p - 1)) % 2 == 0:
            out.append(CycleType((p,) * k + (1,) * (m - k * p)))
    return out


@lru_cache(maxsize=None)
def alternating_elements(m: int):
    if m > BRUTE_FORCE_MAX_DEGREE:
        raise RangeError(f"full enumeration is capped at degree {BRUTE_FORCE_MAX_DEGREE}")
    return tuple(p for p in itertools.permutations(range(m)) if parity(p) == 0)


def sym_generators(m: int):
    transposition = (1, 0) + tuple(range(2, m))
    cycle = tuple(range(1, m)) + (0,)
    return [transposition, cycle]


def _sym_class_orbits(m: int, elements):
    """Partition elements into Sym(m)-conjugacy orbits by BFS closure."""
    gens = sym_generators(m)
    gens += [inverse(g) for g in gens]
    remaining = set(elements)
    orbits = []
    for x in sorted(elements):
        if x not in remaining:
            continue
        orbit = {x}
        frontier = [x]
        while frontier:
            y = frontier.pop()
            for g in gens:
                z = conjugate(y, g)
                if z not in orbit:
                    orbit.add(z)
                    frontier.append(z)
        remaining -= orbit
        orbits.append(orbit)
    return orbits


@lru_cache(maxsize=None)
def brute_force_alt_census(m: int, p: int) -> AltCensusRow:
    """Full enumeration oracle for 5 <= m <= 8, m != 6.

    Enumerates Alt(m), groups order-p elements into Sym(m)-classes by
    explicit conjugation closure (Aut(Alt(m)) = Sym(m) away from degree 6),
    and counts classes of p-power order for m_p.
    """
    if not (5 <= m <= BRUTE_FORCE_MAX_DEGREE):
        raise RangeError(f"brute force needs 5 <= m <= {BRUTE_FORCE_MAX_DEGREE}, got {m}")
    if m == 6:
        raise DomainError("degree 6 requires the matrix realization (exceptional outer automorphisms)")
    elems = alternating_elements(m)
    order_p = [x for x in elems if perm_order(x) == p]
    orbits = _sym_class_orbits(m, order_p)
    types = sorted(
        (CycleType(cycle_type_of(min(o))) for o in orbits),
        key=lambda t: sum(1 for x in t.parts if x == p),
    )
    p_power = [x for x in elems if _is_p_power(perm_order(x), p)]
    m_p = len(_sym_class_orbits(m, p_power))
    return AltCensusRow(
        degree=m, prime=p, class_cycle_types=tuple(types),
        mpr_p=len(orbits), m_p=m_p, source="brute-force",
    )


def _is_p_power(n: int, p: int) -> bool:
    if n < p:
        return False
    while n % p == 0:
        n //= p
    return n == 1


def alt_mpr_p(m: int, p: int) -> int:
    """Number of Aut(Alt(m))-classes of order-p elements.

    Away from degree 6 this is the number of admissible cycle types.  At
    degree 6 the automorphism group exceeds Sym(6) and fuses classes, so
    the count is delegated to the matrix realization of the group.
    """
    if m < 5:
        raise DomainError(f"degree must be >= 5, got {m}")
    if m == 6:
        return _alt6_mpr_p(p)
    return len(order_p_cycle_types(m, p))


def _alt6_mpr_p(p: int) -> int:
    try:
        from . import matcensus
        spec = matcensus.group_spec("PSL", 2, 3, 2)
        return matcensus.census(spec, p).mpr_p
    except ImportError as exc:  # pragma: no cover - packaging failure only
        raise DomainError("degree 6 requires matrix realization (PSL(2,9) census unavailable)") from exc


def mpr_star_alt(m: int, p: int, t: CycleType) -> int:
    """Generator-class count for an order-p cycle type: always 1.

    For m <= 8 the claim is verified by explicit enumeration: every
    generator x^k of the cyclic group shares the cycle type of x, hence
    lies in the same Sym(m)-class.
    """
    if t.degree != m:
        raise DomainError(f"cycle type {t} has degree {t.degree}, not {m}")
    x = t.canonical_perm()
    if perm_order(x) != p:
        raise DomainError(f"cycle type {t} does not have order {p}")
    if m <= BRUTE_FORCE_MAX_DEGREE:
        power = x
        for _ in range(p - 1):
            if cycle_type_of(power) != t.parts:
                raise DomainError(f"generator of {t} with a different cycle type found")
            power = compose(power, x)
    return 1
