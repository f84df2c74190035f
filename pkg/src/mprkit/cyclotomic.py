"""Cyclotomic polynomials with exact integer coefficients, and the
largest-prime-factor comparison table built on their values."""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

from .errors import DomainError, RangeError, WIDTH_BOUND
from .ntheory import euler_phi, is_prime, largest_prime_factor

CYCLOTOMIC_MAX_INDEX = 300


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with exact integer coefficients, constant term first."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        c = self.coefficients
        if c and c[-1] == 0:
            raise DomainError("leading coefficient must be nonzero (or use ())")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_monic(self) -> bool:
        return bool(self.coefficients) and self.coefficients[-1] == 1

    def eval_at(self, a: int) -> int:
        v = 0
        for c in reversed(self.coefficients):
            v = v * a + c
        return v

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return IntPolynomial(())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(tuple(out))

    def divexact(self, den: "IntPolynomial") -> "IntPolynomial":
        """Exact polynomial division; raises if there is a remainder."""
        if not den.coefficients:
            raise DomainError("division by zero polynomial")
        num = list(self.coefficients)
        dl = den.degree
        lead = den.coefficients[-1]
        if len(num) < len(den.coefficients):
            raise DomainError("exact division with deg(num) < deg(den)")
        q = [0] * (len(num) - dl)
        for i in range(len(q) - 1, -1, -1):
            c, r = divmod(num[i + dl], lead)
            if r:
                raise DomainError("division is not exact")
            q[i] = c
            if c:
                for j, y in enumerate(den.coefficients):
                    num[i + j] -= c * y
        if any(num):
            raise DomainError("division left a remainder")
        return IntPolynomial(tuple(q))

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            elif k == 1:
                body = "x" if mag == 1 else f"{mag}*x"
            else:
                body = f"x^{k}" if mag == 1 else f"{mag}*x^{k}"
            terms.append(("-" if c < 0 else "+", body))
        sign, first = terms[0]
        out = ("-" if sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


_cyclo_lock = threading.Lock()
_cyclo_table: dict[int, IntPolynomial] = {}


def cyclotomic(n: int) -> IntPolynomial:
    """The n-th cyclotomic polynomial, 1 <= n <= 300.

    Computed as (x^n - 1) / prod of lower cyclotomics over the proper
    divisors of n; exact integer division throughout, memoized per process.
    """
    if not 1 <= n <= CYCLOTOMIC_MAX_INDEX:
        raise RangeError(f"cyclotomic index must be in [1, {CYCLOTOMIC_MAX_INDEX}], got {n}")
    got = _cyclo_table.get(n)
    if got is not None:
        return got
    with _cyclo_lock:
        got = _cyclo_table.get(n)
        if got is not None:
            return got
        num = IntPolynomial((-1,) + (0,) * (n - 1) + (1,))
        den = IntPolynomial((1,))
        for d in range(1, n):
            if n % d == 0:
                den = den * _cyclotomic_nolock(d)
        result = num.divexact(den)
        assert result.is_monic() and result.degree == euler_phi(n)
        _cyclo_table[n] = result
        return result


def _cyclotomic_nolock(n: int) -> IntPolynomial:
    got = _cyclo_table.get(n)
    if got is not None:
        return got
    num = IntPolynomial((-1,) + (0,) * (n - 1) + (1,))
    den = IntPolynomial((1,))
    for d in range(1, n):
        if n % d == 0:
            den = den * _cyclotomic_nolock(d)
    result = num.divexact(den)
    _cyclo_table[n] = result
    return result


def cyclotomic_eval(n: int, a: int) -> int:
    """Exact value of the n-th cyclotomic polynomial at an integer a."""
    v = cyclotomic(n).eval_at(a)
    if abs(v) >= WIDTH_BOUND:
        raise RangeError(
            f"cyclotomic_eval({n}, {a}) has magnitude {abs(v)} >= 2^127"
        )
    return v


# Relative guard band for the floating-point side of the comparison table.
STEWART_GUARD_BAND = 1e-9


@dataclass(frozen=True)
class StewartRow:
    """One row of the comparison table for prime bases.

    lhs is the exact largest prime factor of the cyclotomic value; rhs is
    the float n * exp(log n / (104 log log n)).  ``marginal`` flags rows
    where the two sides agree to within a relative 1e-9 band, in which
    case ``holds`` should not be trusted as a hard comparison.
    """

    base: int
    n: int
    phi_value: int
    lhs: int
    rhs: float
    holds: bool
    marginal: bool


def stewart_row(a: int, n: int) -> StewartRow:
    """Compare P[Phi_n(a)] against n * exp(log n / (104 log log n)).

    Requires a prime and n >= 4 (so log log n is positive).  The left side
    is exact via factorization; the right side is evaluated in double
    precision with a relative 1e-9 guard band flagged as ``marginal``.
    """
    if n < 4:
        raise DomainError(f"comparison table rows need n >= 4, got {n}")
    if not is_prime(a):
        raise DomainError(f"base must be prime, got {a}")
    value = cyclotomic_eval(n, a)
    lhs = largest_prime_factor(value)
    rhs = n * math.exp(math.log(n) / (104.0 * math.log(math.log(n))))
    marginal = abs(lhs - rhs) <= STEWART_GUARD_BAND * abs(rhs)
    return StewartRow(
        base=a, n=n, phi_value=value, lhs=lhs, rhs=rhs,
        holds=lhs > rhs, marginal=marginal,
    )


def stewart_in_width(a: int, n: int) -> bool:
    """Whether Phi_n(a) fits the 2^127 policy (so the row is computable)."""
    return abs(cyclotomic(n).eval_at(a)) < WIDTH_BOUND
