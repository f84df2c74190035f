"""Exact integer arithmetic: primality, factorization, totient, Moebius,
primitive prime divisors.

Everything here is deterministic and reproducible: primality uses fixed
witness sets (never random ones), and the factorization pipeline is
trial division -> Pollard p-1 -> Brent's rho with parameters derived
from the input, retried with incremented parameters on failure.
"""

from __future__ import annotations

import logging
import math
import threading
from dataclasses import dataclass

from .errors import DomainError, RangeError, WIDTH_BOUND

log = logging.getLogger(__name__)

_TRIAL_LIMIT = 1_000_000

_sieve_lock = threading.Lock()
_small_primes: list[int] | None = None


def small_primes() -> list[int]:
    """Primes below 10^6, sieved once per process."""
    global _small_primes
    if _small_primes is None:
        with _sieve_lock:
            if _small_primes is None:
                sieve = bytearray(b"\x01") * _TRIAL_LIMIT
                sieve[0] = sieve[1] = 0
                for p in range(2, int(_TRIAL_LIMIT**0.5) + 1):
                    if sieve[p]:
                        start = p * p
                        sieve[start::p] = b"\x00" * ((_TRIAL_LIMIT - start - 1) // p + 1)
                _small_primes = [i for i, v in enumerate(sieve) if v]
    return _small_primes


# Deterministic strong-pseudoprime witness sets.  The first set is proven
# complete below 3,317,044,064,679,887,385,961,981 (covers everything below
# 2^64 and well beyond); the extended set is the fixed fallback for larger
# inputs up to the 2^127 width bound.
_WITNESS_BOUND = 3_317_044_064_679_887_385_961_981
_WITNESSES_SMALL = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_WITNESSES_LARGE = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                    53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


def _strong_probable_prime(n: int, a: int) -> bool:
    d = n - 1
    r = (d & -d).bit_length() - 1
    d >>= r
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _is_prime_unchecked(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    if n < 41 * 41:
        return True
    witnesses = _WITNESSES_SMALL if n < _WITNESS_BOUND else _WITNESSES_LARGE
    return all(_strong_probable_prime(n, a) for a in witnesses)


def is_prime(n: int) -> bool:
    """Deterministic primality test for 2 <= n < 2^127.

    Inputs outside that range raise RangeError rather than answering.
    """
    if not isinstance(n, int):
        raise DomainError(f"is_prime expects an integer, got {type(n).__name__}")
    if n < 2 or n >= WIDTH_BOUND:
        raise RangeError(f"is_prime requires 2 <= n < 2^127, got {n}")
    return _is_prime_unchecked(n)


def _pollard_pm1(n: int, bound: int = 100_000, base: int = 2) -> int | None:
    """Pollard p-1 stage 1.  Cheap, and very effective on numbers whose
    prime factors p have smooth p-1 (cyclotomic values are full of them)."""
    a = base % n
    if math.gcd(a, n) != 1:
        g = math.gcd(a, n)
        return g if 1 < g < n else None
    for p in small_primes():
        if p > bound:
            break
        pk = p
        while pk * p <= bound:
            pk *= p
        a = pow(a, pk, n)
        if a == 1:
            return None
    g = math.gcd(a - 1, n)
    if 1 < g < n:
        return g
    return None


def _brent_rho(n: int, c: int, max_iter: int = 1 << 34) -> int | None:
    """Brent's cycle-finding rho with batched gcd.  f(x) = x^2 + c mod n.

    Deterministic for fixed (n, c); returns a nontrivial factor or None.
    """
    if n % 2 == 0:
        return 2
    y, m = 2, 128
    g, r, q = 1, 1, 1
    x = ys = y
    count = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
            count += m
            if count > max_iter:
                return None
        r <<= 1
    if g == n:
        # backtrack one step at a time from the saved point
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
    return g if g != n else None


def _split(n: int) -> int:
    """Return a nontrivial factor of composite n (trial range exhausted)."""
    f = _pollard_pm1(n)
    if f is not None:
        return f
    # rho parameter derived from the input; incremented on failure
    c = 1 + n % 97
    for attempt in range(64):
        f = _brent_rho(n, c + 2 * attempt)
        if f is not None and f != n:
            return f
    raise RangeError(f"factorization failed for {n} after 64 rho retries")


@dataclass(frozen=True)
class Factorization:
    """Multiset of (prime, exponent) pairs for an exact integer.

    ``factors`` is sorted by prime; the product of prime^exponent equals
    ``abs(value)``.  The empty sequence represents value = +/-1.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.value == 0:
            raise DomainError("zero has no factorization")
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)):
            raise DomainError("factor primes must be strictly increasing")
        if any(e < 1 for _, e in self.factors):
            raise DomainError("factor exponents must be >= 1")
        if self.rebuild() != abs(self.value):
            raise DomainError(f"factors do not rebuild |{self.value}|")

    def rebuild(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return str(self.value)
        sign = "-" if self.value < 0 else ""
        return sign + " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


class FactorCache:
    """Optional on-disk factorization cache.

    One record per line: ``value<TAB>p1^e1 p2^e2 ...``.  Malformed lines are
    skipped with a warning.  New factorizations are appended as computed.
    """

    def __init__(self, path):
        self.path = path
        self._table: dict[int, tuple[tuple[int, int], ...]] = {}
        self._lock = threading.Lock()
        self._load()

    def _load(self):
        try:
            fh = open(self.path, "r", encoding="ascii")
        except FileNotFoundError:
            return
        with fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                parsed = self._parse_line(line)
                if parsed is None:
                    log.warning("%s:%d: malformed cache line skipped: %r",
                                self.path, lineno, line)
                    continue
                value, factors = parsed
                self._table[value] = factors

    @staticmethod
    def _parse_line(line: str) -> tuple[int, tuple[tuple[int, int], ...]] | None:
        parts = line.split("\t")
        if len(parts) != 2:
            return None
        try:
            value = int(parts[0])
            factors = []
            for term in parts[1].split():
                p, _, e = term.partition("^")
                factors.append((int(p), int(e)))
        except ValueError:
            return None
        factors = tuple(factors)
        prod = 1
        for p, e in factors:
            if e < 1 or p < 2:
                return None
            prod *= p**e
        if prod != value or value < 2:
            return None
        return value, factors

    def get(self, value: int) -> tuple[tuple[int, int], ...] | None:
        return self._table.get(value)

    def put(self, value: int, factors: tuple[tuple[int, int], ...]):
        with self._lock:
            if value in self._table:
                return
            self._table[value] = factors
            text = " ".join(f"{p}^{e}" for p, e in factors)
            with open(self.path, "a", encoding="ascii") as fh:
                fh.write(f"{value}\t{text}\n")


_cache: FactorCache | None = None


def configure_cache(path) -> None:
    """Point the module at a factorization cache file (None disables)."""
    global _cache
    _cache = FactorCache(path) if path is not None else None


def factorize(n: int) -> Factorization:
    """Full prime factorization of n, 1 <= |n| < 2^127.

    factorize(1) and factorize(-1) carry the empty factor sequence.
    """
    if n == 0:
        raise DomainError("cannot factorize 0")
    if abs(n) >= WIDTH_BOUND:
        raise RangeError(f"|n| must be < 2^127, got {n}")
    m = abs(n)
    if m == 1:
        return Factorization(n, ())
    if _cache is not None:
        hit = _cache.get(m)
        if hit is not None:
            return Factorization(n, hit)

    counts: dict[int, int] = {}
    for p in small_primes():
        if p * p > m:
            break
        while m % p == 0:
            counts[p] = counts.get(p, 0) + 1
            m //= p
    if m > 1:
        if m < _TRIAL_LIMIT * _TRIAL_LIMIT or _is_prime_unchecked(m):
            counts[m] = counts.get(m, 0) + 1
        else:
            stack = [m]
            while stack:
                v = stack.pop()
                if _is_prime_unchecked(v):
                    counts[v] = counts.get(v, 0) + 1
                    continue
                f = _split(v)
                stack.append(f)
                stack.append(v // f)

    factors = tuple(sorted(counts.items()))
    result = Factorization(n, factors)
    if _cache is not None:
        _cache.put(abs(n), factors)
    return result


def largest_prime_factor(n: int) -> int:
    """P[n]: the largest prime dividing n, with P[+/-1] = 1."""
    if n == 0:
        raise DomainError("P[0] is undefined")
    if abs(n) == 1:
        return 1
    return factorize(n).factors[-1][0]


def euler_phi(n: int) -> int:
    """Euler totient: count of 1 <= k <= n coprime to n."""
    if n < 1:
        raise DomainError(f"euler_phi requires n >= 1, got {n}")
    out = n
    for p, _ in factorize(n).factors:
        out -= out // p
    return out


def moebius(n: int) -> int:
    if n < 1:
        raise DomainError(f"moebius requires n >= 1, got {n}")
    f = factorize(n).factors
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def divisors(n: int) -> list[int]:
    """All positive divisors of n >= 1, ascending."""
    if n < 1:
        raise DomainError(f"divisors requires n >= 1, got {n}")
    divs = [1]
    for p, e in factorize(n).factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


@dataclass(frozen=True)
class PpdResult:
    """Primitive prime divisors of a^d - 1.

    A prime is primitive when it divides a^d - 1 but no a^k - 1 for
    1 <= k < d.  ``largest`` is None exactly when no primitive prime
    exists: (a, d) = (2, 6), or d = 2 with a + 1 a power of two.
    """

    a: int
    d: int
    primitive_primes: tuple[int, ...]
    largest: int | None
    is_zsigmondy_exception: bool


def primitive_prime_divisors(a: int, d: int) -> PpdResult:
    """Primitive prime divisors of a^d - 1, computed from the definition.

    Each prime factor of a^d - 1 is kept iff it divides no a^k - 1 with
    k < d (tested as a^k mod s != 1).
    """
    if a < 2 or d < 2:
        raise DomainError(f"need a >= 2 and d >= 2, got a={a}, d={d}")
    value = a**d - 1
    if value >= WIDTH_BOUND:
        raise RangeError(f"a^d - 1 = {a}^{d} - 1 exceeds 2^127")
    prims = tuple(
        s for s in factorize(value).primes()
        if all(pow(a, k, s) != 1 for k in range(1, d))
    )
    return PpdResult(
        a=a,
        d=d,
        primitive_primes=prims,
        largest=prims[-1] if prims else None,
        is_zsigmondy_exception=not prims,
    )
