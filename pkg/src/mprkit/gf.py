"""Small finite fields as lookup tables.

Elements of GF(p^a) are integers 0..q-1 encoding polynomial coefficients in
base p, constant term least significant.  The modulus is canonical: monic
degree-a polynomials are scanned in ascending order of their coefficient
sequence read as a base-p integer, and the first irreducible one wins.
Fields are capped at q <= 128, so full operation tables are cheap.
"""

from __future__ import annotations

import threading

import numpy as np

from .cyclotomic import IntPolynomial
from .errors import DomainError, RangeError
from .ntheory import is_prime

FIELD_SIZE_MAX = 128


def _digits(x: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        out.append(x % p)
        x //= p
    return out


def _undigits(d, p: int) -> int:
    v = 0
    for c in reversed(d):
        v = v * p + c
    return v


def _poly_divmod(num, den, p):
    num = list(num)
    dl = len(den) - 1
    inv_lead = pow(den[-1], -1, p)
    quot = [0] * max(len(num) - dl, 0)
    for i in range(len(quot) - 1, -1, -1):
        c = (num[i + dl] * inv_lead) % p
        quot[i] = c
        if c:
            for j, y in enumerate(den):
                num[i + j] = (num[i + j] - c * y) % p
    return quot, num[:dl]


def _is_irreducible(coeffs, p):
    """coeffs: full coefficient list (monic, constant first) over GF(p)."""
    deg = len(coeffs) - 1
    if deg == 1:
        return True
    for low_deg in range(1, deg // 2 + 1):
        for code in range(p**low_deg):
            den = _digits(code, p, low_deg) + [1]
            _, rem = _poly_divmod(coeffs, den, p)
            if not any(rem):
                return False
    return True


class GF:
    """GF(p^a) with precomputed add/mul/neg/inv/frobenius tables."""

    def __init__(self, p: int, a: int):
        if a < 1:
            raise DomainError(f"extension degree must be >= 1, got {a}")
        if not (2 <= p < FIELD_SIZE_MAX + 1 and is_prime(p)):
            raise DomainError(f"characteristic must be prime, got {p}")
        q = p**a
        if q > FIELD_SIZE_MAX:
            raise RangeError(f"field size {q} exceeds the cap {FIELD_SIZE_MAX}")
        self.p = p
        self.a = a
        self.q = q
        self.modulus = self._find_modulus()
        mod_low = list(self.modulus.coefficients[:a])

        add = [[0] * q for _ in range(q)]
        mul = [[0] * q for _ in range(q)]
        for x in range(q):
            xd = _digits(x, p, a)
            for y in range(x, q):
                yd = _digits(y, p, a)
                s = _undigits([(u + v) % p for u, v in zip(xd, yd)], p)
                add[x][y] = add[y][x] = s
                m = self._polmulmod(xd, yd, mod_low)
                mul[x][y] = mul[y][x] = m
        self.add = add
        self.mul = mul
        self.neg = [next(y for y in range(q) if add[x][y] == 0) for x in range(q)]
        inv = [0] * q
        for x in range(1, q):
            inv[x] = next(y for y in range(1, q) if mul[x][y] == 1)
        self.inv = inv
        self.frobenius = [self.power(x, p) for x in range(q)]
        # numpy views for the vectorized orbit engine
        self.np_add = np.array(add, dtype=np.uint8)
        self.np_mul = np.array(mul, dtype=np.uint8)
        self.np_inv = np.array(inv, dtype=np.uint8)

    def _find_modulus(self) -> IntPolynomial:
        if self.a == 1:
            return IntPolynomial((0, 1))  # the polynomial x
        for code in range(self.q):
            cand = _digits(code, self.p, self.a) + [1]
            if _is_irreducible(cand, self.p):
                return IntPolynomial(tuple(cand))
        raise AssertionError("irreducible polynomials of every degree exist")

    def _polmulmod(self, xd, yd, mod_low):
        p, a = self.p, self.a
        prod = [0] * (2 * a - 1)
        for i, u in enumerate(xd):
            if u:
                for j, v in enumerate(yd):
                    prod[i + j] = (prod[i + j] + u * v) % p
        for i in range(2 * a - 2, a - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(a):
                    prod[i - a + j] = (prod[i - a + j] - c * mod_low[j]) % p
        return _undigits(prod[:a], p)

    def power(self, x: int, e: int) -> int:
        out, base = 1, x
        while e:
            if e & 1:
                out = self.mul[out][base]
            base = self.mul[base][base]
            e >>= 1
        return out

    def mult_order(self, x: int) -> int:
        if x == 0:
            raise DomainError("0 has no multiplicative order")
        k, y = 1, x
        while y != 1:
            y = self.mul[y][x]
            k += 1
        return k

    def primitive_element(self) -> int:
        return next(x for x in range(2, self.q) if self.mult_order(x) == self.q - 1)

    def __repr__(self) -> str:
        return f"GF({self.q})"


_field_lock = threading.Lock()
_fields: dict[tuple[int, int], GF] = {}


def build_field(p: int, a: int) -> GF:
    """Construct (or fetch the cached) GF(p^a), p^a <= 128."""
    key = (p, a)
    got = _fields.get(key)
    if got is not None:
        return got
    with _field_lock:
        got = _fields.get(key)
        if got is None:
            got = GF(p, a)
            _fields[key] = got
        return got
