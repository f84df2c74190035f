"""Conjugacy-orbit computations in PGL_d(q) beyond the enumeration ceiling.

The groups PGL_3(q) for q >= 5 are far too large to enumerate, but the
normalizer/centralizer index of a prime-order element x only needs
|{k : x^k lies in the conjugacy class of x}|, and the class itself is
reachable by breadth-first closure under conjugation by a generating set.
Matrix batches are processed with numpy lookups into the field tables.

Class coverage: for the index bound to be checked for *every* order-s
element, every cyclic subgroup of order s must be conjugate to <x>.  That
holds whenever the Sylow s-subgroup is cyclic: all Sylows are conjugate and
a cyclic s-group has one subgroup of order s.  The engine certifies this
either by s dividing the group order exactly once, or by exhibiting an
element of full Sylow order; otherwise it refuses rather than under-verify.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .gf import GF, build_field
from .matcensus import (canonical, det, group_order, identity, mat_inverse,
                        matmul)
from .ntheory import factorize

_SEED_SEARCH_CAP = 200_000


def _gl_generators(gf: GF, d: int):
    """A standard generating set of GL_d(q): a primitive-element diagonal,
    the basis cycle, and one transvection."""
    q = gf.q
    omega = gf.primitive_element() if q > 2 else 1
    diag = list(identity(d))
    diag[0] = omega
    cyc = [0] * (d * d)
    for i in range(d):
        cyc[((i + 1) % d) * d + i] = 1
    trans = list(identity(d))
    trans[1] = 1  # entry (0, 1)
    gens = [tuple(diag), tuple(cyc), tuple(trans)]
    gens = [g for g in gens if det(gf, d, g) != 0]
    return gens + [mat_inverse(gf, d, g) for g in gens]


@dataclass
class OrbitEngine:
    """Vectorized conjugacy-class BFS for PGL_d(q)."""

    gf: GF
    d: int

    def __post_init__(self):
        d, q = self.d, self.gf.q
        self.q = q
        self._pow = q ** np.arange(d * d - 1, -1, -1, dtype=np.uint64)
        gens = _gl_generators(self.gf, d)
        self._conj_pairs = [
            (np.array(mat_inverse(self.gf, d, g), dtype=np.uint8).reshape(d, d),
             np.array(g, dtype=np.uint8).reshape(d, d))
            for g in gens
        ]

    # -- batched field linear algebra ------------------------------------

    def _mul_left(self, G, X):
        """C[n,i,j] = sum_k G[i,k] X[n,k,j] over the field."""
        d, MUL, ADD = self.d, self.gf.np_mul, self.gf.np_add
        C = np.empty_like(X)
        for i in range(d):
            acc = MUL[G[i, 0]][X[:, 0, :]]
            for k in range(1, d):
                acc = ADD[acc, MUL[G[i, k]][X[:, k, :]]]
            C[:, i, :] = acc
        return C

    def _mul_right(self, X, G):
        d, MUL, ADD = self.d, self.gf.np_mul, self.gf.np_add
        C = np.empty_like(X)
        for j in range(d):
            acc = MUL[X[:, :, 0], G[0, j]]
            for k in range(1, d):
                acc = ADD[acc, MUL[X[:, :, k], G[k, j]]]
            C[:, :, j] = acc
        return C

    def _canonical(self, X):
        d, INV, MUL = self.d, self.gf.np_inv, self.gf.np_mul
        flat = X.reshape(-1, d * d)
        first = np.argmax(flat != 0, axis=1)
        vals = flat[np.arange(len(flat)), first]
        return MUL[INV[vals][:, None], flat].reshape(-1, d, d)

    def _encode(self, X):
        return (X.reshape(-1, self.d * self.d).astype(np.uint64) * self._pow).sum(axis=1)

    # -- orbit BFS ---------------------------------------------------------

    def conjugacy_class_codes(self, x) -> np.ndarray:
        """Sorted encodings of the full PGL-conjugacy class of x."""
        x0 = np.array(canonical(self.gf, x), dtype=np.uint8).reshape(1, self.d, self.d)
        visited = self._encode(x0)
        frontier = x0
        while len(frontier):
            batches = []
            for gi, g in self._conj_pairs:
                batches.append(self._canonical(self._mul_right(self._mul_left(gi, frontier), g)))
            allb = np.concatenate(batches, axis=0)
            codes = self._encode(allb)
            codes, idx = np.unique(codes, return_index=True)
            fresh = ~np.isin(codes, visited)
            frontier = allb[idx[fresh]]
            visited = np.union1d(visited, codes[fresh])
        return visited

    def power_index(self, x, s: int, class_codes: np.ndarray) -> int:
        """|N(<x>):C(x)| = #{k in (Z/s)* : x^k is conjugate to x}."""
        gf, d = self.gf, self.d
        count = 0
        y = canonical(gf, x)
        for _ in range(1, s):
            code = self._encode(np.array(y, dtype=np.uint8).reshape(1, d, d))
            if np.isin(code, class_codes)[0]:
                count += 1
            y = canonical(gf, matmul(gf, d, y, x))
        return count


def projective_order(gf: GF, d: int, A) -> int:
    ident = identity(d)
    B = canonical(gf, A)
    k, C = 1, B
    while C != ident:
        C = canonical(gf, matmul(gf, d, C, B))
        k += 1
    return k


def find_element_of_order(gf: GF, d: int, target: int, seed: int) -> tuple | None:
    """Deterministic pseudorandom search for a projective element of the
    given order (returns a suitable power of a random invertible matrix)."""
    rng = random.Random(seed)
    q = gf.q
    for _ in range(_SEED_SEARCH_CAP):
        A = tuple(rng.randrange(q) for _ in range(d * d))
        if det(gf, d, A) == 0:
            continue
        A = canonical(gf, A)
        o = projective_order(gf, d, A)
        if o % target == 0:
            B = A
            step = o // target
            for _ in range(step - 1):
                B = canonical(gf, matmul(gf, d, B, A))
            assert projective_order(gf, d, B) == target
            return B
    return None


def _sylow_is_cyclic_certificate(gf: GF, d: int, s: int, valuation: int, seed: int) -> bool:
    """True when the Sylow s-subgroup is certified cyclic, which makes all
    order-s subgroups conjugate (so one class orbit covers every class)."""
    if valuation == 1:
        return True
    witness = find_element_of_order(gf, d, s**valuation, seed)
    return witness is not None


@dataclass(frozen=True)
class BigIndexResult:
    d: int
    q: int
    s: int
    index: int
    class_size: int


def index_bound_targets(d: int, q: int) -> list[int]:
    """Primes s with s != p and gcd(s, q-1) = 1 dividing |PGL_d(q)|."""
    fact = factorize(q).factors
    p = fact[0][0]
    order = group_order("PGL", d, q)
    return [s for s in factorize(order).primes()
            if s != p and (q - 1) % s != 0]


def verify_index_bound_big(d: int, q: int) -> list[BigIndexResult]:
    """Check |N(<x>):C(x)| <= d for every prime-order class in a PGL_d(q)
    too large to enumerate, via per-class orbit BFS.

    For each admissible prime s, one order-s element is found, its full
    conjugacy class is computed, and the index is read off from which
    powers x^k land in the class.  Generators of <x> all produce the same
    realized-power subgroup, and class coverage across distinct subgroups
    is certified via the cyclic-Sylow argument, so this accounts for every
    order-s element of the group.
    """
    fact = factorize(q).factors
    if len(fact) != 1:
        raise DomainError(f"{q} is not a prime power")
    p, a = fact[0]
    gf = build_field(p, a)
    engine = OrbitEngine(gf, d)
    order = group_order("PGL", d, q)
    results = []
    for s in index_bound_targets(d, q):
        valuation = 0
        o = order
        while o % s == 0:
            valuation += 1
            o //= s
        seed = hash(("bigorbit", d, q, s)) & 0x7FFFFFFF
        if not _sylow_is_cyclic_certificate(gf, d, s, valuation, seed):
            raise DomainError(
                f"cannot certify class coverage for s={s} in PGL_{d}({q}): "
                f"Sylow subgroup of order {s}**{valuation} not shown cyclic"
            )
        x = find_element_of_order(gf, d, s, seed)
        if x is None:
            raise AssertionError(f"no element of order {s} found in PGL_{d}({q})")
        codes = engine.conjugacy_class_codes(x)
        index = engine.power_index(x, s, codes)
        if order % len(codes):
            raise AssertionError("class size must divide the group order")
        results.append(BigIndexResult(d=d, q=q, s=s, index=index,
                                      class_size=len(codes)))
    return results
