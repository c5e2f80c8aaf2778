"""Arithmetic in the finite field F_q, q = p^k.

Elements are plain ints in ``range(q)``.  For k = 1 an element is its
residue mod p; for k > 1 the element a_0 + a_1 t + ... + a_{k-1} t^{k-1}
is packed as a_0 + a_1 p + ... + a_{k-1} p^{k-1}.  The field is built as
F_p[t] / (m(t)) where m is the lexicographically least monic irreducible
of degree k, comparing (a_{k-1}, ..., a_0).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import DivisionByZero, NotPrime, TooLarge

DEFAULT_LIMIT = 2**16
TABLE_LIMIT = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, k) with q = p**k, or None if q is not a prime power."""
    if q < 2:
        return None
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    k = 0
    m = q
    while m % p == 0:
        m //= p
        k += 1
    return (p, k) if m == 1 else None


# -- polynomials over F_p, coefficient lists low degree first ---------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m."""
    a = _trim(list(a))
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _is_irreducible(m: list[int], p: int) -> bool:
    k = len(m) - 1
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _polymod(m, list(low) + [1], p):
                return False
    return True


def canonical_modulus(p: int, k: int) -> tuple[int, ...]:
    """Least monic irreducible of degree k over F_p, low degree first.

    Empty for k = 1 (the prime field needs no modulus).
    """
    if k == 1:
        return ()
    for high_first in itertools.product(range(p), repeat=k):
        m = list(reversed(high_first)) + [1]
        if _is_irreducible(m, p):
            return tuple(m)
    raise AssertionError(f"no irreducible polynomial of degree {k} over F_{p}")


@dataclass(frozen=True)
class FieldSpec:
    p: int
    k: int
    q: int
    modulus: tuple[int, ...]
    _add: list = field(default=None, repr=False, compare=False)
    _mul: list = field(default=None, repr=False, compare=False)
    _neg: list = field(default=None, repr=False, compare=False)
    _inv: list = field(default=None, repr=False, compare=False)

    def __hash__(self) -> int:
        return hash((self.p, self.k))

    @property
    def elements(self) -> range:
        return range(self.q)

    # -- raw arithmetic (used to build tables, and directly above TABLE_LIMIT)

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def _pack(self, digits: list[int]) -> int:
        v = 0
        for d in reversed(digits):
            v = v * self.p + d
        return v

    def _raw_add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return self._pack([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def _raw_neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        return self._pack([-x % self.p for x in self._digits(a)])

    def _raw_mul(self, a: int, b: int) -> int:
        p = self.p
        if self.k == 1:
            return a * b % p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        r = _polymod(prod, list(self.modulus), p)
        return self._pack(r + [0] * (self.k - len(r)))

    def _raw_pow(self, a: int, m: int) -> int:
        result, base = 1, a
        while m:
            if m & 1:
                result = self._raw_mul(result, base)
            base = self._raw_mul(base, base)
            m >>= 1
        return result

    # -- public arithmetic --------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self._add is not None:
            return self._add[a][b]
        return self._raw_add(a, b)

    def neg(self, a: int) -> int:
        if self._neg is not None:
            return self._neg[a]
        return self._raw_neg(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul is not None:
            return self._mul[a][b]
        return self._raw_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of 0 in F_%d" % self.q)
        if self._inv is not None:
            return self._inv[a]
        # a^(q-2) = a^-1 in the multiplicative group of order q-1
        return self._raw_pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, m: int) -> int:
        if m < 0:
            raise ValueError("negative exponent")
        if a == 0:
            return 1 if m == 0 else 0
        if self._mul is not None:
            result, base = 1, a
            while m:
                if m & 1:
                    result = self._mul[result][base]
                base = self._mul[base][base]
                m >>= 1
            return result
        return self._raw_pow(a, m)

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> F_p -> F_q."""
        return n % self.p

    def __str__(self) -> str:
        if self.k == 1:
            return f"F_{self.q}"
        terms = []
        for i in range(self.k, -1, -1):
            c = self.modulus[i]
            if c == 0:
                continue
            mono = "1" if i == 0 else ("t" if i == 1 else f"t^{i}")
            terms.append(mono if c == 1 and i > 0 else (f"{c}" if i == 0 else f"{c}{mono}"))
        return f"F_{self.q} = F_{self.p}[t]/({'+'.join(terms)})"


def _build(p: int, k: int) -> FieldSpec:
    q = p**k
    bare = FieldSpec(p, k, q, canonical_modulus(p, k))
    if q > TABLE_LIMIT:
        return bare
    rng = range(q)
    add = [[bare._raw_add(a, b) for b in rng] for a in rng]
    mul = [[bare._raw_mul(a, b) for b in rng] for a in rng]
    neg = [bare._raw_neg(a) for a in rng]
    inv = [0] * q
    for a in range(1, q):
        row = mul[a]
        inv[a] = row.index(1)
    return FieldSpec(p, k, q, bare.modulus, add, mul, neg, inv)


_cached_build = lru_cache(maxsize=None)(_build)


def make_field(p: int, k: int = 1, limit: int = DEFAULT_LIMIT) -> FieldSpec:
    """Construct F_{p^k}.  Raises NotPrime / TooLarge on bad parameters."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if p**k > limit:
        raise TooLarge(f"q = {p}^{k} exceeds the field size limit {limit}")
    return _cached_build(p, k)


def field_of_order(q: int, limit: int = DEFAULT_LIMIT) -> FieldSpec:
    pk = prime_power(q)
    if pk is None:
        raise NotPrime(f"{q} is not a prime power")
    return make_field(pk[0], pk[1], limit)
