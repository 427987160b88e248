"""
Finite field arithmetic over GF(p^e) and Gaussian binomial counts.

Elements are plain integers in ``[0, q)``.  For an extension field the
integer ``sum(c_i * p**i)`` encodes the polynomial ``sum(c_i * x**i)`` in
the polynomial basis.  Prime fields use modular arithmetic directly;
extension fields (q in {4, 8, 9}) use q x q lookup tables built once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

# Low-to-high coefficient lists, leading 1 included.
BUILTIN_MODULI = {
    4: (1, 1, 1),  # x^2 + x + 1
    8: (1, 1, 0, 1),  # x^3 + x + 1
    9: (1, 0, 1),  # x^2 + 1
}


class FieldError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _factor_prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1 or not _is_prime(p):
                break
            return p, e
    raise FieldError(f"{q} is not a prime power")


def _poly_mulmod(a: list[int], b: list[int], mod: tuple[int, ...], p: int) -> list[int]:
    e = len(mod) - 1
    prod = [0] * (2 * e - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    # mod is monic, reduce from the top
    for d in range(len(prod) - 1, e - 1, -1):
        c = prod[d]
        if c:
            for k in range(e + 1):
                prod[d - e + k] = (prod[d - e + k] - c * mod[k]) % p
    return prod[:e]


def _digits(x: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        out.append(x % p)
        x //= p
    return out


def _undigits(ds: list[int], p: int) -> int:
    return sum(c * p**i for i, c in enumerate(ds))


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """GF(q) with q = p**e.

    ``modulus`` is the low-to-high coefficient list of the defining monic
    irreducible polynomial, empty when ``e == 1``.  Instances are immutable
    and safe to share.
    """

    p: int
    e: int
    modulus: tuple[int, ...] = ()
    add_table: np.ndarray | None = field(default=None, repr=False)
    mul_table: np.ndarray | None = field(default=None, repr=False)
    neg_table: np.ndarray | None = field(default=None, repr=False)
    inv_table: np.ndarray | None = field(default=None, repr=False)

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def is_prime(self) -> bool:
        return self.e == 1

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.e, self.modulus) == (
            other.p,
            other.e,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        return f"GF({self.q})"

    # scalar arithmetic -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        return int(self.neg_table[a])

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        if a % self.q == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.q})")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        if self.e == 1:
            return pow(a, n, self.p)
        result, base = 1, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    # vectorised arithmetic on integer arrays ---------------------------

    def vadd(self, a, b) -> np.ndarray:
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.e == 1:
            return (a + b) % self.p
        return self.add_table[a, b]

    def vmul(self, a, b) -> np.ndarray:
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.e == 1:
            return (a * b) % self.p
        return self.mul_table[a, b]

    def vneg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.e == 1:
            return (-a) % self.p
        return self.neg_table[a]

    def vsum(self, a, axis: int = -1) -> np.ndarray:
        """Field sum of an integer array along ``axis``."""
        a = np.asarray(a, dtype=np.int64)
        if self.e == 1:
            return a.sum(axis=axis) % self.p
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        a = np.moveaxis(a, axis, 0)
        acc = np.zeros(a.shape[1:], dtype=np.int64)
        for row in a:
            acc = self.add_table[acc, row]
        return acc

    def matmul(self, A, B) -> np.ndarray:
        """Matrix product over the field for 2-D integer arrays."""
        A, B = np.asarray(A, dtype=np.int64), np.asarray(B, dtype=np.int64)
        if self.e == 1:
            # chunk the inner dimension so int64 cannot overflow
            step = max(1, (2**62) // max(1, (self.p - 1) ** 2))
            out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
            for s in range(0, A.shape[1], step):
                out = (out + A[:, s : s + step] @ B[s : s + step]) % self.p
            return out
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for k in range(A.shape[1]):
            out = self.add_table[out, self.mul_table[A[:, k, None], B[None, k, :]]]
        return out

    def elements(self) -> range:
        return range(self.q)


def _build_extension(p: int, e: int, modulus: tuple[int, ...]) -> FieldSpec:
    q = p**e
    add = np.zeros((q, q), dtype=np.int64)
    mul = np.zeros((q, q), dtype=np.int64)
    digits = [_digits(x, p, e) for x in range(q)]
    for a in range(q):
        for b in range(q):
            add[a, b] = _undigits([(x + y) % p for x, y in zip(digits[a], digits[b])], p)
            mul[a, b] = _undigits(_poly_mulmod(digits[a], digits[b], modulus, p), p)
    neg = np.array([_undigits([(-x) % p for x in digits[a]], p) for a in range(q)])
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        hits = np.nonzero(mul[a] == 1)[0]
        if len(hits) != 1:
            raise FieldError(f"modulus {modulus} is not irreducible over GF({p})")
        inv[a] = hits[0]
    for t in (add, mul, neg, inv):
        t.setflags(write=False)
    return FieldSpec(p, e, modulus, add, mul, neg, inv)


@lru_cache(maxsize=None)
def gf(q: int) -> FieldSpec:
    """Return the field with ``q`` elements (cached).

    Any prime q is supported; prime powers only for q in {4, 8, 9}.
    """
    p, e = _factor_prime_power(q)
    if e == 1:
        return FieldSpec(p, 1)
    if q not in BUILTIN_MODULI:
        raise FieldError(f"GF({q}) not supported: only primes and q in {sorted(BUILTIN_MODULI)}")
    return _build_extension(p, e, BUILTIN_MODULI[q])


def fe_add(a: int, b: int, spec: FieldSpec) -> int:
    return spec.add(a, b)


def fe_mul(a: int, b: int, spec: FieldSpec) -> int:
    return spec.mul(a, b)


def fe_neg(a: int, spec: FieldSpec) -> int:
    return spec.neg(a)


def fe_inv(a: int, spec: FieldSpec) -> int:
    return spec.inv(a)


def fe_pow(a: int, n: int, spec: FieldSpec) -> int:
    return spec.pow(a, n)


def gaussian_binomial(m: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^m, as an exact integer."""
    if k < 0 or k > m or q < 2:
        raise ValueError("invalid Gaussian binomial arguments")
    num = den = 1
    for i in range(k):
        num *= q**m - q**i
        den *= q**k - q**i
    return num // den


def qint(n: int, q: int) -> int:
    """[n 1]_q = (q^n - 1)/(q - 1); zero for n <= 0."""
    return (q**n - 1) // (q - 1) if n > 0 else 0
