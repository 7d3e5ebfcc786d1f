"""Arithmetic in GF(2^n), 2 <= n <= 24.

Elements are plain Python ints (or numpy integer arrays for the vectorised
helpers) holding the coefficient vector in the polynomial basis
{1, x, ..., x^(n-1)}: bit i is the coefficient of x^i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

MIN_DEGREE = 2
MAX_DEGREE = 24
# scalar mul/frobenius go through log tables up to this degree
TABLE_DEGREE = 16


class FieldError(ValueError):
    """Bad field construction parameters or an undefined field operation."""


# ---------------------------------------------------------------------------
# GF(2)[x] polynomials as int bitmasks


def clmul(a: int, b: int) -> int:
    """Carryless product of two bit-polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def poly_mulmod(a: int, b: int, m: int) -> int:
    return poly_mod(clmul(a, b), m)


def is_irreducible(poly: int) -> bool:
    """Rabin-style test: no factor of degree <= n/2.

    A degree-n polynomial is reducible iff it shares a factor with
    x^(2^i) - x for some 1 <= i <= n/2.
    """
    n = poly.bit_length() - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if not poly & 1:
        return False
    xp = 0b10
    for _ in range(n // 2):
        xp = poly_mulmod(xp, xp, poly)
        if poly_gcd(poly, xp ^ 0b10) != 1:
            return False
    return True


def smallest_irreducible(n: int) -> int:
    for poly in range((1 << n) | 1, 1 << (n + 1), 2):
        if is_irreducible(poly):
            return poly
    raise FieldError(f"no irreducible polynomial of degree {n}")  # unreachable


def prime_factors(m: int) -> list[int]:
    """Distinct prime factors by trial division."""
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out.append(m)
    return out


def factorize(m: int) -> dict[int, int]:
    out = {}
    for p in prime_factors(m):
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        out[p] = e
    return out


def parse_poly(text: str | int) -> int:
    """Accept a hex string ('0x43' or '43') or an int."""
    if isinstance(text, int):
        return text
    return int(text, 16)


def poly_hex(poly: int) -> str:
    return hex(poly)


# ---------------------------------------------------------------------------
# The field


@dataclass(frozen=True)
class FieldSpec:
    """A concrete GF(2^n) with a fixed reduction polynomial and primitive element.

    Construct with :func:`make_field`; the constructor itself does not validate.
    """

    degree: int
    reduction_poly: int
    primitive: int
    factors: tuple[int, ...] = field(default=(), repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.degree

    @property
    def order(self) -> int:
        """Order of the multiplicative group, 2^n - 1."""
        return (1 << self.degree) - 1

    @property
    def size(self) -> int:
        return 1 << self.degree

    # -- scalar arithmetic --------------------------------------------------

    def mul(self, x: int, y: int) -> int:
        if self.primitive and self.degree <= TABLE_DEGREE:
            if x == 0 or y == 0:
                return 0
            exp, log = self._lists
            return exp[(log[x] + log[y]) % self.order]
        return self.mul_raw(x, y)

    def mul_raw(self, x: int, y: int) -> int:
        """Shift-and-add product, reduced on the fly."""
        r = 0
        poly, top = self.reduction_poly, 1 << self.degree
        while y:
            if y & 1:
                r ^= x
            y >>= 1
            x <<= 1
            if x & top:
                x ^= poly
        return r

    def pow(self, x: int, e: int) -> int:
        if x == 0:
            if e <= 0:
                raise FieldError("0 raised to a non-positive power")
            return 0
        e %= self.order
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, x)
            x = self.mul(x, x)
            e >>= 1
        return r

    def inv(self, x: int) -> int:
        if x == 0:
            raise FieldError("0 has no inverse")
        return self.pow(x, self.order - 1)

    def frobenius(self, x: int, i: int) -> int:
        """x^(2^i), with i taken mod n so negative i is the inverse automorphism."""
        i %= self.degree
        if x and self.primitive and self.degree <= TABLE_DEGREE:
            exp, log = self._lists
            return exp[(log[x] << i) % self.order]
        for _ in range(i):
            x = self.mul(x, x)
        return x

    def trace(self, x: int) -> int:
        t = 0
        y = x
        for _ in range(self.degree):
            t ^= y
            y = self.mul(y, y)
        assert t in (0, 1)
        return t

    def is_primitive(self, x: int) -> bool:
        if x == 0:
            return False
        factors = self.factors or tuple(prime_factors(self.order))
        return all(self.pow(x, self.order // p) != 1 for p in factors)

    def multiplicative_order(self, x: int) -> int:
        if x == 0:
            raise FieldError("0 has no multiplicative order")
        order = self.order
        for p in self.factors or prime_factors(order):
            while order % p == 0 and self.pow(x, order // p) == 1:
                order //= p
        return order

    def in_subfield(self, x: int, k: int) -> bool:
        """True iff x lies in GF(2^k), i.e. x^(2^k) = x. Requires k | n."""
        if self.degree % k:
            raise FieldError(f"GF(2^{k}) is not a subfield of GF(2^{self.degree})")
        return self.frobenius(x, k) == x

    # -- tables and vectorised arithmetic --------------------------------------

    @cached_property
    def exp_table(self) -> np.ndarray:
        """exp_table[j] = t^j for 0 <= j < 2^n - 1, t the primitive element."""
        q = self.order
        block = 1 << ((self.degree + 1) // 2)
        head = np.empty(min(block, q), dtype=np.int64)
        v = 1
        for j in range(len(head)):
            head[j] = v
            v = self.mul_raw(v, self.primitive)
        out = np.empty(q, dtype=np.int64)
        step = v
        scale = 1
        for start in range(0, q, len(head)):
            stop = min(start + len(head), q)
            out[start:stop] = self.mul_vec(head[: stop - start], scale)
            scale = self.mul_raw(scale, step)
        out.flags.writeable = False
        return out

    @cached_property
    def log_table(self) -> np.ndarray:
        """log_table[x] = j with t^j = x; log_table[0] = -1."""
        out = np.full(self.size, -1, dtype=np.int64)
        out[self.exp_table] = np.arange(self.order, dtype=np.int64)
        out.flags.writeable = False
        return out

    @cached_property
    def _lists(self) -> tuple[list[int], list[int]]:
        return self.exp_table.tolist(), self.log_table.tolist()

    @cached_property
    def trace_mask(self) -> int:
        """Bit j = Tr(x^j); then Tr(y) = parity(y & trace_mask)."""
        return sum(self.trace(1 << j) << j for j in range(self.degree))

    def mul_vec(self, xs, c) -> np.ndarray:
        """Elementwise product of an int array with a scalar or another array."""
        xs = np.asarray(xs, dtype=np.int64)
        cs = np.asarray(c, dtype=np.int64)
        acc = np.zeros(np.broadcast(xs, cs).shape, dtype=np.int64)
        for j in range(self.degree):
            bit = (cs >> j) & 1
            acc ^= (xs << j) * bit
        for j in range(2 * self.degree - 2, self.degree - 1, -1):
            acc ^= ((acc >> j) & 1) * (self.reduction_poly << (j - self.degree))
        return acc

    def pow_vec(self, xs, e: int) -> np.ndarray:
        """xs^e elementwise for e > 0 via log/exp tables."""
        if e <= 0:
            raise FieldError("pow_vec needs a positive exponent")
        xs = np.asarray(xs, dtype=np.int64)
        e %= self.order
        logs = self.log_table[xs]
        out = self.exp_table[(logs * e) % self.order]
        return np.where(xs == 0, 0, out)

    def trace_vec(self, xs) -> np.ndarray:
        return parity(np.asarray(xs, dtype=np.int64) & self.trace_mask)

    def trace_masks(self) -> np.ndarray:
        """Row b holds the mask m_b with Tr(b*y) = parity(y & m_b), for every b."""
        bs = np.arange(self.size, dtype=np.int64)
        out = np.zeros(self.size, dtype=np.int64)
        for j in range(self.degree):
            out |= self.trace_vec(self.mul_vec(bs, 1 << j)) << j
        return out

    def elements(self) -> np.ndarray:
        return np.arange(self.size, dtype=np.int64)

    def subfield_elements(self, k: int) -> np.ndarray:
        """All elements of GF(2^k) inside this field."""
        if self.degree % k:
            raise FieldError(f"GF(2^{k}) is not a subfield of GF(2^{self.degree})")
        step = self.order // ((1 << k) - 1)
        nonzero = self.exp_table[::step]
        return np.concatenate(([0], np.sort(nonzero)))


def parity(xs: np.ndarray) -> np.ndarray:
    return (np.bitwise_count(xs) & 1).astype(np.int64)


def add(x, y):
    """Field addition is XOR in characteristic 2."""
    return x ^ y


def make_field(n: int, poly: int | str | None = None, primitive: int | None = None) -> FieldSpec:
    """Build GF(2^n).

    Without ``poly`` the numerically smallest irreducible polynomial of degree
    n is used; without ``primitive`` the numerically smallest primitive
    element is chosen.
    """
    if not isinstance(n, int) or not MIN_DEGREE <= n <= MAX_DEGREE:
        raise FieldError(f"degree must be in [{MIN_DEGREE}, {MAX_DEGREE}], got {n}")
    if poly is None:
        poly = smallest_irreducible(n)
    else:
        poly = parse_poly(poly)
        if poly.bit_length() - 1 != n:
            raise FieldError(f"polynomial {poly:#x} does not have degree {n}")
        if not is_irreducible(poly):
            raise FieldError(f"polynomial {poly:#x} is reducible")
    factors = tuple(prime_factors((1 << n) - 1))
    probe = FieldSpec(n, poly, 0, factors)
    if primitive is None:
        primitive = next(x for x in range(2, 1 << n) if probe.is_primitive(x))
    elif not probe.is_primitive(primitive):
        raise FieldError(f"{primitive:#x} is not primitive in GF(2^{n}) mod {poly:#x}")
    return FieldSpec(n, poly, primitive, factors)


# module-level aliases mirroring the method API


def mul(spec: FieldSpec, x: int, y: int) -> int:
    return spec.mul(x, y)


def pow(spec: FieldSpec, x: int, e: int) -> int:  # noqa: A001
    return spec.pow(x, e)


def frobenius(spec: FieldSpec, x: int, i: int) -> int:
    return spec.frobenius(x, i)


def trace(spec: FieldSpec, x: int) -> int:
    return spec.trace(x)


def is_primitive(spec: FieldSpec, x: int) -> bool:
    return spec.is_primitive(x)
