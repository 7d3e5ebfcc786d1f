"""Linearized 2-polynomials, their kernels, and the L_b maps of quadratic functions.

For a quadratic f, the square of W(a, b) is 2^n times a signed sum over the
kernel of the GF(2)-linear map L_b defined by
Tr(b (f(x+u) + f(x) + f(u) + f(0))) = Tr(x L_b(u)).
Hence |W(a, b)|^2 is 0 or 2^(n + dim ker L_b).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from .boolfn import Family, FamilyParams, TruthTable, validate_params
from .gf2n import FieldSpec, parity
from .walsh import iter_rows


class NotQuadratic(ValueError):
    pass


@dataclass(frozen=True)
class LinearizedPoly:
    """u -> sum of c * u^(2^e) over ``terms``; exponents are kept mod n and merged."""

    spec: FieldSpec
    terms: tuple[tuple[int, int], ...]

    def __init__(self, spec: FieldSpec, terms):
        merged: dict[int, int] = {}
        for c, e in terms:
            e %= spec.degree
            merged[e] = merged.get(e, 0) ^ c
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "terms", tuple(sorted((c, e) for e, c in merged.items() if c)))

    def __call__(self, u: int) -> int:
        out = 0
        for c, e in self.terms:
            out ^= self.spec.mul(c, self.spec.frobenius(u, e))
        return out

    def evaluate_all(self) -> np.ndarray:
        spec = self.spec
        xs = spec.elements()
        out = np.zeros_like(xs)
        for c, e in self.terms:
            out ^= spec.mul_vec(spec.pow_vec(xs, 1 << e) if e else xs, c)
        return out


@dataclass(frozen=True)
class Gf2Matrix:
    """A GF(2)-linear map on n-bit vectors.

    ``images[j]`` is the image of the j-th basis vector packed into an int,
    i.e. column j of the matrix.
    """

    images: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.images)

    def __matmul__(self, x: int) -> int:
        out = 0
        j = 0
        while x:
            if x & 1:
                out ^= self.images[j]
            x >>= 1
            j += 1
        return out

    def to_array(self) -> np.ndarray:
        n = self.size
        return np.array([[(self.images[j] >> i) & 1 for j in range(n)] for i in range(n)], dtype=np.uint8)

    def rank(self) -> int:
        return self.size - kernel_basis(self.images)[0]


def kernel_basis(images) -> tuple[int, list[int]]:
    """Kernel of the map with the given column images.

    Columns are inserted into an XOR basis keyed by leading bit, each carrying
    a tag of the columns combined into it; a column that reduces to zero
    contributes its tag as a kernel vector.
    """
    pivots: dict[int, tuple[int, int]] = {}
    basis = []
    for j, img in enumerate(images):
        tag = 1 << j
        while img:
            top = img.bit_length() - 1
            if top not in pivots:
                pivots[top] = (img, tag)
                break
            p_img, p_tag = pivots[top]
            img ^= p_img
            tag ^= p_tag
        else:
            basis.append(tag)
    return len(basis), basis


def as_matrix(p: LinearizedPoly) -> Gf2Matrix:
    return Gf2Matrix(tuple(p(1 << j) for j in range(p.spec.degree)))


def kernel(p: LinearizedPoly | Gf2Matrix) -> tuple[int, list[int]]:
    """(nullity, basis) of the kernel; the kernel has 2^nullity elements."""
    m = as_matrix(p) if isinstance(p, LinearizedPoly) else p
    return kernel_basis(m.images)


def span(basis: list[int]) -> list[int]:
    out = [0]
    for v in basis:
        out += [x ^ v for x in out]
    return out


def root_count(p: LinearizedPoly) -> int:
    """Exhaustive count of u with p(u) = 0."""
    return int(np.count_nonzero(p.evaluate_all() == 0))


# ---------------------------------------------------------------------------
# L_b for the binomial families


def _checked(spec: FieldSpec, params: FamilyParams, family: Family) -> FamilyParams:
    if params.family is not family:
        raise ValueError(f"expected {family.value} parameters, got {params.family.value}")
    if not params.validated:
        params = validate_params(params, spec)
    return params


def binomial_shape(params: FamilyParams) -> int:
    """+1 for the shape 2^(-k) + 2^(k+s) (sk = -1 mod 3 or 4), -1 for 2^k + 2^(-k+s)."""
    modulus = 3 if params.family is Family.FAMILY1 else 4
    return 1 if (params.s * params.k) % modulus == modulus - 1 else -1


def lb_family1(spec: FieldSpec, params: FamilyParams, b: int) -> LinearizedPoly:
    """b u^(2^s) + (bu)^(2^-s) + (b alpha)^(2^k) u^(2^(-k+s)) + (b alpha)^(2^(-k-s)) u^(2^(k-s)).

    For the other shape (sk = 1 mod 3) k is replaced by -k.
    """
    params = _checked(spec, params, Family.FAMILY1)
    k = params.k * binomial_shape(params)
    s = params.s
    if b == 0:
        raise ValueError("L_b needs b != 0")
    ba = spec.mul(b, params.alpha)
    return LinearizedPoly(
        spec,
        [
            (b, s),
            (spec.frobenius(b, -s), -s),
            (spec.frobenius(ba, k), -k + s),
            (spec.frobenius(ba, -k - s), k - s),
        ],
    )


def lb_family2(spec: FieldSpec, params: FamilyParams, b: int) -> LinearizedPoly:
    """b u^(2^s) + (bu)^(2^-s) + (b alpha)^(2^(mk)) u^(2^(2k+s)) + (b alpha)^(2^(ik-s)) u^(2^(2k-s))."""
    params = _checked(spec, params, Family.FAMILY2)
    k, s, i, m = params.k, params.s, params.i, params.m
    if b == 0:
        raise ValueError("L_b needs b != 0")
    ba = spec.mul(b, params.alpha)
    return LinearizedPoly(
        spec,
        [
            (b, s),
            (spec.frobenius(b, -s), -s),
            (spec.frobenius(ba, m * k), 2 * k + s),
            (spec.frobenius(ba, i * k - s), 2 * k - s),
        ],
    )


# ---------------------------------------------------------------------------
# Generic quadratic functions


def polar_table(t: TruthTable) -> np.ndarray:
    """D[i, j] = f(e_i + e_j) + f(e_i) + f(e_j) + f(0) on the polynomial basis."""
    f = np.asarray(t.values, dtype=np.int64)
    e = 1 << np.arange(t.n, dtype=np.int64)
    return f[e[:, None] ^ e[None, :]] ^ f[e][:, None] ^ f[e][None, :] ^ f[0]


def _polar_images(polar: np.ndarray, mask: int) -> tuple[int, ...]:
    bits = parity(polar & mask)
    weights = 1 << np.arange(polar.shape[0], dtype=np.int64)
    return tuple(int(v) for v in (bits * weights[:, None]).sum(axis=0))


def lb_generic_quadratic(t: TruthTable, b: int, check_degree: bool = True) -> Gf2Matrix:
    """Matrix of u -> (x -> Tr(b (f(x+u) + f(x) + f(u) + f(0)))) for quadratic f.

    Column j is the linear form attached to u = e_j, written on the basis
    x = e_i. Its kernel is the kernel of L_b.
    """
    if check_degree and t.degree > 2:
        raise NotQuadratic(f"algebraic degree {t.degree} > 2")
    mask = _trace_mask_of(t.spec, b)
    return Gf2Matrix(_polar_images(polar_table(t), mask))


def _trace_mask_of(spec: FieldSpec, b: int) -> int:
    return sum(spec.trace(spec.mul(b, 1 << j)) << j for j in range(spec.degree))


def nullities(t: TruthTable, check_degree: bool = True) -> np.ndarray:
    """dim ker L_b for every b (entry 0 is the zero form, nullity n)."""
    if check_degree and t.degree > 2:
        raise NotQuadratic(f"algebraic degree {t.degree} > 2")
    polar = polar_table(t)
    masks = t.spec.trace_masks()
    out = np.empty(t.spec.size, dtype=np.int64)
    for b in range(t.spec.size):
        out[b] = kernel_basis(_polar_images(polar, int(masks[b])))[0]
    return out


def nullity_histogram(values) -> dict:
    """JSON form emitted by the kernels command (b = 0 excluded by the caller)."""
    counts: dict[str, int] = {}
    for v in sorted(int(x) for x in values):
        counts[str(v)] = counts.get(str(v), 0) + 1
    return {"nullity_counts": counts, "max": max(int(x) for x in values)}


def value_law_violations(t: TruthTable, threads: int = 1) -> list[int]:
    """Nonzero b whose Walsh row breaks |W(a, b)|^2 in {0, 2^(n + nullity(b))}.

    Also requires the row maximum to reach the nonzero value, so the
    nullity fully determines max_a |W(a, b)|.
    """
    nul = nullities(t)
    bad = []
    for bs, rows in iter_rows(t, threads=threads):
        sq = rows.astype(np.int64) ** 2
        target = (1 << (t.n + nul[bs]))[:, None]
        ok = np.all((sq == 0) | (sq == target), axis=1) & (sq.max(axis=1) == target[:, 0])
        bad.extend(int(b) for b in bs[~ok])
    return bad


# ---------------------------------------------------------------------------
# Root bound for sum r_i x^(2^(s i))


def corollary1_check(spec: FieldSpec, s: int, d: int, trials: int, seed: int = 0) -> bool:
    """Random polynomials sum_{i<=d} r_i x^(2^(si)) with r_d != 0 have nullity <= d.

    Needs gcd(s, n) = 1.
    """
    if math.gcd(s, spec.degree) != 1:
        raise ValueError(f"gcd(s, n) = gcd({s}, {spec.degree}) != 1")
    rng = random.Random(seed)
    for _ in range(trials):
        coeffs = [rng.randrange(spec.size) for _ in range(d)] + [rng.randrange(1, spec.size)]
        p = LinearizedPoly(spec, [(c, s * i) for i, c in enumerate(coeffs)])
        if kernel(p)[0] > d:
            return False
    return True
