"""Weight distribution of the code C_f generated by A_f = [x ; f(x)], x != 0.

C_f has length 2^n - 1 and (when A_f has full rank) dimension 2n. Its
codewords are x -> Tr(a x + b f(x)) restricted to nonzero x, and for f(0) = 0
the codeword of (a, b) has weight (2^n - W(a, b)) / 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .boolfn import TruthTable
from .walsh import iter_rows

DIRECT_MAX_N = 8


class CodeError(ValueError):
    """Rank-deficient A_f, oversized direct enumeration, or an unsolvable moment system."""


@dataclass
class WeightDistribution:
    length: int
    dim: int
    counts: dict[int, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def nonzero_weights(self) -> list[int]:
        return sorted(w for w, c in self.counts.items() if w and c)

    def check(self) -> None:
        assert self.total == 1 << self.dim, "codeword count"
        assert all(0 <= w <= self.length for w in self.counts), "weight range"

    def to_json(self, source: str) -> dict:
        return {
            "length": self.length,
            "dim": self.dim,
            "weights": [{"w": w, "count": str(c)} for w, c in sorted(self.counts.items()) if c],
            "source": source,
        }

    @classmethod
    def from_json(cls, data: dict) -> "WeightDistribution":
        return cls(data["length"], data["dim"], {int(e["w"]): int(e["count"]) for e in data["weights"]})


def weight_from_walsh(W: int, n: int) -> int:
    """Weight of the codeword with Walsh value W, i.e. (2^n - W) / 2.

    Counting +1 for the x = 0 term (f(0) = 0) and +-1 for each of the
    2^n - 1 coordinates gives W = 2^n - 2w.
    """
    size = 1 << n
    if abs(W) > size or (size - W) % 2:
        raise ValueError(f"{W} is not a Walsh value for n={n}")
    return (size - W) // 2


def generator_rows(t: TruthTable) -> list[int]:
    """The 2n rows of A_f as ints; bit x-1 holds the entry in column x."""
    n = t.n
    f = np.asarray(t.values, dtype=np.int64)[1:]
    xs = np.arange(1, t.spec.size, dtype=np.int64)
    rows = []
    for col in (xs, f):
        for i in range(n):
            bits = ((col >> i) & 1).astype(np.uint8)
            rows.append(int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little"))
    return rows


def gf2_rank(rows: list[int]) -> int:
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top not in basis:
                basis[top] = r
                break
            r ^= basis[top]
    return len(basis)


def code_rank(t: TruthTable) -> int:
    return gf2_rank(generator_rows(t))


def _require_full_rank(t: TruthTable) -> None:
    rank = code_rank(t)
    if rank != 2 * t.n:
        raise CodeError(f"A_f has rank {rank} < 2n = {2 * t.n}; (a, b) -> codeword is not injective")


def distribution_from_spectrum(t: TruthTable, threads: int = 1) -> WeightDistribution:
    """Weight distribution from the Walsh rows (b != 0) plus the b = 0 words."""
    _require_full_rank(t)
    n = t.n
    size = 1 << n
    if t.values[0] != 0:
        raise CodeError("f(0) != 0: the Walsh/weight correspondence needs f(0) = 0")
    counts = np.zeros(2 * size + 1, dtype=np.int64)
    for _, rows in iter_rows(t, threads=threads):
        counts += np.bincount((rows + size).ravel(), minlength=2 * size + 1)
    out: dict[int, int] = {}
    for idx in np.nonzero(counts)[0]:
        w = weight_from_walsh(int(idx) - size, n)
        out[w] = out.get(w, 0) + int(counts[idx])
    # b = 0: the zero word and 2^n - 1 balanced linear forms
    out[0] = out.get(0, 0) + 1
    out[size // 2] = out.get(size // 2, 0) + size - 1
    return WeightDistribution(size - 1, 2 * n, out)


def distribution_direct(t: TruthTable) -> WeightDistribution:
    """Enumerate all 2^(2n) codewords from the generator rows (Gray-code order)."""
    n = t.n
    if n > DIRECT_MAX_N:
        raise CodeError(f"direct enumeration limited to n <= {DIRECT_MAX_N}, got {n}")
    rows = generator_rows(t)
    if gf2_rank(rows) != 2 * n:
        raise CodeError(f"A_f has rank {gf2_rank(rows)} < 2n = {2 * n}")
    counts: dict[int, int] = {0: 1}
    word = 0
    for g in range(1, 1 << (2 * n)):
        # flip the row at the lowest set bit of g
        word ^= rows[(g & -g).bit_length() - 1]
        w = word.bit_count()
        counts[w] = counts.get(w, 0) + 1
    return WeightDistribution((1 << n) - 1, 2 * n, counts)


def krawtchouk(j: int, w: int, length: int) -> int:
    return sum((-1) ** i * math.comb(w, i) * math.comb(length - w, j - i) for i in range(j + 1))


def _solve_exact(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Unique solution of an overdetermined but consistent system, else CodeError."""
    rows, cols = len(matrix), len(matrix[0])
    aug = [list(r) + [v] for r, v in zip(matrix, rhs)]
    pivot_cols = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        lead = aug[r][c]
        aug[r] = [x / lead for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                factor = aug[i][c]
                aug[i] = [x - factor * y for x, y in zip(aug[i], aug[r])]
        pivot_cols.append(c)
        r += 1
    if len(pivot_cols) < cols:
        raise CodeError("moment system is singular: too many unknown weights")
    if any(aug[i][cols] != 0 for i in range(r, rows)):
        raise CodeError("moment system is inconsistent for this value set")
    return [aug[i][cols] for i in range(cols)]


def pless_solve(n: int, allowed_values) -> WeightDistribution:
    """Weight distribution forced by the Walsh value set of an APN function.

    Unknowns are the multiplicities of the weights induced by the values
    (together with the weight 2^(n-1) of the b = 0 words). The equations are
    the MacWilliams transforms for dual weights 0..4 of a [2^n - 1, 2n] code
    with dual distance >= 5: B_0 = 1, B_1 = B_2 = B_3 = B_4 = 0.
    """
    size = 1 << n
    length, dim = size - 1, 2 * n
    values = sorted(set(int(v) for v in allowed_values))
    if len(values) > 5:
        raise CodeError(f"{len(values)} values given; the moment system determines at most 5")
    weights = {size // 2}
    for v in values:
        if v == size:
            continue
        weights.add(weight_from_walsh(v, n))
    weights.discard(0)
    weights = sorted(weights)
    matrix = [[Fraction(krawtchouk(j, w, length)) for w in weights] for j in range(5)]
    rhs = [Fraction((1 << dim) if j == 0 else 0) - math.comb(length, j) for j in range(5)]
    sol = _solve_exact(matrix, rhs)
    counts = {0: 1}
    for w, a in zip(weights, sol):
        if a.denominator != 1 or a < 0:
            raise CodeError(f"multiplicity of weight {w} is {a}, not a non-negative integer")
        if a:
            counts[w] = int(a)
    return WeightDistribution(length, dim, counts)


def same_distribution(d1: WeightDistribution, d2: WeightDistribution) -> bool:
    if (d1.length, d1.dim) != (d2.length, d2.dim):
        raise CodeError(f"incompatible codes [{d1.length},{d1.dim}] vs [{d2.length},{d2.dim}]")
    strip = lambda d: {w: c for w, c in d.counts.items() if c}  # noqa: E731
    return strip(d1) == strip(d2)


def has_zero_sum_quartet(t: TruthTable) -> bool:
    """True iff distinct a, b, c, d exist with a+b+c+d = 0 and f(a)+f(b)+f(c)+f(d) = 0.

    Two disjoint pairs with equal (x + y, f(x) + f(y)) form such a quartet;
    pairs sharing an element cannot collide.
    """
    f = np.asarray(t.values, dtype=np.int64)
    xs, ys = np.triu_indices(t.spec.size, k=1)
    keys = ((xs ^ ys) << t.n) | (f[xs] ^ f[ys])
    return len(np.unique(keys)) < len(keys)
