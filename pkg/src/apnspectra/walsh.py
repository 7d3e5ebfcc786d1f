"""Walsh (Fourier) coefficients, exact spectra, nonlinearity and AB classification."""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .boolfn import TruthTable
from .gf2n import parity


class ParsevalError(ArithmeticError):
    """A Walsh row failed sum(W^2) = 2^(2n); indicates a broken transform."""


@dataclass
class SpectrumHistogram:
    """Multiplicity of every Walsh value over all (a, b) with b != 0."""

    n: int
    counts: dict[int, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def merge(self, other: "SpectrumHistogram") -> "SpectrumHistogram":
        merged = Counter(self.counts)
        merged.update(other.counts)
        return SpectrumHistogram(self.n, dict(merged))

    def check(self) -> None:
        size = 1 << self.n
        assert self.total == size * (size - 1), "histogram total"
        for v in self.counts:
            assert abs(v) <= size and v % 2 == 0, f"bad Walsh value {v}"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "values": [{"v": v, "count": c} for v, c in sorted(self.counts.items()) if c],
            "nl": nonlinearity(self),
            "ab": is_almost_bent(self, self.n),
        }

    @classmethod
    def from_json(cls, data: dict) -> "SpectrumHistogram":
        return cls(data["n"], {int(e["v"]): int(e["count"]) for e in data["values"]})

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["v", "count"])
        for v, c in sorted(self.counts.items()):
            writer.writerow([v, c])
        return buf.getvalue()

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def fwht(a: np.ndarray) -> np.ndarray:
    """In-place unnormalised Walsh-Hadamard transform along the last axis."""
    size = a.shape[-1]
    lead = a.shape[:-1]
    h = 1
    while h < size:
        v = a.reshape(*lead, size // (2 * h), 2, h)
        x = v[..., 0, :].copy()
        y = v[..., 1, :]
        v[..., 0, :] += y
        y *= -1
        y += x
        h *= 2
    return a


def _accumulator(n: int):
    # |W| <= 2^n and partial sums stay within 2^n
    return np.int32 if n <= 16 else np.int64


def walsh_point(t: TruthTable, a: int, b: int) -> int:
    """Sum over x of (-1)^Tr(a x + b f(x)), evaluated directly."""
    spec = t.spec
    xs = spec.elements()
    arg = spec.mul_vec(xs, a) ^ spec.mul_vec(np.asarray(t.values), b)
    bits = spec.trace_vec(arg)
    return int(spec.size - 2 * bits.sum())


def sign_rows(t: TruthTable, bs: np.ndarray, masks: np.ndarray | None = None) -> np.ndarray:
    """(-1)^Tr(b f(x)) for each b in ``bs`` (rows) and every x (columns)."""
    spec = t.spec
    if masks is None:
        masks = spec.trace_masks()
    f = np.asarray(t.values, dtype=np.int64)
    bits = parity(f[None, :] & masks[np.asarray(bs)][:, None])
    return (1 - 2 * bits).astype(_accumulator(t.n))


def walsh_row(t: TruthTable, b: int) -> np.ndarray:
    """Walsh values for fixed b, indexed by character label.

    Entry c is sum over x of (-1)^(Tr(b f(x)) + c.x) with c.x the bitwise
    dot product. Each c equals the trace mask of exactly one a, so the
    multiset of entries is the multiset of W(a, b) over a.
    """
    return fwht(sign_rows(t, [b])[0])


def iter_rows(t: TruthTable, bs=None, chunk: int | None = None, threads: int = 1):
    """Yield (bs_chunk, rows) blocks of Walsh rows; rows[j] is walsh_row(t, bs_chunk[j]).

    Blocks are yielded in increasing order of position in ``bs`` whatever the
    thread count.
    """
    size = t.spec.size
    if bs is None:
        bs = np.arange(1, size, dtype=np.int64)
    bs = np.asarray(bs, dtype=np.int64)
    chunk = chunk or max(1, (1 << 22) // size)
    masks = t.spec.trace_masks()
    blocks = [bs[i : i + chunk] for i in range(0, len(bs), chunk)]

    def work(block):
        return block, fwht(sign_rows(t, block, masks))

    if threads <= 1:
        for block in blocks:
            yield work(block)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        # bounded look-ahead keeps memory at O(threads * chunk * 2^n)
        pending = []
        for block in blocks:
            pending.append(pool.submit(work, block))
            if len(pending) >= 2 * threads:
                yield pending.pop(0).result()
        for fut in pending:
            yield fut.result()


def check_parseval(rows: np.ndarray, n: int) -> None:
    sq = (rows.astype(np.int64) ** 2).sum(axis=-1)
    if not np.all(sq == 1 << (2 * n)):
        raise ParsevalError(f"row sums of squares {np.unique(sq)} != 2^{2 * n}")


def full_spectrum(t: TruthTable, threads: int = 1, verify: bool = True) -> SpectrumHistogram:
    """Exact histogram of W(a, b) over all a and all nonzero b.

    With ``verify`` each row is checked against Parseval's identity.
    """
    n = t.n
    size = 1 << n
    counts = np.zeros(2 * size + 1, dtype=np.int64)
    for _, rows in iter_rows(t, threads=threads):
        if verify:
            check_parseval(rows, n)
        counts += np.bincount((rows + size).ravel(), minlength=2 * size + 1)
    nz = np.nonzero(counts)[0]
    return SpectrumHistogram(n, {int(v) - size: int(counts[v]) for v in nz})


def row_maxima(t: TruthTable, threads: int = 1) -> np.ndarray:
    """max_a |W(a, b)| for every b (entry 0 is the b = 0 row, which is 2^n)."""
    out = np.empty(t.spec.size, dtype=np.int64)
    out[0] = t.spec.size
    for bs, rows in iter_rows(t, threads=threads):
        out[bs] = np.abs(rows).max(axis=1)
    return out


def spectrum_values(h: SpectrumHistogram) -> list[int]:
    return sorted(v for v, c in h.counts.items() if c)


def nonlinearity(h: SpectrumHistogram) -> int:
    if not h.counts:
        raise ValueError("empty spectrum")
    peak = max(abs(v) for v, c in h.counts.items() if c)
    return (1 << (h.n - 1)) - peak // 2


def is_almost_bent(h: SpectrumHistogram, n: int) -> bool:
    if n % 2 == 0:
        return False
    allowed = {0, 1 << ((n + 1) // 2), -(1 << ((n + 1) // 2))}
    return set(spectrum_values(h)) <= allowed


def gold_like_values(n: int) -> list[int]:
    """The Gold x^3 spectrum: {0, +-2^((n+1)/2)} for odd n, {0, +-2^(n/2), +-2^((n+2)/2)} for even n."""
    if n % 2:
        w = 1 << ((n + 1) // 2)
        return [-w, 0, w]
    lo, hi = 1 << (n // 2), 1 << ((n + 2) // 2)
    return [-hi, -lo, 0, lo, hi]
