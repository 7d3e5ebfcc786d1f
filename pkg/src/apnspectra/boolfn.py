"""Quadratic APN families over GF(2^n) as validated parameter sets and truth tables."""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from pathlib import Path

import numpy as np

from .gf2n import FieldSpec, make_field, parity


class Family(str, enum.Enum):
    FAMILY1 = "family1"
    FAMILY2 = "family2"
    FAMILY3 = "family3"
    FAMILY4 = "family4"
    FAMILY5 = "family5"
    GOLD = "gold"
    DILLON = "dillon"
    CUSTOM = "custom"


# x^6 + x^4 + x^3 + x + 1; g is APN only for u a root of this polynomial
DILLON_MINPOLY = 0x5B


class InvalidParameters(ValueError):
    """A family constraint is violated.

    ``constraint`` is a short stable code naming the violated condition,
    e.g. ``"gcd(k,3)=1"``.
    """

    def __init__(self, constraint: str, detail: str = ""):
        self.constraint = constraint
        msg = f"constraint violated: {constraint}"
        super().__init__(f"{msg} ({detail})" if detail else msg)


@dataclass(frozen=True)
class FamilyParams:
    """Parameters of one function instance.

    Monomials are stored after validation in ``terms`` as (coefficient,
    exponent) pairs and ``trace_terms`` as (coefficient, exponent) pairs
    meaning Tr(c * x^e) embedded as the field element 0 or 1.
    Only the fields relevant to ``family`` are used.
    """

    family: Family
    n: int | None = None
    k: int | None = None
    s: int | None = None
    i: int | None = None
    m: int | None = None
    d: int | None = None
    alpha: int | None = None
    beta: int | None = None
    u: int | None = None
    v: int | None = None
    gammas: tuple[int, ...] | None = None
    terms: tuple[tuple[int, int], ...] = ()
    trace_terms: tuple[tuple[int, int], ...] = ()
    strict: bool = True
    validated: bool = field(default=False, compare=False)

    def to_dict(self) -> dict:
        out = {"family": self.family.value}
        for name in ("n", "k", "s", "i", "m", "d", "alpha", "beta", "u", "v"):
            val = getattr(self, name)
            if val is not None:
                out[name] = val
        if self.gammas is not None:
            out["gammas"] = list(self.gammas)
        if self.terms:
            out["terms"] = [list(t) for t in self.terms]
        if self.trace_terms:
            out["trace_terms"] = [list(t) for t in self.trace_terms]
        if not self.strict:
            out["strict"] = False
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "FamilyParams":
        data = dict(data)
        data["family"] = Family(data["family"])
        if "gammas" in data:
            data["gammas"] = tuple(data["gammas"])
        for key in ("terms", "trace_terms"):
            if key in data:
                data[key] = tuple(tuple(t) for t in data[key])
        return cls(**data)


def _fail(cond: bool, constraint: str, detail: str = "") -> None:
    if not cond:
        raise InvalidParameters(constraint, detail)


def _require(p: FamilyParams, *names: str) -> None:
    for name in names:
        if getattr(p, name) is None:
            raise InvalidParameters(f"{name} required", f"{p.family.value} needs {name}")


def validate_params(p: FamilyParams, spec: FieldSpec | None = None) -> FamilyParams:
    """Check the family constraints and fill in derived fields.

    Integer constraints are always checked. Field-valued derived fields
    (alpha from the primitive element, the monomial list) need ``spec``;
    without it only n, i, m are filled in.
    """
    fam = p.family
    if fam is Family.FAMILY1:
        _require(p, "k", "s")
        k, s = p.k, p.s
        n = 3 * k
        _fail(p.n in (None, n), "n=3k", f"n={p.n}, k={k}")
        _fail(k >= 3, "k>=3", f"k={k}")
        _fail(math.gcd(k, 3) == 1, "gcd(k,3)=1", f"k={k}")
        _fail(math.gcd(s, n) == 1, "gcd(s,3k)=1", f"s={s}, 3k={n}")
        i = (s * k) % 3
        m = (-i) % 3
        _fail(p.i is None or p.i % 3 == i, "i=sk mod 3", f"i={p.i}")
        _fail(p.m is None or p.m % 3 == m, "m=-i mod 3", f"m={p.m}")
        p = replace(p, n=n, i=i, m=m)
    elif fam is Family.FAMILY2:
        _require(p, "k", "s")
        k, s = p.k, p.s
        n = 4 * k
        _fail(p.n in (None, n), "n=4k", f"n={p.n}, k={k}")
        _fail(k >= 3, "k>=3", f"k={k}")
        _fail(k % 2 == 1, "k odd", f"k={k}")
        _fail(math.gcd(s, 2 * k) == 1, "gcd(s,2k)=1", f"s={s}, 2k={2 * k}")
        i = (s * k) % 4
        m = 4 - i
        _fail(p.i is None or p.i % 4 == i, "i=sk mod 4", f"i={p.i}")
        _fail(p.m in (None, m), "m=4-i", f"m={p.m}")
        p = replace(p, n=n, i=i, m=m)
    elif fam is Family.FAMILY3:
        _require(p, "k", "s")
        k, s = p.k, p.s
        n = 2 * k
        _fail(p.n in (None, n), "n=2k", f"n={p.n}, k={k}")
        _fail(math.gcd(k, s) == 1, "gcd(k,s)=1", f"k={k}, s={s}")
        if p.strict:
            _fail(k % 2 == 1, "k odd", f"k={k}")
            _fail(s % 2 == 1, "s odd", f"s={s}")
        if p.gammas is not None:
            _fail(len(p.gammas) == k - 1, "len(gammas)=k-1", f"got {len(p.gammas)}")
        p = replace(p, n=n)
    elif fam is Family.FAMILY4:
        _require(p, "n")
        _fail(p.n >= 2, "n>=2", f"n={p.n}")
    elif fam is Family.FAMILY5:
        _require(p, "k", "s")
        k, s = p.k, p.s
        n = 3 * k
        _fail(p.n in (None, n), "n=3k", f"n={p.n}, k={k}")
        _fail(math.gcd(s, n) == 1, "gcd(s,3k)=1", f"s={s}, 3k={n}")
        _fail(math.gcd(3, k) == 1, "gcd(3,k)=1", f"k={k}")
        _fail((k + s) % 3 == 0, "3|(k+s)", f"k+s={k + s}")
        p = replace(p, n=n)
    elif fam is Family.GOLD:
        _require(p, "n", "d")
        _fail(math.gcd(p.d, p.n) == 1, "gcd(d,n)=1", f"d={p.d}, n={p.n}")
    elif fam is Family.DILLON:
        _fail(p.n in (None, 6), "n=6", f"n={p.n}")
        p = replace(p, n=6)
    elif fam is Family.CUSTOM:
        _require(p, "n")
        _fail(bool(p.terms or p.trace_terms), "terms nonempty")
    if spec is None:
        return p
    _fail(spec.degree == p.n, "field degree matches n", f"field n={spec.degree}, n={p.n}")
    return _derive(p, spec)


def _derive(p: FamilyParams, spec: FieldSpec) -> FamilyParams:
    """Fill field-valued parameters and expand to monomials."""
    n, t = p.n, spec.primitive
    fam = p.family

    def e2(j: int) -> int:
        return 1 << (j % n)

    if fam in (Family.FAMILY1, Family.FAMILY2):
        k, s = p.k, p.s
        alpha = spec.pow(t, (1 << k) - 1)
        _fail(p.alpha in (None, alpha), "alpha=t^(2^k-1)", f"alpha={p.alpha}")
        terms = ((1, e2(s) + 1), (alpha, e2(p.i * k) + e2(p.m * k + s)))
        p = replace(p, alpha=alpha, terms=terms)
    elif fam is Family.FAMILY3:
        k, s = p.k, p.s
        alpha = t if p.alpha is None else p.alpha
        beta = t if p.beta is None else p.beta
        gammas = p.gammas if p.gammas is not None else (0,) * (k - 1)
        _fail(spec.is_primitive(alpha), "alpha primitive", f"alpha={alpha}")
        _fail(spec.is_primitive(beta), "beta primitive", f"beta={beta}")
        for g in gammas:
            _fail(spec.in_subfield(g, k), "gamma in GF(2^k)", f"gamma={g}")
        terms = [
            (alpha, e2(s) + 1),
            (spec.frobenius(alpha, k), e2(k + s) + e2(k)),
            (beta, e2(k) + 1),
        ]
        terms += [(g, e2(k + j) + e2(j)) for j, g in enumerate(gammas, start=1)]
        p = replace(p, alpha=alpha, beta=beta, gammas=tuple(gammas), terms=tuple(terms))
    elif fam is Family.FAMILY4:
        p = replace(p, terms=((1, 3),), trace_terms=((1, 9),))
    elif fam is Family.FAMILY5:
        k, s = p.k, p.s
        u = t if p.u is None else p.u
        v = 1 if p.v is None else p.v
        _fail(spec.is_primitive(u), "u primitive", f"u={u}")
        _fail(spec.in_subfield(v, k), "v in GF(2^k)", f"v={v}")
        terms = (
            (u, e2(-k) + e2(k + s)),
            (spec.frobenius(u, k), e2(s) + 1),
            (v, e2(k + s) + e2(s)),
        )
        p = replace(p, u=u, v=v, terms=terms)
    elif fam is Family.GOLD:
        p = replace(p, terms=((1, e2(p.d) + 1),))
    elif fam is Family.DILLON:
        u = dillon_default_u(spec) if p.u is None else p.u
        _fail(spec.is_primitive(u), "u primitive", f"u={u}")
        u11, u13 = spec.pow(u, 11), spec.pow(u, 13)
        terms = ((1, 3), (u11, 5), (u13, 9), (1, 17), (u11, 33), (1, 48))
        p = replace(p, u=u, terms=terms)
    return replace(p, validated=True)


def poly_eval(spec: FieldSpec, poly: int, x: int) -> int:
    """Evaluate a GF(2)[X] polynomial (bitmask) at a field element."""
    out, power = 0, 1
    while poly:
        if poly & 1:
            out ^= power
        power = spec.mul(power, x)
        poly >>= 1
    return out


def dillon_default_u(spec: FieldSpec) -> int:
    """Smallest root of x^6 + x^4 + x^3 + x + 1 in the given GF(2^6)."""
    return next(u for u in range(2, spec.size) if poly_eval(spec, DILLON_MINPOLY, u) == 0)


# ---------------------------------------------------------------------------
# Truth tables


@dataclass(frozen=True, eq=False)
class TruthTable:
    """values[x] = f(x) for every x in GF(2^n), indexed by the integer form of x."""

    spec: FieldSpec
    values: np.ndarray
    params: FamilyParams | None = None

    def __post_init__(self):
        if len(self.values) != self.spec.size:
            raise ValueError(f"truth table length {len(self.values)} != 2^{self.spec.degree}")

    @property
    def n(self) -> int:
        return self.spec.degree

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, x):
        return self.values[x]

    @cached_property
    def degree(self) -> int:
        return algebraic_degree(self)

    # -- serialization -------------------------------------------------------

    def header(self) -> dict:
        return {
            "n": self.n,
            "reduction_poly": hex(self.spec.reduction_poly),
            "primitive": hex(self.spec.primitive),
            "params": self.params.to_dict() if self.params else None,
        }

    def save(self, path: str | Path) -> tuple[Path, Path]:
        """Write ``<path>.bin`` (little-endian uint32 words) and ``<path>.json`` (header)."""
        base = Path(path).with_suffix("")
        bin_path, json_path = base.with_suffix(".bin"), base.with_suffix(".json")
        self.values.astype("<u4").tofile(bin_path)
        json_path.write_text(json.dumps(self.header(), indent=2) + "\n")
        return bin_path, json_path

    @classmethod
    def load(cls, path: str | Path) -> "TruthTable":
        base = Path(path).with_suffix("")
        head = json.loads(base.with_suffix(".json").read_text())
        spec = make_field(head["n"], head["reduction_poly"], int(head["primitive"], 16))
        values = np.fromfile(base.with_suffix(".bin"), dtype="<u4").astype(np.int64)
        params = FamilyParams.from_dict(head["params"]) if head.get("params") else None
        return cls(spec, values, params)

    def to_hex(self) -> str:
        width = (self.n + 3) // 4
        return "\n".join(f"{int(v):0{width}x}" for v in self.values) + "\n"

    @classmethod
    def from_hex(cls, text: str, spec: FieldSpec) -> "TruthTable":
        values = np.array([int(tok, 16) for tok in text.split()], dtype=np.int64)
        return cls(spec, values)


def _monomial_vec(spec: FieldSpec, xs: np.ndarray, coeff: int, e: int) -> np.ndarray:
    if coeff == 0:
        return np.zeros_like(xs)
    return spec.mul_vec(spec.pow_vec(xs, e), coeff)


def build(spec: FieldSpec, p: FamilyParams) -> TruthTable:
    """Evaluate the function at every field element."""
    if p.n is not None and p.n != spec.degree:
        raise InvalidParameters("field degree matches n", f"field n={spec.degree}, n={p.n}")
    if not p.validated:
        p = validate_params(p, spec)
    xs = spec.elements()
    out = np.zeros_like(xs)
    for c, e in p.terms:
        out ^= _monomial_vec(spec, xs, c, e)
    for c, e in p.trace_terms:
        out ^= spec.trace_vec(_monomial_vec(spec, xs, c, e))
    return TruthTable(spec, out, p)


def evaluate(spec: FieldSpec, p: FamilyParams, x: int) -> int:
    """Single-point evaluation with scalar field arithmetic."""
    if p.n is not None and p.n != spec.degree:
        raise InvalidParameters("field degree matches n", f"field n={spec.degree}, n={p.n}")
    if not p.validated:
        p = validate_params(p, spec)
    y = 0
    for c, e in p.terms:
        y ^= spec.mul(c, spec.pow(x, e))
    for c, e in p.trace_terms:
        y ^= spec.trace(spec.mul(c, spec.pow(x, e)))
    return y


def from_function(spec: FieldSpec, fn) -> TruthTable:
    """Truth table of an arbitrary Python callable on ints."""
    values = np.array([fn(x) for x in range(spec.size)], dtype=np.int64)
    return TruthTable(spec, values)


# ---------------------------------------------------------------------------
# Differential and algebraic properties


def differential_uniformity(t: TruthTable, chunk: int | None = None) -> int:
    """max over a != 0 and b of #{x : f(x+a) + f(x) = b}."""
    size = t.spec.size
    f = np.asarray(t.values, dtype=np.int64)
    xs = np.arange(size, dtype=np.int64)
    chunk = chunk or max(1, (1 << 22) // size)
    best = 0
    for start in range(1, size, chunk):
        a = np.arange(start, min(start + chunk, size), dtype=np.int64)[:, None]
        deriv = f[xs[None, :] ^ a] ^ f[None, :]
        # offset each row into its own histogram range
        deriv += np.arange(len(a), dtype=np.int64)[:, None] * size
        best = max(best, int(np.bincount(deriv.ravel(), minlength=len(a) * size).max()))
    return best


def is_apn(t: TruthTable) -> bool:
    return differential_uniformity(t) <= 2


def moebius(bits: np.ndarray) -> np.ndarray:
    """Algebraic normal form of truth tables along the last axis (XOR butterflies)."""
    a = np.array(bits, dtype=np.uint8, copy=True)
    size = a.shape[-1]
    lead = a.shape[:-1]
    h = 1
    while h < size:
        v = a.reshape(*lead, size // (2 * h), 2, h)
        v[..., 1, :] ^= v[..., 0, :]
        h *= 2
    return a


def anf_degree(anf: np.ndarray) -> int:
    """Largest monomial weight with a nonzero ANF coefficient (-1 for the zero function)."""
    idx = np.nonzero(anf)[-1]
    if len(idx) == 0:
        return -1
    return int(np.bitwise_count(idx.astype(np.uint64)).max())


def algebraic_degree(t: TruthTable) -> int:
    """Max algebraic degree over the nonzero components x -> Tr(b f(x)).

    Every component is an XOR of coordinate functions and every coordinate
    function is a component, so the maximum is reached on the n output bits.
    """
    f = np.asarray(t.values, dtype=np.int64)
    coords = ((f[None, :] >> np.arange(t.n)[:, None]) & 1).astype(np.uint8)
    return max(0, anf_degree(moebius(coords)))


def component_degrees(t: TruthTable) -> np.ndarray:
    """Algebraic degree of Tr(b f) for every b (entry 0 is the zero component)."""
    masks = t.spec.trace_masks()
    f = np.asarray(t.values, dtype=np.int64)
    out = np.empty(t.spec.size, dtype=np.int64)
    for b, mask in enumerate(masks):
        out[b] = anf_degree(moebius(parity(f & mask)))
    return out
