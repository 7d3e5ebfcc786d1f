"""Acceptance gate: one test per criterion, each reporting a PASS/FAIL line.

Lines are collected in conftest.ACCEPTANCE_LINES and printed in the pytest
terminal summary; each test also prints its own line (visible with -s).
"""

import contextlib
import json
import time
from pathlib import Path

import numpy as np
import pytest

from apnspectra.boolfn import Family, FamilyParams, build, differential_uniformity, is_apn, validate_params
from apnspectra.cli import RunConfig, cmd_spectrum, random_gammas
from apnspectra.codes import distribution_direct, distribution_from_spectrum, pless_solve, same_distribution
from apnspectra.linearized import (
    LinearizedPoly,
    kernel,
    lb_family1,
    lb_family2,
    nullities,
    value_law_violations,
)
from apnspectra.walsh import check_parseval, full_spectrum, iter_rows, spectrum_values
from apnspectra.gf2n import make_field

from conftest import ACCEPTANCE_LINES

FIXTURES = Path(__file__).parent / "fixtures"

EVEN_12 = [-128, -64, 0, 64, 128]


def expected_values(n):
    """Gold-like value set, written out from the closed forms."""
    if n % 2:
        w = 2 ** ((n + 1) // 2)
        return [-w, 0, w]
    lo, hi = 2 ** (n // 2), 2 ** ((n + 2) // 2)
    return [-hi, -lo, 0, lo, hi]


@contextlib.contextmanager
def criterion(num, title, limit):
    """Time the block; record PASS only if it finished without error within ``limit`` seconds."""
    info = {}
    start = time.perf_counter()
    ok = False
    try:
        yield info
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        within = elapsed <= limit
        status = "PASS" if ok and within else "FAIL"
        detail = f" [{info['detail']}]" if "detail" in info else ""
        note = "" if within else f" (over {limit:g} s budget)"
        line = f"criterion {num:>2}: {status}  {title}  {elapsed:.1f}s{note}{detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
    assert within, f"criterion {num} took {elapsed:.1f} s > {limit} s"


def fresh(family, spec=None, **kw):
    p = validate_params(FamilyParams(Family(family), **kw))
    return build(spec or make_field(p.n), p)


def family3_instances():
    out = []
    for k in (3, 5):
        spec = make_field(2 * k)
        out.append((f"k={k} zero", fresh("family3", spec, k=k, s=1)))
        for seed in (1, 2):
            g = tuple(random_gammas(spec, k, seed))
            assert any(g)
            out.append((f"k={k} seed={seed}", fresh("family3", spec, k=k, s=1, gammas=g)))
    return out


def test_criterion_01_family1_even():
    with criterion(1, "Family1 k=4, s in {1,5,7,11}, n=12 -> {0,+-64,+-128}", 30) as info:
        for s in (1, 5, 7, 11):
            assert spectrum_values(full_spectrum(fresh("family1", k=4, s=s))) == EVEN_12, s
        info["detail"] = "4/4 exact"


@pytest.mark.long
def test_criterion_02_family1_odd():
    with criterion(2, "Family1 k=5, s=1, n=15 -> {0,+-256}", 300) as info:
        h = full_spectrum(fresh("family1", k=5, s=1))
        assert spectrum_values(h) == [-256, 0, 256]
        info["detail"] = "single worker; counts " + ", ".join(f"{v}:{c}" for v, c in sorted(h.counts.items()))


def test_criterion_03_family2():
    with criterion(3, "Family2 k=3, s in {1,5,7,11}, n=12 -> {0,+-64,+-128}", 30) as info:
        for s in (1, 5, 7, 11):
            assert spectrum_values(full_spectrum(fresh("family2", k=3, s=s))) == EVEN_12, s
        info["detail"] = "4/4 exact"


def test_criterion_04_family3():
    with criterion(4, "Family3 n=6, 10 with zero and seeded gammas -> 5 values", 10) as info:
        cases = family3_instances()
        for name, t in cases:
            assert spectrum_values(full_spectrum(t)) == expected_values(t.n), name
        info["detail"] = f"{len(cases)} instances"


def test_criterion_05_family4():
    with criterion(5, "Family4 n=4..12 -> Gold-like value sets", 60) as info:
        for n in range(4, 13):
            assert spectrum_values(full_spectrum(fresh("family4", n=n))) == expected_values(n), n
        info["detail"] = "9/9 exact"


def test_criterion_06_dillon():
    with criterion(6, "Dillon g on GF(2^6): APN, 7 distinct Walsh values", 1) as info:
        t = fresh("dillon")
        du = differential_uniformity(t)
        values = spectrum_values(full_spectrum(t))
        assert du == 2 and len(values) == 7
        info["detail"] = f"u={t.params.u:#x}, values {values}"


def test_criterion_07_kernel_bound():
    with criterion(7, "max |ker L_b| <= 4 for Families 1, 2 at n=12; value law exhaustive", 60) as info:
        worst = 0
        for family, k, builder in (("family1", 4, lb_family1), ("family2", 3, lb_family2)):
            for s in (1, 5, 7, 11):
                t = fresh(family, k=k, s=s)
                generic = nullities(t)
                for b in range(1, t.spec.size):
                    r = kernel(builder(t.spec, t.params, b))[0]
                    assert r == generic[b]
                    worst = max(worst, r)
                assert value_law_violations(t) == []
        assert 2**worst <= 4
        info["detail"] = f"max |K| = {2**worst}, 8 instances, 0 law violations"


def test_criterion_08_apn():
    timings = {}
    with criterion(8, "APN for every instance of criteria 1-5 and Family5 k=4 s=5", 120 + 60) as info:
        instances = [(f"family1 s={s}", fresh("family1", k=4, s=s)) for s in (1, 5, 7, 11)]
        instances += [(f"family2 s={s}", fresh("family2", k=3, s=s)) for s in (1, 5, 7, 11)]
        instances += [(f"family3 {name}", t) for name, t in family3_instances()]
        instances += [(f"family4 n={n}", fresh("family4", n=n)) for n in range(4, 13)]
        instances += [("family5 k=4 s=5", fresh("family5", k=4, s=5))]
        instances += [("family1 k=5 n=15", fresh("family1", k=5, s=1))]
        small = 0.0
        for name, t in instances:
            t0 = time.perf_counter()
            assert is_apn(t), name
            dt = time.perf_counter() - t0
            timings[name] = dt
            if t.n <= 12:
                small += dt
        assert small < 120
        info["detail"] = f"{len(instances)} instances; n<=12 total {small:.1f}s, n=15 {timings['family1 k=5 n=15']:.1f}s"


def test_criterion_09_codes():
    with criterion(9, "coding cross-checks (direct/spectrum/Pless, equality with Gold)", 120) as info:
        checks = 0
        for n in (5, 6, 7, 8):
            gold = fresh("gold", n=n, d=1)
            ref = distribution_direct(gold)
            for t in (gold, fresh("family4", n=n)):
                assert same_distribution(distribution_from_spectrum(t), distribution_direct(t))
                assert same_distribution(distribution_direct(t), ref)
                checks += 2
        gold_dist = {}

        def gold_at(n):
            if n not in gold_dist:
                gold_dist[n] = distribution_from_spectrum(fresh("gold", n=n, d=1))
            return gold_dist[n]

        apn5 = [fresh("family1", k=4, s=s) for s in (1, 5, 7, 11)]
        apn5 += [fresh("family2", k=3, s=s) for s in (1, 5, 7, 11)]
        apn5 += [t for _, t in family3_instances()]
        apn5 += [fresh("family4", n=n) for n in range(4, 13)]
        apn5 += [fresh("family5", k=4, s=5)]
        for t in apn5:
            values = spectrum_values(full_spectrum(t))
            assert len(values) <= 5
            dist = distribution_from_spectrum(t)
            assert same_distribution(pless_solve(t.n, values), dist)
            if t.params.family is not Family.FAMILY5:
                assert same_distribution(dist, gold_at(t.n))
            checks += 2
        dillon = distribution_direct(fresh("dillon"))
        assert not same_distribution(dillon, gold_at(6))
        info["detail"] = f"{checks + 1} comparisons"


def naive_spectrum_counts(t):
    """Histogram of sum_x (-1)^Tr(a x + b f(x)) from the full character table."""
    spec = t.spec
    xs = spec.elements()
    chars = np.stack([1 - 2 * spec.trace_vec(spec.mul_vec(xs, a)) for a in range(spec.size)]).astype(np.int64)
    f = np.asarray(t.values, dtype=np.int64)
    signs = np.stack([1 - 2 * spec.trace_vec(spec.mul_vec(f, b)) for b in range(1, spec.size)], axis=1)
    W = chars @ signs.astype(np.int64)
    vals, counts = np.unique(W, return_counts=True)
    return dict(zip(vals.tolist(), counts.tolist()))


ROOT_BOUND_CONFIGS = [(5, 1, 2), (5, 2, 3), (6, 1, 2), (6, 5, 3), (7, 3, 2), (7, 2, 4),
                     (8, 3, 2), (8, 5, 3), (9, 2, 3), (9, 4, 4), (10, 3, 2), (10, 7, 4)]


def test_criterion_10_properties():
    with criterion(10, "Parseval, FWHT vs naive (n<=8), root bound x1000, basis independence", 300) as info:
        # Parseval on every row of every spectrum the suite computes at n <= 12
        rows_checked = 0
        tables = [fresh("family1", k=4, s=1), fresh("family2", k=3, s=1), fresh("family5", k=4, s=5),
                  fresh("dillon")] + [fresh("family4", n=n) for n in range(4, 13)]
        for t in tables:
            for _, rows in iter_rows(t):
                check_parseval(rows, t.n)
                rows_checked += len(rows)
        # FWHT against the direct character sum
        naive_cases = [fresh("gold", n=n, d=1) for n in range(3, 9)] + [fresh("dillon"), fresh("family3", k=3, s=1)]
        for t in naive_cases:
            assert full_spectrum(t).counts == naive_spectrum_counts(t)
        # root bound for sum r_i x^(2^(si)), exhaustive root counts
        rng = np.random.default_rng(10)
        for n, s, d in ROOT_BOUND_CONFIGS:
            spec = make_field(n)
            for _ in range(1000):
                coeffs = rng.integers(0, spec.size, d + 1).tolist()
                coeffs[-1] = int(rng.integers(1, spec.size))
                p = LinearizedPoly(spec, [(c, s * i) for i, c in enumerate(coeffs)])
                roots = int(np.count_nonzero(p.evaluate_all() == 0))
                assert roots <= 2**d and roots == 2 ** kernel(p)[0]
        # basis independence
        for n, polys in ((6, (0x43, 0x5B)), (8, (0x11B, 0x11D))):
            for fam, kw in (("gold", dict(n=n, d=1)), ("family4", dict(n=n))):
                a, b = (full_spectrum(fresh(fam, make_field(n, q), **kw)).counts for q in polys)
                assert a == b
        info["detail"] = (f"{rows_checked} rows, {len(naive_cases)} naive, "
                          f"{len(ROOT_BOUND_CONFIGS)}x1000 polynomials, 8 basis pairs")


def nullity_predicted_counts(t):
    """Walsh histogram implied by the kernel dimensions of a quadratic f with f(0) = 0.

    A row with nullity r has 2^(n-r) nonzero entries +-2^((n+r)/2) summing
    to 2^n, which fixes how many are positive.
    """
    n = t.n
    counts = {}
    for r in nullities(t)[1:].tolist():
        amp = 2 ** ((n + r) // 2)
        total = 2 ** (n - r)
        plus = (total + 2 ** ((n - r) // 2)) // 2
        for v, c in ((amp, plus), (-amp, total - plus), (0, 2**n - total)):
            counts[v] = counts.get(v, 0) + c
    return {v: c for v, c in counts.items() if c}


def test_criterion_11_family5_probe():
    with criterion(11, "Family5 k=4 s=5 n=12 probe matches archived fixture", 30) as info:
        cfg = RunConfig(command="spectrum", family="family5", params={"k": 4, "s": 5})
        payload, code = cmd_spectrum(cfg)
        payload = json.loads(json.dumps(payload))
        archived = json.loads((FIXTURES / "family5_n12_spectrum.json").read_text())
        assert code == 0 and "matches_theorem" not in payload
        assert payload == archived
        counts = {e["v"]: e["count"] for e in payload["values"]}
        t = fresh("family5", k=4, s=5)
        assert counts == nullity_predicted_counts(t)
        info["detail"] = ", ".join(f"{v}:{c}" for v, c in sorted(counts.items()))
