"""Kernels of the linearized maps L_b and the quadratic value law."""

from collections import Counter

from apnspectra import Family, FamilyParams, build, make_field
from apnspectra.boolfn import validate_params
from apnspectra.linearized import (
    LinearizedPoly,
    corollary1_check,
    kernel,
    lb_family1,
    nullities,
    span,
    value_law_violations,
)

F = make_field(6)
p = LinearizedPoly(F, [(1, 2), (1, 0)])  # u^4 + u
nul, basis = kernel(p)
print("ker(u^4 + u) in GF(64):", span(basis), "-> GF(4)")

params = validate_params(FamilyParams(Family.FAMILY1, k=4, s=1))
F12 = make_field(12)
t = build(F12, params)
dims = Counter(kernel(lb_family1(F12, params, b))[0] for b in range(1, F12.size))
print("Family1 n=12 nullities of L_b:", dict(sorted(dims.items())))
print("generic construction agrees:", Counter(nullities(t)[1:].tolist()) == dims)
print("value-law violations:", value_law_violations(t))

# sum r_i x^(2^(si)) has at most 2^d roots when gcd(s, n) = 1
print("root bound n=7 s=3 d=2 over 1000 samples:", corollary1_check(make_field(7), 3, 2, 1000))
