"""Build the quadratic families and check differential uniformity."""

from apnspectra import Family, FamilyParams, build, differential_uniformity, make_field
from apnspectra.boolfn import InvalidParameters, from_function, validate_params

instances = [
    FamilyParams(Family.FAMILY1, k=4, s=1),
    FamilyParams(Family.FAMILY2, k=3, s=5),
    FamilyParams(Family.FAMILY3, k=5, s=1),
    FamilyParams(Family.FAMILY4, n=9),
    FamilyParams(Family.FAMILY5, k=4, s=5),
    FamilyParams(Family.GOLD, n=7, d=2),
    FamilyParams(Family.DILLON),
]

for p in instances:
    p = validate_params(p)
    t = build(make_field(p.n), p)
    print(f"{p.family.value:8s} n={p.n:2d}  degree={t.degree}  uniformity={differential_uniformity(t)}")

# constraints are reported by name
try:
    validate_params(FamilyParams(Family.FAMILY1, k=3, s=1))
except InvalidParameters as exc:
    print("rejected:", exc.constraint)

# x^5 on GF(16) is not APN
F = make_field(4)
print("x^5 on GF(16): uniformity", differential_uniformity(from_function(F, lambda x: F.pow(x, 5))))
