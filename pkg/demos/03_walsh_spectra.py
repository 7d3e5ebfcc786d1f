"""Exact Walsh spectra via the fast Walsh-Hadamard transform."""

from apnspectra import Family, FamilyParams, build, full_spectrum, make_field, nonlinearity
from apnspectra.boolfn import validate_params
from apnspectra.walsh import is_almost_bent, walsh_point, walsh_row


def show(p):
    p = validate_params(p)
    t = build(make_field(p.n), p)
    h = full_spectrum(t)
    counts = ", ".join(f"{v}:{c}" for v, c in sorted(h.counts.items()))
    print(f"{p.family.value} n={p.n}: {counts}  NL={nonlinearity(h)}  AB={is_almost_bent(h, p.n)}")
    return t


show(FamilyParams(Family.GOLD, n=7, d=1))
show(FamilyParams(Family.FAMILY4, n=8))
t = show(FamilyParams(Family.FAMILY1, k=4, s=1))
show(FamilyParams(Family.DILLON))

# a single row: the transform is indexed by character label, one per a
row = walsh_row(t, 1)
print("row b=1 sum of squares", int((row.astype(int) ** 2).sum()), "= 2^24")
print("W(5, 1) computed directly:", walsh_point(t, 5, 1))
