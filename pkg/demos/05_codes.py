"""Weight distributions of the codes C_f, computed three ways."""

from apnspectra import Family, FamilyParams, build, full_spectrum, make_field, spectrum_values
from apnspectra.boolfn import validate_params
from apnspectra.codes import distribution_direct, distribution_from_spectrum, pless_solve, same_distribution


def table(p):
    p = validate_params(p)
    return build(make_field(p.n), p)


gold = table(FamilyParams(Family.GOLD, n=6, d=1))
direct = distribution_direct(gold)
print("Gold n=6 [63, 12] weights:", dict(sorted(direct.counts.items())))
print("from spectrum agrees:", same_distribution(direct, distribution_from_spectrum(gold)))
print("forced by the value set:", same_distribution(direct, pless_solve(6, spectrum_values(full_spectrum(gold)))))

f4 = table(FamilyParams(Family.FAMILY4, n=6))
dillon = table(FamilyParams(Family.DILLON))
print("Family4 n=6 same as Gold:", same_distribution(distribution_direct(f4), direct))
print("Dillon same as Gold:", same_distribution(distribution_direct(dillon), direct))
print("Dillon weights:", dict(sorted(distribution_direct(dillon).counts.items())))
