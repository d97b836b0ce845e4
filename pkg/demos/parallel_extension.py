"""Adding a parallel direction shifts the dispersion and preserves corners."""
from fractions import Fraction

from pergraph.catalog import singular_house
from pergraph.certify import verify_parallel_theorem
from pergraph.floquet import dispersion
from pergraph.graph import parallel_extension

base = singular_house(3, 0, 3, 2, 2, 1)
a = Fraction(1, 2)
ext = parallel_extension(base, a)
print("base D     =", dispersion(base))
print("extended D =", dispersion(ext))

cert = verify_parallel_theorem(base, a, n=32, n_extended=16)
for claim in cert.claims:
    print(f"  {claim.name}: {claim.verdict}")
print("verdict:", cert.verdict)
