"""Flat band of the Lieb lattice and how generic weights remove it."""
from fractions import Fraction

from pergraph.catalog import LIEB_GENERIC, lieb
from pergraph.certify import band_separation_scan
from pergraph.floquet import dispersion, flat_bands
from pergraph.graph import coordinate_projection, enumerate_projections
from pergraph.spectral import band_grid

flat = lieb()
print("uniform Lieb flat bands:", [str(r) for r in flat_bands(dispersion(flat))])

generic = lieb(**LIEB_GENERIC)
print("generic Lieb flat bands:", flat_bands(dispersion(generic)))
for proj in enumerate_projections(generic.dimension):
    fb = flat_bands(dispersion(coordinate_projection(generic, proj)))
    print(f"  projection I={list(proj.kept)} signs={dict(proj.signs)}: {len(fb)} flat band(s)")

grid = band_grid(generic, 16)
for i, (a, b) in enumerate(grid.ranges, 1):
    print(f"  band {i}: [{a:+.4f}, {b:+.4f}]")

# small hopping perturbation of a lattice with distinct potentials
scan = band_separation_scan(lieb(0, 1, 2, 1, 1, 1, 1), [0, Fraction(1, 100), Fraction(1, 10), 1])
print("largest t with disjoint bands:", scan.largest_disjoint)
