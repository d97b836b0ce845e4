"""Critical points of the singular house graph in its three regimes.

For each parameter set the exact non-corner search and the numeric Morse
census are run side by side.
"""
from pergraph.catalog import SINGULAR_HOUSE_REGIMES, singular_house
from pergraph.floquet import dispersion, floquet_matrix, sparse_form
from pergraph.spectral import algebraic_non_corner_search, morse_census, witness_bands

for label, params in SINGULAR_HOUSE_REGIMES.items():
    g = singular_house(*params)
    print(f"== {label}  params={params}")
    print("D =", dispersion(g))
    witnesses = algebraic_non_corner_search(sparse_form(dispersion(g)))
    if not witnesses:
        print("exact search: no critical families away from corners")
    h = floquet_matrix(g)
    for w in witnesses:
        print("exact search: family", w.record(), "on bands", witness_bands(h, w))
    print("numeric census:", morse_census(g, n=32).summary())
    print()
