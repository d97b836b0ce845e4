from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pergraph.catalog import bundled_graphs, chain, lieb, singular_house
from pergraph.floquet import dispersion, floquet_matrix, sparse_form
from pergraph.graph import parallel_extension
from pergraph.spectral import (
    CornerPoint,
    FlatBandError,
    HermitianError,
    NonSmoothPoint,
    NumericPoly,
    Tolerances,
    algebraic_non_corner_search,
    all_corners,
    band_grid,
    band_values,
    corner_hessian,
    corner_of,
    corner_spectrum,
    cpe_residual,
    hessian_at,
    jacobi_eigvalsh,
    morse_census,
    newton_refine,
    torus_distance,
    witness_bands,
)

HOUSE3 = singular_house(3, 0, 3, 2, 2, 1)
HOUSE2 = singular_house(2, 0, 1, 1, 1, 1)
HOUSE1 = singular_house(1, 0, 1, 1, 1, 1)


def hermitian(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return a + a.conj().T


# Jacobi ----------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.integers(0, 10**6))
def test_jacobi_matches_numpy(n, seed):
    a = hermitian(n, seed)
    np.testing.assert_allclose(jacobi_eigvalsh(a), np.linalg.eigvalsh(a), atol=1e-10 * max(1, np.abs(a).max()))


def test_jacobi_batched_and_degenerate():
    stack = np.stack([hermitian(5, s) for s in range(7)] + [np.eye(5) * 3])
    out = jacobi_eigvalsh(stack)
    assert out.shape == (8, 5)
    np.testing.assert_allclose(out, np.linalg.eigvalsh(stack), atol=1e-11)
    np.testing.assert_allclose(out[-1], 3.0)


def test_jacobi_rejects_non_hermitian():
    with pytest.raises(HermitianError):
        jacobi_eigvalsh(np.array([[0, 1], [0, 0]]))


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 8), st.integers(0, 10**6))
def test_jacobi_invariants(n, seed):
    a = hermitian(n, seed)
    ev = jacobi_eigvalsh(a)
    assert np.all(np.diff(ev) >= 0)
    assert abs(ev.sum() - np.trace(a).real) < 1e-9 * max(1, np.abs(a).max()) * n


# band functions ---------------------------------------------------------


@pytest.mark.parametrize("name,g", bundled_graphs().items())
def test_band_values_match_polynomial_roots(name, g):
    k = np.random.default_rng(2).random((6, g.dimension))
    bands = band_values(g, k)
    roots = NumericPoly(dispersion(g)).roots(k)
    np.testing.assert_allclose(bands, roots, atol=1e-6)
    ref = np.linalg.eigvalsh(floquet_matrix(g).numeric()(k))
    np.testing.assert_allclose(bands, ref, atol=1e-10)


def test_chain_band_closed_form():
    k = np.linspace(0, 1, 9, endpoint=False)[:, None]
    np.testing.assert_allclose(band_values(chain(1, 2), k)[:, 0], 1 + 4 * np.cos(2 * np.pi * k[:, 0]), atol=1e-12)


def test_band_grid_tsv():
    grid = band_grid(HOUSE3, 4)
    assert grid.values.shape == (16, 2)
    lines = grid.to_tsv().splitlines()
    assert lines[0].split("\t") == ["k1", "k2", "band1", "band2"]
    assert len(lines) == 17


# numeric polynomial derivatives -----------------------------------------


@pytest.mark.parametrize("g", [HOUSE3, lieb(0, 1, Fraction(-1, 2), 1, Fraction(3, 2), Fraction(1, 2), 2)])
def test_numeric_derivatives_against_differences(g):
    num = NumericPoly(dispersion(g))
    k = np.array([0.13, 0.71])
    lam = 0.37
    h = 1e-5
    ev = num.evaluate(k, lam, order=2)
    for i in range(2):
        e = np.zeros(2)
        e[i] = h
        fd = (num.evaluate(k + e, lam).value - num.evaluate(k - e, lam).value) / (2 * h)
        assert abs(ev.grad[0, i] - fd[0]) < 1e-5 * max(1, abs(fd[0]))
        fdg = (num.evaluate(k + e, lam).grad - num.evaluate(k - e, lam).grad) / (2 * h)
        np.testing.assert_allclose(ev.hess[0, i], fdg[0], rtol=1e-5, atol=1e-5)
    fdl = (num.evaluate(k, lam + h).value - num.evaluate(k, lam - h).value) / (2 * h)
    assert abs(ev.d_lam[0] - fdl[0]) < 1e-6 * max(1, abs(fdl[0]))


# corners ------------------------------------------------------------------


@pytest.mark.parametrize("name,g", bundled_graphs().items())
def test_corner_pairs_count_and_residual(name, g):
    pairs = corner_spectrum(g)
    assert len(pairs) == 2**g.dimension * g.size
    D = dispersion(g)
    for p in pairs:
        assert max(cpe_residual(D, p.k, p.energy)) < 1e-10


@pytest.mark.parametrize("name,g", bundled_graphs().items())
def test_corner_energies_are_eigenvalues(name, g):
    pairs = corner_spectrum(g)
    for c in all_corners(g.dimension):
        exact = sorted(float(p) for p in pairs if p.corner == c)
        ev = np.linalg.eigvalsh(floquet_matrix(g).numeric()(np.array([float(x) for x in c.k])))
        np.testing.assert_allclose(exact, ev, atol=1e-9)


def test_corner_of():
    assert corner_of([0.0, 0.5]) == CornerPoint((1, -1))
    assert corner_of([1.0 - 1e-12, 0.5]) == CornerPoint((1, -1))
    assert corner_of([0.25, 0.5]) is None
    assert torus_distance([0.99], [0.01]) == pytest.approx(0.02)


def test_non_corner_residual_is_numeric():
    D = dispersion(HOUSE3)
    res = cpe_residual(D, [0.1, 0.2], 0.0)
    assert res.shape == (3,)
    assert res[0] > 0


def test_corner_hessian_agrees_with_band_hessian():
    D = dispersion(HOUSE3)
    for pair in corner_spectrum(D):
        ch = corner_hessian(D, pair)
        assert ch.diagonal and ch.nonsingular
        hr = hessian_at(D, np.array([float(x) for x in pair.k]), float(pair), band_values_fn=lambda k: band_values(HOUSE3, k))
        np.testing.assert_allclose(ch.matrix, hr.matrix, rtol=1e-8, atol=1e-8)
        assert hr.fd_deviation < 1e-4


def test_hessian_rejects_band_crossing():
    # at a flat band crossing ∂D/∂λ vanishes
    g = lieb(0, 0, 0, 1, 1, 1, 1)
    with pytest.raises(NonSmoothPoint):
        hessian_at(dispersion(g), np.array([0.5, 0.5]), 0.0)


# Newton and census ------------------------------------------------------


def test_newton_converges_to_corner():
    pt = newton_refine(dispersion(HOUSE3), np.array([0.02, 0.47]), -0.3)
    assert pt.corner == CornerPoint((1, -1))
    assert pt.residual <= 1e-10


def test_census_house3_is_perfect_morse():
    rep = morse_census(HOUSE3, 64)
    assert rep.total_count == 8
    assert rep.all_at_corners
    assert all(b.perfect_morse for b in rep.bands)
    assert rep.max_fd_deviation < 1e-4


def test_census_finds_line_on_house2():
    rep = morse_census(HOUSE2, 64)
    assert not rep.all_at_corners
    assert [b.index for b in rep.bands if b.non_isolated] == [1]


def test_census_refuses_flat_band():
    with pytest.raises(FlatBandError):
        morse_census(lieb(0, 0, 0, 1, 1, 1, 1), 16)


def test_census_record_is_json_ready():
    import json

    json.dumps(morse_census(HOUSE3, 16).record())


def test_tolerances_as_dict():
    t = Tolerances(residual=1e-9)
    assert t.as_dict()["residual"] == 1e-9
    assert set(t.as_dict()) >= {"eigen", "hermitian", "singular", "max_iter"}


# algebraic search -------------------------------------------------------


def test_non_corner_search_regimes():
    assert algebraic_non_corner_search(sparse_form(dispersion(HOUSE3))) == []
    w2 = algebraic_non_corner_search(sparse_form(dispersion(HOUSE2)))
    assert [(w.kept, w.signs, w.energy.exact) for w in w2] == [((2,), ((1, -1),), 0)]
    assert witness_bands(HOUSE2, w2[0]) == [1]
    w1 = algebraic_non_corner_search(sparse_form(dispersion(HOUSE1)))
    found = {(w.kept, w.signs, w.energy.exact) for w in w1}
    assert found == {((1,), ((2, 1),), 1), ((2,), ((1, -1),), 0)}
    assert sorted(b for w in w1 for b in witness_bands(HOUSE1, w)) == [1, 2]


def test_witness_family_is_critical_everywhere():
    D = dispersion(HOUSE2)
    (w,) = algebraic_non_corner_search(sparse_form(D))
    for free in (0.1, 0.3, 0.77):
        k = w.sample_k(free)
        assert max(cpe_residual(D, k, float(w.energy))) < 1e-12


def test_parallel_census_small_grid():
    g = parallel_extension(HOUSE3, Fraction(1, 2))
    rep = morse_census(g, 16)
    assert rep.total_count == 16
    assert rep.all_at_corners
