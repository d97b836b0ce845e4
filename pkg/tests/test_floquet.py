import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pergraph.algebra import LaurentPoly, UniPoly
from pergraph.catalog import (
    bundled_graphs,
    chain,
    lieb,
    linear_g,
    random_flower_spec,
    random_isthmus_spec,
    singular_house,
)
from pergraph.floquet import (
    FloquetMatrix,
    NotMinimallySparse,
    SymmetryError,
    dispersion,
    flat_band_gcd,
    flat_bands,
    floquet_matrix,
    graph_from_matrix,
    is_minimally_sparse,
    isthmus_minors,
    sparse_form,
)
from pergraph.graph import build_flower, build_isthmus


def dense_floquet(g, k):
    """Reference H(k) assembled edge by edge."""
    h = np.diag([float(p) for p in g.potentials]).astype(complex)
    for e in g.edges:
        phase = np.exp(2j * np.pi * np.dot(k, e.shift))
        w = float(e.weight)
        if e.u == e.v:
            h[e.u, e.u] += w * (phase + phase.conjugate())
        else:
            h[e.u, e.v] += w * phase
            h[e.v, e.u] += w * phase.conjugate()
    return h


def random_graphs():
    out = list(bundled_graphs().values())
    rng = random.Random(5)
    for _ in range(6):
        d = rng.randint(1, 3)
        out.append(build_flower(random_flower_spec(rng, d, [rng.randint(1, 3) for _ in range(d + 1)], 1)))
        out.append(build_isthmus(random_isthmus_spec(rng)))
    return out


GRAPHS = random_graphs()


@pytest.mark.parametrize("g", GRAPHS, ids=lambda g: g.name or "random")
def test_numeric_floquet_matches_reference(g):
    rng = np.random.default_rng(0)
    k = rng.random((5, g.dimension))
    h = floquet_matrix(g).numeric()(k)
    for i in range(5):
        np.testing.assert_allclose(h[i], dense_floquet(g, k[i]), atol=1e-12)
        np.testing.assert_allclose(h[i], h[i].conj().T, atol=1e-12)


@pytest.mark.parametrize("g", GRAPHS, ids=lambda g: g.name or "random")
def test_dispersion_is_characteristic_polynomial(g):
    rng = np.random.default_rng(1)
    D = dispersion(g)
    for _ in range(3):
        k = rng.random(g.dimension)
        lam = rng.normal()
        z = np.exp(2j * np.pi * k)
        ref = np.linalg.det(dense_floquet(g, k) - lam * np.eye(g.size))
        assert abs(D.evaluate(z, lam) - ref) <= 1e-9 * max(1.0, abs(ref))


@pytest.mark.parametrize("g", GRAPHS, ids=lambda g: g.name or "random")
def test_dispersion_symmetry(g):
    D = dispersion(g)
    assert D == D.invert_z()
    assert D.lambda_degree == g.size
    assert D.coefficient((0,) * g.dimension, g.size) == (-1) ** g.size


@pytest.mark.parametrize("g", GRAPHS, ids=lambda g: g.name or "random")
def test_graph_from_matrix_roundtrip(g):
    h = floquet_matrix(g)
    back = graph_from_matrix(h)
    assert floquet_matrix(back).entries == h.entries


def test_symmetry_violation_detected():
    z = LaurentPoly.z(1, 1)
    one = LaurentPoly.constant(1, 1)
    zero = LaurentPoly.zero(1)
    bad = FloquetMatrix(((zero, z), (one, zero)), ("a", "b"))
    with pytest.raises(SymmetryError):
        graph_from_matrix(bad)


def test_chain_dispersion():
    # single vertex, loop weight e: v + e(z + 1/z) - λ
    D = dispersion(chain(2, 3))
    assert D == LaurentPoly.zsym(1, 1) * 3 + 2 - LaurentPoly.lam(1)


def test_sparse_form_reconstructs():
    for g in GRAPHS:
        D = dispersion(g)
        if is_minimally_sparse(D):
            assert sparse_form(D).reconstruct() == D


def test_not_minimally_sparse():
    # a diagonal hop z1 z2 produces a mixed monomial
    g = graph_from_matrix(
        FloquetMatrix(
            (
                (LaurentPoly.constant(0, 2), LaurentPoly.constant(1, 2) + LaurentPoly.monomial((1, 1))),
                (LaurentPoly.constant(1, 2) + LaurentPoly.monomial((-1, -1)), LaurentPoly.zsym(1, 2)),
            ),
            ("a", "b"),
        )
    )
    with pytest.raises(NotMinimallySparse) as exc:
        sparse_form(dispersion(g))
    assert sum(map(abs, exc.value.monomial)) >= 2


def test_corner_polynomial_matches_substitution():
    D = dispersion(singular_house(3, 0, 3, 2, 2, 1))
    sf = sparse_form(D)
    for signs in [(1, 1), (1, -1), (-1, 1), (-1, -1)]:
        exact = D.substitute_sign({1: signs[0], 2: signs[1]}).to_unipoly()
        assert sf.corner_polynomial(signs) == exact


def test_flat_band_lieb():
    D = dispersion(lieb(0, 0, 0, 1, 1, 1, 1))
    assert flat_band_gcd(D) == UniPoly.x()
    assert [r.exact for r in flat_bands(D)] == [0]
    assert flat_bands(dispersion(lieb(0, 1, Fraction(-1, 2), 1, Fraction(3, 2), Fraction(1, 2), 2))) == []


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_flat_band_is_constant_eigenvalue(seed):
    # flat bands predicted exactly must appear as an eigenvalue at random k
    rng = random.Random(seed)
    d = rng.randint(1, 2)
    spec = random_flower_spec(rng, d, [rng.randint(1, 3) for _ in range(d + 1)], rng.randint(0, 2))
    g = build_flower(spec)
    roots = flat_bands(dispersion(g))
    k = np.random.default_rng(seed).random(g.dimension)
    ev = np.linalg.eigvalsh(dense_floquet(g, k))
    for r in roots:
        assert np.min(np.abs(ev - float(r))) < 1e-8


def test_isthmus_minors_are_principal():
    g = build_isthmus(random_isthmus_spec(random.Random(3), dimension=2))
    minors = isthmus_minors(g)
    lay = g.isthmus
    D = dispersion(g)
    # minors at the two ends are empty determinants
    assert minors.P[lay.indices[0]] == LaurentPoly.constant(1, g.dimension)
    assert minors.Q[lay.indices[-1]] == LaurentPoly.constant(1, g.dimension)
    for s in lay.indices:
        assert minors.P[s].lambda_degree + minors.Q[s].lambda_degree == D.lambda_degree - 1


def test_linear_g_matrix():
    h = floquet_matrix(linear_g(u=1, v=2, w=3, b=4, c=5, d=6, e=7))
    z = LaurentPoly.z(1, 1)
    assert h[0, 1] == 6 + LaurentPoly.z(1, 1, -1) * 7 or h[0, 1] == 6 + z * 7
    assert h[0, 2] == LaurentPoly.constant(4, 1)
    assert h[1, 1] == LaurentPoly.constant(2, 1)
