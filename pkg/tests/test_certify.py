import json
import random
from fractions import Fraction

import pytest

from pergraph.catalog import (
    LIEB_GENERIC,
    chain,
    decorated_square_spec,
    lieb,
    lieb_flower,
    middle_isthmus_spec,
    random_flower_spec,
    random_isthmus_spec,
    singular_house,
    singular_house_flower,
    two_path_spec,
)
from pergraph.certify import (
    FAILS,
    HOLDS,
    INCONCLUSIVE,
    Certificate,
    Claim,
    band_separation_scan,
    certify_flower_schrodinger,
    certify_isthmus,
    certify_minimally_sparse_sec,
    combine,
    random_trials,
    verify_isthmus_identities,
    verify_parallel_theorem,
)
from pergraph.floquet import isthmus_minors
from pergraph.graph import GraphError, PeriodicGraph, build_isthmus

HOUSE3 = singular_house(3, 0, 3, 2, 2, 1)
HOUSE2 = singular_house(2, 0, 1, 1, 1, 1)


def test_combine_order():
    assert combine([HOLDS, HOLDS]) == HOLDS
    assert combine([HOLDS, INCONCLUSIVE]) == INCONCLUSIVE
    assert combine([INCONCLUSIVE, FAILS, HOLDS]) == FAILS
    assert combine([]) == HOLDS


def test_failing_claim_needs_witness():
    with pytest.raises(ValueError):
        Claim("x", FAILS)
    with pytest.raises(ValueError):
        Claim("x", "maybe", {})


def test_certificate_json_is_stable():
    cert = certify_minimally_sparse_sec(HOUSE3)
    text = cert.to_json()
    assert text == certify_minimally_sparse_sec(HOUSE3).to_json()
    data = json.loads(text)
    assert list(data) == ["certificate", "verdict", "subject", "claims", "provenance"]
    assert data["provenance"]["tolerances"]["residual"] == 1e-10


def test_sec_holds_on_house3():
    cert = certify_minimally_sparse_sec(HOUSE3)
    assert cert.verdict == HOLDS
    assert cert.exit_code == 0
    assert [c.name for c in cert.claims] == [
        "minimally-sparse",
        "no-flat-band",
        "projections-flat-band-free",
        "no-non-corner-critical-family",
        "corner-hessians",
    ]


def test_sec_fails_on_house2_with_witness():
    cert = certify_minimally_sparse_sec(HOUSE2)
    assert cert.verdict == FAILS
    assert cert.exit_code == 1
    wit = cert.claim("no-non-corner-critical-family").witness
    assert wit["I"] == [2] and wit["signs"] == {"z1": -1} and wit["lambda0"] == "0"


def test_sec_generic_lieb_holds():
    assert certify_minimally_sparse_sec(lieb(**LIEB_GENERIC)).verdict == HOLDS


def test_sec_flat_band_lieb_fails():
    cert = certify_minimally_sparse_sec(lieb())
    assert cert.claim("no-flat-band").verdict == FAILS
    assert cert.claim("no-flat-band").witness["roots"][0].exact == 0


def test_sec_not_minimally_sparse():
    g = PeriodicGraph(2, (("x", 0),), ((0, 0, (1, 0), 1), (0, 0, (0, 1), 1), (0, 0, (1, 1), 1)))
    cert = certify_minimally_sparse_sec(g)
    assert cert.claim("minimally-sparse").verdict == FAILS
    assert cert.verdict == FAILS


def test_sec_rejects_disconnected():
    with pytest.raises(GraphError):
        certify_minimally_sparse_sec(PeriodicGraph(1, (("x", 0),), ((0, 0, (2,), 1),)))


def test_sec_threads_match_serial():
    a = certify_minimally_sparse_sec(HOUSE3, threads=4).to_json()
    assert a == certify_minimally_sparse_sec(HOUSE3).to_json()


# isthmus ------------------------------------------------------------------


@pytest.mark.parametrize("spec", [decorated_square_spec(), middle_isthmus_spec(), two_path_spec()])
def test_isthmus_identities_hold(spec):
    cert = verify_isthmus_identities(build_isthmus(spec))
    assert cert.verdict == HOLDS
    assert cert.claim("row-expansion").detail["sign"] == -1
    assert cert.claim("first-partials").detail["sign"] == 1


@pytest.mark.parametrize("seed", range(5))
def test_isthmus_identities_random(seed):
    g = build_isthmus(random_isthmus_spec(random.Random(seed)))
    assert verify_isthmus_identities(g).verdict == HOLDS


def test_wrong_direction_map_is_detected():
    g = build_isthmus(middle_isthmus_spec())
    lay = g.isthmus
    bad = type(lay)(lay.a, lay.m, lay.b, (1, 1))
    tampered = PeriodicGraph(g.dimension, g.vertices, g.edges, bad, g.name)
    cert = verify_isthmus_identities(tampered)
    assert cert.claim("first-partials").verdict == FAILS


def test_isthmus_generic_holds_on_middle_graph():
    cert = certify_isthmus(build_isthmus(middle_isthmus_spec()))
    assert cert.verdict == HOLDS
    assert cert.claim("corner-hessians").verdict == HOLDS


def test_isthmus_equal_potentials_collide_only_outside_tested_range():
    # with V1 = V2 the minors P_2 and Q_1 coincide at two corners, but that
    # pair has r > s and is not part of the genericity condition
    g = build_isthmus(two_path_spec((1, 1)))
    cert = certify_isthmus(g)
    assert cert.claim("isthmus-generic").verdict == HOLDS
    excluded = cert.claim("isthmus-generic").detail["collisionsOutsideTestedRange"]
    assert {tuple(e["corner"]) for e in excluded} == {(1, 1), (-1, -1)}
    assert all((e["r"], e["s"]) == (2, 1) for e in excluded)


def test_isthmus_resultant_oracle():
    # P_2 = V1 + 2x1 - λ and Q_1 = V2 + 2x2 - λ share a root iff V1 + 2x1 = V2 + 2x2
    g = build_isthmus(two_path_spec((1, 5)))
    m = isthmus_minors(g)
    P2 = m.P[2].substitute_sign({1: 1, 2: -1}).to_unipoly()
    Q1 = m.Q[1].substitute_sign({1: 1, 2: -1}).to_unipoly()
    assert P2(3) == 0 and Q1(3) == 0


def test_isthmus_needs_layout():
    with pytest.raises(GraphError):
        certify_isthmus(HOUSE3)


# flowers ------------------------------------------------------------------


def test_flower_without_two_cycles_holds():
    spec = random_flower_spec(random.Random(1), 2, [1, 3, 4], stem_size=1)
    cert = certify_flower_schrodinger(spec)
    assert cert.verdict == HOLDS


def test_flower_with_two_cycle_fails_constructively():
    cert = certify_flower_schrodinger(lieb_flower())
    assert cert.verdict == FAILS
    wit = cert.claim("projections-connected").witness
    assert wit["twoCyclePetal"] == ["u", "v"]
    assert ["v"] in wit["boundedComponents"]


def test_flower_two_cycle_in_one_dimension_is_inconclusive():
    spec = random_flower_spec(random.Random(2), 1, [2, 3])
    assert certify_flower_schrodinger(spec).verdict == INCONCLUSIVE


def test_singular_house_flower_fails():
    assert certify_flower_schrodinger(singular_house_flower(3, 0, 3, 2, 2, 1)).verdict == FAILS


# parallel -----------------------------------------------------------------


def test_parallel_chain_holds():
    cert = verify_parallel_theorem(chain(), 1, n=16, n_extended=16)
    assert cert.verdict == HOLDS


def test_parallel_house3_holds():
    cert = verify_parallel_theorem(HOUSE3, Fraction(1, 2), n=32, n_extended=16)
    assert cert.claim("dispersion-shift").verdict == HOLDS
    assert cert.claim("nondegenerate-fibers").verdict == HOLDS
    assert cert.verdict == HOLDS


def test_parallel_rejects_zero_weight():
    with pytest.raises(GraphError):
        verify_parallel_theorem(HOUSE3, 0)


# scan and trials ----------------------------------------------------------


def test_band_separation_scan():
    rep = band_separation_scan(lieb(0, 1, 2, 1, 1, 1, 1), [0, Fraction(1, 100), 1])
    assert rep.rows[0]["disjoint"]
    assert not rep.rows[-1]["disjoint"]
    assert rep.largest_disjoint == Fraction(1, 100)


def test_band_separation_scan_needs_distinct_potentials():
    with pytest.raises(GraphError):
        band_separation_scan(lieb(), [1])


def test_random_trials_are_seeded():
    run = lambda: random_trials(HOUSE3, certify_minimally_sparse_sec, 3, seed=7).to_json()
    a = run()
    assert a == run()
    cert = Certificate("x", {}, [], seed=7)
    assert cert.verdict == HOLDS
