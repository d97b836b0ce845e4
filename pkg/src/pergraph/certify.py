"""Certification pipelines and symbolic identity checks.

Every pipeline returns a `Certificate`: an ordered list of claims, each with
a verdict (holds, fails or inconclusive) and a JSON-ready witness.  Claims
are about the concrete rational labels given, never about generic ones.
"""
from __future__ import annotations

import hashlib
import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from .algebra import LaurentPoly, RootInterval, UniPoly, sylvester_resultant, vanishes_at
from .catalog import random_rational
from .floquet import (
    NotMinimallySparse,
    dispersion,
    dispersion_polynomial,
    flat_band_gcd,
    flat_bands,
    floquet_matrix,
    isthmus_minors,
    isthmus_weights,
    sparse_form,
)
from .graph import (
    FlowerSpec,
    GraphError,
    PeriodicGraph,
    Projection,
    bounded_components,
    build_flower,
    coordinate_projection,
    enumerate_projections,
    graph_signature,
    is_connected,
    parallel_extension,
)
from .spectral import (
    DEFAULT_TOL,
    FlatBandError,
    NumericPoly,
    Tolerances,
    algebraic_non_corner_search,
    all_corners,
    band_grid,
    corner_hessian,
    corner_polynomial,
    cpe_residual,
    morse_census,
    newton_batch,
    torus_distance,
    witness_bands,
)
from .spectral.critical import CornerPair
from .spectral.numeric import TWO_PI

HOLDS, FAILS, INCONCLUSIVE = "holds", "fails", "inconclusive"
EXIT_CODES = {HOLDS: 0, FAILS: 1, INCONCLUSIVE: 2}
TOOL = "pergraph"


def _version() -> str:
    from . import __version__

    return __version__


def combine(verdicts: Iterable[str]) -> str:
    verdicts = list(verdicts)
    if FAILS in verdicts:
        return FAILS
    if INCONCLUSIVE in verdicts:
        return INCONCLUSIVE
    return HOLDS


def jsonable(x: Any) -> Any:
    if isinstance(x, (Fraction, RootInterval, UniPoly)):
        return str(x)
    if isinstance(x, LaurentPoly):
        return x.to_text()
    if isinstance(x, Projection):
        return {"I": list(x.kept), "signs": {f"z{j}": s for j, s in x.signs}}
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, float):
        return float(f"{x:.12g}")
    return x


@dataclass
class Claim:
    name: str
    verdict: str
    witness: Any = None
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in EXIT_CODES:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict != HOLDS and self.witness is None:
            raise ValueError(f"claim {self.name!r} is {self.verdict} without a witness")

    def record(self) -> dict:
        out = {"claim": self.name, "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = jsonable(self.witness)
        if self.detail:
            out["detail"] = jsonable(self.detail)
        return out


@dataclass
class Certificate:
    kind: str
    subject: dict
    claims: list[Claim]
    tolerances: Tolerances = DEFAULT_TOL
    seed: int = 0

    @property
    def verdict(self) -> str:
        return combine(c.verdict for c in self.claims)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def claim(self, name: str) -> Claim:
        for c in self.claims:
            if c.name == name:
                return c
        raise KeyError(name)

    def record(self) -> dict:
        return {
            "certificate": self.kind,
            "verdict": self.verdict,
            "subject": jsonable(self.subject),
            "claims": [c.record() for c in self.claims],
            "provenance": {
                "tool": TOOL,
                "version": _version(),
                "seed": self.seed,
                "tolerances": self.tolerances.as_dict(),
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.record(), indent=2, ensure_ascii=False) + "\n"


def subject_of(g: PeriodicGraph) -> dict:
    digest = hashlib.sha256(graph_signature(g).encode()).hexdigest()[:16]
    return {"graph": g.name or "unnamed", "dimension": g.dimension, "vertices": g.size, "digest": digest}


def _map(fn: Callable, items: Sequence, threads: int | None) -> list:
    if threads and threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _distinct_corner_pairs(D: LaurentPoly) -> list[CornerPair]:
    from .algebra import real_roots

    out = []
    for c in all_corners(D.dim):
        out += [CornerPair(c, r) for r in real_roots(corner_polynomial(D, c))]
    return out


def _corner_hessian_claim(D: LaurentPoly, name: str) -> Claim:
    bad, nonsmooth, checked = [], [], 0
    for pair in _distinct_corner_pairs(D):
        ch = corner_hessian(D, pair)
        checked += 1
        where = {"corner": list(pair.corner.signs), "lambda0": pair.energy}
        if not ch.smooth:
            nonsmooth.append(where)
        elif not ch.diagonal:
            bad.append({**where, "reason": "off-diagonal entry"})
        elif not all(ch.diagonal_nonzero):
            zero = [i + 1 for i, nz in enumerate(ch.diagonal_nonzero) if not nz]
            bad.append({**where, "reason": "zero diagonal entry", "directions": zero})
    detail = {"cornerPairs": checked}
    if bad:
        return Claim(name, FAILS, bad[0], {**detail, "failures": bad})
    if nonsmooth:
        return Claim(name, INCONCLUSIVE, {"nonSmooth": nonsmooth}, detail)
    return Claim(name, HOLDS, None, detail)


# minimally sparse graphs -------------------------------------------------


def certify_minimally_sparse_sec(
    g: PeriodicGraph, tol: Tolerances = DEFAULT_TOL, threads: int | None = None, seed: int = 0
) -> Certificate:
    """Five-stage certificate that all critical points are nondegenerate corners."""
    if not is_connected(g):
        raise GraphError("certification needs a connected periodic graph")
    D = dispersion(g)
    claims = []
    try:
        sf = sparse_form(D)
    except NotMinimallySparse as exc:
        claims.append(Claim("minimally-sparse", FAILS, {"monomial": list(exc.monomial)}))
        skipped = {"skipped": "dispersion polynomial is not minimally sparse"}
        for name in ("no-flat-band", "projections-flat-band-free", "no-non-corner-critical-family", "corner-hessians"):
            claims.append(Claim(name, INCONCLUSIVE, skipped))
        return Certificate("sec-minimally-sparse", subject_of(g), claims, tol, seed)
    claims.append(
        Claim("minimally-sparse", HOLDS, None, {"h": [str(h) for h in sf.h], "dispersion": D.to_text()})
    )

    fb = flat_bands(D)
    gcd = flat_band_gcd(D)
    claims.append(
        Claim("no-flat-band", FAILS if fb else HOLDS, {"gcd": gcd, "roots": fb} if fb else None, {"gcd": gcd})
    )

    def project(p: Projection) -> dict:
        gp = coordinate_projection(g, p)
        Dp = dispersion(gp)
        roots = flat_bands(Dp)
        comps = bounded_components(gp)
        return {
            "projection": p,
            "flatBands": roots,
            "boundedComponents": [[gp.names[i] for i in c] for c in comps],
        }

    proj = _map(project, enumerate_projections(g.dimension), threads)
    corner_hits = []
    for c in all_corners(g.dimension):
        from .algebra import real_roots

        for root in real_roots(corner_polynomial(D, c)):
            for i in range(1, g.dimension + 1):
                if vanishes_at(sf.h[i], root):
                    corner_hits.append({"corner": list(c.signs), "lambda0": root, "h": i})
    flat_proj = [r for r in proj if r["flatBands"]]
    stage3 = {"projections": len(proj), "records": proj, "cornerSpecializations": 2**g.dimension}
    if flat_proj:
        claims.append(Claim("projections-flat-band-free", FAILS, flat_proj[0], stage3))
    elif corner_hits:
        claims.append(Claim("projections-flat-band-free", FAILS, corner_hits[0], stage3))
    else:
        claims.append(Claim("projections-flat-band-free", HOLDS, None, stage3))

    ws = algebraic_non_corner_search(sf)
    h = floquet_matrix(g)
    if ws:
        wit = [{**w.record(), "bands": witness_bands(h, w)} for w in ws]
        claims.append(Claim("no-non-corner-critical-family", FAILS, wit[0], {"witnesses": wit}))
    else:
        claims.append(Claim("no-non-corner-critical-family", HOLDS))

    claims.append(_corner_hessian_claim(D, "corner-hessians"))
    return Certificate("sec-minimally-sparse", subject_of(g), claims, tol, seed)


# isthmus graphs ---------------------------------------------------------


def _at_corner(p: LaurentPoly, signs: dict[int, int]) -> UniPoly:
    return p.substitute_sign(signs).to_unipoly()


def certify_isthmus(g: PeriodicGraph, tol: Tolerances = DEFAULT_TOL, seed: int = 0) -> Certificate:
    """Exact genericity via Sylvester resultants, then corner Hessians."""
    if g.isthmus is None:
        raise GraphError("graph carries no isthmus metadata")
    lay = g.isthmus
    minors = isthmus_minors(g)
    D = dispersion(g)
    collisions, excluded, tested = [], [], 0
    for c in all_corners(g.dimension):
        sub = c.assignments
        Dx = _at_corner(D, sub)
        P = {r: _at_corner(minors.P[r], sub) for r in range(1, lay.m + 1)}
        Q = {s: _at_corner(minors.Q[s], sub) for s in range(1, lay.m + 1)}
        where = list(c.signs)
        for r in range(1, lay.m + 1):
            for s in range(r, lay.m + 1):
                tested += 1
                if sylvester_resultant(P[r], Q[s]) == 0:
                    collisions.append({"corner": where, "r": r, "s": s, "pair": "P_r,Q_s"})
        for r in range(1, lay.m + 1):
            tested += 2
            if sylvester_resultant(P[r], Dx) == 0:
                collisions.append({"corner": where, "r": r, "s": None, "pair": "P_r,D"})
            if sylvester_resultant(Q[r], Dx) == 0:
                collisions.append({"corner": where, "r": None, "s": r, "pair": "Q_s,D"})
            for s in range(1, r):
                if sylvester_resultant(P[r], Q[s]) == 0:
                    excluded.append({"corner": where, "r": r, "s": s})
    detail = {"resultantsTested": tested, "collisionsOutsideTestedRange": excluded}
    claims = []
    if collisions:
        claims.append(Claim("isthmus-generic", FAILS, collisions[0], {**detail, "collisions": collisions}))
        claims.append(Claim("corner-hessians", INCONCLUSIVE, {"skipped": "labels are not generic"}))
    else:
        claims.append(Claim("isthmus-generic", HOLDS, None, detail))
        claims.append(_corner_hessian_claim(D, "corner-hessians"))
    return Certificate("isthmus", subject_of(g), claims, tol, seed)


def _resolve_sign(lhs: LaurentPoly, rhs: LaurentPoly) -> int | None:
    """The sign s in {1, -1} with lhs = s·rhs, read off the λ-leading term."""
    if lhs.is_zero() or rhs.is_zero():
        return 1 if lhs == rhs else None
    (zexp, k), c = lhs.terms()[-1]
    other = rhs.coefficient(zexp, k)
    if other == 0:
        return None
    s = c / other
    if s not in (1, -1):
        return None
    s = int(s)
    return s if lhs == rhs * s else None


def verify_isthmus_identities(g: PeriodicGraph, tol: Tolerances = DEFAULT_TOL, seed: int = 0) -> Certificate:
    """Row expansion, first partials and mixed-partial divisibility, exactly."""
    if g.isthmus is None:
        raise GraphError("graph carries no isthmus metadata")
    lay, d = g.isthmus, g.dimension
    minors = isthmus_minors(g)
    c, E = isthmus_weights(g)
    h = floquet_matrix(g)
    D = dispersion_polynomial(h)
    lam = LaurentPoly.lam(d)
    zero = LaurentPoly.zero(d)
    P = dict(minors.P)
    Q = dict(minors.Q)
    P.setdefault(lay.indices.start - 1, zero)
    Q.setdefault(lay.indices.stop, zero)

    claims = []
    signs, bad = {}, []
    for r in range(1, lay.m + 1):
        p = lay.position(r)
        rhs = (
            P[r - 1] * Q[r] * (c[r - 1] ** 2)
            - P[r] * (h[p, p] - lam) * Q[r]
            + P[r] * Q[r + 1] * (c[r] ** 2)
        )
        s = _resolve_sign(D, rhs)
        signs[r] = s
        if s is None:
            bad.append({"row": r})
    consistent = len({s for s in signs.values()}) == 1
    if bad:
        claims.append(Claim("row-expansion", FAILS, bad[0], {"signs": signs}))
    elif not consistent:
        claims.append(Claim("row-expansion", FAILS, {"signs": signs}))
    else:
        claims.append(Claim("row-expansion", HOLDS, None, {"sign": next(iter(signs.values())), "rows": lay.m}))

    signs, bad = {}, []
    for j in range(1, d + 1):
        r = lay.f[j - 1]
        factor = LaurentPoly.constant(1, d) - LaurentPoly.z(j, d, -2)
        rhs = factor * P[r] * Q[r] * E[j - 1]
        s = _resolve_sign(D.diff(j), rhs)
        signs[j] = s
        if s is None:
            bad.append({"direction": j, "vertex": r})
    if bad:
        claims.append(Claim("first-partials", FAILS, bad[0], {"signs": signs}))
    elif len(set(signs.values())) > 1:
        claims.append(Claim("first-partials", FAILS, {"signs": signs}))
    else:
        claims.append(Claim("first-partials", HOLDS, None, {"sign": next(iter(signs.values()), 1), "directions": d}))

    pairs, bad = [], []
    for i in range(1, d + 1):
        for j in range(i + 1, d + 1):
            if lay.f[i - 1] == lay.f[j - 1]:
                continue
            pairs.append((i, j))
            q = D.diff(i).diff(j)
            for var in (i, j):
                for s in (1, -1):
                    if not q.substitute_sign({var: s}).is_zero():
                        bad.append({"i": i, "j": j, "nonvanishing_at": {f"z{var}": s}})
    if bad:
        claims.append(Claim("mixed-partials", FAILS, bad[0], {"pairs": pairs}))
    else:
        claims.append(Claim("mixed-partials", HOLDS, None, {"pairs": pairs}))
    return Certificate("isthmus-identities", subject_of(g), claims, tol, seed)


# flowers ----------------------------------------------------------------


def schrodinger_labeling(spec: FlowerSpec) -> FlowerSpec:
    """Same flower with every edge weight set to 1."""
    petals = tuple(replace(p, weights=tuple(Fraction(1) for _ in p.weights)) for p in spec.petals)
    stem = tuple((a, b, Fraction(1)) for a, b, _ in spec.stem_edges)
    return replace(spec, petals=petals, stem_edges=stem)


def certify_flower_schrodinger(spec: FlowerSpec, tol: Tolerances = DEFAULT_TOL, seed: int = 0) -> Certificate:
    """Every coordinate projection is connected iff no petal is a 2-cycle.

    With a 2-cycle petal the certificate is constructive: the projection
    fixing that petal's generator to -1 and the bounded component it
    creates.
    """
    spec = schrodinger_labeling(spec)
    g = build_flower(spec, name="flower")
    d = spec.dimension
    claims = []
    two = [p for p in spec.petals if len(p.cycle) == 2]
    if two:
        petal = two[0]
        w = petal.cycle[1]
        j = petal.generator
        if d == 1:
            claims.append(
                Claim(
                    "projections-connected",
                    INCONCLUSIVE,
                    {"twoCyclePetal": list(petal.cycle), "reason": "no proper coordinate projection when d = 1"},
                )
            )
        else:
            p = Projection(tuple(i for i in range(1, d + 1) if i != j), ((j, -1),))
            gp = coordinate_projection(g, p)
            comps = [[gp.names[i] for i in c] for c in bounded_components(gp)]
            roots = flat_bands(dispersion(gp))
            wit = {
                "twoCyclePetal": list(petal.cycle),
                "projection": p,
                "boundedComponents": comps,
                "flatBands": roots,
            }
            ok = any(w in comp for comp in comps)
            if not ok:
                raise RuntimeError("2-cycle projection did not isolate the petal vertex")
            claims.append(Claim("projections-connected", FAILS, wit))
    else:
        bad = []
        projs = enumerate_projections(d)
        for p in projs:
            gp = coordinate_projection(g, p)
            if not is_connected(gp):
                comps = [[gp.names[i] for i in c] for c in bounded_components(gp)]
                bad.append({"projection": p, "boundedComponents": comps})
        if bad:
            claims.append(Claim("projections-connected", FAILS, bad[0], {"failures": bad}))
        else:
            claims.append(Claim("projections-connected", HOLDS, None, {"projections": len(projs)}))
    subject = subject_of(g)
    subject["petalLengths"] = [len(p.cycle) for p in spec.petals]
    return Certificate("flower-schrodinger", subject, claims, tol, seed)


# parallel extensions ----------------------------------------------------


def _fiber(k: np.ndarray, lam: float, a: float, samples: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    t = np.arange(samples) / samples
    K = np.hstack([np.tile(k, (samples, 1)), t[:, None]])
    mu = lam + 2 * a * np.cos(TWO_PI * t)
    return t, K, mu


def _relative_residuals(num: NumericPoly, K: np.ndarray, mu: np.ndarray) -> np.ndarray:
    ev = num.evaluate(K, mu, order=1)
    raw = np.maximum(np.abs(ev.value), np.max(np.abs(ev.grad), axis=1) / TWO_PI)
    return raw / num.scale(mu)


def verify_parallel_theorem(
    g: PeriodicGraph,
    a,
    tol: Tolerances = DEFAULT_TOL,
    n: int | None = None,
    n_extended: int | None = None,
    fiber_samples: int = 256,
    numeric: bool = True,
    threads: int | None = None,
    seed: int = 0,
) -> Certificate:
    a = Fraction(a)
    if a == 0:
        raise GraphError("parallel extension needs a nonzero weight")
    ga = parallel_extension(g, a)
    D = dispersion(g)
    Da = dispersion(ga)
    expected = D.substitute_lambda_shift(a)
    claims = [
        Claim("dispersion-shift", HOLDS if Da == expected else FAILS,
              None if Da == expected else {"difference": Da - expected})
    ]
    subject = {**subject_of(g), "a": a}
    if not numeric:
        return Certificate("parallel", subject, claims, tol, seed)

    num = NumericPoly(D)
    num_a = NumericPoly(Da)
    af = float(a)

    # (2) critical points of the extension project to critical points
    try:
        rep_a = morse_census(ga, n_extended, tol, threads)
    except FlatBandError as exc:
        rep_a = None
        claims.append(Claim("projection-critical", INCONCLUSIVE, {"flatBand": exc.roots}))
    if rep_a is not None:
        pts = rep_a.points + rep_a.nonsmooth
        bad = []
        for p in pts:
            k = np.array(p.k)
            lam = p.energy - 2 * af * np.cos(TWO_PI * k[-1])
            r = _relative_residuals(num, k[None, :-1], np.array([lam]))[0]
            if r <= tol.residual:
                continue
            # polish on the base graph: the image must sit on a critical point
            pol = newton_batch(num, k[None, :-1], [lam], tol)
            moved = max(float(torus_distance(pol.k[0], k[:-1])), abs(pol.lam[0] - lam) / max(1.0, abs(lam)))
            if not pol.converged[0] or moved > tol.dedup:
                bad.append({"k": list(p.k), "mu": p.energy, "relativeResidual": r, "polishDistance": moved})
        census = {
            "points": rep_a.total_count,
            "corners": sum(q.corner is not None for q in pts),
            "allAtCorners": rep_a.all_at_corners,
            "perfectMorse": [b.perfect_morse for b in rep_a.bands],
            "grid": rep_a.resolution,
        }
        claims.append(
            Claim("projection-critical", FAILS if bad else HOLDS, bad[0] if bad else None, {"census": census})
        )

    # (3) and (4) need the critical points of the base graph
    try:
        rep = morse_census(g, n, tol, threads)
    except FlatBandError as exc:
        rep = None
        for name in ("nondegenerate-fibers", "degenerate-fibers"):
            claims.append(Claim(name, INCONCLUSIVE, {"flatBand": exc.roots}))
    if rep is None:
        return Certificate("parallel", subject, claims, tol, seed)

    bases = []
    for pair in _distinct_corner_pairs(D):
        ch = corner_hessian(D, pair)
        if ch.smooth and ch.nonsingular:
            bases.append(("exact", pair))
    for p in rep.points:
        if not p.degenerate and p.corner is None:
            bases.append(("numeric", p))
    worst_lift, bad = 0.0, []
    t_axis = np.arange(fiber_samples) / fiber_samples
    others = (t_axis != 0) & (t_axis != 0.5)
    for kind, obj in bases:
        if kind == "exact":
            k = obj.corner.k
            for t, shift in ((Fraction(0), 2 * a), (Fraction(1, 2), -2 * a)):
                lam = obj.energy
                lam_exact = lam.exact
                if lam_exact is not None:
                    r = cpe_residual(Da, k + (t,), lam_exact + shift)
                else:
                    lr = lam.refine(Fraction(1, 2**60)).midpoint()
                    r = cpe_residual(Da, k + (t,), lr + shift)
                worst_lift = max(worst_lift, float(np.max(r)))
            kf = np.array([float(x) for x in k])
            lf = float(obj.energy)
        else:
            kf, lf = np.array(obj.k), obj.energy
            for t, sgn in ((0.0, 1), (0.5, -1)):
                r = cpe_residual(Da, list(kf) + [t], lf + sgn * 2 * af)
                worst_lift = max(worst_lift, float(np.max(r)) / float(num_a.scale(np.array([lf + 2 * af]))[0]))
        _, K, mu = _fiber(kf, lf, af, fiber_samples)
        res = _relative_residuals(num_a, K, mu)
        passing = np.flatnonzero((res <= tol.residual) & others)
        if passing.size:
            bad.append({"k": kf.tolist(), "lambda": lf, "extraFiberSolutions": t_axis[passing].tolist()})
    detail = {"basePoints": len(bases), "fiberSamples": fiber_samples, "maxLiftResidual": worst_lift}
    if worst_lift >= tol.residual:
        claims.append(Claim("nondegenerate-fibers", FAILS, {"maxLiftResidual": worst_lift}, detail))
    elif bad:
        claims.append(Claim("nondegenerate-fibers", FAILS, bad[0], detail))
    else:
        claims.append(Claim("nondegenerate-fibers", HOLDS, None, detail))

    # (4)
    degenerate = [p for p in rep.points if p.degenerate] + rep.nonsmooth
    failures, smooth_cases = [], []
    for p in degenerate:
        kf, lf = np.array(p.k), p.energy
        dl = num.evaluate(kf, lf).d_lam[0]
        _, K, mu = _fiber(kf, lf, af, fiber_samples)
        res = _relative_residuals(num_a, K, mu)
        ok = res <= tol.residual
        lifts = newton_batch(num_a, K[[0, fiber_samples // 2]], mu[[0, fiber_samples // 2]], tol)
        lift_singular = [bool(sv[-1] <= tol.singular * sv[0]) for sv in lifts.singular_values]
        if abs(dl) <= 1e-9 * float(num.scale(np.array([lf]))[0]):
            J = newton_batch(num_a, K[ok], mu[ok], replace(tol, max_iter=0)).singular_values if ok.any() else np.zeros((0, 1))
            sing = all(sv[-1] <= tol.singular * sv[0] for sv in J)
            if not ok.all() or not sing:
                failures.append({"k": kf.tolist(), "lambda": lf, "fiberSolutions": int(ok.sum())})
        else:
            smooth_cases.append(
                {
                    "k": kf.tolist(),
                    "lambda": lf,
                    "dD/dlambda": float(dl),
                    "fiberSolutions": int(ok.sum()),
                    "liftsDegenerate": lift_singular,
                }
            )
    detail = {"degeneratePoints": len(degenerate)}
    if failures:
        claims.append(Claim("degenerate-fibers", FAILS, failures[0], detail))
    elif smooth_cases:
        wit = {
            "reason": "band Hessian is singular but ∂D/∂λ ≠ 0, so only the lifts over z_{d+1} = ±1 are critical",
            "example": smooth_cases[0],
        }
        claims.append(Claim("degenerate-fibers", INCONCLUSIVE, wit, {**detail, "cases": smooth_cases}))
    else:
        claims.append(Claim("degenerate-fibers", HOLDS, None, detail))
    return Certificate("parallel", subject, claims, tol, seed)


# band separation --------------------------------------------------------


@dataclass
class ScanReport:
    rows: list[dict]

    @property
    def largest_disjoint(self) -> Fraction | None:
        ok = [r["t"] for r in self.rows if r["disjoint"]]
        return max(ok) if ok else None

    def record(self) -> dict:
        return {"scan": jsonable(self.rows), "largestDisjointT": jsonable(self.largest_disjoint)}

    def to_json(self) -> str:
        return json.dumps(self.record(), indent=2, ensure_ascii=False) + "\n"


def band_separation_scan(g: PeriodicGraph, t_values: Sequence, n: int = 16, threads: int | None = None) -> ScanReport:
    """Per-band value ranges after scaling every edge weight by t."""
    pots = g.potentials
    if len(set(pots)) != len(pots):
        raise GraphError("band separation scan needs pairwise distinct potentials")
    rows = []
    for t in sorted(Fraction(x) for x in t_values):
        grid = band_grid(g.scaled(t), n, threads)
        ranges = grid.ranges
        disjoint = all(ranges[i][1] < ranges[i + 1][0] for i in range(len(ranges) - 1))
        rows.append({"t": t, "ranges": [[lo, hi] for lo, hi in ranges], "disjoint": disjoint})
    return ScanReport(rows)


# seeded random trials ---------------------------------------------------


def randomize_labels(g: PeriodicGraph, rng: random.Random, potentials_only: bool = False) -> PeriodicGraph:
    pots = [random_rational(rng) for _ in range(g.size)]
    weights = [e.weight for e in g.edges] if potentials_only else [random_rational(rng, nonzero=True) for _ in g.edges]
    out = g.with_labels(pots, weights)
    object.__setattr__(out, "name", g.name)
    return out


def random_trials(
    g: PeriodicGraph,
    certify: Callable[[PeriodicGraph], Certificate],
    trials: int,
    seed: int = 0,
    kind: str = "random-trials",
) -> Certificate:
    """Run `certify` on seeded random rational relabelings and aggregate."""
    rng = random.Random(seed)
    claims = []
    for i in range(trials):
        cert = certify(randomize_labels(g, rng))
        failing = [c.record() for c in cert.claims if c.verdict != HOLDS]
        claims.append(
            Claim(
                f"trial-{i + 1}",
                cert.verdict,
                failing[0] if failing else None,
                {"digest": cert.subject["digest"]},
            )
        )
    return Certificate(kind, subject_of(g), claims, seed=seed)
