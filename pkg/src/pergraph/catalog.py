"""Named example graphs and generator specs.

These are the golden-test corpus; the YAML files under ``pergraph/data``
are written from these constructors (see `write_bundled`).
"""
from __future__ import annotations

import random
from fractions import Fraction
from pathlib import Path

from .graph import (
    EdgeOrbit,
    FlowerSpec,
    IsthmusSpec,
    PeriodicGraph,
    Petal,
    Vertex,
    build_flower,
    build_isthmus,
)

F = Fraction

SINGULAR_HOUSE_REGIMES = {
    "isolated": (3, 0, 3, 2, 2, 1),
    "line": (2, 0, 1, 1, 1, 1),
    "two_lines": (1, 0, 1, 1, 1, 1),
}

LIEB_GENERIC = dict(u=0, v=1, w=F(-1, 2), a=1, b=F(3, 2), c=F(1, 2), d=2)


def chain(v=0, e=1) -> PeriodicGraph:
    """ℤ-periodic chain: one vertex, one periodic loop orbit."""
    return PeriodicGraph(1, (Vertex("x", F(v)),), (EdgeOrbit(0, 0, (1,), F(e)),), name="chain")


def lieb_flower(u=0, v=0, w=0, a=1, b=1, c=1, d=1) -> FlowerSpec:
    """Center u with 2-cycle petals u-v (weights b, d; direction 1) and u-w (a, c; direction 2)."""
    return FlowerSpec(
        dimension=2,
        center="u",
        potentials=(("u", F(u)), ("v", F(v)), ("w", F(w))),
        petals=(
            Petal(("u", "v"), (F(b), F(d)), marked=1, generator=1),
            Petal(("u", "w"), (F(a), F(c)), marked=1, generator=2),
        ),
    )


def lieb(u=0, v=0, w=0, a=1, b=1, c=1, d=1) -> PeriodicGraph:
    return build_flower(lieb_flower(u, v, w, a, b, c, d), name="lieb")


def singular_house_flower(u, v, a, b, c, d) -> FlowerSpec:
    """Loops at u in directions 1 and 2 plus a 2-cycle u-v in direction 1.

    The loops carry weights -b and -c so that the dispersion polynomial reads
    λ² - λ(u+v) - a² - d² + uv + (z1+1/z1)(bλ - bv - ad) + (z2+1/z2)(cλ - cv).
    """
    return FlowerSpec(
        dimension=2,
        center="u",
        potentials=(("u", F(u)), ("v", F(v))),
        petals=(
            Petal(("u",), (-F(b),), marked=0, generator=1),
            Petal(("u",), (-F(c),), marked=0, generator=2),
            Petal(("u", "v"), (F(a), F(d)), marked=1, generator=1),
        ),
    )


def singular_house(u, v, a, b, c, d) -> PeriodicGraph:
    return build_flower(singular_house_flower(u, v, a, b, c, d), name="singular_house")


def linear_g(u=1, v=2, w=3, b=1, c=1, d=1, e=1) -> PeriodicGraph:
    """3-vertex ℤ-periodic graph with Floquet matrix [[u, d+e/x, b], [d+ex, v, c], [b, c, w]]."""
    zero = (0,)
    edges = (
        EdgeOrbit(0, 1, zero, F(d)),
        EdgeOrbit(0, 1, (-1,), F(e)),
        EdgeOrbit(0, 2, zero, F(b)),
        EdgeOrbit(1, 2, zero, F(c)),
    )
    verts = (Vertex("u", F(u)), Vertex("v", F(v)), Vertex("w", F(w)))
    return PeriodicGraph(1, verts, edges, name="linear_g")


TRIANGLE = ((0, 1, F(1)), (0, 2, F(1)), (1, 2, F(1)))


def decorated_square_spec(potentials=(1, 2, 3, 4)) -> IsthmusSpec:
    """(a, m, b) = (3, 1, 0): a triangle hanging off a square-lattice vertex."""
    return IsthmusSpec(
        dimension=2, a=3, m=1, b=0,
        potentials=tuple(F(x) for x in potentials),
        f=(1, 1), periodic_weights=(F(1), F(1)),
        a_edges=TRIANGLE, cut_weights=(F(1), None),
    )


def middle_isthmus_spec(potentials=(1, 2, 3, 4, 5, 6, 7, 8, 9)) -> IsthmusSpec:
    """(3, 3, 3): triangle A, path v1-v2-v3, star B centred at v4; f(1)=3, f(2)=1."""
    return IsthmusSpec(
        dimension=2, a=3, m=3, b=3,
        potentials=tuple(F(x) for x in potentials),
        f=(3, 1), periodic_weights=(F(1), F(1)),
        path_weights=(F(1), F(1)),
        a_edges=TRIANGLE, b_edges=((0, 1, F(1)), (0, 2, F(1))),
        cut_weights=(F(1), F(1)),
    )


def two_path_spec(potentials=(1, 2)) -> IsthmusSpec:
    """(0, 2, 0): a single edge v1-v2 with one periodic direction at each end."""
    return IsthmusSpec(
        dimension=2, a=0, m=2, b=0,
        potentials=tuple(F(x) for x in potentials),
        f=(1, 2), periodic_weights=(F(1), F(1)), path_weights=(F(1),),
    )


def isthmus_chain_spec(v=0, e=1) -> IsthmusSpec:
    return IsthmusSpec(dimension=1, a=0, m=1, b=0, potentials=(F(v),), f=(1,), periodic_weights=(F(e),))


def random_rational(rng: random.Random, nonzero: bool = False, span: int = 9, den: int = 4) -> Fraction:
    while True:
        x = Fraction(rng.randint(-span, span), rng.randint(1, den))
        if x or not nonzero:
            return x


def random_flower_spec(
    rng: random.Random,
    dimension: int,
    lengths: list[int],
    stem_size: int = 0,
    schrodinger: bool = False,
) -> FlowerSpec:
    """Flower with petals of the given cycle lengths and random nonzero labels.

    Petal directions cover 1..dimension (needs ``len(lengths) >= dimension``).
    """
    if len(lengths) < dimension:
        raise ValueError("need at least one petal per direction")
    gens = list(range(1, dimension + 1)) + [rng.randint(1, dimension) for _ in lengths[dimension:]]
    rng.shuffle(gens)
    w = (lambda: F(1)) if schrodinger else (lambda: random_rational(rng, nonzero=True))
    potentials = [("u", random_rational(rng))]
    petals = []
    loops: dict[int, Fraction] = {}
    for i, (L, gen) in enumerate(zip(lengths, gens)):
        names = [f"p{i}_{k}" for k in range(1, L)]
        potentials += [(n, random_rational(rng)) for n in names]
        weights = tuple(w() for _ in range(L))
        if L == 1:
            # loops in one direction merge; keep their total nonzero
            while loops.get(gen, 0) + weights[0] == 0:
                weights = (random_rational(rng, nonzero=True),)
            loops[gen] = loops.get(gen, 0) + weights[0]
        petals.append(Petal(("u", *names), weights, marked=rng.randrange(L), generator=gen))
    stem_names = [f"s{k}" for k in range(stem_size)]
    potentials += [(n, random_rational(rng)) for n in stem_names]
    stem_edges = []
    prev = "u"
    for n in stem_names:
        stem_edges.append((prev, n, w()))
        prev = n
    return FlowerSpec(dimension, "u", tuple(potentials), tuple(petals), tuple(stem_edges))


def random_isthmus_spec(rng: random.Random, dimension: int | None = None) -> IsthmusSpec:
    """Small isthmus spec with random shapes and nonzero rational labels."""
    d = dimension or rng.randint(1, 3)
    a, m, b = rng.randint(0, 3), rng.randint(1, 3), rng.randint(0, 2)

    def tree_edges(n):
        edges = [(rng.randrange(i), i, random_rational(rng, nonzero=True)) for i in range(1, n)]
        if n >= 3 and rng.random() < 0.5:
            edges.append((0, n - 1, random_rational(rng, nonzero=True))) if (0, n - 1) not in {
                (x, y) for x, y, _ in edges
            } else None
        return tuple(edges)

    return IsthmusSpec(
        dimension=d, a=a, m=m, b=b,
        potentials=tuple(random_rational(rng) for _ in range(a + m + b)),
        f=tuple(rng.randint(1, m) for _ in range(d)),
        periodic_weights=tuple(random_rational(rng, nonzero=True) for _ in range(d)),
        path_weights=tuple(random_rational(rng, nonzero=True) for _ in range(m - 1)),
        a_edges=tree_edges(a), b_edges=tree_edges(b),
        cut_weights=(
            random_rational(rng, nonzero=True) if a else None,
            random_rational(rng, nonzero=True) if b else None,
        ),
    )


def bundled_graphs() -> dict[str, PeriodicGraph]:
    out = {
        "chain": chain(0, 1),
        "lieb": lieb(**LIEB_GENERIC),
        "lieb_flat": lieb(),
        "linear_g": linear_g(),
        "isthmus_310": build_isthmus(decorated_square_spec(), name="isthmus_310"),
        "isthmus_333": build_isthmus(middle_isthmus_spec(), name="isthmus_333"),
        "isthmus_020": build_isthmus(two_path_spec(), name="isthmus_020"),
    }
    for i, (label, params) in enumerate(SINGULAR_HOUSE_REGIMES.items()):
        out[f"singular_house_{params[0]}"] = singular_house(*params)
    for name, g in out.items():
        object.__setattr__(g, "name", name)
    return out


def bundled_specs() -> dict[str, object]:
    return {
        "flower_lieb": lieb_flower(**LIEB_GENERIC),
        "flower_singular_house": singular_house_flower(*SINGULAR_HOUSE_REGIMES["isolated"]),
        "spec_isthmus_310": decorated_square_spec(),
        "spec_isthmus_333": middle_isthmus_spec(),
        "spec_isthmus_020": two_path_spec(),
    }


DATA_DIR = Path(__file__).parent / "data"


def write_bundled(directory: Path = DATA_DIR) -> list[Path]:
    from .io import dump_graph, dump_spec

    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, g in bundled_graphs().items():
        p = directory / f"{name}.yaml"
        p.write_text(dump_graph(g))
        paths.append(p)
    for name, s in bundled_specs().items():
        p = directory / f"{name}.yaml"
        p.write_text(dump_spec(s))
        paths.append(p)
    return paths
