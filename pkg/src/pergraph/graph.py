"""ℤ^d-periodic graphs and their constructions.

A `PeriodicGraph` stores one vertex per orbit (the fundamental domain) and
one `EdgeOrbit` per edge orbit.  An edge orbit ``(u, v, a, w)`` stands for
the edges joining ``β + u`` and ``β + a + v`` for every ``β`` in ℤ^d, all
with weight ``w``.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised for malformed graph or generator specifications."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    raise GraphError(f"expected an exact rational, got {x!r}")


def _lex_positive(a: Sequence[int]) -> bool:
    for x in a:
        if x:
            return x > 0
    return False


def unit_vector(i: int, d: int) -> tuple[int, ...]:
    """e_i in ℤ^d, 1-based."""
    return tuple(1 if j == i - 1 else 0 for j in range(d))


@dataclass(frozen=True)
class Vertex:
    name: str
    potential: Fraction


@dataclass(frozen=True)
class EdgeOrbit:
    u: int
    v: int
    shift: tuple[int, ...]
    weight: Fraction

    def reversed(self) -> "EdgeOrbit":
        return EdgeOrbit(self.v, self.u, tuple(-s for s in self.shift), self.weight)

    def is_zero_shift_loop(self) -> bool:
        return self.u == self.v and not any(self.shift)

    def canonical(self) -> "EdgeOrbit":
        """Orientation with u < v, or u == v and a lexicographically positive shift."""
        if self.u > self.v or (self.u == self.v and not _lex_positive(self.shift) and any(self.shift)):
            return self.reversed()
        return self

    @property
    def key(self) -> tuple:
        return (self.u, self.v, self.shift)


@dataclass(frozen=True)
class IsthmusLayout:
    """Isthmus bookkeeping carried by graphs from `build_isthmus`.

    Vertex ``p`` of the graph (0-based) has isthmus index ``p + 1 - a``;
    `f` maps each Floquet direction j (1-based position in the tuple) to an
    isthmus index in 1..m.
    """

    a: int
    m: int
    b: int
    f: tuple[int, ...]

    def position(self, index: int) -> int:
        return index - 1 + self.a

    @property
    def indices(self) -> range:
        return range(1 - self.a, self.m + self.b + 1)


@dataclass(frozen=True)
class PeriodicGraph:
    dimension: int
    vertices: tuple[Vertex, ...]
    edges: tuple[EdgeOrbit, ...]
    isthmus: IsthmusLayout | None = field(default=None, compare=False)
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.dimension < 0:
            raise GraphError("dimension must be nonnegative")
        verts = tuple(
            v if isinstance(v, Vertex) else Vertex(str(v[0]), _frac(v[1])) for v in self.vertices
        )
        edges = []
        for e in self.edges:
            if not isinstance(e, EdgeOrbit):
                u, v, shift, w = e
                e = EdgeOrbit(int(u), int(v), tuple(int(s) for s in shift), _frac(w))
            if len(e.shift) != self.dimension:
                raise GraphError(f"edge {e} has a shift of the wrong length")
            edges.append(e.canonical())
        edges.sort(key=lambda e: e.key)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(edges))

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def names(self) -> list[str]:
        return [v.name for v in self.vertices]

    @property
    def potentials(self) -> list[Fraction]:
        return [v.potential for v in self.vertices]

    def index(self, name: str) -> int:
        for i, v in enumerate(self.vertices):
            if v.name == name:
                return i
        raise KeyError(name)

    def with_labels(self, potentials: Sequence, weights: Sequence) -> "PeriodicGraph":
        """Same graph with new potentials and edge weights (in `edges` order)."""
        if len(potentials) != self.size or len(weights) != len(self.edges):
            raise GraphError("label vectors have the wrong length")
        verts = tuple(Vertex(v.name, _frac(p)) for v, p in zip(self.vertices, potentials))
        edges = tuple(EdgeOrbit(e.u, e.v, e.shift, _frac(w)) for e, w in zip(self.edges, weights))
        return PeriodicGraph(self.dimension, verts, edges, self.isthmus, self.name)

    def scaled(self, t) -> "PeriodicGraph":
        """Every edge weight multiplied by `t`."""
        t = _frac(t)
        return self.with_labels(self.potentials, [e.weight * t for e in self.edges])


def validate(g: PeriodicGraph) -> list[str]:
    """Diagnostics for a graph; an empty list means it is well formed."""
    out = []
    names = g.names
    if len(set(names)) != len(names):
        out.append("duplicate vertex names")
    seen: dict[tuple, EdgeOrbit] = {}
    for e in g.edges:
        if not (0 <= e.u < g.size and 0 <= e.v < g.size):
            out.append(f"dangling vertex index in edge {e.u}-{e.v}")
            continue
        if len(e.shift) != g.dimension:
            out.append(f"edge {names[e.u]}-{names[e.v]} has a shift of length {len(e.shift)}")
        if e.is_zero_shift_loop():
            out.append(f"zero-shift loop at {names[e.u]}")
        if e.weight == 0:
            out.append(f"zero weight on edge {names[e.u]}-{names[e.v]} shift {list(e.shift)}")
        if e.key in seen:
            out.append(
                f"duplicate orbit under reversal: {names[e.u]}-{names[e.v]} shift {list(e.shift)}"
            )
        seen[e.key] = e
    if g.isthmus is not None:
        lay = g.isthmus
        if lay.a + lay.m + lay.b != g.size:
            out.append("isthmus layout does not match the vertex count")
        if len(lay.f) != g.dimension or any(not 1 <= r <= lay.m for r in lay.f):
            out.append("isthmus direction map out of range")
    return out


# connectivity -------------------------------------------------------------


def _adjacency(g: PeriodicGraph):
    adj: list[list[tuple[int, tuple[int, ...]]]] = [[] for _ in range(g.size)]
    for e in g.edges:
        if e.weight == 0:
            continue
        adj[e.u].append((e.v, e.shift))
        adj[e.v].append((e.u, tuple(-s for s in e.shift)))
    return adj


def _lift_components(g: PeriodicGraph):
    """BFS lift of each quotient component.

    Returns a list of ``(vertex_indices, cycle_shifts)`` where the cycle
    shifts are the net translations closed up by non-tree edges.
    """
    adj = _adjacency(g)
    pos: dict[int, tuple[int, ...]] = {}
    comps = []
    for start in range(g.size):
        if start in pos:
            continue
        pos[start] = (0,) * g.dimension
        members = [start]
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y, a in adj[x]:
                p = tuple(s + t for s, t in zip(pos[x], a))
                if y not in pos:
                    pos[y] = p
                    members.append(y)
                    queue.append(y)
        shifts = []
        member_set = set(members)
        for e in g.edges:
            if e.weight == 0 or e.u not in member_set:
                continue
            net = tuple(pu + s - pv for pu, s, pv in zip(pos[e.u], e.shift, pos[e.v]))
            if any(net):
                shifts.append(net)
        comps.append((sorted(members), shifts))
    return comps


def lattice_basis(vectors: Iterable[Sequence[int]], d: int) -> list[tuple[int, ...]]:
    """Echelon basis of the subgroup of ℤ^d generated by `vectors`."""
    rows = [list(v) for v in vectors if any(v)]
    basis = []
    col = 0
    while rows and col < d:
        rows = [r for r in rows if any(r)]
        nz = [r for r in rows if r[col]]
        if not nz:
            col += 1
            continue
        # Euclid on column `col` across the rows
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            pivot = nz[0]
            for r in nz[1:]:
                q = r[col] // pivot[col]
                for j in range(d):
                    r[j] -= q * pivot[j]
            nz = [r for r in nz if r[col]]
        pivot = nz[0]
        if pivot[col] < 0:
            pivot[:] = [-x for x in pivot]
        basis.append(tuple(pivot))
        rows = [r for r in rows if r is not pivot and any(r)]
        col += 1
    return basis


def shift_group_index(vectors: Iterable[Sequence[int]], d: int) -> int:
    """Index of the generated subgroup in ℤ^d; 0 when it has lower rank."""
    basis = lattice_basis(vectors, d)
    if len(basis) < d:
        return 0
    idx = 1
    for i, b in enumerate(basis):
        idx *= b[i]
    return abs(idx)


def is_connected(g: PeriodicGraph) -> bool:
    """Connectivity of the infinite periodic graph."""
    if g.size == 0:
        return False
    comps = _lift_components(g)
    if len(comps) != 1:
        return False
    return shift_group_index(comps[0][1], g.dimension) == 1 if g.dimension else True


def bounded_components(g: PeriodicGraph) -> list[list[int]]:
    """Quotient components whose lifts are finite (no net translation on cycles)."""
    return [members for members, shifts in _lift_components(g) if not shifts]


# constructions ------------------------------------------------------------


@dataclass(frozen=True)
class Petal:
    """A cycle through the flower's center.

    `cycle` lists the vertices starting at the center; edge ``i`` runs from
    ``cycle[i]`` to ``cycle[(i + 1) % len(cycle)]``.  The edge at index
    `marked`, oriented along the cycle, becomes the periodic edge in
    direction `generator` (1-based).
    """

    cycle: tuple[str, ...]
    weights: tuple[Fraction, ...]
    marked: int
    generator: int


@dataclass(frozen=True)
class FlowerSpec:
    dimension: int
    center: str
    potentials: tuple[tuple[str, Fraction], ...]
    petals: tuple[Petal, ...]
    stem_edges: tuple[tuple[str, str, Fraction], ...] = ()

    def check(self) -> None:
        d = self.dimension
        names = [n for n, _ in self.potentials]
        if len(set(names)) != len(names):
            raise GraphError("duplicate vertex names in flower")
        if self.center not in names:
            raise GraphError("center is not a vertex")
        if sorted({p.generator for p in self.petals}) != list(range(1, d + 1)):
            raise GraphError("petal annotation must be a surjection onto e_1..e_d")
        used = {self.center}
        for i, p in enumerate(self.petals):
            if not p.cycle or p.cycle[0] != self.center:
                raise GraphError(f"petal {i} must start at the center")
            if len(p.weights) != len(p.cycle):
                raise GraphError(f"petal {i} needs one weight per edge")
            if not 0 <= p.marked < len(p.cycle):
                raise GraphError(f"petal {i} marked edge out of range")
            for v in p.cycle[1:]:
                if v not in names:
                    raise GraphError(f"petal vertex {v} has no potential")
                if v in used:
                    raise GraphError(f"petals must be disjoint away from the center ({v})")
                used.add(v)
            if len(set(p.cycle)) != len(p.cycle):
                raise GraphError(f"petal {i} is not a simple cycle")
        stem = set(names) - used | {self.center}
        for a, b, _ in self.stem_edges:
            if a not in stem or b not in stem:
                raise GraphError(f"stem edge {a}-{b} touches a petal")
            if a == b:
                raise GraphError("stem edges cannot be loops")
        # stem must be connected
        adj = {v: set() for v in stem}
        for a, b, _ in self.stem_edges:
            adj[a].add(b)
            adj[b].add(a)
        seen = {self.center}
        stack = [self.center]
        while stack:
            x = stack.pop()
            for y in adj[x] - seen:
                seen.add(y)
                stack.append(y)
        if seen != stem:
            raise GraphError("stem is not connected")


def has_two_cycle_petal(spec: FlowerSpec) -> bool:
    return any(len(p.cycle) == 2 for p in spec.petals)


def build_flower(spec: FlowerSpec, name: str = "") -> PeriodicGraph:
    spec.check()
    d = spec.dimension
    names = [n for n, _ in spec.potentials]
    idx = {n: i for i, n in enumerate(names)}
    zero = (0,) * d
    edges = [EdgeOrbit(idx[a], idx[b], zero, _frac(w)) for a, b, w in spec.stem_edges]
    for p in spec.petals:
        L = len(p.cycle)
        for i in range(L):
            a, b = p.cycle[i], p.cycle[(i + 1) % L]
            shift = unit_vector(p.generator, d) if i == p.marked else zero
            edges.append(EdgeOrbit(idx[a], idx[b], shift, _frac(p.weights[i])))
    # loops in the same direction are parallel edges; their weights add
    merged: dict[tuple, EdgeOrbit] = {}
    for e in (e.canonical() for e in edges):
        if e.key in merged:
            e = EdgeOrbit(e.u, e.v, e.shift, merged[e.key].weight + e.weight)
        merged[e.key] = e
    edges = [e for e in merged.values() if e.weight != 0]
    return PeriodicGraph(d, tuple(Vertex(n, _frac(v)) for n, v in spec.potentials), tuple(edges), name=name)


@dataclass(frozen=True)
class IsthmusSpec:
    """Generator data for an isthmus-connected graph.

    Vertices are v_{1-a}..v_{m+b}; `a_edges` and `b_edges` use 0-based local
    indices into A and B.  `path_weights` are c_1..c_{m-1}; `cut_weights`
    holds c_0 (when a > 0) and c_m (when b > 0).
    """

    dimension: int
    a: int
    m: int
    b: int
    potentials: tuple[Fraction, ...]
    f: tuple[int, ...]
    periodic_weights: tuple[Fraction, ...]
    path_weights: tuple[Fraction, ...] = ()
    a_edges: tuple[tuple[int, int, Fraction], ...] = ()
    b_edges: tuple[tuple[int, int, Fraction], ...] = ()
    cut_weights: tuple[Fraction | None, Fraction | None] = (None, None)

    def check(self) -> None:
        a, m, b, d = self.a, self.m, self.b, self.dimension
        if m < 1 or a < 0 or b < 0:
            raise GraphError("isthmus needs m >= 1 and a, b >= 0")
        if len(self.potentials) != a + m + b:
            raise GraphError("need one potential per vertex")
        if len(self.f) != d or any(not 1 <= r <= m for r in self.f):
            raise GraphError("f must map each direction into 1..m")
        if len(self.periodic_weights) != d:
            raise GraphError("need one periodic weight per direction")
        if len(self.path_weights) != m - 1:
            raise GraphError("need m - 1 path weights")
        left, right = self.cut_weights
        if (a > 0) != (left is not None) or (b > 0) != (right is not None):
            raise GraphError("cut weights must be given exactly for nonempty A and B")
        weights = list(self.periodic_weights) + list(self.path_weights)
        weights += [w for *_, w in self.a_edges] + [w for *_, w in self.b_edges]
        weights += [w for w in self.cut_weights if w is not None]
        if any(_frac(w) == 0 for w in weights):
            raise GraphError("isthmus edge weights must be nonzero")
        for part, n, edges in (("A", a, self.a_edges), ("B", b, self.b_edges)):
            adj = {i: set() for i in range(n)}
            for i, j, _ in edges:
                if not (0 <= i < n and 0 <= j < n) or i == j:
                    raise GraphError(f"bad edge {i}-{j} in {part}")
                adj[i].add(j)
                adj[j].add(i)
            if n:
                seen, stack = {0}, [0]
                while stack:
                    x = stack.pop()
                    for y in adj[x] - seen:
                        seen.add(y)
                        stack.append(y)
                if len(seen) != n:
                    raise GraphError(f"{part} is not connected")


def build_isthmus(spec: IsthmusSpec, name: str = "") -> PeriodicGraph:
    spec.check()
    a, m, b, d = spec.a, spec.m, spec.b, spec.dimension
    zero = (0,) * d
    verts = tuple(Vertex(f"v{1 - a + p}", _frac(x)) for p, x in enumerate(spec.potentials))
    edges = []
    for i, j, w in spec.a_edges:
        edges.append(EdgeOrbit(i, j, zero, _frac(w)))
    for i, j, w in spec.b_edges:
        edges.append(EdgeOrbit(a + m + i, a + m + j, zero, _frac(w)))
    for r, w in enumerate(spec.path_weights, start=1):
        edges.append(EdgeOrbit(a + r - 1, a + r, zero, _frac(w)))
    left, right = spec.cut_weights
    if a:
        edges.append(EdgeOrbit(a - 1, a, zero, _frac(left)))
    if b:
        edges.append(EdgeOrbit(a + m - 1, a + m, zero, _frac(right)))
    for j, (r, w) in enumerate(zip(spec.f, spec.periodic_weights), start=1):
        p = a + r - 1
        edges.append(EdgeOrbit(p, p, unit_vector(j, d), _frac(w)))
    layout = IsthmusLayout(a, m, b, tuple(spec.f))
    return PeriodicGraph(d, verts, tuple(edges), isthmus=layout, name=name)


def parallel_extension(g: PeriodicGraph, a) -> PeriodicGraph:
    """ℤ_a × Γ: one new direction with a weight-`a` chain through every vertex."""
    a = _frac(a)
    if a == 0:
        raise GraphError("parallel extension needs a nonzero weight")
    d1 = g.dimension + 1
    edges = [EdgeOrbit(e.u, e.v, e.shift + (0,), e.weight) for e in g.edges]
    edges += [EdgeOrbit(i, i, unit_vector(d1, d1), a) for i in range(g.size)]
    name = f"{g.name}+parallel({a})" if g.name else ""
    return PeriodicGraph(d1, g.vertices, tuple(edges), name=name)


# projections --------------------------------------------------------------


@dataclass(frozen=True)
class Projection:
    """Keep the coordinates in `kept` (1-based) and fix the others to ±1."""

    kept: tuple[int, ...]
    signs: tuple[tuple[int, int], ...]

    def check(self, d: int) -> None:
        kept = set(self.kept)
        fixed = {j for j, _ in self.signs}
        if not kept or kept == set(range(1, d + 1)):
            raise GraphError("kept index set must be nonempty and proper")
        if kept | fixed != set(range(1, d + 1)) or kept & fixed:
            raise GraphError("signs must be given exactly off the kept indices")
        if any(s not in (1, -1) for _, s in self.signs):
            raise GraphError("signs must be ±1")

    @property
    def assignments(self) -> dict[int, int]:
        return dict(self.signs)

    def __str__(self) -> str:
        fixed = ", ".join(f"z{j}={s:+d}" for j, s in self.signs)
        return f"I={{{','.join(map(str, self.kept))}}} ({fixed})"


def enumerate_projections(d: int) -> list[Projection]:
    """All coordinate projections: nonempty proper I with signs off I."""
    if d < 1:
        raise GraphError("dimension must be positive")
    out = []
    full = range(1, d + 1)
    for r in range(1, d):
        for kept in itertools.combinations(full, r):
            rest = [j for j in full if j not in kept]
            for signs in itertools.product((1, -1), repeat=len(rest)):
                out.append(Projection(kept, tuple(zip(rest, signs))))
    return out


def coordinate_projection(g: PeriodicGraph, p: Projection) -> PeriodicGraph:
    from .floquet import floquet_matrix, graph_from_matrix

    p.check(g.dimension)
    h = floquet_matrix(g).substitute_sign(p.assignments)
    out = graph_from_matrix(h)
    return PeriodicGraph(out.dimension, out.vertices, out.edges, name=f"{g.name} {p}".strip())


def graph_signature(g: PeriodicGraph) -> str:
    """Stable text used for parameter digests."""
    parts = [f"d={g.dimension}"]
    parts += [f"{v.name}:{v.potential}" for v in g.vertices]
    parts += [f"{e.u}-{e.v}@{','.join(map(str, e.shift))}:{e.weight}" for e in g.edges]
    return ";".join(parts)
