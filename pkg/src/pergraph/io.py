"""YAML/JSON graph and generator spec files.

A plain graph file has ``dimension``, ``vertices`` and ``edges`` (plus an
optional ``name`` and ``isthmus`` block).  Generator files carry
``kind: flower``, ``kind: isthmus`` or ``kind: parallel``.  Rationals are
written as integers or ``"p/q"`` strings; floats are refused.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

import yaml

from .graph import (
    EdgeOrbit,
    FlowerSpec,
    GraphError,
    IsthmusLayout,
    IsthmusSpec,
    PeriodicGraph,
    Petal,
    Vertex,
    build_flower,
    build_isthmus,
    parallel_extension,
    validate,
)

BUILTIN_PREFIX = "builtin:"
DATA_DIR = Path(__file__).parent / "data"


class SpecParseError(ValueError):
    """Malformed file: bad syntax, unknown or missing fields, wrong types."""


@dataclass(frozen=True)
class ParallelSpec:
    base: PeriodicGraph
    a: Fraction


def parse_rational(x: Any, where: str) -> Fraction:
    if isinstance(x, bool):
        raise SpecParseError(f"{where}: expected a rational, got a boolean")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            if "." in x or "e" in x.lower():
                raise ValueError
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise SpecParseError(f"{where}: {x!r} is not a rational literal p/q") from None
    raise SpecParseError(f"{where}: expected an integer or 'p/q' string, got {type(x).__name__}")


def format_rational(x: Fraction) -> int | str:
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _fields(obj: Any, where: str, required: set[str], optional: set[str] = frozenset()) -> dict:
    if not isinstance(obj, dict):
        raise SpecParseError(f"{where}: expected a mapping")
    keys = set(obj)
    unknown = keys - required - set(optional)
    if unknown:
        raise SpecParseError(f"{where}: unknown field(s) {sorted(unknown)}")
    missing = required - keys
    if missing:
        raise SpecParseError(f"{where}: missing field(s) {sorted(missing)}")
    return obj


def _int(x: Any, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise SpecParseError(f"{where}: expected an integer")
    return x


def _list(x: Any, where: str) -> list:
    if not isinstance(x, list):
        raise SpecParseError(f"{where}: expected a list")
    return x


# graphs -----------------------------------------------------------------


def graph_from_data(data: dict) -> PeriodicGraph:
    data = _fields(data, "graph", {"dimension", "vertices", "edges"}, {"kind", "name", "isthmus"})
    if data.get("kind", "graph") != "graph":
        raise SpecParseError("graph: kind must be 'graph'")
    d = _int(data["dimension"], "dimension")
    verts = []
    for i, v in enumerate(_list(data["vertices"], "vertices")):
        v = _fields(v, f"vertices[{i}]", {"name"}, {"potential"})
        verts.append(Vertex(str(v["name"]), parse_rational(v.get("potential", 0), f"vertices[{i}].potential")))
    index = {v.name: i for i, v in enumerate(verts)}

    def vertex_ref(x, where):
        if isinstance(x, str):
            if x not in index:
                raise GraphError(f"{where}: unknown vertex {x!r}")
            return index[x]
        return _int(x, where)

    edges = []
    for i, e in enumerate(_list(data["edges"], "edges")):
        e = _fields(e, f"edges[{i}]", {"u", "v", "shift", "weight"})
        shift = tuple(_int(s, f"edges[{i}].shift") for s in _list(e["shift"], f"edges[{i}].shift"))
        if len(shift) != d:
            raise GraphError(f"edges[{i}]: shift has length {len(shift)}, expected {d}")
        edges.append(
            EdgeOrbit(
                vertex_ref(e["u"], f"edges[{i}].u"),
                vertex_ref(e["v"], f"edges[{i}].v"),
                shift,
                parse_rational(e["weight"], f"edges[{i}].weight"),
            )
        )
    layout = None
    if "isthmus" in data:
        blk = _fields(data["isthmus"], "isthmus", {"a", "m", "b", "f"})
        layout = IsthmusLayout(
            _int(blk["a"], "isthmus.a"),
            _int(blk["m"], "isthmus.m"),
            _int(blk["b"], "isthmus.b"),
            tuple(_int(x, "isthmus.f") for x in _list(blk["f"], "isthmus.f")),
        )
    g = PeriodicGraph(d, tuple(verts), tuple(edges), isthmus=layout, name=str(data.get("name", "")))
    problems = validate(g)
    if problems:
        raise GraphError("; ".join(problems))
    return g


def graph_to_data(g: PeriodicGraph) -> dict:
    out: dict = {"kind": "graph"}
    if g.name:
        out["name"] = g.name
    out["dimension"] = g.dimension
    out["vertices"] = [{"name": v.name, "potential": format_rational(v.potential)} for v in g.vertices]
    out["edges"] = [
        {"u": g.names[e.u], "v": g.names[e.v], "shift": list(e.shift), "weight": format_rational(e.weight)}
        for e in g.edges
    ]
    if g.isthmus is not None:
        lay = g.isthmus
        out["isthmus"] = {"a": lay.a, "m": lay.m, "b": lay.b, "f": list(lay.f)}
    return out


# generators -------------------------------------------------------------


def flower_from_data(data: dict) -> FlowerSpec:
    data = _fields(data, "flower", {"kind", "dimension", "center", "potentials", "petals"}, {"stem", "name"})
    pots = data["potentials"]
    if not isinstance(pots, dict):
        raise SpecParseError("potentials: expected a mapping name -> rational")
    potentials = tuple((str(k), parse_rational(v, f"potentials.{k}")) for k, v in pots.items())
    petals = []
    for i, p in enumerate(_list(data["petals"], "petals")):
        p = _fields(p, f"petals[{i}]", {"cycle", "weights", "generator"}, {"marked"})
        petals.append(
            Petal(
                tuple(str(x) for x in _list(p["cycle"], f"petals[{i}].cycle")),
                tuple(parse_rational(w, f"petals[{i}].weights") for w in _list(p["weights"], f"petals[{i}].weights")),
                _int(p.get("marked", 0), f"petals[{i}].marked"),
                _int(p["generator"], f"petals[{i}].generator"),
            )
        )
    stem = []
    for i, e in enumerate(_list(data.get("stem", []), "stem")):
        e = _fields(e, f"stem[{i}]", {"u", "v", "weight"})
        stem.append((str(e["u"]), str(e["v"]), parse_rational(e["weight"], f"stem[{i}].weight")))
    spec = FlowerSpec(_int(data["dimension"], "dimension"), str(data["center"]), potentials, tuple(petals), tuple(stem))
    spec.check()
    return spec


def flower_to_data(spec: FlowerSpec) -> dict:
    return {
        "kind": "flower",
        "dimension": spec.dimension,
        "center": spec.center,
        "potentials": {n: format_rational(v) for n, v in spec.potentials},
        "petals": [
            {
                "cycle": list(p.cycle),
                "weights": [format_rational(w) for w in p.weights],
                "marked": p.marked,
                "generator": p.generator,
            }
            for p in spec.petals
        ],
        "stem": [{"u": a, "v": b, "weight": format_rational(w)} for a, b, w in spec.stem_edges],
    }


def _local_edges(x, where) -> tuple:
    out = []
    for i, e in enumerate(_list(x, where)):
        e = _fields(e, f"{where}[{i}]", {"u", "v", "weight"})
        out.append((_int(e["u"], where), _int(e["v"], where), parse_rational(e["weight"], where)))
    return tuple(out)


def isthmus_from_data(data: dict) -> IsthmusSpec:
    req = {"kind", "dimension", "a", "m", "b", "potentials", "f", "periodic_weights"}
    opt = {"path_weights", "a_edges", "b_edges", "cut_weights", "name"}
    data = _fields(data, "isthmus", req, opt)
    cuts = _fields(data.get("cut_weights", {}), "cut_weights", set(), {"left", "right"})
    left, right = cuts.get("left"), cuts.get("right")
    spec = IsthmusSpec(
        dimension=_int(data["dimension"], "dimension"),
        a=_int(data["a"], "a"),
        m=_int(data["m"], "m"),
        b=_int(data["b"], "b"),
        potentials=tuple(parse_rational(x, "potentials") for x in _list(data["potentials"], "potentials")),
        f=tuple(_int(x, "f") for x in _list(data["f"], "f")),
        periodic_weights=tuple(parse_rational(x, "periodic_weights") for x in _list(data["periodic_weights"], "periodic_weights")),
        path_weights=tuple(parse_rational(x, "path_weights") for x in _list(data.get("path_weights", []), "path_weights")),
        a_edges=_local_edges(data.get("a_edges", []), "a_edges"),
        b_edges=_local_edges(data.get("b_edges", []), "b_edges"),
        cut_weights=(
            None if left is None else parse_rational(left, "cut_weights.left"),
            None if right is None else parse_rational(right, "cut_weights.right"),
        ),
    )
    spec.check()
    return spec


def isthmus_to_data(spec: IsthmusSpec) -> dict:
    left, right = spec.cut_weights
    cuts = {}
    if left is not None:
        cuts["left"] = format_rational(left)
    if right is not None:
        cuts["right"] = format_rational(right)
    return {
        "kind": "isthmus",
        "dimension": spec.dimension,
        "a": spec.a,
        "m": spec.m,
        "b": spec.b,
        "potentials": [format_rational(x) for x in spec.potentials],
        "f": list(spec.f),
        "periodic_weights": [format_rational(x) for x in spec.periodic_weights],
        "path_weights": [format_rational(x) for x in spec.path_weights],
        "a_edges": [{"u": i, "v": j, "weight": format_rational(w)} for i, j, w in spec.a_edges],
        "b_edges": [{"u": i, "v": j, "weight": format_rational(w)} for i, j, w in spec.b_edges],
        "cut_weights": cuts,
    }


def parallel_from_data(data: dict, base_dir: Path | None = None) -> ParallelSpec:
    data = _fields(data, "parallel", {"kind", "a", "base"}, {"name"})
    a = parse_rational(data["a"], "a")
    base = data["base"]
    if isinstance(base, str):
        obj = load(base if base.startswith(BUILTIN_PREFIX) or base_dir is None else str(base_dir / base))
    else:
        obj = from_data(base)
    return ParallelSpec(to_graph(obj), a)


def from_data(data: Any, base_dir: Path | None = None):
    if not isinstance(data, dict):
        raise SpecParseError("top level must be a mapping")
    kind = data.get("kind", "graph")
    if kind == "graph":
        return graph_from_data(data)
    if kind == "flower":
        return flower_from_data(data)
    if kind == "isthmus":
        return isthmus_from_data(data)
    if kind == "parallel":
        return parallel_from_data(data, base_dir)
    raise SpecParseError(f"unknown kind {kind!r}")


def loads(text: str, base_dir: Path | None = None):
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise SpecParseError(f"cannot parse spec: {exc}") from None
    return from_data(data, base_dir)


def builtin_names() -> list[str]:
    return sorted(p.stem for p in DATA_DIR.glob("*.yaml"))


def resolve(source: str) -> Path:
    if source.startswith(BUILTIN_PREFIX):
        name = source[len(BUILTIN_PREFIX):]
        path = DATA_DIR / f"{name}.yaml"
        if not path.exists():
            raise SpecParseError(f"no bundled spec named {name!r}; available: {', '.join(builtin_names())}")
        return path
    return Path(source)


def load(source: str):
    """Parse a spec from a path or ``builtin:NAME``."""
    path = resolve(source)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SpecParseError(f"cannot read {source}: {exc.strerror}") from None
    obj = loads(text, path.parent)
    if isinstance(obj, PeriodicGraph) and not obj.name:
        object.__setattr__(obj, "name", path.stem)
    return obj


def to_graph(obj, name: str = "") -> PeriodicGraph:
    """Realise a parsed spec as a periodic graph."""
    if isinstance(obj, PeriodicGraph):
        return obj
    if isinstance(obj, FlowerSpec):
        return build_flower(obj, name=name or "flower")
    if isinstance(obj, IsthmusSpec):
        return build_isthmus(obj, name=name or "isthmus")
    if isinstance(obj, ParallelSpec):
        return parallel_extension(obj.base, obj.a)
    raise TypeError(f"cannot build a graph from {type(obj).__name__}")


def _dump(data: dict) -> str:
    return yaml.safe_dump(data, sort_keys=False, allow_unicode=True, default_flow_style=None)


def dump_graph(g: PeriodicGraph) -> str:
    return _dump(graph_to_data(g))


def dump_spec(spec) -> str:
    if isinstance(spec, PeriodicGraph):
        return dump_graph(spec)
    if isinstance(spec, FlowerSpec):
        return _dump(flower_to_data(spec))
    if isinstance(spec, IsthmusSpec):
        return _dump(isthmus_to_data(spec))
    raise TypeError(f"cannot serialise {type(spec).__name__}")
