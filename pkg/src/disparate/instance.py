"""Problem instances: a simple graph, a color set and a set-valued mapping.

Vertices and colors are opaque string tokens ordered lexicographically. That
order fixes every tie-break downstream (search order, trace order, which
elimination set is committed first), so all results are reproducible.

Points are ``(vertex, color)`` tuples and point sets are plain frozensets of
them; use :func:`sorted_points` when a canonical listing is needed.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Tuple

Point = Tuple[str, str]
PointSet = frozenset
Selection = Mapping[str, str]

_FIELDS = {"vertices", "edges", "colors", "domains"}


class InstanceError(ValueError):
    """Raised for malformed or inconsistent instance data."""


@dataclass(frozen=True)
class Instance:
    """A triple ``((X, E), Y, F)``.

    Build instances with :meth:`build`, which canonicalizes ordering and
    validates the invariants; the raw constructor expects canonical input.
    """

    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]
    colors: tuple[str, ...]
    fibers: tuple[frozenset[str], ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)
    _adj: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        index = {x: i for i, x in enumerate(self.vertices)}
        adj: dict[str, set[str]] = {x: set() for x in self.vertices}
        for e in self.edges:
            a, b = tuple(e)
            adj[a].add(b)
            adj[b].add(a)
        object.__setattr__(self, "_index", index)
        object.__setattr__(
            self, "_adj", {x: frozenset(ns) for x, ns in adj.items()}
        )

    @classmethod
    def build(
        cls,
        vertices: Iterable,
        edges: Iterable[Iterable],
        colors: Iterable,
        domains: Mapping,
    ) -> "Instance":
        vs = [str(v) for v in vertices]
        cs = [str(c) for c in colors]
        if len(set(vs)) != len(vs):
            raise InstanceError("duplicate vertex token")
        if len(set(cs)) != len(cs):
            raise InstanceError("duplicate color token")
        vset, cset = set(vs), set(cs)

        es = set()
        for e in edges:
            pair = [str(v) for v in e]
            if len(pair) != 2:
                raise InstanceError(f"edge must have two endpoints: {pair}")
            a, b = pair
            if a == b:
                raise InstanceError(f"self-loop at vertex {a!r}")
            for v in pair:
                if v not in vset:
                    raise InstanceError(f"unknown vertex {v!r} in edge")
            key = frozenset(pair)
            if key in es:
                raise InstanceError(f"duplicate edge {sorted(pair)}")
            es.add(key)

        dom = {str(k): v for k, v in domains.items()}
        for k in dom:
            if k not in vset:
                raise InstanceError(f"unknown vertex {k!r} in domains")
        fibers = []
        for x in sorted(vs):
            ys = frozenset(str(y) for y in dom.get(x, ()))
            bad = ys - cset
            if bad:
                raise InstanceError(f"unknown color {sorted(bad)[0]!r} at vertex {x!r}")
            fibers.append(ys)
        return cls(tuple(sorted(vs)), frozenset(es), tuple(sorted(cs)), tuple(fibers))

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, x) -> bool:
        return x in self._index

    def domain(self, x: str) -> frozenset[str]:
        return self.fibers[self._index[x]]

    @property
    def domains(self) -> dict[str, frozenset[str]]:
        return dict(zip(self.vertices, self.fibers))

    def neighbors(self, x: str) -> frozenset[str]:
        return self._adj[x]

    def adjacent(self, a: str, b: str) -> bool:
        return b in self._adj[a]

    def universe(self) -> frozenset[Point]:
        """All points of ``X x Y``."""
        return frozenset(product(self.vertices, self.colors))

    def sorted_domain(self, x: str) -> list[str]:
        return sorted(self.domain(x))


def sorted_points(points: Iterable[Point]) -> list[Point]:
    return sorted(points)


def vertex_set(inst: Instance, W: Iterable) -> frozenset[str]:
    """Coerce ``W`` to a frozenset of vertex tokens, checking membership."""
    ws = frozenset(str(w) for w in W)
    missing = [w for w in ws if w not in inst]
    if missing:
        raise InstanceError(f"not a vertex: {sorted(missing)[0]!r}")
    return ws


def graph_of(inst: Instance) -> frozenset[Point]:
    """``G(F) = {(x, y) | y in F(x)}``."""
    return frozenset((x, y) for x, ys in zip(inst.vertices, inst.fibers) for y in ys)


def restrict(inst: Instance, W: Iterable) -> Instance:
    """Restriction of the mapping (and the induced subgraph) to ``W``."""
    ws = vertex_set(inst, W)
    vertices = tuple(x for x in inst.vertices if x in ws)
    edges = frozenset(e for e in inst.edges if e <= ws)
    fibers = tuple(inst.domain(x) for x in vertices)
    return Instance(vertices, edges, inst.colors, fibers)


def with_graph(inst: Instance, points: Iterable[Point]) -> Instance:
    """The submapping of ``inst`` whose graph is ``points``.

    ``points`` must lie inside ``G(F)``.
    """
    per: dict[str, set[str]] = {x: set() for x in inst.vertices}
    for x, y in points:
        if x not in per or y not in inst.domain(x):
            raise InstanceError(f"point {(x, y)!r} is not in the graph of the mapping")
        per[x].add(y)
    return Instance(
        inst.vertices, inst.edges, inst.colors, tuple(frozenset(per[x]) for x in inst.vertices)
    )


def parse_instance(text: str) -> Instance:
    """Parse the JSON instance document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"malformed document: {exc}") from None
    if not isinstance(doc, dict):
        raise InstanceError("malformed document: top level must be an object")
    unknown = set(doc) - _FIELDS
    if unknown:
        raise InstanceError(f"unknown field {sorted(unknown)[0]!r}")
    missing = _FIELDS - set(doc)
    if missing:
        raise InstanceError(f"missing field {sorted(missing)[0]!r}")

    def strings(value, what):
        if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
            raise InstanceError(f"malformed document: {what} must be an array of strings")
        return value

    vertices = strings(doc["vertices"], "vertices")
    colors = strings(doc["colors"], "colors")
    if not isinstance(doc["edges"], list):
        raise InstanceError("malformed document: edges must be an array")
    edges = [strings(e, "edge") for e in doc["edges"]]
    domains = doc["domains"]
    if not isinstance(domains, dict):
        raise InstanceError("malformed document: domains must be an object")
    for k, v in domains.items():
        strings(v, f"domain of {k!r}")
        if len(set(v)) != len(v):
            raise InstanceError(f"duplicate color in domain of {k!r}")
    return Instance.build(vertices, edges, colors, domains)


def serialize_instance(inst: Instance) -> str:
    """Canonical JSON document; ``parse_instance`` inverts it."""
    doc = {
        "vertices": list(inst.vertices),
        "edges": sorted(sorted(e) for e in inst.edges),
        "colors": list(inst.colors),
        "domains": {x: inst.sorted_domain(x) for x in inst.vertices},
    }
    return json.dumps(doc, indent=2) + "\n"


# Canonical fixtures shared by tests, demos and the CLI examples.
FIX_SINGLE = Instance.build(["a"], [], ["1", "2"], {"a": ["1"]})
FIX_EDGE2 = Instance.build(["1", "2"], [["1", "2"]], ["1", "2"], {"1": ["1", "2"], "2": ["1", "2"]})
FIX_CONFLICT = Instance.build(["1", "2"], [["1", "2"]], ["1"], {"1": ["1"], "2": ["1"]})
FIX_PATH3 = Instance.build(
    ["1", "2", "3"],
    [["1", "2"], ["2", "3"]],
    ["1", "2"],
    {"1": ["1"], "2": ["1", "2"], "3": ["1"]},
)
FIX_CLIQUES = Instance.build(
    ["1", "2", "3", "4"],
    [["1", "2"], ["3", "4"]],
    ["1", "2"],
    {x: ["1", "2"] for x in "1234"},
)

FIXTURES = {
    "single": FIX_SINGLE,
    "edge2": FIX_EDGE2,
    "conflict": FIX_CONFLICT,
    "path3": FIX_PATH3,
    "cliques": FIX_CLIQUES,
}
