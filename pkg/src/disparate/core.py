"""The disparate relation, hull, complement and the complement mapping.

Everything here is defined by quantifying over :func:`is_disparate_pair`, so
the set-level operators cannot drift away from the pair predicate.
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .instance import Instance, InstanceError, Point, graph_of, restrict, vertex_set


def is_disparate_pair(inst: Instance, a: Point, b: Point) -> bool:
    """Two points may coexist: distinct, and equal colors only off an edge."""
    if a == b:
        return False
    return a[1] != b[1] or not inst.adjacent(a[0], b[0])


def is_disparate_set(inst: Instance, A: Iterable[Point]) -> bool:
    return all(is_disparate_pair(inst, a, b) for a, b in combinations(set(A), 2))


def hull(inst: Instance, A: Iterable[Point]) -> frozenset[Point]:
    """Points of ``X x Y`` that are not disparate to some point of ``A``."""
    A = frozenset(A)
    return frozenset(
        p for p in inst.universe() if any(not is_disparate_pair(inst, p, a) for a in A)
    )


def compl(inst: Instance, A: Iterable[Point]) -> frozenset[Point]:
    """Points of ``X x Y`` disparate to every point of ``A``."""
    A = frozenset(A)
    return frozenset(
        p for p in inst.universe() if all(is_disparate_pair(inst, p, a) for a in A)
    )


def compl_within(inst: Instance, candidates: Iterable[Point], A: Iterable[Point]) -> frozenset[Point]:
    """``candidates & compl(A)`` without materialising the whole product."""
    A = frozenset(A)
    return frozenset(
        p for p in candidates if all(is_disparate_pair(inst, p, a) for a in A)
    )


def complement_mapping(
    inst: Instance, W: Iterable, Z: Iterable[Point], *, strict: bool = True
) -> Instance:
    """The mapping ``F_{W,Z}`` on ``X \\ W``.

    Its graph is ``G(F|_{X\\W}) & compl(Z)``. With ``strict`` (the default)
    ``Z`` must lie in ``G(F|_W)``; criticality tests commit points outside
    ``G(F)`` and pass ``strict=False``.
    """
    ws = vertex_set(inst, W)
    Z = frozenset(Z)
    for x, y in Z:
        if x not in ws or (strict and y not in inst.domain(x)):
            raise InstanceError(f"commitment {(x, y)!r} is not in G(F|_W)")
        if y not in inst.colors:
            raise InstanceError(f"unknown color {y!r}")
    rest = restrict(inst, [x for x in inst.vertices if x not in ws])
    if not Z:
        return rest
    fibers = tuple(
        frozenset(y for y in ys if all(is_disparate_pair(inst, (x, y), z) for z in Z))
        for x, ys in zip(rest.vertices, rest.fibers)
    )
    return Instance(rest.vertices, rest.edges, rest.colors, fibers)


def commit(inst: Instance, x: str, y: str, *, strict: bool = True) -> Instance:
    """Shorthand for ``F_{{x},{(x,y)}}``."""
    return complement_mapping(inst, [x], [(x, y)], strict=strict)


def restricted_graph(inst: Instance, W: Iterable) -> frozenset[Point]:
    return graph_of(restrict(inst, W))
