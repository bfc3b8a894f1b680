"""Transitive graphs (disjoint unions of cliques).

On these the size of a point set has a closed form, the number of distinct
``(clique, color)`` pairs it touches, and solvability reduces to a bipartite
matching between vertices and those pairs.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterable, Mapping, Optional, Sequence

from .core import commit
from .instance import Instance, InstanceError, Point, graph_of, restrict, vertex_set


class NotTransitiveError(ValueError):
    """The operation needs a transitive graph."""


def is_transitive(inst: Instance) -> bool:
    for mid in inst.vertices:
        ns = sorted(inst.neighbors(mid))
        for i, a in enumerate(ns):
            for b in ns[i + 1:]:
                if not inst.adjacent(a, b):
                    return False
    return True


@dataclass(frozen=True)
class CliqueDecomposition:
    cliques: tuple[frozenset[str], ...]
    clique_of: Mapping[str, int]


def clique_components(inst: Instance) -> CliqueDecomposition:
    """Connected components, ordered by their least vertex."""
    if not is_transitive(inst):
        raise NotTransitiveError("graph is not transitive")
    cliques: list[frozenset[str]] = []
    clique_of: dict[str, int] = {}
    for x in inst.vertices:
        if x in clique_of:
            continue
        members = frozenset({x} | inst.neighbors(x))
        for v in members:
            clique_of[v] = len(cliques)
        cliques.append(members)
    return CliqueDecomposition(tuple(cliques), clique_of)


def size_transitive(inst: Instance, G: Iterable[Point]) -> int:
    """Number of distinct ``(clique, color)`` pairs met by ``G``."""
    dec = clique_components(inst)
    return len({(dec.clique_of[x], y) for x, y in G})


def max_matching(
    left: Sequence[Hashable], adj: Mapping[Hashable, Sequence[Hashable]]
) -> dict[Hashable, Hashable]:
    """Maximum bipartite matching by augmenting paths (left -> right).

    Left vertices are tried in the given order and their neighbours in
    ``adj`` order, so the result is deterministic.
    """
    match_r: dict[Hashable, Hashable] = {}

    def augment(u, seen: set) -> bool:
        for v in adj.get(u, ()):
            if v not in match_r and v not in seen:
                seen.add(v)
                match_r[v] = u
                return True
        for v in adj.get(u, ()):
            if v in seen:
                continue
            seen.add(v)
            if v not in match_r or augment(match_r[v], seen):
                match_r[v] = u
                return True
        return False

    for u in left:
        augment(u, set())
    return {u: v for v, u in match_r.items()}


def _pair_graph(inst: Instance) -> dict[str, list[tuple[int, str]]]:
    dec = clique_components(inst)
    return {x: [(dec.clique_of[x], y) for y in inst.sorted_domain(x)] for x in inst.vertices}


def hall_check_transitive(inst: Instance) -> Optional[frozenset[str]]:
    """A ``W`` with ``size(G(F|_W)) < |W|``, or ``None`` if there is none.

    The bound holds for every ``W`` iff the vertex/(clique, color) relation
    saturates ``X``. When it does not, the vertices reachable from an unmatched
    vertex by alternating paths form a deficient set.
    """
    adj = _pair_graph(inst)
    match = max_matching(inst.vertices, adj)
    unmatched = [x for x in inst.vertices if x not in match]
    if not unmatched:
        return None
    owner = {v: u for u, v in match.items()}
    W, frontier = {unmatched[0]}, [unmatched[0]]
    while frontier:
        u = frontier.pop()
        for v in adj[u]:
            w = owner.get(v)
            if w is not None and w not in W:
                W.add(w)
                frontier.append(w)
    return frozenset(W)


def solve_transitive(inst: Instance) -> Optional[dict[str, str]]:
    """A disparate selection from a perfect vertex/(clique, color) matching."""
    match = max_matching(inst.vertices, _pair_graph(inst))
    if len(match) < len(inst):
        return None
    return {x: match[x][1] for x in inst.vertices}


def is_t_critical(inst: Instance, W: Iterable[str]) -> Optional[Point]:
    """First ``(x, y)`` outside ``W`` after which the size on ``W`` drops below ``|W|``."""
    if not is_transitive(inst):
        raise NotTransitiveError("graph is not transitive")
    ws = vertex_set(inst, W)
    if not ws:
        raise InstanceError("W must be nonempty")
    for x in inst.vertices:
        if x in ws:
            continue
        local = restrict(inst, ws | {x})
        for y in inst.colors:
            G = graph_of(commit(local, x, y, strict=False))
            if size_transitive(local, G) <= len(ws) - 1:
                return (x, y)
    return None


def minimal_t_critical_sets(inst: Instance) -> list[frozenset[str]]:
    """Inclusion-minimal t-critical sets, by size then tokens."""
    crit: list[frozenset[str]] = []
    for k in range(1, len(inst)):
        for c in combinations(inst.vertices, k):
            W = frozenset(c)
            if is_t_critical(inst, W) is not None:
                crit.append(W)
    return [w for w in crit if not any(v < w for v in crit)]
