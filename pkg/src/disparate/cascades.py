"""Collections, Hall collections, derived collections and cascades.

A collection assigns a point set ``A_V`` inside ``G(F|_V)`` to every nonempty
vertex set ``V``. Collections are intensional (a rule queried per ``V``)
because a table over all ``2^|X| - 1`` subsets is only affordable for tiny
instances; :func:`table_collection` is the tiny-scale adapter.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Callable, Iterable, Iterator, Mapping, Optional

from . import oracle
from .core import complement_mapping, is_disparate_pair, is_disparate_set
from .instance import (
    Instance,
    InstanceError,
    Point,
    graph_of,
    restrict,
    vertex_set,
    with_graph,
)

DEFAULT_SUBSET_CAP = 12


class CapExceededError(RuntimeError):
    """An enumeration would exceed its configured cap."""


def nonempty_subsets(vertices: Iterable[str]) -> Iterator[frozenset[str]]:
    """Nonempty subsets by size, then lexicographically."""
    vs = sorted(vertices)
    for k in range(1, len(vs) + 1):
        for c in combinations(vs, k):
            yield frozenset(c)


def _guard(n: int, cap: int) -> None:
    if n > cap:
        raise CapExceededError(f"{n} vertices exceeds the subset enumeration cap {cap}")


class Collection:
    """A rule ``V -> A_V`` over the nonempty subsets of ``vertices``."""

    def __init__(self, vertices: Iterable[str], rule: Callable[[frozenset], Iterable[Point]]):
        self.vertices = frozenset(vertices)
        self._rule = rule

    def __getitem__(self, V: Iterable[str]) -> frozenset[Point]:
        vs = frozenset(V)
        if not vs:
            raise KeyError("collections are indexed by nonempty vertex sets")
        if not vs <= self.vertices:
            raise KeyError(f"{sorted(vs - self.vertices)} outside the collection's vertex set")
        return frozenset(self._rule(vs))

    def items(self, cap: int = DEFAULT_SUBSET_CAP) -> Iterator[tuple[frozenset[str], frozenset[Point]]]:
        _guard(len(self.vertices), cap)
        for V in nonempty_subsets(self.vertices):
            yield V, self[V]

    def union(self, cap: int = DEFAULT_SUBSET_CAP) -> frozenset[Point]:
        out: set[Point] = set()
        for _, A in self.items(cap):
            out |= A
        return frozenset(out)

    def table(self, cap: int = DEFAULT_SUBSET_CAP) -> dict[frozenset[str], frozenset[Point]]:
        return dict(self.items(cap))

    def __repr__(self) -> str:
        return f"Collection(vertices={sorted(self.vertices)})"


def induced_collection(inst: Instance, s: Mapping[str, str]) -> Collection:
    """``H^s``: each ``V`` gets the graph of ``s|_V``."""
    s = {str(k): str(v) for k, v in s.items()}
    if set(s) != set(inst.vertices):
        raise InstanceError("a selection must assign every vertex exactly once")
    for x, y in s.items():
        if y not in inst.domain(x):
            raise InstanceError(f"s({x})={y} is not in F({x})")
    return Collection(inst.vertices, lambda V: ((x, s[x]) for x in V))


def table_collection(inst: Instance, table: Mapping[Iterable[str], Iterable[Point]]) -> Collection:
    """Explicit collection; subsets missing from ``table`` get the empty set."""
    tab: dict[frozenset[str], frozenset[Point]] = {}
    for V, A in table.items():
        vs = vertex_set(inst, V)
        pts = frozenset((str(x), str(y)) for x, y in A)
        for x, y in pts:
            if x not in vs or y not in inst.domain(x):
                raise InstanceError(f"A_V for V={sorted(vs)} leaves G(F|_V) at {(x, y)!r}")
        tab[vs] = pts
    return Collection(inst.vertices, lambda V: tab.get(V, frozenset()))


def restrict_collection(H: Collection, W: Iterable[str]) -> Collection:
    """``H|_W``: the same sets, answered only for ``V`` inside ``W``."""
    ws = frozenset(W)
    if not ws:
        raise ValueError("W must be nonempty")
    if not ws <= H.vertices:
        raise KeyError("W must lie inside the collection's vertex set")
    return Collection(ws, H.__getitem__)


def _proper(inst: Instance, W) -> frozenset[str]:
    ws = vertex_set(inst, W)
    if not ws or ws == frozenset(inst.vertices):
        raise ValueError("W must be a nonempty proper subset of X")
    return ws


def derive_collection(
    inst: Instance, H: Collection, W: Iterable[str], cap: int = DEFAULT_SUBSET_CAP
) -> Collection:
    """``H_W`` over ``X \\ W``.

    ``V -> A_{W u V} & compl(U) & (V x Y)`` where ``U`` is the union of ``H|_W``.
    """
    ws = _proper(inst, W)
    _guard(len(ws), cap)
    U = restrict_collection(H, ws).union(cap)
    rest = frozenset(inst.vertices) - ws

    def rule(V: frozenset) -> Iterator[Point]:
        for p in H[ws | V]:
            if p[0] in V and all(is_disparate_pair(inst, p, u) for u in U):
                yield p

    return Collection(rest, rule)


def submap_from_collection(
    inst: Instance, H: Collection, W: Iterable[str], cap: int = DEFAULT_SUBSET_CAP
) -> Instance:
    """``F^{H_W}`` on ``W``: ``G(F|_W)`` minus the hull of the union of ``H_W``."""
    ws = vertex_set(inst, W)
    if not ws:
        raise ValueError("W must be nonempty")
    local = restrict(inst, ws)
    if ws == frozenset(inst.vertices):
        return local
    D = derive_collection(inst, H, ws, cap)
    _guard(len(D.vertices), cap)
    U = D.union(cap)
    keep = [p for p in graph_of(local) if all(is_disparate_pair(inst, p, u) for u in U)]
    return with_graph(local, keep)


def is_hall_collection(inst: Instance, H: Collection, cap: int = DEFAULT_SUBSET_CAP) -> bool:
    """Every ``A_V`` disparate with at least ``|V|`` points."""
    _guard(len(inst), cap)
    for V in nonempty_subsets(inst.vertices):
        A = H[V]
        if len(A) < len(V) or not is_disparate_set(inst, A):
            return False
    return True


def w_distribution_counts(
    inst: Instance, H: Collection, W: Iterable[str], cap: int = DEFAULT_SUBSET_CAP
) -> Iterator[tuple[frozenset[str], int]]:
    """For each nonempty ``V`` outside ``W``: how much of ``A_{W u V}`` is absorbed.

    Absorbed means lying in ``W x Y`` or in ``hull(U) & (V x Y)``, where ``U`` is
    the union of ``H|_W``.
    """
    ws = vertex_set(inst, W)
    if not ws:
        raise ValueError("W must be nonempty")
    _guard(len(inst), cap)
    U = restrict_collection(H, ws).union(cap)
    rest = frozenset(inst.vertices) - ws
    for V in nonempty_subsets(rest):
        n = 0
        for p in H[ws | V]:
            if p[0] in ws or (p[0] in V and any(not is_disparate_pair(inst, p, u) for u in U)):
                n += 1
        yield V, n


def is_w_distributed(
    inst: Instance, H: Collection, W: Iterable[str], cap: int = DEFAULT_SUBSET_CAP
) -> bool:
    ws = vertex_set(inst, W)
    return all(n <= len(ws) for _, n in w_distribution_counts(inst, H, ws, cap))


@dataclass(frozen=True)
class Cascade:
    """A cascade ``(W_1, ..., W_k)`` in ``base`` with its derived tuples.

    ``complements[i-1]`` is ``W^c_i`` and ``pre[i-1]`` is ``pre(i)``.
    """

    base: frozenset[str]
    steps: tuple[frozenset[str], ...]
    complements: tuple[frozenset[str], ...]
    pre: tuple[frozenset[str], ...]

    def __len__(self) -> int:
        return len(self.steps)

    def inner(self, i: int) -> bool:
        """Does step ``i`` (1-based) nest inside ``W_{i-1}``?"""
        prev = self.base if i == 1 else self.steps[i - 2]
        return self.steps[i - 1] <= prev


def cascade_structure(base: Iterable[str], steps: Iterable[Iterable[str]]) -> Cascade:
    """Validate a cascade and compute ``W^c_i`` and ``pre(i)``."""
    W0 = frozenset(base)
    Ws = tuple(frozenset(w) for w in steps)
    if not Ws:
        raise ValueError("a cascade has at least one step")
    prev, prev_c = W0, W0
    comps, pres = [], []
    for i, Wi in enumerate(Ws, start=1):
        if not Wi <= W0:
            raise ValueError(f"W_{i} is not inside the base set")
        if Wi <= prev:
            pres.append(prev)
            cur_c = prev - Wi
        elif Wi <= prev_c:
            pres.append(prev_c)
            cur_c = prev_c - Wi
        else:
            raise ValueError(f"not a cascade: W_{i} lies in neither W_{i-1} nor its complement")
        comps.append(cur_c)
        prev, prev_c = Wi, cur_c
    return Cascade(W0, Ws, tuple(comps), tuple(pres))


def _stage(inst: Instance, H: Collection, W: frozenset, inner: bool, cap: int):
    """One inductive step of the cascade construction."""
    tilde = submap_from_collection(inst, H, W, cap)
    if inner:
        return restrict_collection(H, W), tilde
    return derive_collection(inst, H, W, cap), complement_mapping(inst, W, graph_of(tilde))


def cascade_derive(
    inst: Instance, H: Collection, cascade: Cascade, i: int, cap: int = DEFAULT_SUBSET_CAP
) -> tuple[Collection, Instance]:
    """``(H(W_1..W_i), F(W_1..W_i))``; the latter lives on ``pre(i+1)``."""
    if frozenset(inst.vertices) != cascade.base:
        raise ValueError("the cascade must be based on the full vertex set")
    if not 0 <= i <= len(cascade) - 1:
        raise IndexError(f"i must lie in 0..{len(cascade) - 1}")
    Hc, Fc = H, inst
    for j in range(1, i + 1):
        Hc, Fc = _stage(Fc, Hc, cascade.steps[j - 1], cascade.inner(j + 1), cap)
    return Hc, Fc


Solvable = Callable[[Instance], bool]


def _is_critical(inst: Instance, W: frozenset, solvable: Solvable) -> bool:
    for x in inst.vertices:
        if x in W:
            continue
        local = restrict(inst, W | {x})
        for y in inst.colors:
            committed = complement_mapping(local, [x], [(x, y)], strict=False)
            if not solvable(committed):
                return True
    return False


def _minimal_critical(inst: Instance, solvable: Solvable) -> list[frozenset[str]]:
    crit: list[frozenset[str]] = []
    for k in range(1, len(inst)):
        for c in combinations(inst.vertices, k):
            W = frozenset(c)
            if any(v < W for v in crit):
                continue
            if _is_critical(inst, W, solvable):
                crit.append(W)
    return crit


def _walk(
    inst: Instance,
    H: Collection,
    depth_cap: int,
    solvable: Solvable,
    cap: int,
) -> Iterator[tuple[tuple[frozenset[str], ...], Instance, Collection, frozenset[str]]]:
    """Depth-first over primitive critical cascades.

    Yields ``(steps, F_stage, H_stage, W_i)`` where the stage pair is
    ``(F(W_1..W_{i-1}), H(W_1..W_{i-1}))`` and ``W_i`` is its minimal critical set.
    """

    def rec(prefix, F_prev, H_prev):
        if len(prefix) >= depth_cap:
            return
        if not prefix:
            stages = [(F_prev, H_prev)]
        else:
            W = prefix[-1]
            stages = []
            for inner in (True, False):
                Hs, Fs = _stage(F_prev, H_prev, W, inner, cap)
                stages.append((Fs, Hs))
        for F_stage, H_stage in stages:
            for Wi in _minimal_critical(F_stage, solvable):
                steps = prefix + (Wi,)
                yield steps, F_stage, H_stage, Wi
                yield from rec(steps, F_stage, H_stage)

    yield from rec((), inst, H)


def enumerate_primitive_critical_cascades(
    inst: Instance,
    H: Collection,
    depth_cap: Optional[int] = None,
    solvable: Solvable = oracle.exists_selection,
    cap: int = DEFAULT_SUBSET_CAP,
) -> list[Cascade]:
    """All primitive ``(F, H)``-critical cascades of length at most ``depth_cap``."""
    _guard(len(inst), cap)
    depth = 2 * len(inst) if depth_cap is None else depth_cap
    if depth < 1:
        raise ValueError("depth_cap must be at least 1")
    base = frozenset(inst.vertices)
    return [cascade_structure(base, steps) for steps, *_ in _walk(inst, H, depth, solvable, cap)]


def is_distributed(
    inst: Instance,
    H: Collection,
    depth_cap: Optional[int] = None,
    solvable: Solvable = oracle.exists_selection,
    cap: int = DEFAULT_SUBSET_CAP,
) -> bool:
    """``H`` is ``W_i``-distributed at every step of every primitive critical cascade."""
    depth = 2 * len(inst) if depth_cap is None else depth_cap
    for _, F_stage, H_stage, Wi in _walk(inst, H, depth, solvable, cap):
        if not is_w_distributed(F_stage, H_stage, Wi, cap):
            return False
    return True


def _hall_options(inst: Instance, V: frozenset) -> list[frozenset[Point]]:
    pts = sorted(graph_of(restrict(inst, V)))
    out = []
    for k in range(len(V), len(pts) + 1):
        for c in combinations(pts, k):
            if is_disparate_set(inst, c):
                out.append(frozenset(c))
    return out


def check_generalized_hall_tiny(
    inst: Instance,
    max_vertices: int = 3,
    max_colors: int = 3,
    depth_cap: int = 6,
) -> bool:
    """Evaluate the generalized Hall condition by its recursive definition.

    Candidate Hall collections are enumerated as tables. Criticality of the
    stage mappings recurses into this same checker on strictly smaller vertex
    sets, so the brute-force oracle is never consulted.
    """
    if len(inst) > max_vertices or len(inst.colors) > max_colors:
        raise CapExceededError(
            f"tiny checker is capped at {max_vertices} vertices and {max_colors} colors"
        )
    return _ghc(inst, depth_cap)


@lru_cache(maxsize=None)
def _ghc(inst: Instance, depth_cap: int) -> bool:
    if len(inst) == 0:
        return True
    if len(inst) == 1:
        return bool(graph_of(inst))
    subsets = list(nonempty_subsets(inst.vertices))
    options = [_hall_options(inst, V) for V in subsets]
    if any(not o for o in options):
        return False

    def solvable(sub: Instance) -> bool:
        return _ghc(sub, depth_cap)

    for choice in product(*options):
        tab = dict(zip(subsets, choice))
        H = Collection(inst.vertices, tab.__getitem__)
        if is_distributed(inst, H, depth_cap, solvable):
            return True
    return False
