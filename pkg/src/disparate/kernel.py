"""Elimination points, the disparate kernel and the two reductions built on them.

``calc_method_1`` strips elimination points until no elimination set is left
(or some domain empties). ``calc_method_2`` alternates kernel computation with
committing the canonically least kernel point.

The elimination search is exhaustive by default (``w_cap = |X| - 1``). A
smaller cap gives a sound but incomplete propagator: the result can only be a
superset of the kernel, and traces record ``partial=True``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional

from .core import commit
from .instance import Instance, InstanceError, Point, graph_of, vertex_set, with_graph
from .oracle import CompiledInstance


def _connected(c: CompiledInstance, mask: int) -> bool:
    seen = mask & -mask
    frontier = seen
    while frontier:
        nxt = 0
        i = 0
        f = frontier
        while f:
            if f & 1:
                nxt |= c.adj[i]
            f >>= 1
            i += 1
        nxt &= mask & ~seen
        seen |= nxt
        frontier = nxt
    return seen == mask


def _elim_mask(c: CompiledInstance, mask: int) -> list[tuple[int, int]]:
    """Elimination points of the vertex set ``mask`` as ``(vertex, color bit)``."""
    outside = [i for i in range(c.n) if not mask >> i & 1]
    base = c.solve(mask, c.dom)
    if base is None:
        return [(i, 1 << j) for i in outside for j in range(c.dom[i].bit_length()) if c.dom[i] >> j & 1]
    # colorings of F|_W seen so far; any one avoiding the committed color on
    # the neighbours of x shows the commitment is harmless
    pool = [base]
    out = []
    verdict: dict[tuple[int, int], bool] = {}
    for x in outside:
        touched = [w for w in base if c.adj[x] >> w & 1]
        d = c.dom[x]
        while d:
            bit = d & -d
            d ^= bit
            hit = [w for w in touched if c.dom[w] & bit]
            if not hit:
                continue
            key = (sum(1 << w for w in hit), bit)
            if key not in verdict:
                if any(all(col[w] != bit for w in hit) for col in pool):
                    verdict[key] = False
                else:
                    dom = list(c.dom)
                    for w in hit:
                        dom[w] &= ~bit
                    found = c.solve(mask, dom)
                    if found is not None:
                        pool.append(found)
                    verdict[key] = found is None
            if verdict[key]:
                out.append((x, bit))
    return out


def _points(c: CompiledInstance, pts: Iterable[tuple[int, int]]) -> frozenset[Point]:
    return frozenset(
        (c.inst.vertices[i], c.inst.colors[bit.bit_length() - 1]) for i, bit in pts
    )


def elimination_points(inst: Instance, W: Iterable[str]) -> frozenset[Point]:
    """``elim_F(W)``: points outside ``W`` whose commitment leaves ``F|_W`` unsolvable."""
    ws = vertex_set(inst, W)
    if not ws:
        raise InstanceError("W must be nonempty")
    c = CompiledInstance(inst)
    mask = sum(1 << i for i, x in enumerate(inst.vertices) if x in ws)
    return _points(c, _elim_mask(c, mask))


def _resolve_cap(inst: Instance, w_cap: Optional[int]) -> tuple[int, bool]:
    full = max(len(inst) - 1, 0)
    if w_cap is None:
        return full, False
    if w_cap < 1:
        raise ValueError("w_cap must be at least 1")
    return min(w_cap, full), w_cap < full


def _has_slack_vertex(c: CompiledInstance, combo: tuple[int, ...], mask: int) -> bool:
    """Some ``w`` in ``W`` keeps a free color after any commitment and any coloring of ``W - w``."""
    return any(c.dom[w].bit_count() >= (c.adj[w] & mask).bit_count() + 2 for w in combo)


def _find(c: CompiledInstance, cap: int) -> Optional[tuple[int, list[tuple[int, int]]]]:
    for k in range(1, cap + 1):
        for combo in combinations(range(c.n), k):
            mask = sum(1 << i for i in combo)
            if k > 1 and not _connected(c, mask) or _has_slack_vertex(c, combo, mask):
                continue
            pts = _elim_mask(c, mask)
            if pts:
                return mask, pts
    return None


def find_elimination_set(
    inst: Instance, w_cap: Optional[int] = None
) -> Optional[tuple[frozenset[str], frozenset[Point]]]:
    """First ``W`` (by size, then tokens) with ``elim_F(W)`` nonempty.

    Returns ``(W, elim_F(W))`` or ``None`` if no such ``W`` of size at most
    ``w_cap`` exists.
    """
    cap, _ = _resolve_cap(inst, w_cap)
    c = CompiledInstance(inst)
    # Only W that can come first in (size, tokens) order are probed. A
    # disconnected W never does: a smaller component already has a nonempty
    # elimination set. Neither does a W with a slack vertex w, because
    # elim_F(W) is then contained in elim_F(W - w).
    found = _find(c, cap)
    if found is None:
        return None
    mask, pts = found
    ws = frozenset(x for i, x in enumerate(inst.vertices) if mask >> i & 1)
    return ws, _points(c, pts)


@dataclass
class KernelTrace:
    """Record of a kernel reduction run (``calc_method_1``).

    Exactly one of ``kernel`` and ``infeasible`` is set. ``partial`` marks runs
    whose elimination search was capped below ``|X| - 1``.
    """

    steps: list[tuple[frozenset[str], frozenset[Point]]] = field(default_factory=list)
    kernel: Optional[frozenset[Point]] = None
    infeasible: Optional[str] = None
    partial: bool = False

    @property
    def feasible(self) -> bool:
        return self.infeasible is None

    def fibers(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {}
        for x, y in sorted(self.kernel or ()):
            out.setdefault(x, []).append(y)
        return out

    def lines(self) -> list[str]:
        """Tab-separated step lines: index, W, removed points."""
        out = []
        for i, (ws, pts) in enumerate(self.steps, start=1):
            removed = " ".join(f"({x},{y})" for x, y in sorted(pts))
            out.append(f"{i}\t{','.join(sorted(ws))}\t{removed}")
        return out


def calc_method_1(inst: Instance, w_cap: Optional[int] = None) -> KernelTrace:
    """Reduce ``inst`` to its disparate kernel, or report the vertex that empties."""
    _, partial = _resolve_cap(inst, w_cap)
    trace = KernelTrace(partial=partial)
    for x, ys in zip(inst.vertices, inst.fibers):
        if not ys:
            trace.infeasible = x
            return trace
    current = inst
    while True:
        found = find_elimination_set(current, w_cap)
        if found is None:
            trace.kernel = graph_of(current)
            return trace
        ws, pts = found
        trace.steps.append((ws, pts))
        current = with_graph(current, graph_of(current) - pts)
        for x, ys in zip(current.vertices, current.fibers):
            if not ys:
                trace.infeasible = x
                return trace


def kernel_instance(inst: Instance, w_cap: Optional[int] = None) -> Optional[Instance]:
    """``F*`` as a submapping, or ``None`` when ``inst`` is unsolvable."""
    trace = calc_method_1(inst, w_cap)
    if not trace.feasible:
        return None
    return with_graph(inst, trace.kernel)


@dataclass
class SolveTrace:
    """Record of a reduce-and-commit run (``calc_method_2``): committed points in order.

    ``initial`` is the first kernel run, i.e. the reduction of the input itself.
    """

    steps: list[Point] = field(default_factory=list)
    feasible: bool = False
    partial: bool = False
    initial: Optional[KernelTrace] = None

    @property
    def selection(self) -> Optional[dict[str, str]]:
        return dict(self.steps) if self.feasible else None


def calc_method_2(inst: Instance, w_cap: Optional[int] = None) -> SolveTrace:
    """Find a disparate selection by kernel reduction and commitment."""
    _, partial = _resolve_cap(inst, w_cap)
    trace = SolveTrace(partial=partial)
    current = inst
    while len(current):
        kt = calc_method_1(current, w_cap)
        if trace.initial is None:
            trace.initial = kt
        if not kt.feasible:
            return trace
        x, y = min(kt.kernel)
        trace.steps.append((x, y))
        current = commit(with_graph(current, kt.kernel), x, y)
    trace.feasible = True
    return trace


def is_disparate_mapping(inst: Instance) -> bool:
    """``G(F)`` is nonempty and equals its own kernel."""
    G = graph_of(inst)
    if not G:
        return False
    trace = calc_method_1(inst)
    return trace.feasible and trace.kernel == G


def has_unique_selection(inst: Instance, w_cap: Optional[int] = None) -> bool:
    """Every kernel fiber is a singleton."""
    trace = calc_method_1(inst, w_cap)
    if not trace.feasible:
        return False
    fibers = trace.fibers()
    return all(len(fibers.get(x, ())) == 1 for x in inst.vertices)
