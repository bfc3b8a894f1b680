"""Brute-force ground truth.

Backtracking over vertices in canonical order with forward pruning by the pair
predicate. Nothing here is clever on purpose: the rest of the package is
checked against these functions.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, islice
from typing import Iterable, Iterator, Optional, Sequence

from .core import commit, is_disparate_pair
from .instance import Instance, InstanceError, Point, restrict, vertex_set


def _selections(inst: Instance) -> Iterator[dict[str, str]]:
    order = inst.vertices
    n = len(order)
    later = {x: set(order[i + 1:]) for i, x in enumerate(order)}

    def rec(i: int, doms: dict[str, frozenset[str]], chosen: dict[str, str]):
        if i == n:
            yield dict(chosen)
            return
        x = order[i]
        for y in sorted(doms[x]):
            nxt = dict(doms)
            dead = False
            for z in inst.neighbors(x) & later[x]:
                kept = frozenset(c for c in doms[z] if is_disparate_pair(inst, (z, c), (x, y)))
                if not kept:
                    dead = True
                    break
                nxt[z] = kept
            if dead:
                continue
            chosen[x] = y
            yield from rec(i + 1, nxt, chosen)
            del chosen[x]

    if any(not ys for ys in inst.fibers):
        return iter(())
    return rec(0, inst.domains, {})


@lru_cache(maxsize=1 << 18)
def exists_selection(inst: Instance) -> bool:
    """Does ``inst`` admit a disparate selection?"""
    return next(_selections(inst), None) is not None


def first_selection(inst: Instance) -> Optional[dict[str, str]]:
    return next(_selections(inst), None)


def enumerate_selections(inst: Instance, limit: int) -> list[dict[str, str]]:
    """Disparate selections in lexicographic (vertex, color) order."""
    if limit < 1:
        raise ValueError("limit must be at least 1")
    return list(islice(_selections(inst), limit))


def count_selections(inst: Instance, cap: Optional[int] = None) -> int:
    it = _selections(inst)
    if cap is not None:
        it = islice(it, cap)
    return sum(1 for _ in it)


def pin(inst: Instance, x: str, y: str) -> Instance:
    fibers = tuple(
        frozenset({y}) if v == x else ys for v, ys in zip(inst.vertices, inst.fibers)
    )
    return Instance(inst.vertices, inst.edges, inst.colors, fibers)


def kernel_bruteforce(inst: Instance) -> frozenset[Point]:
    """Points ``(x, y)`` through which some disparate selection passes."""
    covered: set[Point] = set()
    for x, ys in zip(inst.vertices, inst.fibers):
        for y in sorted(ys):
            if (x, y) in covered:
                continue
            s = first_selection(pin(inst, x, y))
            if s is not None:
                covered.update(s.items())
    return frozenset(covered)


def max_disparate_size(inst: Instance, G: Iterable[Point]) -> int:
    """Largest disparate subset of ``G``, by exhaustive branching."""
    pts = sorted(set(G))
    nbrs = {
        p: {q for q in pts if q != p and not is_disparate_pair(inst, p, q)} for p in pts
    }

    def components(alive: set) -> list[set]:
        comps, seen = [], set()
        for p in sorted(alive):
            if p in seen:
                continue
            comp, stack = set(), [p]
            while stack:
                q = stack.pop()
                if q in comp:
                    continue
                comp.add(q)
                stack.extend(nbrs[q] & alive - comp)
            seen |= comp
            comps.append(comp)
        return comps

    def mis(alive: set) -> int:
        if not alive:
            return 0
        comps = components(alive)
        if len(comps) > 1:
            return sum(mis(c) for c in comps)
        # a point with at most one neighbour is always safe to take
        for p in sorted(alive):
            if len(nbrs[p] & alive) <= 1:
                return 1 + mis(alive - {p} - nbrs[p])
        p = max(sorted(alive), key=lambda q: len(nbrs[q] & alive))
        return max(mis(alive - {p}), 1 + mis(alive - {p} - nbrs[p]))

    return mis(set(pts))


def _check_subset(inst: Instance, W) -> frozenset[str]:
    ws = vertex_set(inst, W)
    if not ws:
        raise InstanceError("W must be nonempty")
    return ws


def is_generalized_critical(inst: Instance, W: Iterable) -> Optional[Point]:
    """First ``(x, y)`` in ``(X \\ W) x Y`` whose commitment leaves ``F|_W`` unsolvable.

    Solvability stands in for the recursive generalized Hall condition; the
    two coincide by the generalized marriage theorem.
    """
    ws = _check_subset(inst, W)
    for x in inst.vertices:
        if x in ws:
            continue
        local = restrict(inst, ws | {x})
        for y in inst.colors:
            if not exists_selection(commit(local, x, y, strict=False)):
                return (x, y)
    return None


def generalized_critical_sets(inst: Instance) -> list[tuple[frozenset[str], Point]]:
    """Every generalized critical set with its canonical witness."""
    out = []
    for k in range(1, len(inst)):
        for ws in combinations(inst.vertices, k):
            w = is_generalized_critical(inst, ws)
            if w is not None:
                out.append((frozenset(ws), w))
    return out


def minimal_critical_sets(inst: Instance) -> list[frozenset[str]]:
    """Inclusion-minimal generalized critical sets, by size then tokens."""
    crit = [ws for ws, _ in generalized_critical_sets(inst)]
    return [w for w in crit if not any(v < w for v in crit)]


class CompiledInstance:
    """Bitmask form of an instance for repeated solvability queries.

    Vertex ``i`` is ``inst.vertices[i]``; color ``j`` is ``inst.colors[j]``.
    Answers are memoized per object, keyed by the vertex mask and the domain
    masks on it, so one compiled instance should serve a whole search.
    """

    def __init__(self, inst: Instance):
        self.inst = inst
        idx = {x: i for i, x in enumerate(inst.vertices)}
        cdx = {y: j for j, y in enumerate(inst.colors)}
        self.n = len(inst.vertices)
        self.adj = [sum(1 << idx[z] for z in inst.neighbors(x)) for x in inst.vertices]
        self.dom = [sum(1 << cdx[y] for y in ys) for ys in inst.fibers]
        self._memo: dict[tuple, Optional[tuple[int, ...]]] = {}

    def solve(self, mask: int, dom: Sequence[int]) -> Optional[dict[int, int]]:
        """A list coloring ``{vertex: color bit}`` of the vertices in ``mask``, or ``None``.

        ``dom`` holds a domain mask for every vertex; only the ones in ``mask``
        are read.
        """
        key = (mask, tuple(d for i, d in enumerate(dom) if mask >> i & 1))
        if key not in self._memo:
            found = self._search(mask, list(dom))
            self._memo[key] = None if found is None else tuple(sorted(found.items()))
        hit = self._memo[key]
        return None if hit is None else dict(hit)

    def _search(self, rest: int, doms: list[int]) -> Optional[dict[int, int]]:
        if not rest:
            return {}
        # most constrained vertex first
        v, best, m = -1, 1 << 30, rest
        while m:
            low = m & -m
            i = low.bit_length() - 1
            m ^= low
            k = doms[i].bit_count()
            if k < best:
                v, best = i, k
        if best == 0:
            return None
        rest &= ~(1 << v)
        nbrs = self.adj[v] & rest
        d = doms[v]
        while d:
            bit = d & -d
            d ^= bit
            changed, ok, m = [], True, nbrs
            while m:
                low = m & -m
                u = low.bit_length() - 1
                m ^= low
                if doms[u] & bit:
                    doms[u] ^= bit
                    changed.append(u)
                    if not doms[u]:
                        ok = False
                        break
            if ok:
                sub = self._search(rest, doms)
                if sub is not None:
                    sub[v] = bit
                    for u in changed:
                        doms[u] |= bit
                    return sub
            for u in changed:
                doms[u] |= bit
        return None
