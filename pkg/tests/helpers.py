"""Generators and independent brute-force references shared by the tests.

Nothing here calls the solvers under test: selections, Latin extensions and
Sudoku completions are counted by plain ``itertools.product`` or backtracking
written from the definitions.
"""
from __future__ import annotations

import random
from itertools import combinations, combinations_with_replacement, permutations, product

from hypothesis import strategies as st

from disparate.applications import LatinRectangle, SudokuGrid
from disparate.instance import Instance

DENSITIES = (0.0, 0.3, 0.6, 1.0)


def names(n: int) -> list[str]:
    return [str(i) for i in range(1, n + 1)]


def build(n: int, m: int, edges, doms) -> Instance:
    """Instance on vertices ``1..n`` and colors ``1..m``; ``doms`` are color bitmasks."""
    V, C = names(n), names(m)
    return Instance.build(
        V,
        [[V[a], V[b]] for a, b in edges],
        C,
        {V[i]: [C[j] for j in range(m) if d >> j & 1] for i, d in enumerate(doms)},
    )


def random_instance(rng: random.Random, max_vertices: int = 6, max_colors: int = 5) -> Instance:
    n = rng.randint(1, max_vertices)
    m = rng.randint(1, max_colors)
    density = rng.choice(DENSITIES)
    keep = rng.uniform(0.3, 1.0)
    edges = [e for e in combinations(range(n), 2) if rng.random() < density]
    doms = [sum(1 << j for j in range(m) if rng.random() < keep) for _ in range(n)]
    return build(n, m, edges, doms)


def random_partition(rng: random.Random, n: int) -> list[list[int]]:
    blocks: list[list[int]] = []
    for v in range(n):
        k = rng.randint(0, len(blocks))
        if k == len(blocks):
            blocks.append([v])
        else:
            blocks[k].append(v)
    return blocks


def clique_edges(blocks) -> list[tuple[int, int]]:
    return [e for b in blocks for e in combinations(b, 2)]


def random_transitive_instance(
    rng: random.Random, max_vertices: int = 10, max_colors: int = 6
) -> Instance:
    n = rng.randint(1, max_vertices)
    m = rng.randint(1, max_colors)
    keep = rng.uniform(0.2, 0.9)
    doms = [sum(1 << j for j in range(m) if rng.random() < keep) for _ in range(n)]
    return build(n, m, clique_edges(random_partition(rng, n)), doms)


def all_instances(n: int, m: int):
    """Every instance on ``n`` labelled vertices and ``m`` colors."""
    pairs = list(combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        edges = [e for i, e in enumerate(pairs) if bits >> i & 1]
        for doms in product(range(1 << m), repeat=n):
            yield build(n, m, edges, doms)


def _relabel(perm, edges) -> frozenset:
    return frozenset(frozenset((perm[a], perm[b])) for a, b in edges)


def _color_maps(m: int) -> list[list[int]]:
    maps = []
    for cp in permutations(range(m)):
        maps.append([sum(1 << cp[j] for j in range(m) if d >> j & 1) for d in range(1 << m)])
    return maps


def instance_classes(n: int, m: int):
    """One instance per isomorphism class (vertex relabelling and color permutation)."""
    pairs = list(combinations(range(n), 2))
    perms = list(permutations(range(n)))
    graphs: dict[tuple, list] = {}
    for bits in range(1 << len(pairs)):
        edges = [e for i, e in enumerate(pairs) if bits >> i & 1]
        key = min(tuple(sorted(tuple(sorted(e)) for e in _relabel(p, edges))) for p in perms)
        graphs.setdefault(key, edges)
    cmaps = _color_maps(m)
    for edges in graphs.values():
        es = _relabel(range(n), edges)
        auts = [p for p in perms if _relabel(p, edges) == es]
        for doms in product(range(1 << m), repeat=n):
            best = doms
            for p in auts:
                moved = [0] * n
                for i, d in enumerate(doms):
                    moved[p[i]] = d
                for cm in cmaps:
                    cand = tuple(cm[d] for d in moved)
                    if cand < best:
                        best = cand
            if best == doms:
                yield build(n, m, edges, doms)


def _int_partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _int_partitions(n - k, k):
            yield (k,) + rest


def transitive_classes(n: int, m: int):
    """One transitive instance per isomorphism class."""
    cmaps = _color_maps(m)
    for shape in _int_partitions(n):
        groups: dict[int, int] = {}
        for k in shape:
            groups[k] = groups.get(k, 0) + 1
        sizes = sorted(groups, reverse=True)
        per_size = [
            list(combinations_with_replacement(
                list(combinations_with_replacement(range(1 << m), k)), groups[k]
            ))
            for k in sizes
        ]
        for choice in product(*per_size):

            def canon(cm):
                return tuple(
                    tuple(sorted(tuple(sorted(cm[d] for d in clique)) for clique in grp))
                    for grp in choice
                )

            this = canon(cmaps[0])
            if any(canon(cm) < this for cm in cmaps[1:]):
                continue
            blocks, doms, v = [], [], 0
            for grp in choice:
                for clique in grp:
                    blocks.append(list(range(v, v + len(clique))))
                    doms.extend(clique)
                    v += len(clique)
            yield build(n, m, clique_edges(blocks), doms)


@st.composite
def instances(draw, max_vertices: int = 5, max_colors: int = 4, min_vertices: int = 1):
    n = draw(st.integers(min_vertices, max_vertices))
    m = draw(st.integers(1, max_colors))
    pairs = list(combinations(range(n), 2))
    edges = [e for e in pairs if draw(st.booleans())]
    doms = [draw(st.integers(0, (1 << m) - 1)) for _ in range(n)]
    return build(n, m, edges, doms)


@st.composite
def transitive_instances(draw, max_vertices: int = 6, max_colors: int = 4):
    n = draw(st.integers(1, max_vertices))
    m = draw(st.integers(1, max_colors))
    labels = [draw(st.integers(0, n - 1)) for _ in range(n)]
    blocks = [[v for v in range(n) if labels[v] == b] for b in sorted(set(labels))]
    doms = [draw(st.integers(0, (1 << m) - 1)) for _ in range(n)]
    return build(n, m, clique_edges(blocks), doms)


def naive_selections(inst: Instance) -> list[dict[str, str]]:
    """All disparate selections by filtering the full product."""
    out = []
    for choice in product(*(sorted(ys) for ys in inst.fibers)):
        sel = dict(zip(inst.vertices, choice))
        if all(sel[a] != sel[b] for a, b in (tuple(e) for e in inst.edges)):
            out.append(sel)
    return out


# -- Latin rectangles ---------------------------------------------------------


def all_rectangles(n: int):
    """Every valid ``r x s`` Latin rectangle of order ``n``."""
    for r in range(1, n + 1):
        for s in range(1, n + 1):
            rows: list[list[int]] = []

            def rec(i):
                if i == r:
                    yield LatinRectangle.from_rows(n, rows)
                    return
                for row in permutations(range(1, n + 1), s):
                    if all(row[c] != prev[c] for prev in rows for c in range(s)):
                        rows.append(list(row))
                        yield from rec(i + 1)
                        rows.pop()

            yield from rec(0)


def random_rectangle(rng: random.Random, n: int) -> LatinRectangle:
    """Random valid rectangle; rows are drawn until the column constraint holds."""
    while True:
        r, s = rng.randint(1, n), rng.randint(1, n)
        rows: list[list[int]] = []
        for _ in range(r):
            for _attempt in range(200):
                row = rng.sample(range(1, n + 1), s)
                if all(row[c] != prev[c] for prev in rows for c in range(s)):
                    rows.append(row)
                    break
            else:
                break
        if len(rows) == r:
            return LatinRectangle.from_rows(n, rows)


def latin_extension_exists(rect: LatinRectangle) -> bool:
    """Fill columns ``s+1..n`` cell by cell; rows and columns stay duplicate-free."""
    n, r, s = rect.n, rect.r, rect.s
    grid = [list(row) + [0] * (n - s) for row in rect.entries]
    cells = [(i, c) for c in range(s, n) for i in range(r)]

    def rec(k):
        if k == len(cells):
            return True
        i, c = cells[k]
        for v in range(1, n + 1):
            if v in grid[i] or any(grid[j][c] == v for j in range(r)):
                continue
            grid[i][c] = v
            if rec(k + 1):
                return True
            grid[i][c] = 0
        return False

    return rec(0)


def is_latin(rect: LatinRectangle) -> bool:
    rows = rect.entries
    cols = list(zip(*rows))
    return all(len(set(line)) == len(line) for line in list(rows) + cols)


# -- Sudoku -------------------------------------------------------------------


def _box(r: int, c: int, b: int) -> int:
    return (r // b) * b + c // b


def sudoku_completions(grid: SudokuGrid, cap: int | None = None) -> int:
    """Count completions of ``grid`` by plain backtracking."""
    b, N = grid.box_order, grid.size
    cells = [list(row) for row in grid.cells]
    blanks = [(r, c) for r in range(N) for c in range(N) if not cells[r][c]]
    count = 0

    def ok(r, c, v):
        if v in cells[r] or any(cells[i][c] == v for i in range(N)):
            return False
        return all(
            cells[i][j] != v
            for i in range(N)
            for j in range(N)
            if _box(i, j, b) == _box(r, c, b)
        )

    def rec(k):
        nonlocal count
        if cap is not None and count >= cap:
            return
        if k == len(blanks):
            count += 1
            return
        r, c = blanks[k]
        for v in range(1, N + 1):
            if ok(r, c, v):
                cells[r][c] = v
                rec(k + 1)
                cells[r][c] = 0

    rec(0)
    return count


def random_full_sudoku(rng: random.Random, b: int = 2) -> SudokuGrid:
    N = b * b
    cells = [[0] * N for _ in range(N)]
    order = [(r, c) for r in range(N) for c in range(N)]

    def rec(k):
        if k == len(order):
            return True
        r, c = order[k]
        vals = list(range(1, N + 1))
        rng.shuffle(vals)
        for v in vals:
            if v in cells[r] or any(cells[i][c] == v for i in range(N)):
                continue
            if any(
                cells[i][j] == v for i in range(N) for j in range(N) if _box(i, j, b) == _box(r, c, b)
            ):
                continue
            cells[r][c] = v
            if rec(k + 1):
                return True
            cells[r][c] = 0
        return False

    rec(0)
    return SudokuGrid(b, tuple(tuple(row) for row in cells))


def sudoku_puzzles(rng: random.Random, count: int, b: int = 2) -> list[SudokuGrid]:
    """Puzzles from random full grids.

    Cells are blanked in random order while the completion count stays 1, up
    to a random blank budget. Every third puzzle then loses one more given, so
    the set mixes unique and ambiguous grids.
    """
    N = b * b
    out = []
    while len(out) < count:
        full = random_full_sudoku(rng, b)
        cells = [list(row) for row in full.cells]
        budget = rng.randint(4, 12)
        blanks = 0
        spots = [(r, c) for r in range(N) for c in range(N)]
        rng.shuffle(spots)
        for r, c in spots:
            if blanks >= budget:
                break
            v, cells[r][c] = cells[r][c], 0
            if sudoku_completions(SudokuGrid(b, tuple(map(tuple, cells))), cap=2) == 1:
                blanks += 1
            else:
                cells[r][c] = v
        if len(out) % 3 == 2:
            filled = [(r, c) for r in range(N) for c in range(N) if cells[r][c]]
            r, c = rng.choice(filled)
            cells[r][c] = 0
        out.append(SudokuGrid(b, tuple(map(tuple, cells))))
    return out
