"""Model builders: Latin rectangle extension, distinct representatives, Sudoku."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Optional, Sequence

from . import oracle
from .instance import Instance, InstanceError
from .kernel import calc_method_1, calc_method_2
from .transitive import hall_check_transitive, solve_transitive


# -- Latin rectangles ---------------------------------------------------------


@dataclass(frozen=True)
class LatinRectangle:
    """An ``r x s`` block of a Latin square of order ``n`` (values ``1..n``)."""

    n: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = self.entries
        if not rows:
            raise InstanceError("a rectangle needs at least one row")
        s = len(rows[0])
        if any(len(row) != s for row in rows):
            raise InstanceError("ragged rectangle")
        if not (1 <= len(rows) <= self.n and 1 <= s <= self.n):
            raise InstanceError("need 1 <= r, s <= n")
        for row in rows:
            if any(not 1 <= v <= self.n for v in row):
                raise InstanceError(f"values must lie in 1..{self.n}")
            if len(set(row)) != len(row):
                raise InstanceError(f"repeated value in row {list(row)}")
        for c in range(s):
            col = [row[c] for row in rows]
            if len(set(col)) != len(col):
                raise InstanceError(f"repeated value in column {c + 1}")

    @classmethod
    def from_rows(cls, n: int, rows: Sequence[Sequence[int]]) -> "LatinRectangle":
        return cls(n, tuple(tuple(int(v) for v in row) for row in rows))

    @property
    def r(self) -> int:
        return len(self.entries)

    @property
    def s(self) -> int:
        return len(self.entries[0])

    def occurrences(self) -> dict[int, int]:
        """``N(v)`` for every value."""
        c = Counter(v for row in self.entries for v in row)
        return {v: c[v] for v in range(1, self.n + 1)}

    def missing_rows(self, v: int) -> list[int]:
        """``R(v)``: 1-based rows that do not contain ``v``."""
        return [i for i, row in enumerate(self.entries, start=1) if v not in row]


def parse_rectangle(text: str) -> LatinRectangle:
    """``n r s`` on the first line, then ``r`` rows of ``s`` integers."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    try:
        n, r, s = (int(t) for t in lines[0])
        rows = [[int(t) for t in ln] for ln in lines[1:]]
    except (IndexError, ValueError):
        raise InstanceError("malformed rectangle document") from None
    if len(rows) != r or any(len(row) != s for row in rows):
        raise InstanceError(f"expected {r} rows of {s} values")
    return LatinRectangle.from_rows(n, rows)


def format_rectangle(rect: LatinRectangle) -> str:
    head = f"{rect.n} {rect.r} {rect.s}"
    return "\n".join([head] + [" ".join(map(str, row)) for row in rect.entries]) + "\n"


def _cell_token(n: int, v: int, row: int) -> str:
    w = len(str(n))
    return f"v{v:0{w}d}r{row:0{w}d}"


def ryser_build(rect: LatinRectangle) -> Instance:
    """Vertices ``(v, row)`` for each row missing ``v``; colors are the free columns.

    Two vertices are adjacent when they carry the same value, so the graph is a
    disjoint union of cliques.
    """
    vertices, edges = [], []
    for v in range(1, rect.n + 1):
        cells = [_cell_token(rect.n, v, row) for row in rect.missing_rows(v)]
        vertices += cells
        edges += [list(p) for p in combinations(cells, 2)]
    colors = [str(c) for c in range(rect.s + 1, rect.n + 1)]
    return Instance.build(vertices, edges, colors, {x: colors for x in vertices})


def ryser_condition(rect: LatinRectangle) -> Optional[int]:
    """First value ``v`` with ``N(v) < r + s - n``, or ``None``."""
    bound = rect.r + rect.s - rect.n
    for v, count in rect.occurrences().items():
        if count < bound:
            return v
    return None


def _edge_color(rect: LatinRectangle) -> Optional[list[list[int]]]:
    """Fill columns ``s+1..n`` by properly edge-coloring rows x missing values.

    Rows have degree ``n - s`` and value ``v`` has degree ``r - N(v)``; with
    every degree at most ``n - s`` a proper coloring by ``n - s`` colors exists
    (Konig), and each color class becomes one new column.
    """
    k = rect.n - rect.s
    at_row = {row: [None] * k for row in range(1, rect.r + 1)}
    at_val = {v: [None] * k for v in range(1, rect.n + 1)}

    def free(slots):
        return next((c for c, who in enumerate(slots) if who is None), None)

    for v in range(1, rect.n + 1):
        for row in rect.missing_rows(v):
            a, b = free(at_row[row]), free(at_val[v])
            if a is None or b is None:
                return None
            if at_val[v][a] is not None:
                # swap colors a/b along the alternating path leaving v by color a
                path, node, side, colour = [], v, "val", a
                while True:
                    other = (at_val if side == "val" else at_row)[node][colour]
                    if other is None:
                        break
                    edge = (node, other) if side == "val" else (other, node)
                    path.append((edge, colour))
                    node, side = other, ("row" if side == "val" else "val")
                    colour = b if colour == a else a
                for (pv, prow), c in path:
                    at_val[pv][c] = None
                    at_row[prow][c] = None
                for (pv, prow), c in path:
                    d = b if c == a else a
                    at_val[pv][d] = prow
                    at_row[prow][d] = pv
            at_row[row][a] = v
            at_val[v][a] = row
    return [
        list(rect.entries[row - 1]) + [at_row[row][c] for c in range(k)]
        for row in range(1, rect.r + 1)
    ]


def ryser_extend(rect: LatinRectangle) -> Optional[LatinRectangle]:
    """Extend to an ``r x n`` Latin rectangle, or ``None`` if impossible.

    Existence is decided on the clique model by :func:`solve_transitive`. The
    model only separates equal values, not values sharing a row, so the
    selection is not itself a placement; the columns are produced by edge
    coloring instead.
    """
    if rect.s == rect.n:
        return rect
    if solve_transitive(ryser_build(rect)) is None:
        return None
    rows = _edge_color(rect)
    if rows is None:
        raise AssertionError("model is solvable but edge coloring failed")
    return LatinRectangle.from_rows(rect.n, rows)


# -- Systems of distinct representatives --------------------------------------


def sdr_instance(family: Sequence[set]) -> tuple[Instance, list[str], dict[str, Hashable]]:
    """Complete graph on the sets, each set's elements as its domain.

    Returns the instance, the vertex name of each set and the element behind
    each color token.
    """
    tokens: dict[str, Hashable] = {}
    for sset in family:
        for e in sset:
            t = str(e)
            if tokens.setdefault(t, e) != e:
                raise InstanceError(f"elements {tokens[t]!r} and {e!r} share a token")
    w = len(str(len(family)))
    names = [f"s{i:0{w}d}" for i in range(len(family))]
    edges = [list(p) for p in combinations(names, 2)]
    inst = Instance.build(
        names, edges, sorted(tokens), {x: [str(e) for e in sset] for x, sset in zip(names, family)}
    )
    return inst, names, tokens


def hall_violation(family: Sequence[set]) -> Optional[list[int]]:
    """Indices of sets whose union is smaller than their number, or ``None``."""
    inst, names, _ = sdr_instance(family)
    bad = hall_check_transitive(inst)
    if bad is None:
        return None
    return [i for i, x in enumerate(names) if x in bad]


def hall_sdr_solve(family: Sequence[set]) -> Optional[list[Hashable]]:
    """Pairwise distinct representatives, one from each set, or ``None``."""
    inst, names, tokens = sdr_instance(family)
    sel = solve_transitive(inst)
    if sel is None:
        return None
    return [tokens[sel[x]] for x in names]


# -- Sudoku -------------------------------------------------------------------


@dataclass(frozen=True)
class SudokuGrid:
    """A ``b^2 x b^2`` grid; ``0`` marks a blank."""

    box_order: int
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        N = self.box_order ** 2
        if self.box_order < 1 or len(self.cells) != N or any(len(r) != N for r in self.cells):
            raise InstanceError(f"grid must be {N}x{N}")
        for unit in self.units():
            vals = [self.cells[r][c] for r, c in unit if self.cells[r][c]]
            if any(not 1 <= v <= N for v in vals):
                raise InstanceError(f"values must lie in 1..{N}")
            if len(set(vals)) != len(vals):
                raise InstanceError("invalid givens: repeated value in a unit")

    @property
    def size(self) -> int:
        return self.box_order ** 2

    def units(self) -> list[list[tuple[int, int]]]:
        N, b = self.size, self.box_order
        rows = [[(r, c) for c in range(N)] for r in range(N)]
        cols = [[(r, c) for r in range(N)] for c in range(N)]
        boxes = [
            [(br + i, bc + j) for i in range(b) for j in range(b)]
            for br in range(0, N, b)
            for bc in range(0, N, b)
        ]
        return rows + cols + boxes

    def is_complete(self) -> bool:
        return all(all(row) for row in self.cells)


def parse_sudoku(text: str) -> SudokuGrid:
    """``b`` on the first line, then ``b^2`` rows; ``.`` or ``0`` is blank."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    try:
        b = int(lines[0][0])
        rows = [[0 if t == "." else int(t) for t in ln] for ln in lines[1:]]
    except (IndexError, ValueError):
        raise InstanceError("malformed sudoku document") from None
    return SudokuGrid(b, tuple(tuple(r) for r in rows))


def format_sudoku(grid: SudokuGrid) -> str:
    body = [" ".join(str(v) if v else "." for v in row) for row in grid.cells]
    return "\n".join([str(grid.box_order)] + body) + "\n"


def _sudoku_token(grid: SudokuGrid, r: int, c: int) -> str:
    w = len(str(grid.size))
    return f"r{r + 1:0{w}d}c{c + 1:0{w}d}"


def sudoku_instance(grid: SudokuGrid) -> Instance:
    """Blank cells become vertices; givens are folded into the domains."""
    N = grid.size
    blanks = {
        (r, c): _sudoku_token(grid, r, c)
        for r in range(N)
        for c in range(N)
        if not grid.cells[r][c]
    }
    seen: dict[tuple[int, int], set[int]] = {cell: set() for cell in blanks}
    edges = set()
    for unit in grid.units():
        givens = {grid.cells[r][c] for r, c in unit if grid.cells[r][c]}
        open_cells = [cell for cell in unit if cell in blanks]
        for cell in open_cells:
            seen[cell] |= givens
        for a, b in combinations(open_cells, 2):
            edges.add(frozenset((blanks[a], blanks[b])))
    colors = [str(v) for v in range(1, N + 1)]
    domains = {
        blanks[cell]: [str(v) for v in range(1, N + 1) if v not in seen[cell]] for cell in blanks
    }
    return Instance.build(blanks.values(), [sorted(e) for e in edges], colors, domains)


@dataclass
class SudokuReport:
    solution: Optional[SudokuGrid]
    unique: Optional[bool] = None
    kernel: Optional[dict[str, list[str]]] = None
    partial: bool = False


def _fill(grid: SudokuGrid, sel: dict[str, str]) -> SudokuGrid:
    N = grid.size
    rows = [
        [grid.cells[r][c] or int(sel[_sudoku_token(grid, r, c)]) for c in range(N)]
        for r in range(N)
    ]
    return SudokuGrid(grid.box_order, tuple(tuple(r) for r in rows))


def sudoku_solve(grid: SudokuGrid, w_cap: Optional[int] = None, unique: bool = False) -> SudokuReport:
    """Solve by reduce-and-commit and optionally decide uniqueness from the kernel.

    Boxes of order 2 run the exhaustive elimination search by default; larger
    grids default to ``w_cap = 1`` and are reported as partial. A capped run
    that fails to finish falls back to plain backtracking for the solution.
    """
    inst = sudoku_instance(grid)
    if w_cap is None and grid.box_order > 2:
        w_cap = 1
    trace = calc_method_2(inst, w_cap)
    sel = trace.selection
    if sel is None and trace.partial:
        sel = oracle.first_selection(inst)
    report = SudokuReport(_fill(grid, sel) if sel is not None else None, partial=trace.partial)
    if unique and sel is None:
        report.unique = False
    elif unique:
        kt = trace.initial or calc_method_1(inst, w_cap)
        report.kernel = kt.fibers() if kt.feasible else None
        singletons = kt.feasible and all(len(ys) == 1 for ys in kt.fibers().values())
        if kt.partial and not singletons:
            # an over-approximated kernel cannot refute uniqueness
            report.unique = oracle.count_selections(inst, cap=2) == 1
        else:
            report.unique = bool(singletons)
    return report
