"""Decide whether a 4x4 Sudoku has a unique solution from its kernel alone.

Blank cells are vertices, givens shrink their domains, and cells sharing a row,
column or box are adjacent. The solution is unique exactly when every kernel
fiber is a single value.
"""
from disparate.applications import format_sudoku, parse_sudoku, sudoku_solve

PUZZLES = {
    "unique": "2\n. 2 . 4\n3 . . .\n. . . 3\n4 . 2 .\n",
    "ambiguous": "2\n1 . . 4\n. . 1 .\n. 1 . .\n4 . . 1\n",
}

for name, text in PUZZLES.items():
    grid = parse_sudoku(text)
    report = sudoku_solve(grid, unique=True)
    print(f"== {name} puzzle")
    print(format_sudoku(grid), end="")
    print("kernel fibers:")
    for cell, ys in report.kernel.items():
        print(f"  {cell}: {' '.join(ys)}")
    print("one solution:")
    print(format_sudoku(report.solution), end="")
    print(f"unique: {report.unique}\n")
