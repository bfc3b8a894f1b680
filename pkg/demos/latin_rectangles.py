"""Extend Latin rectangles column by column, and see when it is impossible.

An r x s rectangle of order n extends to r x n exactly when every value
already appears at least r + s - n times.
"""
from disparate.applications import (
    LatinRectangle,
    format_rectangle,
    ryser_build,
    ryser_condition,
    ryser_extend,
)
from disparate.transitive import clique_components, hall_check_transitive

good = LatinRectangle.from_rows(5, [[1, 2, 3], [2, 3, 4], [3, 4, 5]])
bad = LatinRectangle.from_rows(4, [[1, 2], [2, 3], [3, 1]])

for name, rect in (("good", good), ("bad", bad)):
    print(f"== {name}")
    print(format_rectangle(rect), end="")
    model = ryser_build(rect)
    dec = clique_components(model)
    print(f"model: {len(model)} vertices in {len(dec.cliques)} cliques, colors {list(model.colors)}")
    v = ryser_condition(rect)
    if v is None:
        print("every value is frequent enough; extension:")
        print(format_rectangle(ryser_extend(rect)), end="")
    else:
        print(f"value {v} is too rare; the model fails Hall on {sorted(hall_check_transitive(model))}")
    print()
