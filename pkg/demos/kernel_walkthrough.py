"""Reduce a small list-coloring instance to its kernel, one elimination step at a time.

A four-cycle where two opposite corners are forced. Each step names the vertex
set W whose outside points cannot coexist with any selection on W, and the
points that are dropped for that reason.
"""
from disparate import Instance, calc_method_1, calc_method_2, count_selections, kernel_bruteforce

inst = Instance.build(
    vertices=["a", "b", "c", "d"],
    edges=[["a", "b"], ["b", "c"], ["c", "d"], ["d", "a"]],
    colors=["1", "2", "3"],
    domains={"a": ["1"], "b": ["1", "2", "3"], "c": ["2"], "d": ["1", "2", "3"]},
)

print("domains:")
for x in inst.vertices:
    print(f"  {x}: {' '.join(inst.sorted_domain(x))}")

trace = calc_method_1(inst)
print("\nelimination steps (index, W, removed points):")
for line in trace.lines():
    print(" ", line.replace("\t", "  "))

print("\nkernel:")
for x, ys in trace.fibers().items():
    print(f"  {x}: {' '.join(ys)}")

assert trace.kernel == kernel_bruteforce(inst)
print("\nthe kernel matches the points used by some selection")

solve = calc_method_2(inst)
print("selection from repeated commit-and-reduce:", solve.selection)
print("number of selections:", count_selections(inst))
