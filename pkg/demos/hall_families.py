"""Distinct representatives for a family of sets, and a witness when there are none."""
from disparate.applications import hall_sdr_solve, hall_violation

families = {
    "committee": [{"ann", "bo"}, {"bo"}, {"bo", "cy", "di"}, {"ann", "di"}],
    "overbooked": [{1, 2}, {2, 3}, {1, 3}, {1, 2, 3}, {4}],
}

for name, family in families.items():
    print(f"== {name}: {[sorted(s) for s in family]}")
    reps = hall_sdr_solve(family)
    if reps is not None:
        print("representatives:", reps)
    else:
        idx = hall_violation(family)
        union = set().union(*(family[i] for i in idx))
        print(f"sets {idx} share only {sorted(union)}: {len(idx)} sets, {len(union)} elements")
    print()
