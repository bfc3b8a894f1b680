"""Named property suites run against a single instance.

Each suite draws random sub-objects (point sets, vertex sets, submappings,
cascades) from a seeded generator and checks identities that must hold for
every instance. A suite returns the number of cases checked and, on failure,
the instance that exhibits it together with a one-line description.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional

from . import oracle
from .cascades import (
    cascade_derive,
    cascade_structure,
    derive_collection,
    induced_collection,
    is_hall_collection,
    is_w_distributed,
    nonempty_subsets,
    restrict_collection,
    submap_from_collection,
)
from .core import commit, compl, complement_mapping, hull, is_disparate_set
from .instance import Instance, Point, graph_of, restrict, with_graph
from .kernel import calc_method_1, calc_method_2, elimination_points
from .transitive import (
    hall_check_transitive,
    is_t_critical,
    is_transitive,
    minimal_t_critical_sets,
    size_transitive,
    solve_transitive,
)

DEFAULT_SEED = 20240229
SUBSET_SUITE_CAP = 6


class SuiteError(ValueError):
    """The instance is outside what the suite can check."""


@dataclass
class SuiteResult:
    suite: str
    cases: int
    counterexample: Optional[Instance] = None
    failure: str = ""

    @property
    def passed(self) -> bool:
        return self.counterexample is None


class _Failed(Exception):
    def __init__(self, inst: Instance, what: str):
        super().__init__(what)
        self.inst = inst
        self.what = what


def _check(ok: bool, inst: Instance, what: str) -> None:
    if not ok:
        raise _Failed(inst, what)


def random_subset(rng: random.Random, items, p: Optional[float] = None) -> frozenset:
    """Each item kept independently; ``p`` itself is random when not given."""
    items = sorted(items)
    p = rng.random() if p is None else p
    return frozenset(i for i in items if rng.random() < p)


def random_disparate_set(rng: random.Random, inst: Instance, pool) -> frozenset[Point]:
    """Greedy disparate subset of ``pool`` in random order."""
    pts = sorted(pool)
    rng.shuffle(pts)
    out: list[Point] = []
    for p in pts:
        if rng.random() < 0.7 and is_disparate_set(inst, out + [p]):
            out.append(p)
    return frozenset(out)


def _calculus(inst: Instance, rng: random.Random, draws: int) -> int:
    U = inst.universe()
    X = frozenset(inst.vertices)
    for _ in range(draws):
        if rng.random() < 0.5:
            A, B = random_subset(rng, U), random_subset(rng, U)
        else:
            A, B = random_disparate_set(rng, inst, U), random_disparate_set(rng, inst, U)
        hA, cA = hull(inst, A), compl(inst, A)
        _check(not hA & cA, inst, "hull(A) and compl(A) intersect")
        _check(hA | cA == U, inst, "hull(A) and compl(A) do not cover X x Y")
        _check(cA == U - hA, inst, "compl(A) differs from the complement of hull(A)")
        _check(A <= hA and not A & cA, inst, "A is not inside hull(A)")
        AB = A | B
        _check(hA <= hull(inst, AB), inst, "hull is not monotone")
        _check(compl(inst, AB) <= cA, inst, "compl is not antitone")
        _check(A <= compl(inst, cA), inst, "A is not inside compl(compl(A))")
        lhs = is_disparate_set(inst, A) and is_disparate_set(inst, B) and B <= cA
        rhs = not A & B and is_disparate_set(inst, AB)
        _check(lhs == rhs, inst, "disparate-union equivalence fails")

        W = random_subset(rng, X)
        V = random_subset(rng, X - W)
        Z = random_subset(rng, U)
        hZ, cZ = hull(inst, Z), compl(inst, Z)
        WY = frozenset(p for p in U if p[0] in W)
        VY = frozenset(p for p in U if p[0] in V)
        left = WY | (VY & hZ)
        _check(left | (VY & cZ) == WY | VY, inst, "decomposition union fails")
        _check(not left & (VY & cZ), inst, "decomposition pieces overlap")

        GW = graph_of(restrict(inst, W))
        Zw = random_subset(rng, GW)
        cm = complement_mapping(inst, W, Zw)
        want = graph_of(restrict(inst, X - W)) & compl(inst, Zw)
        _check(graph_of(cm) == want, inst, "complement mapping graph identity fails")
    return draws


def _kernel(inst: Instance, rng: random.Random, draws: int) -> int:
    solvable = oracle.exists_selection(inst)
    G = graph_of(inst)
    trace = calc_method_1(inst)
    _check(trace.feasible == solvable, inst, "calc_method_1 feasibility disagrees with the oracle")
    st = calc_method_2(inst)
    _check(st.feasible == solvable, inst, "calc_method_2 feasibility disagrees with the oracle")
    if st.feasible:
        sel = st.selection
        _check(
            all(sel[x] in inst.domain(x) for x in inst.vertices)
            and is_disparate_set(inst, sel.items()),
            inst,
            "calc_method_2 returned an invalid selection",
        )
    for x, y in sorted(G):
        pinned = oracle.first_selection(oracle.pin(inst, x, y)) is not None
        _check(
            pinned == oracle.exists_selection(commit(inst, x, y)),
            inst,
            f"commitment lemma fails at {(x, y)}",
        )
    cases = 1 + len(G)
    if not solvable:
        return cases
    K = trace.kernel
    _check(K == oracle.kernel_bruteforce(inst), inst, "kernel differs from brute force")
    KF = with_graph(inst, K)
    _check(calc_method_1(KF).kernel == K, inst, "kernel is not idempotent")
    removed: set[Point] = set()
    for W in nonempty_subsets(inst.vertices):
        if len(W) == len(inst):
            continue
        elim = elimination_points(inst, W)
        _check(not elim & K, inst, f"kernel meets elim(W) for W={sorted(W)}")
        _check(not elimination_points(KF, W), inst, f"kernel has elimination points at W={sorted(W)}")
        removed |= elim
    cases += 1
    if G:
        _check(G == K | removed, inst, "G(F) is not the kernel plus all elimination points")
    for _ in range(draws):
        Q = with_graph(inst, random_subset(rng, G, 0.8))
        QK = oracle.kernel_bruteforce(Q)
        _check(QK <= K, inst, "kernel is not monotone under submappings")
        S = with_graph(inst, K | random_subset(rng, G - K))
        tq = calc_method_1(S)
        _check(tq.feasible and tq.kernel == K, inst, "sandwich property fails")
    return cases + draws


def _necessity(inst: Instance, rng: random.Random, draws: int) -> int:
    if len(inst) > SUBSET_SUITE_CAP:
        raise SuiteError(f"necessity suite needs at most {SUBSET_SUITE_CAP} vertices")
    X = frozenset(inst.vertices)
    cases = 0
    for s in oracle.enumerate_selections(inst, 5) if len(inst) else []:
        H = induced_collection(inst, s)
        _check(is_hall_collection(inst, H), inst, f"H^s is not a Hall collection for s={s}")
        for W in nonempty_subsets(X):
            if W == X:
                continue
            cases += 1
            rest = X - W
            _check(is_w_distributed(inst, H, W), inst, f"H^s is not {sorted(W)}-distributed")
            HW = restrict_collection(H, W)
            _check(
                all(A == frozenset((x, s[x]) for x in V) for V, A in HW.items()),
                inst,
                "H^s|_W is not the restricted selection graphs",
            )
            _check(HW.union() == frozenset((x, s[x]) for x in W), inst, "union of H^s|_W")
            D = derive_collection(inst, H, W)
            _check(
                all(A == frozenset((x, s[x]) for x in V) for V, A in D.items()),
                inst,
                "H^s_W is not the restricted selection graphs",
            )
            _check(D.union() == frozenset((x, s[x]) for x in rest), inst, "union of H^s_W")
            tilde = submap_from_collection(inst, H, W)
            _check(
                all(s[x] in tilde.domain(x) for x in W),
                inst,
                "s|_W is not a selection of F^{H^s_W}",
            )
            outer = complement_mapping(inst, W, graph_of(tilde))
            _check(
                all(s[x] in outer.domain(x) for x in rest),
                inst,
                "s restricted outside W is not a selection of the complement mapping",
            )
    return cases


def random_cascade(rng: random.Random, base: frozenset, k: int) -> list[frozenset]:
    """A random cascade of nonempty steps, stopping early when it runs out of room."""
    steps: list[frozenset] = []
    prev, prev_c = base, base
    for _ in range(k):
        hosts = [h for h in (prev, prev_c) if h]
        if not hosts:
            break
        host = rng.choice(hosts)
        W = random_subset(rng, host) or frozenset([rng.choice(sorted(host))])
        steps.append(W)
        prev_c = prev - W if W <= prev else prev_c - W
        prev = W
    return steps


def _cascades(inst: Instance, rng: random.Random, draws: int) -> int:
    if len(inst) > SUBSET_SUITE_CAP:
        raise SuiteError(f"cascade suite needs at most {SUBSET_SUITE_CAP} vertices")
    X = frozenset(inst.vertices)
    sels = oracle.enumerate_selections(inst, 5) if X else []
    cases = 0
    for _ in range(draws):
        steps = random_cascade(rng, X, rng.randint(1, 4))
        if not steps:
            continue
        cases += 1
        C = cascade_structure(X, steps)
        _check(
            all(C.pre[i] == C.steps[i] | C.complements[i] for i in range(len(C))),
            inst,
            "pre(i) differs from W_i | W^c_i",
        )
        # the complementary tuple is again a cascade as long as no complement
        # is empty; (X, X, {2}, {1,3}) on three vertices shows the need
        if all(C.complements):
            try:
                cascade_structure(X, C.complements)
            except ValueError:
                _check(False, inst, "complementary tuple is not a cascade")
        if not sels or len(C) < 3:
            continue
        s = rng.choice(sels)
        H = induced_collection(inst, s)
        H1, F1 = cascade_derive(inst, H, C, 1)
        shifted = cascade_structure(C.pre[1], C.steps[1:])
        for i in range(1, len(C)):
            Hi, Fi = cascade_derive(inst, H, C, i)
            Hs, Fs = cascade_derive(F1, H1, shifted, i - 1)
            _check(Fi == Fs, inst, f"mapping shift identity fails at i={i}")
            _check(Hi.table() == Hs.table(), inst, f"collection shift identity fails at i={i}")
            pre = C.pre[i]
            _check(frozenset(Fi.vertices) == pre, inst, f"F(W_1..W_{i}) is not on pre({i + 1})")
            _check(
                all(s[x] in Fi.domain(x) for x in pre),
                inst,
                f"s|pre({i + 1}) is not a selection of F(W_1..W_{i})",
            )
            _check(
                all(A == frozenset((x, s[x]) for x in V) for V, A in Hi.items()),
                inst,
                f"H^s(W_1..W_{i}) is not induced by s|pre({i + 1})",
            )
    return cases


def _transitive(inst: Instance, rng: random.Random, draws: int) -> int:
    if not is_transitive(inst):
        raise SuiteError("transitive suite needs a transitive graph")
    solvable = oracle.exists_selection(inst)
    bad = hall_check_transitive(inst)
    sel = solve_transitive(inst)
    _check((bad is None) == solvable, inst, "transitive Hall check disagrees with the oracle")
    _check((sel is not None) == solvable, inst, "transitive solver disagrees with the oracle")
    if sel is not None:
        _check(is_disparate_set(inst, sel.items()), inst, "transitive solver output is not disparate")
    if bad is not None:
        _check(
            size_transitive(inst, graph_of(restrict(inst, bad))) < len(bad),
            inst,
            "reported W does not violate the size bound",
        )
    U = inst.universe()
    for _ in range(draws):
        G = random_subset(rng, U)
        k = size_transitive(inst, G)
        _check(k == oracle.max_disparate_size(inst, G), inst, "closed-form size differs from brute force")
        _check(k == size_transitive(inst, hull(inst, G)), inst, "size(G) differs from size(hull(G))")
    cases = 1 + draws
    if len(inst) > SUBSET_SUITE_CAP:
        return cases
    for W in nonempty_subsets(inst.vertices):
        if len(W) == len(inst):
            continue
        cases += 1
        base = size_transitive(inst, graph_of(restrict(inst, W)))
        for x in sorted(frozenset(inst.vertices) - W):
            local = restrict(inst, W | {x})
            for y in inst.colors:
                after = size_transitive(local, graph_of(commit(local, x, y, strict=False)))
                _check(base <= after + 1, inst, "one commitment lowers size by more than one")
        if is_t_critical(inst, W) is not None:
            _check(
                oracle.is_generalized_critical(inst, W) is not None,
                inst,
                f"t-critical W={sorted(W)} is not generalized critical",
            )
            _check(base <= len(W), inst, f"t-critical W={sorted(W)} has size above |W|")
    _check(
        oracle.minimal_critical_sets(inst) == minimal_t_critical_sets(inst),
        inst,
        "minimal critical sets differ from minimal t-critical sets",
    )
    return cases


SUITES: dict[str, Callable[[Instance, random.Random, int], int]] = {
    "calculus": _calculus,
    "kernel": _kernel,
    "necessity": _necessity,
    "cascades": _cascades,
    "transitive": _transitive,
}


def run_suite(name: str, inst: Instance, seed: int = DEFAULT_SEED, draws: int = 50) -> SuiteResult:
    """Run suite ``name`` on ``inst``; raises :class:`SuiteError` when inapplicable."""
    try:
        fn = SUITES[name]
    except KeyError:
        raise SuiteError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}") from None
    rng = random.Random(seed)
    try:
        cases = fn(inst, rng, draws)
    except _Failed as f:
        return SuiteResult(name, 0, f.inst, f.what)
    return SuiteResult(name, cases)
