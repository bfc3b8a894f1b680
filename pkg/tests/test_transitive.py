import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from disparate import oracle
from disparate.core import commit, hull, is_disparate_set
from disparate.instance import (
    FIX_CLIQUES,
    FIX_CONFLICT,
    FIX_PATH3,
    Instance,
    InstanceError,
    graph_of,
    restrict,
)
from disparate.transitive import (
    NotTransitiveError,
    clique_components,
    hall_check_transitive,
    is_t_critical,
    is_transitive,
    max_matching,
    minimal_t_critical_sets,
    size_transitive,
    solve_transitive,
)
from helpers import build, random_transitive_instance, transitive_instances

EDGELESS = Instance.build(["1", "2"], [], ["1", "2"], {"1": ["1", "2"], "2": ["1", "2"]})
K3 = Instance.build(["1", "2", "3"], [["1", "2"], ["1", "3"], ["2", "3"]], ["1"], {"1": ["1"], "2": ["1"], "3": ["1"]})


def test_is_transitive_examples():
    assert is_transitive(FIX_CLIQUES)
    assert not is_transitive(FIX_PATH3)
    assert is_transitive(EDGELESS)


def test_clique_components_examples():
    assert clique_components(FIX_CLIQUES).cliques == ({"1", "2"}, {"3", "4"})
    assert clique_components(EDGELESS).cliques == ({"1"}, {"2"})
    assert clique_components(K3).cliques == ({"1", "2", "3"},)
    with pytest.raises(NotTransitiveError):
        clique_components(FIX_PATH3)


def test_size_examples():
    assert size_transitive(FIX_CLIQUES, graph_of(FIX_CLIQUES)) == 4
    assert size_transitive(FIX_CONFLICT, graph_of(FIX_CONFLICT)) == 1
    assert size_transitive(FIX_CLIQUES, set()) == 0


def test_t_critical_examples():
    assert is_t_critical(FIX_CONFLICT, {"2"}) == ("1", "1")
    assert is_t_critical(FIX_CLIQUES, {"1"}) is None
    assert is_t_critical(EDGELESS, {"1"}) is None
    with pytest.raises(InstanceError):
        is_t_critical(FIX_CLIQUES, set())
    with pytest.raises(NotTransitiveError):
        is_t_critical(FIX_PATH3, {"1"})


def test_hall_check_examples():
    assert hall_check_transitive(FIX_CONFLICT) == {"1", "2"}
    assert hall_check_transitive(FIX_CLIQUES) is None
    lone = Instance.build(["x"], [], ["1"], {"x": []})
    assert hall_check_transitive(lone) == {"x"}


def test_solve_examples():
    assert solve_transitive(FIX_CLIQUES) == {"1": "1", "2": "2", "3": "1", "4": "2"}
    assert solve_transitive(FIX_CONFLICT) is None
    sel = solve_transitive(EDGELESS)
    assert sel and all(sel[x] in EDGELESS.domain(x) for x in EDGELESS.vertices)


def test_max_matching_is_maximum():
    adj = {"a": ["p", "q"], "b": ["p"], "c": ["q"]}
    assert len(max_matching(["a", "b", "c"], adj)) == 2
    assert max_matching(["a", "b"], {"a": ["p"], "b": ["p", "q"]}) == {"a": "p", "b": "q"}


@given(transitive_instances())
def test_solver_agrees_with_oracle(inst):
    sel = solve_transitive(inst)
    bad = hall_check_transitive(inst)
    assert (sel is not None) == (bad is None) == oracle.exists_selection(inst)
    if sel is not None:
        assert is_disparate_set(inst, sel.items())
    else:
        assert size_transitive(inst, graph_of(restrict(inst, bad))) < len(bad)


@given(transitive_instances(), st.randoms(use_true_random=False))
def test_closed_form_size(inst, rng):
    U = sorted(inst.universe())
    G = [p for p in U if rng.random() < 0.5]
    k = size_transitive(inst, G)
    assert k == oracle.max_disparate_size(inst, G)
    assert k == size_transitive(inst, hull(inst, G))


@given(transitive_instances(max_vertices=5, max_colors=3))
@settings(max_examples=60)
def test_t_critical_lemmas(inst):
    X = frozenset(inst.vertices)
    for k in range(1, len(X)):
        for W in map(frozenset, combinations(sorted(X), k)):
            base = size_transitive(inst, graph_of(restrict(inst, W)))
            for x in sorted(X - W):
                local = restrict(inst, W | {x})
                for y in inst.colors:
                    after = size_transitive(local, graph_of(commit(local, x, y, strict=False)))
                    assert base <= after + 1
            if is_t_critical(inst, W):
                assert oracle.is_generalized_critical(inst, W)
                assert base <= len(W)
    assert oracle.minimal_critical_sets(inst) == minimal_t_critical_sets(inst)


@given(transitive_instances(max_vertices=5, max_colors=4))
def test_complete_subgraph_size_counts_colors(inst):
    dec = clique_components(inst)
    for clique in dec.cliques:
        W = sorted(clique)[: max(1, len(clique) - 1)]
        colors = set().union(*(inst.domain(x) for x in W))
        assert len(colors) == size_transitive(inst, graph_of(restrict(inst, W)))


def test_size_bound_does_not_imply_t_critical():
    # smallest witness from an exhaustive search: no commit on vertex 2 touches vertex 1
    inst = build(2, 1, [], [1, 1])
    W = {"1"}
    assert size_transitive(inst, graph_of(restrict(inst, W))) <= len(W)
    assert is_t_critical(inst, W) is None


def test_critical_set_that_is_not_t_critical_exists():
    rng = random.Random(11)
    for _ in range(2000):
        inst = random_transitive_instance(rng, 5, 3)
        for k in range(1, len(inst)):
            for W in combinations(inst.vertices, k):
                if oracle.is_generalized_critical(inst, W) and is_t_critical(inst, W) is None:
                    return
    pytest.fail("no witness found")
