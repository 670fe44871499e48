from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import is_decomposition, path_number_by_partition
from tfgallai.decomp import (
    DecompositionError,
    PathDecomposition,
    decompose_cycle_plus_path,
    end_count,
    fan_condition,
    fan_extend,
    greedy_decomposition,
    is_gallai,
    odd_vertex_lower_bound,
    path_number_exact,
    split_to_size,
    verify,
)
from tfgallai.gen import cycle_path_instances, edge_graphs, fan_instance
from tfgallai.graph import (
    Graph,
    GraphError,
    build_graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    grid_graph,
    path_graph,
    petersen_graph,
    star_graph,
)

C4 = cycle_graph(4)


def parity_ok(g, paths):
    return all(end_count(paths, v) % 2 == g.degree(v) % 2 for v in range(g.n))


# -- verify ---------------------------------------------------------------------

def test_verify_examples():
    assert verify(path_graph(4), [[0, 1, 2, 3]])
    assert verify(C4, [[0, 1, 2], [2, 3, 0]])
    bad = verify(C4, [[0, 1, 2, 3, 0]])
    assert not bad and not bad.valid_paths
    assert bad.bad_paths == [0]


def test_verify_reports_offenders():
    rep = verify(C4, [[0, 1, 2], [1, 2, 3]])
    assert not rep.edge_disjoint and (1, 2) in rep.repeated_edges
    assert not rep.covers and (0, 3) in rep.uncovered_edges
    rep = verify(C4, [[0, 1, 2, 3]])
    assert not rep.covers and not rep.parity
    assert set(rep.parity_violations) == {0, 3}


def test_verify_rejects_single_vertex_elements():
    assert not verify(path_graph(2), [[0, 1], [1]])


@st.composite
def small_graph_and_candidate(draw):
    n = draw(st.integers(2, 6))
    pairs = list(combinations(range(n), 2))
    es = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=8))
    g = Graph(n, frozenset(es))
    if es and draw(st.booleans()):
        # a genuine decomposition, possibly mangled below
        paths = [list(p) for p in greedy_decomposition(g, random.Random(draw(st.integers(0, 99))))]
        if paths and draw(st.booleans()):
            i = draw(st.integers(0, len(paths) - 1))
            action = draw(st.sampled_from(["drop", "dup", "reverse", "extend"]))
            if action == "drop":
                paths.pop(i)
            elif action == "dup":
                paths.append(paths[i])
            elif action == "reverse":
                paths[i] = paths[i][::-1]
            else:
                paths[i] = paths[i] + [draw(st.integers(0, n - 1))]
    else:
        seqs = st.lists(st.integers(0, n - 1), min_size=1, max_size=5)
        paths = draw(st.lists(seqs, max_size=4))
    return g, paths


@settings(max_examples=400, deadline=None)
@given(small_graph_and_candidate())
def test_verify_matches_brute_force_checker(case):
    g, paths = case
    assert bool(verify(g, paths)) == is_decomposition(g.edges, paths)


# -- end counts and lower bound ---------------------------------------------------

def test_end_count_examples():
    d = [[0, 1, 2], [2, 3, 0]]
    assert end_count(d, 0) == 2 and end_count(d, 1) == 0
    assert end_count([[1, 0, 2], [3, 0]], 3) == 1
    assert PathDecomposition.of(C4, d).end_count(0) == 2


def test_odd_vertex_lower_bound_examples():
    assert odd_vertex_lower_bound(C4) == 0
    assert odd_vertex_lower_bound(star_graph(3)) == 2
    assert odd_vertex_lower_bound(complete_bipartite(2, 3)) == 1


# -- exact solver -------------------------------------------------------------------

def test_path_number_examples():
    assert path_number_exact(path_graph(4)).path_number == 1
    assert path_number_exact(C4).path_number == 2
    res = path_number_exact(complete_bipartite(2, 3))
    assert res.path_number == 2 and res.optimal and verify(complete_bipartite(2, 3), res.witness)


def test_path_number_known_values():
    assert path_number_exact(complete_graph(5)).path_number == 3
    assert path_number_exact(petersen_graph()).path_number == 5
    assert path_number_exact(cycle_graph(3)).path_number == 2


def test_path_number_rejects_edgeless():
    with pytest.raises(DecompositionError):
        path_number_exact(Graph(3))


def test_budget_exhaustion_returns_incumbent():
    g = grid_graph(3, 3)
    res = path_number_exact(g, budget=1)
    assert not res.optimal
    assert verify(g, res.witness) and len(res.witness) == res.path_number == 3
    assert path_number_exact(g).path_number == 2


@settings(max_examples=100, deadline=None)
@given(small_graph_and_candidate())
def test_solver_witness_and_lower_bound(case):
    g, _ = case
    if g.m == 0:
        return
    res = path_number_exact(g)
    assert res.optimal and verify(g, res.witness) and len(res.witness) == res.path_number
    assert res.path_number >= max(1, odd_vertex_lower_bound(g))
    assert parity_ok(g, res.witness.paths)


@pytest.mark.slow
def test_solver_matches_partition_oracle_up_to_eight_edges():
    corpus = edge_graphs(8)
    for m in range(1, 9):
        for g in corpus[m]:
            assert path_number_exact(g).path_number == path_number_by_partition(g.edges)


def test_lower_bound_equality_cases_recorded():
    # recorded, not asserted: how often the odd-vertex bound is tight at n <= 6
    tight = total = 0
    for g in edge_graphs(6)[6]:
        total += 1
        tight += path_number_exact(g).path_number == max(1, odd_vertex_lower_bound(g))
    assert 0 < tight <= total


def test_greedy_is_a_decomposition():
    g = petersen_graph()
    for seed in range(5):
        assert verify(g, greedy_decomposition(g, random.Random(seed)))


# -- Gallai graphs --------------------------------------------------------------------

def test_is_gallai_examples():
    assert is_gallai(cycle_graph(5)).is_gallai
    v = is_gallai(C4)
    assert v.is_gallai and v.result.path_number == 2 and v.bound == 2
    k3 = is_gallai(cycle_graph(3))
    assert not k3.is_gallai and k3.result.path_number == 2
    with pytest.raises(GraphError):
        is_gallai(build_graph(4, [(0, 1), (2, 3)]))
    with pytest.raises(GraphError):
        is_gallai(Graph(1))


def test_k5_minus_edge_is_not_gallai():
    g = Graph(5, complete_graph(5).edges - {(0, 1)})
    assert not is_gallai(g).is_gallai


# -- splitting ---------------------------------------------------------------------------

def test_split_to_size():
    assert split_to_size([(0, 1, 2, 3)], 3) == [(0, 1), (1, 2), (2, 3)]
    with pytest.raises(DecompositionError):
        split_to_size([(0, 1)], 2)


# -- cycle plus path ---------------------------------------------------------------------

def test_cycle_plus_path_examples():
    g = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (0, 2)])
    a, b = decompose_cycle_plus_path(g, [0, 1, 2, 3], [4, 0, 2])
    assert verify(g, [a, b])

    g = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)])
    a, b = decompose_cycle_plus_path(g, [0, 1, 2, 3], [0, 4])
    assert verify(g, [a, b]) and len({a, b}) == 2

    g = build_graph(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (5, 6)])
    assert verify(g, decompose_cycle_plus_path(g, [0, 1, 2, 3, 4], [6, 5, 0]))


@pytest.mark.parametrize(
    "edges, cycle, path, clause",
    [
        ([(i, (i + 1) % 6) for i in range(6)] + [(0, 6)], range(6), [0, 6], "longer than 5"),
        ([(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)], [0, 1, 2, 3], [0, 1], "share"),
        ([(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5)], [0, 1, 2, 3], [0, 4], "cover"),
        ([(0, 1), (1, 2), (2, 3), (3, 0), (4, 5)], [0, 1, 2, 3], [4, 5], "connected"),
        ([(0, 1), (1, 2), (2, 3), (3, 0)], [0, 1, 3, 2], [0, 1], "cycle"),
    ],
)
def test_cycle_plus_path_preconditions(edges, cycle, path, clause):
    g = build_graph(max(max(e) for e in edges) + 1, edges)
    with pytest.raises(DecompositionError, match=clause):
        decompose_cycle_plus_path(g, list(cycle), path)


def test_cycle_plus_path_chord_limit():
    c5 = [(i, (i + 1) % 5) for i in range(5)]
    path = [0, 2, 4, 1, 3]
    g = build_graph(5, c5 + list(zip(path, path[1:])))
    with pytest.raises(DecompositionError, match="4 chords"):
        decompose_cycle_plus_path(g, range(5), path)


def test_cycle_path_generator_is_complete_for_small_orders():
    # every connected cycle+path union on <= 5 vertices, found by brute force
    from tfgallai.gen import canonical_form

    ours = {(len(c), canonical_form(g)) for g, c, _ in cycle_path_instances(max_n=5)}
    brute = set()
    for c in (3, 4, 5):
        cyc = {(i, (i + 1) % c) if i < (i + 1) % c else ((i + 1) % c, i) for i in range(c)}
        for n in range(c, 6):
            def walk(seq):
                if len(seq) >= 2:
                    yield list(seq)
                for x in range(n):
                    e = tuple(sorted((seq[-1], x)))
                    if x not in seq and e not in cyc:
                        yield from walk(seq + [x])
            for s in range(n):
                for p in walk([s]):
                    pe = {tuple(sorted(e)) for e in zip(p, p[1:])}
                    chords = sum(1 for a, b in pe if a < c and b < c)
                    used = {x for e in cyc | pe for x in e}
                    if chords <= 3 and used == set(range(n)) and set(p) & set(range(c)):
                        brute.add((c, canonical_form(build_graph(n, cyc | pe))))
    assert ours == brute


# -- edge extension ------------------------------------------------------------------------

def test_fan_extend_rejects_triangle():
    g = cycle_graph(3)
    with pytest.raises(DecompositionError, match="hypothesis"):
        fan_extend(g, 2, 0, [[0, 1, 2]])
    assert fan_condition(path_graph(3), 2, 0, [[0, 1, 2]]) == (1, 1)


def test_fan_extend_search_case():
    g = build_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2)])
    d_prime = [[1, 0, 2], [3, 0]]
    lhs, rhs = fan_condition(Graph(4, g.edges - {(1, 2)}), 1, 2, d_prime)
    assert lhs > rhs
    out = fan_extend(g, 1, 2, d_prime)
    assert len(out) == 2 and verify(g, out)


def test_fan_extend_direct_append():
    g = build_graph(4, [(0, 1), (1, 2), (2, 3)])
    out = fan_extend(g, 3, 2, [[0, 1, 2]])
    assert out.paths == ((0, 1, 2, 3),)


def test_fan_extend_rejects_bad_input():
    g = path_graph(3)
    with pytest.raises(DecompositionError):
        fan_extend(g, 0, 2, [[0, 1]])
    with pytest.raises(DecompositionError):
        fan_extend(g, 0, 1, [[0, 1, 2]])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_fan_extend_property(seed):
    g, u, v, d_prime = fan_instance(seed)
    out = fan_extend(g, u, v, d_prime)
    assert len(out) == len(d_prime)
    assert verify(g, out) and parity_ok(g, out.paths)
