import itertools

import networkx as nx
import numpy as np
import pytest

from constants.separation_mode import SeparationMode

from errors.bad_input_error import BadInputError

from models.graph import DirectedMixedGraph, SeparationQuery, Walk, WalkStep

from utilities.graph import GraphUtility
from utilities.separation import SeparationUtility

graph_utility = GraphUtility()
separation_utility = SeparationUtility()


def random_graph(rng, n, p_directed=0.3, p_bidirected=0.2, acyclic=False):
    directed = []
    for source, target in itertools.permutations(range(n), 2):
        if acyclic and source > target:
            continue
        if rng.random() < p_directed:
            directed.append((source, target))
    bidirected = [pair for pair in itertools.combinations(range(n), 2) if rng.random() < p_bidirected]
    return DirectedMixedGraph.from_edges(n, directed, bidirected)


def random_query(rng, n):
    x, y = (int(node) for node in rng.choice(n, size=2, replace=False))
    others = [node for node in range(n) if node not in (x, y)]
    c = frozenset(node for node in others if rng.random() < 0.4)
    return SeparationQuery(x=x, y=y, c=c)


def walk_steps(graph):
    steps = []
    for source, target in graph.directed:
        steps.append(WalkStep(source, target, "->"))
        steps.append(WalkStep(target, source, "<-"))
    for i, j in graph.bidirected:
        steps.append(WalkStep(i, j, "<->"))
        steps.append(WalkStep(j, i, "<->"))
    return steps


def connected_by_bounded_walk(graph, query, max_length=64):
    """Layered enumeration of walks by their last step, checking each interior node explicitly."""
    steps = walk_steps(graph)
    frontier = {step for step in steps if step.start == query.x}
    seen = set(frontier)
    for _ in range(max_length):
        if any(step.end == query.y for step in frontier):
            return True
        extended = set()
        for previous in frontier:
            for step in steps:
                if step.start != previous.end:
                    continue
                collider = graph_utility.is_collider(Walk(steps=(previous, step)), 1)
                conditioned = previous.end in query.c
                if collider != conditioned:
                    continue
                if step not in seen:
                    seen.add(step)
                    extended.add(step)
        frontier = extended
    return any(step.end == query.y for step in frontier)


def to_latent_dag(graph):
    dag = nx.DiGraph()
    dag.add_nodes_from(range(graph.n))
    dag.add_edges_from(graph.directed)
    for i, j in graph.bidirected:
        dag.add_edges_from([(f"L{i}{j}", i), (f"L{i}{j}", j)])
    return dag


@pytest.mark.parametrize("walk, position, expected", [
    (Walk.of(0, "->", 1, "->", 2), 1, False),
    (Walk.of(0, "->", 1, "<-", 2), 1, True),
    (Walk.of(0, "->", 1, "<->", 2), 1, True),
    (Walk.of(0, "<-", 1, "<->", 2), 1, False),
])
def test_is_collider(walk, position, expected):
    assert graph_utility.is_collider(walk, position) is expected


@pytest.mark.parametrize("position", [0, 2, -1])
def test_is_collider_rejects_endpoints(position):
    with pytest.raises(BadInputError):
        graph_utility.is_collider(Walk.of(0, "->", 1, "->", 2), position)


@pytest.mark.parametrize("directed, expected", [
    ([], [{0}, {1}, {2}]),
    ([(0, 1), (1, 0)], [{0, 1}, {2}]),
    ([(0, 1), (1, 2), (2, 0)], [{0, 1, 2}]),
])
def test_strongly_connected_components(directed, expected):
    graph = DirectedMixedGraph.from_edges(3, directed)
    components = graph_utility.strongly_connected_components(graph)
    assert sorted(map(sorted, components)) == sorted(map(sorted, expected))


@pytest.mark.parametrize("directed, bidirected, expected", [
    ([(0, 1), (1, 2)], [], False),
    ([(0, 1), (1, 0)], [], True),
    ([], [(0, 1)], False),
])
def test_has_directed_cycle(directed, bidirected, expected):
    assert graph_utility.has_directed_cycle(DirectedMixedGraph.from_edges(3, directed, bidirected)) is expected


def test_intervene_graph():
    graph = DirectedMixedGraph.from_edges(2, [(0, 1)], [(0, 1)])
    assert graph_utility.intervene_graph(graph, {1}) == DirectedMixedGraph(n=2)

    chain = DirectedMixedGraph.from_edges(3, [(0, 1), (1, 2)])
    assert graph_utility.intervene_graph(chain, set()) == chain

    cyclic = DirectedMixedGraph.from_edges(3, [(0, 1), (1, 0)], [(0, 2)])
    assert graph_utility.intervene_graph(cyclic, {0}) == DirectedMixedGraph.from_edges(3, [(0, 1)])


def test_d_separation_examples():
    chain = DirectedMixedGraph.from_edges(3, [(0, 1), (1, 2)])
    assert separation_utility.d_separated(chain, SeparationQuery(0, 2, frozenset({1})))
    assert not separation_utility.d_separated(chain, SeparationQuery(0, 2))

    collider = DirectedMixedGraph.from_edges(3, [(0, 1), (2, 1)])
    assert separation_utility.d_separated(collider, SeparationQuery(0, 2))
    assert not separation_utility.d_separated(collider, SeparationQuery(0, 2, frozenset({1})))

    cyclic = DirectedMixedGraph.from_edges(4, [(0, 1), (1, 0), (2, 0), (1, 3)])
    assert not separation_utility.d_separated(cyclic, SeparationQuery(2, 3))


def test_collider_with_conditioned_descendant_connects():
    graph = DirectedMixedGraph.from_edges(4, [(0, 1), (2, 1), (1, 3)])
    assert not separation_utility.d_separated(graph, SeparationQuery(0, 2, frozenset({3})))


def test_acyclify_examples():
    acyclic = DirectedMixedGraph.from_edges(3, [(0, 1), (1, 2)], [(0, 2)])
    assert graph_utility.acyclify(acyclic) == acyclic

    loop = DirectedMixedGraph.from_edges(2, [(0, 1), (1, 0)])
    assert graph_utility.acyclify(loop) == DirectedMixedGraph.from_edges(2, [], [(0, 1)])

    graph = DirectedMixedGraph.from_edges(4, [(2, 0), (0, 1), (1, 0), (1, 3)])
    acyclified = graph_utility.acyclify(graph)
    assert acyclified.directed == frozenset({(2, 0), (2, 1), (1, 3)})
    assert acyclified.bidirected == frozenset({(0, 1)})


def test_sigma_separation_examples():
    graph = DirectedMixedGraph.from_edges(4, [(2, 0), (0, 1), (1, 0), (1, 3)])
    assert separation_utility.sigma_separated(graph, SeparationQuery(2, 3, frozenset({0, 1})))
    assert not separation_utility.sigma_separated(graph, SeparationQuery(2, 3, frozenset({0})))


def test_unknown_mode_is_rejected():
    with pytest.raises(BadInputError):
        separation_utility.separated(DirectedMixedGraph(n=2), SeparationQuery(0, 1), "pc")


def test_sigma_and_d_separation_agree_on_acyclic_graphs():
    rng = np.random.default_rng(11)
    for _ in range(500):
        n = int(rng.integers(2, 6))
        graph = random_graph(rng, n, acyclic=True)
        query = random_query(rng, n)
        assert separation_utility.sigma_separated(graph, query) == separation_utility.d_separated(graph, query)


def test_d_separation_matches_latent_dag_on_acyclic_graphs():
    rng = np.random.default_rng(5)
    for _ in range(300):
        graph = random_graph(rng, 5, acyclic=True)
        query = random_query(rng, 5)
        expected = nx.is_d_separator(to_latent_dag(graph), {query.x}, {query.y}, set(query.c))
        assert separation_utility.d_separated(graph, query) == expected


def test_d_separation_matches_bounded_walk_enumeration():
    rng = np.random.default_rng(23)
    for _ in range(300):
        graph = random_graph(rng, 4, p_directed=0.35, p_bidirected=0.25)
        query = random_query(rng, 4)
        assert separation_utility.d_separated(graph, query) == (not connected_by_bounded_walk(graph, query))


def test_separation_is_symmetric_and_d_separation_monotone_in_edges():
    rng = np.random.default_rng(3)
    for _ in range(300):
        graph = random_graph(rng, 5)
        query = random_query(rng, 5)
        flipped = SeparationQuery(query.y, query.x, query.c)
        for mode in (SeparationMode.D_SEP,):
            separated = separation_utility.separated(graph, query, mode)
            assert separated == separation_utility.separated(graph, flipped, mode)
            source, target = (int(node) for node in rng.choice(5, size=2, replace=False))
            denser = DirectedMixedGraph.from_edges(5, graph.directed | {(source, target)}, graph.bidirected)
            if not separated:
                assert not separation_utility.separated(denser, query, mode)


def test_acyclified_graphs_have_no_directed_cycle():
    rng = np.random.default_rng(8)
    for _ in range(200):
        graph = random_graph(rng, 5, p_directed=0.4)
        assert not graph_utility.has_directed_cycle(graph_utility.acyclify(graph))
