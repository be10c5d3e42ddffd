from functools import lru_cache
from typing import FrozenSet, Iterable, List, Tuple

import networkx as nx

from abstractions.utility import IUtility

from errors.bad_input_error import BadInputError

from models.graph import DirectedMixedGraph, Walk, bidirected_bit, directed_bit


def _components(n: int, directed_mask: int) -> Tuple[FrozenSet[int], ...]:
    digraph = nx.DiGraph()
    digraph.add_nodes_from(range(n))
    digraph.add_edges_from(
        (source, target)
        for source in range(n)
        for target in range(n)
        if source != target and directed_mask >> directed_bit(source, target, n) & 1
    )
    components = [frozenset(component) for component in nx.strongly_connected_components(digraph)]
    return tuple(sorted(components, key=min))


@lru_cache(maxsize=1 << 16)
def components_of_masks(n: int, directed_mask: int) -> Tuple[FrozenSet[int], ...]:
    return _components(n, directed_mask)


def intervention_keep_masks(n: int, intervened: Iterable[int]) -> Tuple[int, int]:
    """Masks of the edges that survive intervening on ``intervened``.

    Directed edges into an intervened node and bidirected edges touching one are dropped.
    """
    intervened = set(intervened)
    keep_directed = 0
    keep_bidirected = 0
    for source in range(n):
        for target in range(n):
            if source != target and target not in intervened:
                keep_directed |= 1 << directed_bit(source, target, n)
    for i in range(n):
        for j in range(i + 1, n):
            if i not in intervened and j not in intervened:
                keep_bidirected |= 1 << bidirected_bit(i, j, n)
    return keep_directed, keep_bidirected


@lru_cache(maxsize=1 << 16)
def acyclified_masks(n: int, directed_mask: int, bidirected_mask: int) -> Tuple[int, int]:
    components = components_of_masks(n, directed_mask)
    component_of = {node: component for component in components for node in component}

    acyclic_directed = 0
    acyclic_bidirected = 0

    for source in range(n):
        for target in range(n):
            if source == target or not directed_mask >> directed_bit(source, target, n) & 1:
                continue
            for node in component_of[target]:
                if source not in component_of[node]:
                    acyclic_directed |= 1 << directed_bit(source, node, n)

    for component in components:
        members = sorted(component)
        for index, i in enumerate(members):
            for j in members[index + 1:]:
                acyclic_bidirected |= 1 << bidirected_bit(i, j, n)

    for i in range(n):
        for j in range(i + 1, n):
            if not bidirected_mask >> bidirected_bit(i, j, n) & 1:
                continue
            for v in component_of[i]:
                for w in component_of[j]:
                    if v != w:
                        acyclic_bidirected |= 1 << bidirected_bit(v, w, n)

    return acyclic_directed, acyclic_bidirected


class GraphUtility(IUtility):

    def __init__(self, urn: str = None) -> None:
        super().__init__(urn)
        self.urn = urn

    def is_collider(self, walk: Walk, position: int) -> bool:
        """Whether the node at ``position`` of the walk's node sequence has arrowheads from both steps."""
        if not 0 < position < len(walk.steps):
            raise BadInputError(
                response_message=f"Position {position} is not an interior node of a walk with {len(walk.steps)} steps.",
                response_key="error_invalid_walk_position"
            )
        return walk.steps[position - 1].arrowhead_at_end and walk.steps[position].arrowhead_at_start

    def strongly_connected_components(self, graph: DirectedMixedGraph) -> List[FrozenSet[int]]:
        return list(components_of_masks(graph.n, graph.directed_mask))

    def has_directed_cycle(self, graph: DirectedMixedGraph) -> bool:
        return any(len(component) > 1 for component in components_of_masks(graph.n, graph.directed_mask))

    def intervene_graph(self, graph: DirectedMixedGraph, intervened: Iterable[int]) -> DirectedMixedGraph:

        intervened = set(intervened)
        if any(node < 0 or node >= graph.n for node in intervened):
            raise BadInputError(
                response_message=f"Intervened nodes {sorted(intervened)} are outside 0..{graph.n - 1}.",
                response_key="error_invalid_intervention"
            )
        return DirectedMixedGraph.from_edges(
            graph.n,
            directed=[(source, target) for source, target in graph.directed if target not in intervened],
            bidirected=[(i, j) for i, j in graph.bidirected if i not in intervened and j not in intervened]
        )

    def acyclify(self, graph: DirectedMixedGraph) -> DirectedMixedGraph:
        directed_mask, bidirected_mask = acyclified_masks(graph.n, graph.directed_mask, graph.bidirected_mask)
        return DirectedMixedGraph.from_masks(graph.n, directed_mask, bidirected_mask)
