from functools import lru_cache
from typing import List, Tuple

from abstractions.utility import IUtility

from constants.separation_mode import SeparationMode

from errors.bad_input_error import BadInputError

from models.graph import DirectedMixedGraph, SeparationQuery, bidirected_bit, directed_bit

from utilities.graph import acyclified_masks


@lru_cache(maxsize=1 << 16)
def _neighbourhoods(n: int, directed_mask: int, bidirected_mask: int) -> Tuple[List[int], List[int], List[int]]:
    children = [0] * n
    parents = [0] * n
    spouses = [0] * n
    for source in range(n):
        for target in range(n):
            if source != target and directed_mask >> directed_bit(source, target, n) & 1:
                children[source] |= 1 << target
                parents[target] |= 1 << source
    for i in range(n):
        for j in range(i + 1, n):
            if bidirected_mask >> bidirected_bit(i, j, n) & 1:
                spouses[i] |= 1 << j
                spouses[j] |= 1 << i
    return children, parents, spouses


@lru_cache(maxsize=1 << 18)
def reachable_mask(n: int, directed_mask: int, bidirected_mask: int, x: int, c_mask: int) -> int:
    """Nodes reachable from ``x`` by a walk that is open given the conditioning set ``c_mask``.

    The search runs over states (node, whether the last edge had an arrowhead at the node).
    A node entered through an arrowhead is a collider when the walk leaves through another
    arrowhead, so it passes only if it is conditioned on; every other passage needs the node
    outside the conditioning set. The state space is finite, so cyclic graphs terminate.
    """
    children, parents, spouses = _neighbourhoods(n, directed_mask, bidirected_mask)

    visited_into = 0
    visited_out = 1 << x
    stack = [(x, False)]

    while stack:
        node, arrived_into = stack.pop()
        conditioned = c_mask >> node & 1

        if arrived_into:
            if conditioned:
                next_out, next_into = parents[node], spouses[node]
            else:
                next_out, next_into = 0, children[node]
        else:
            if conditioned:
                continue
            next_out, next_into = parents[node], children[node] | spouses[node]

        fresh_into = next_into & ~visited_into
        fresh_out = next_out & ~visited_out
        visited_into |= fresh_into
        visited_out |= fresh_out

        while fresh_into:
            low = fresh_into & -fresh_into
            stack.append((low.bit_length() - 1, True))
            fresh_into ^= low
        while fresh_out:
            low = fresh_out & -fresh_out
            stack.append((low.bit_length() - 1, False))
            fresh_out ^= low

    return visited_into | visited_out


def separated_masks(n: int, directed_mask: int, bidirected_mask: int, x: int, y: int, c_mask: int, mode: str) -> bool:
    if mode == SeparationMode.SIGMA_SEP:
        directed_mask, bidirected_mask = acyclified_masks(n, directed_mask, bidirected_mask)
    return not reachable_mask(n, directed_mask, bidirected_mask, x, c_mask) >> y & 1


class SeparationUtility(IUtility):

    def __init__(self, urn: str = None) -> None:
        super().__init__(urn)
        self.urn = urn

    def _validate(self, graph: DirectedMixedGraph, query: SeparationQuery) -> None:
        if any(node < 0 or node >= graph.n for node in (query.x, query.y, *query.c)):
            raise BadInputError(
                response_message=f"Query {query} references nodes outside 0..{graph.n - 1}.",
                response_key="error_invalid_query"
            )

    def d_separated(self, graph: DirectedMixedGraph, query: SeparationQuery) -> bool:
        self._validate(graph, query)
        return separated_masks(graph.n, graph.directed_mask, graph.bidirected_mask, query.x, query.y, query.c_mask, SeparationMode.D_SEP)

    def sigma_separated(self, graph: DirectedMixedGraph, query: SeparationQuery) -> bool:
        self._validate(graph, query)
        return separated_masks(graph.n, graph.directed_mask, graph.bidirected_mask, query.x, query.y, query.c_mask, SeparationMode.SIGMA_SEP)

    def separated(self, graph: DirectedMixedGraph, query: SeparationQuery, mode: str) -> bool:
        if mode not in SeparationMode.ALL:
            raise BadInputError(
                response_message=f"Unknown separation mode {mode!r}; expected one of {list(SeparationMode.ALL)}.",
                response_key="error_invalid_separation_mode"
            )
        if mode == SeparationMode.SIGMA_SEP:
            return self.sigma_separated(graph, query)
        return self.d_separated(graph, query)
