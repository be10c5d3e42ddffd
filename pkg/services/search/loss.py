from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple

from abstractions.service import IService

from constants.separation_mode import SeparationMode

from errors.bad_input_error import BadInputError

from models.constraint import ConstraintSet
from models.graph import DirectedMixedGraph
from models.scm import Experiment

from utilities.graph import acyclified_masks, intervention_keep_masks
from utilities.separation import reachable_mask


@dataclass(frozen=True)
class ConstraintGroup:
    """Constraints sharing an experiment, a source node and a conditioning set.

    One reachability search from ``x`` answers every member.
    """

    keep_directed: int
    keep_bidirected: int
    x: int
    c_mask: int
    members: Tuple[Tuple[int, int, bool, float], ...]  # (constraint index, y, is_independence, weight)


class CompiledConstraints:
    """A constraint set bound to a setup and a separation mode, evaluated on edge masks."""

    def __init__(self, n: int, constraints: ConstraintSet, setup: Sequence[Experiment], mode: str) -> None:

        if mode not in SeparationMode.ALL:
            raise BadInputError(
                response_message=f"Unknown separation mode {mode!r}; expected one of {list(SeparationMode.ALL)}.",
                response_key="error_invalid_separation_mode"
            )

        self.n = n
        self.mode = mode
        self.weights: List[float] = []
        grouped: Dict[Tuple[int, int, int], List[Tuple[int, int, bool, float]]] = {}
        keep: Dict[int, Tuple[int, int]] = {}

        for index, constraint in enumerate(constraints):
            k = constraint.experiment_index
            if not 0 <= k < len(setup):
                raise BadInputError(
                    response_message=f"Constraint refers to experiment {k}, the setup has {len(setup)}.",
                    response_key="error_constraint_experiment_out_of_range"
                )
            if constraint.j >= n or any(node >= n for node in constraint.s):
                raise BadInputError(
                    response_message=f"Constraint ({constraint.i}, {constraint.j} | {list(constraint.s)}) references nodes outside 0..{n - 1}.",
                    response_key="error_invalid_constraint"
                )
            keep.setdefault(k, intervention_keep_masks(n, setup[k].j))
            c_mask = sum(1 << node for node in constraint.s)
            grouped.setdefault((k, constraint.i, c_mask), []).append(
                (index, constraint.j, constraint.is_independence, constraint.weight)
            )
            self.weights.append(constraint.weight)

        self.groups: Tuple[ConstraintGroup, ...] = tuple(
            ConstraintGroup(
                keep_directed=keep[k][0],
                keep_bidirected=keep[k][1],
                x=x,
                c_mask=c_mask,
                members=tuple(members)
            )
            for (k, x, c_mask), members in grouped.items()
        )

    def __len__(self) -> int:
        return len(self.weights)

    def reach(self, group: ConstraintGroup, directed_mask: int, bidirected_mask: int) -> int:
        directed_mask &= group.keep_directed
        bidirected_mask &= group.keep_bidirected
        if self.mode == SeparationMode.SIGMA_SEP:
            directed_mask, bidirected_mask = acyclified_masks(self.n, directed_mask, bidirected_mask)
        return reachable_mask(self.n, directed_mask, bidirected_mask, group.x, group.c_mask)

    def loss(self, directed_mask: int, bidirected_mask: int) -> float:
        """Total weight of the constraints the graph does not entail."""
        total = 0.0
        for group in self.groups:
            reached = self.reach(group, directed_mask, bidirected_mask)
            for _, y, independence, weight in group.members:
                if bool(reached >> y & 1) == independence:
                    total += weight
        return total


class GraphLossService(IService):

    def __init__(self, urn: str = None, **kwargs: Any) -> None:
        super().__init__(urn, **kwargs)
        self.urn = urn

    def compile(self, n: int, constraints: ConstraintSet, setup: Sequence[Experiment], mode: str) -> CompiledConstraints:
        return CompiledConstraints(n, constraints, setup, mode)

    def graph_loss(self, graph: DirectedMixedGraph, constraints: ConstraintSet, setup: Sequence[Experiment], mode: str) -> float:
        """Sum of the weights of constraints not entailed by ``graph`` in their experiment's manipulated graph."""
        compiled = self.compile(graph.n, constraints, setup, mode)
        return compiled.loss(graph.directed_mask, graph.bidirected_mask)
