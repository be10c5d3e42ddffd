import math
import time

from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from abstractions.service import IService

from constants.feature_type import FeatureType
from constants.tolerance import Tolerance

from dtos.configurations.search import SearchConfigurationDTO
from dtos.responses.search import SearchResultDTO

from errors.bad_input_error import BadInputError

from models.constraint import ConstraintSet
from models.feature import all_features
from models.graph import DirectedMixedGraph, bidirected_bit, directed_bit
from models.scm import Experiment

from services.search.loss import CompiledConstraints


TRACE_EVERY = 4096
CLOCK_EVERY = 1024


class BudgetExceeded(Exception):
    pass


def better(candidate: Tuple[float, int], incumbent: Tuple[float, int]) -> bool:
    """Lexicographic (loss, edge count) comparison with a loss tolerance."""
    if candidate[0] < incumbent[0] - Tolerance.LOSS:
        return True
    return abs(candidate[0] - incumbent[0]) <= Tolerance.LOSS and candidate[1] < incumbent[1]


class BranchAndBound:
    """Depth-first search over feature assignments, absent before present.

    Along a branch the decided-present edges ``P`` only grow and the possible edges ``U``
    only shrink. An independence connected in ``P`` or a dependence separated in ``U`` is
    violated by every completion; the reverse cases are satisfied by every completion.
    Decided constraints leave the active set and their weight is carried as ``base``.
    """

    def __init__(
        self,
        compiled: CompiledConstraints,
        free: Sequence[Tuple[bool, int]],
        incumbent: Tuple[float, int, int, int],
        deadline: float,
        trace: bool = False
    ) -> None:

        self.compiled = compiled
        self.free = free
        self.best_loss, self.best_edges, self.best_directed, self.best_bidirected = incumbent
        self.deadline = deadline
        self.trace_enabled = trace
        self.trace: List[Dict[str, float]] = []
        self.expanded = 0

    def record(self, bound: float) -> None:
        if self.trace_enabled:
            self.trace.append({"expanded": self.expanded, "incumbent": self.best_loss, "bound": bound})

    def run(self, p_directed: int, p_bidirected: int, u_directed: int, u_bidirected: int, edges: int) -> None:
        active = [(index, group.members) for index, group in enumerate(self.compiled.groups)]
        self.branch(0, p_directed, p_bidirected, u_directed, u_bidirected, 0.0, active, edges)

    def branch(
        self,
        depth: int,
        p_directed: int,
        p_bidirected: int,
        u_directed: int,
        u_bidirected: int,
        base: float,
        active: list,
        edges: int
    ) -> None:

        self.expanded += 1
        if self.expanded % CLOCK_EVERY == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded()
        if self.expanded % TRACE_EVERY == 0:
            self.record(base)

        groups = self.compiled.groups
        undecided = []
        for index, members in active:
            group = groups[index]
            reach_present = self.compiled.reach(group, p_directed, p_bidirected)
            reach_possible = self.compiled.reach(group, u_directed, u_bidirected)
            remaining = []
            for member in members:
                _, y, independence, weight = member
                connected_present = reach_present >> y & 1
                connected_possible = reach_possible >> y & 1
                if connected_present:
                    if independence:
                        base += weight
                elif not connected_possible:
                    if not independence:
                        base += weight
                else:
                    remaining.append(member)
            if remaining:
                undecided.append((index, remaining))

        if not better((base, edges), (self.best_loss, self.best_edges)):
            return

        if not undecided or depth == len(self.free):
            # every completion has loss ``base``; leaving the rest absent keeps the fewest edges
            self.best_loss, self.best_edges = base, edges
            self.best_directed, self.best_bidirected = p_directed, p_bidirected
            self.record(base)
            return

        directed, bit = self.free[depth]
        if directed:
            self.branch(depth + 1, p_directed, p_bidirected, u_directed & ~bit, u_bidirected, base, undecided, edges)
            self.branch(depth + 1, p_directed | bit, p_bidirected, u_directed, u_bidirected, base, undecided, edges + 1)
        else:
            self.branch(depth + 1, p_directed, p_bidirected, u_directed, u_bidirected & ~bit, base, undecided, edges)
            self.branch(depth + 1, p_directed, p_bidirected | bit, u_directed, u_bidirected, base, undecided, edges + 1)


class LossMinimizationService(IService):
    """Finds a graph of minimal constraint loss, preferring fewer edges among equal losses."""

    def __init__(self, urn: str = None, **kwargs: Any) -> None:
        super().__init__(urn, **kwargs)
        self.urn = urn

    def validate_config(self, config: SearchConfigurationDTO) -> None:
        if config.time_budget_s <= 0 or config.anneal_steps < 0 or config.exact_node_limit < 0:
            raise BadInputError(
                response_message="Search budgets must be positive.",
                response_key="error_invalid_search_budget"
            )
        if not 0 < config.anneal_final_temperature <= config.anneal_initial_temperature:
            raise BadInputError(
                response_message="Annealing temperatures must satisfy 0 < final <= initial.",
                response_key="error_invalid_temperature_schedule"
            )

    def feature_bits(self, n: int) -> List[Tuple[bool, int]]:
        return [
            (True, 1 << directed_bit(f.source, f.target, n)) if f.feature_type == FeatureType.DIRECTED
            else (False, 1 << bidirected_bit(f.source, f.target, n))
            for f in all_features(n)
        ]

    def warm_start(
        self,
        compiled: CompiledConstraints,
        free: Sequence[Tuple[bool, int]],
        directed_mask: int,
        bidirected_mask: int,
        edges: int
    ) -> Tuple[float, int, int, int]:
        """Greedy single-flip descent on (loss, edge count) over the free features."""

        current = (compiled.loss(directed_mask, bidirected_mask), edges)
        while True:
            best_move = None
            for directed, bit in free:
                flipped_directed = directed_mask ^ bit if directed else directed_mask
                flipped_bidirected = bidirected_mask if directed else bidirected_mask ^ bit
                present = (flipped_directed if directed else flipped_bidirected) & bit
                candidate = (compiled.loss(flipped_directed, flipped_bidirected), current[1] + (1 if present else -1))
                if better(candidate, current if best_move is None else best_move[0]):
                    best_move = (candidate, flipped_directed, flipped_bidirected)
            if best_move is None:
                return current[0], current[1], directed_mask, bidirected_mask
            current, directed_mask, bidirected_mask = best_move

    def anneal(
        self,
        compiled: CompiledConstraints,
        free: Sequence[Tuple[bool, int]],
        start: Tuple[float, int, int, int],
        config: SearchConfigurationDTO,
        rng: np.random.Generator
    ) -> Tuple[float, int, int, int]:
        """Simulated annealing over single feature flips with geometric cooling; returns the best state seen."""

        best = start
        if not free or not config.anneal_steps:
            return best

        loss, edges, directed_mask, bidirected_mask = start
        ratio = config.anneal_final_temperature / config.anneal_initial_temperature
        steps = config.anneal_steps
        for step in range(steps):
            temperature = config.anneal_initial_temperature * ratio ** (step / max(steps - 1, 1))
            directed, bit = free[int(rng.integers(len(free)))]
            next_directed = directed_mask ^ bit if directed else directed_mask
            next_bidirected = bidirected_mask if directed else bidirected_mask ^ bit
            present = (next_directed if directed else next_bidirected) & bit
            next_loss = compiled.loss(next_directed, next_bidirected)
            delta = next_loss - loss
            if delta <= 0 or rng.random() < math.exp(-delta / temperature):
                loss, edges = next_loss, edges + (1 if present else -1)
                directed_mask, bidirected_mask = next_directed, next_bidirected
                if better((loss, edges), best[:2]):
                    best = (loss, edges, directed_mask, bidirected_mask)
        return best

    def minimize_loss(
        self,
        constraints: ConstraintSet,
        setup: Sequence[Experiment],
        config: SearchConfigurationDTO,
        pinned: Optional[Dict[int, bool]] = None,
        rng: Optional[np.random.Generator] = None,
        trace: bool = False,
        compiled: Optional[CompiledConstraints] = None
    ) -> SearchResultDTO:
        """Minimum-loss graph; ``pinned`` maps feature indices (canonical order) to forced presence."""

        self.validate_config(config)
        if not setup:
            raise BadInputError(response_message="The setup has no experiments.", response_key="error_empty_setup")

        n = setup[0].n
        compiled = compiled or CompiledConstraints(n, constraints, setup, config.mode)
        pinned = pinned or {}
        bits = self.feature_bits(n)
        if any(not 0 <= index < len(bits) for index in pinned):
            raise BadInputError(
                response_message=f"Pinned feature index outside 0..{len(bits) - 1}.",
                response_key="error_invalid_pinned_feature"
            )

        p_directed = p_bidirected = 0
        u_directed = u_bidirected = 0
        free: List[Tuple[bool, int]] = []
        for index, (directed, bit) in enumerate(bits):
            forced = pinned.get(index)
            if forced is None:
                free.append((directed, bit))
            if forced is False:
                continue
            if directed:
                u_directed |= bit
                p_directed |= bit if forced else 0
            else:
                u_bidirected |= bit
                p_bidirected |= bit if forced else 0
        edges = sum(1 for value in pinned.values() if value)

        incumbent = self.warm_start(compiled, free, p_directed, p_bidirected, edges)
        certified = n <= config.exact_node_limit
        expanded = 0
        search_trace: List[Dict[str, float]] = []

        if certified:
            search = BranchAndBound(compiled, free, incumbent, time.monotonic() + config.time_budget_s, trace)
            try:
                search.run(p_directed, p_bidirected, u_directed, u_bidirected, edges)
            except BudgetExceeded:
                certified = False
                self.logger.warning(f"Exact search exceeded {config.time_budget_s}s after {search.expanded} nodes, annealing instead")
            incumbent = (search.best_loss, search.best_edges, search.best_directed, search.best_bidirected)
            expanded = search.expanded
            search_trace = search.trace

        if not certified:
            rng = rng if rng is not None else np.random.default_rng(0)
            incumbent = self.anneal(compiled, free, incumbent, config, rng)

        _, _, directed_mask, bidirected_mask = incumbent
        return SearchResultDTO(
            loss=compiled.loss(directed_mask, bidirected_mask),
            graph=DirectedMixedGraph.from_masks(n, directed_mask, bidirected_mask),
            certified=certified,
            expanded=expanded,
            trace=search_trace
        )
