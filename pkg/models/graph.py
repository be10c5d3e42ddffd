from dataclasses import dataclass, field
from functools import cached_property
from typing import FrozenSet, Iterable, List, Tuple

from errors.bad_input_error import BadInputError


def directed_bit(source: int, target: int, n: int) -> int:
    """Bit position of the directed edge ``source -> target`` in a directed-edge mask."""
    return source * n + target


def bidirected_bit(i: int, j: int, n: int) -> int:
    """Bit position of the bidirected edge ``{i, j}`` in a bidirected-edge mask."""
    low, high = (i, j) if i < j else (j, i)
    return low * n + high


@dataclass(frozen=True)
class DirectedMixedGraph:
    """Directed mixed graph over nodes ``0..n-1``.

    ``directed`` holds ordered pairs ``(source, target)`` for ``source -> target``;
    ``bidirected`` holds unordered pairs stored with the smaller index first.
    Instances are immutable and hashable so they can key memoization caches.
    """

    n: int
    directed: FrozenSet[Tuple[int, int]] = field(default_factory=frozenset)
    bidirected: FrozenSet[Tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:

        if self.n < 0:
            raise BadInputError(
                response_message=f"Node count must be nonnegative, got {self.n}.",
                response_key="error_invalid_node_count"
            )

        directed = frozenset((int(a), int(b)) for a, b in self.directed)
        bidirected = frozenset((min(int(a), int(b)), max(int(a), int(b))) for a, b in self.bidirected)

        for a, b in directed | bidirected:
            if a == b:
                raise BadInputError(
                    response_message=f"Self-loop on node {a} is not allowed.",
                    response_key="error_self_loop"
                )
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise BadInputError(
                    response_message=f"Edge ({a}, {b}) references a node outside 0..{self.n - 1}.",
                    response_key="error_node_out_of_range"
                )

        object.__setattr__(self, "directed", directed)
        object.__setattr__(self, "bidirected", bidirected)

    @classmethod
    def from_edges(
        cls,
        n: int,
        directed: Iterable[Tuple[int, int]] = (),
        bidirected: Iterable[Tuple[int, int]] = ()
    ) -> "DirectedMixedGraph":
        return cls(n=n, directed=frozenset(directed), bidirected=frozenset(bidirected))

    @classmethod
    def from_masks(cls, n: int, directed_mask: int, bidirected_mask: int) -> "DirectedMixedGraph":
        directed = [
            (source, target)
            for source in range(n)
            for target in range(n)
            if source != target and directed_mask >> directed_bit(source, target, n) & 1
        ]
        bidirected = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if bidirected_mask >> bidirected_bit(i, j, n) & 1
        ]
        return cls.from_edges(n, directed, bidirected)

    @cached_property
    def directed_mask(self) -> int:
        mask = 0
        for source, target in self.directed:
            mask |= 1 << directed_bit(source, target, self.n)
        return mask

    @cached_property
    def bidirected_mask(self) -> int:
        mask = 0
        for i, j in self.bidirected:
            mask |= 1 << bidirected_bit(i, j, self.n)
        return mask

    @property
    def nodes(self) -> range:
        return range(self.n)

    @property
    def edge_count(self) -> int:
        return len(self.directed) + len(self.bidirected)

    def has_directed_edge(self, source: int, target: int) -> bool:
        return (source, target) in self.directed

    def has_bidirected_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.bidirected

    def parents(self, node: int) -> List[int]:
        return sorted(source for source, target in self.directed if target == node)

    def children(self, node: int) -> List[int]:
        return sorted(target for source, target in self.directed if source == node)

    def spouses(self, node: int) -> List[int]:
        return sorted({j if i == node else i for i, j in self.bidirected if node in (i, j)})

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "directed": [list(edge) for edge in sorted(self.directed)],
            "bidirected": [list(edge) for edge in sorted(self.bidirected)],
        }

    @classmethod
    def from_json(cls, payload: dict) -> "DirectedMixedGraph":
        try:
            return cls.from_edges(
                n=int(payload["n"]),
                directed=[tuple(edge) for edge in payload.get("directed", [])],
                bidirected=[tuple(edge) for edge in payload.get("bidirected", [])]
            )
        except (KeyError, TypeError, ValueError) as err:
            raise BadInputError(
                response_message=f"Malformed graph payload: {err}",
                response_key="error_invalid_graph_payload"
            )


class EdgeMark:

    FORWARD = "->"
    BACKWARD = "<-"
    BIDIRECTED = "<->"


@dataclass(frozen=True)
class WalkStep:
    """One traversed edge: ``start`` to ``end`` with the edge's marks read in traversal order."""

    start: int
    end: int
    mark: str

    def __post_init__(self) -> None:
        if self.mark not in (EdgeMark.FORWARD, EdgeMark.BACKWARD, EdgeMark.BIDIRECTED):
            raise BadInputError(
                response_message=f"Unknown edge mark {self.mark!r}.",
                response_key="error_invalid_edge_mark"
            )

    @property
    def arrowhead_at_start(self) -> bool:
        return self.mark in (EdgeMark.BACKWARD, EdgeMark.BIDIRECTED)

    @property
    def arrowhead_at_end(self) -> bool:
        return self.mark in (EdgeMark.FORWARD, EdgeMark.BIDIRECTED)


@dataclass(frozen=True)
class Walk:
    """Sequence of traversed edges; edges may repeat."""

    steps: Tuple[WalkStep, ...]

    def __post_init__(self) -> None:
        for previous, current in zip(self.steps, self.steps[1:]):
            if previous.end != current.start:
                raise BadInputError(
                    response_message=f"Walk steps {previous} and {current} do not share a node.",
                    response_key="error_broken_walk"
                )

    @classmethod
    def of(cls, *tokens) -> "Walk":
        """Build a walk from alternating nodes and marks, e.g. ``Walk.of(0, "->", 1, "<->", 2)``."""
        if len(tokens) < 3 or len(tokens) % 2 == 0:
            raise BadInputError(
                response_message="A walk needs alternating nodes and edge marks.",
                response_key="error_invalid_walk"
            )
        steps = tuple(
            WalkStep(start=tokens[index], end=tokens[index + 2], mark=tokens[index + 1])
            for index in range(0, len(tokens) - 2, 2)
        )
        return cls(steps=steps)

    @property
    def nodes(self) -> List[int]:
        if not self.steps:
            return []
        return [self.steps[0].start] + [step.end for step in self.steps]


@dataclass(frozen=True)
class SeparationQuery:

    x: int
    y: int
    c: FrozenSet[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:

        object.__setattr__(self, "c", frozenset(int(node) for node in self.c))
        if self.x == self.y:
            raise BadInputError(
                response_message=f"Separation query needs two distinct nodes, got {self.x} twice.",
                response_key="error_invalid_query"
            )
        if self.x in self.c or self.y in self.c:
            raise BadInputError(
                response_message="Conditioning set must exclude the queried nodes.",
                response_key="error_invalid_query"
            )

    @property
    def c_mask(self) -> int:
        mask = 0
        for node in self.c:
            mask |= 1 << node
        return mask
