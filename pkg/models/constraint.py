from dataclasses import dataclass, field
from typing import Iterator, Optional, Tuple

from constants.constraint_kind import ConstraintKind

from errors.bad_input_error import BadInputError


@dataclass(frozen=True)
class CiConstraint:
    """A weighted conditional (in)dependence statement about ``x_i, x_j`` given ``s`` in one experiment."""

    experiment_index: int
    i: int
    j: int
    s: Tuple[int, ...]
    kind: str
    weight: float
    p_value: Optional[float] = None

    def __post_init__(self) -> None:

        i, j = (self.i, self.j) if self.i < self.j else (self.j, self.i)
        s = tuple(sorted(set(self.s)))
        if i == j or i in s or j in s:
            raise BadInputError(
                response_message=f"Constraint ({self.i}, {self.j} | {list(s)}) is not a valid query.",
                response_key="error_invalid_constraint"
            )
        if self.kind not in (ConstraintKind.INDEPENDENT, ConstraintKind.DEPENDENT):
            raise BadInputError(
                response_message=f"Unknown constraint kind {self.kind!r}.",
                response_key="error_invalid_constraint"
            )
        if self.weight < 0:
            raise BadInputError(
                response_message=f"Constraint weight must be nonnegative, got {self.weight}.",
                response_key="error_invalid_constraint"
            )

        object.__setattr__(self, "i", i)
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "s", s)

    @property
    def key(self) -> Tuple[int, int, int, Tuple[int, ...]]:
        return (self.experiment_index, self.i, self.j, self.s)

    @property
    def is_independence(self) -> bool:
        return self.kind == ConstraintKind.INDEPENDENT

    def to_json(self) -> dict:
        return {
            "experiment": self.experiment_index,
            "i": self.i,
            "j": self.j,
            "s": list(self.s),
            "kind": self.kind,
            "weight": self.weight,
            "p": self.p_value,
        }

    @classmethod
    def from_json(cls, payload: dict) -> "CiConstraint":
        return cls(
            experiment_index=int(payload["experiment"]),
            i=int(payload["i"]),
            j=int(payload["j"]),
            s=tuple(payload.get("s", [])),
            kind=payload["kind"],
            weight=float(payload["weight"]),
            p_value=payload.get("p")
        )


@dataclass(frozen=True)
class ConstraintSet:

    constraints: Tuple[CiConstraint, ...] = field(default_factory=tuple)
    alpha: Optional[float] = None

    def __post_init__(self) -> None:

        constraints = tuple(self.constraints)
        keys = [constraint.key for constraint in constraints]
        if len(keys) != len(set(keys)):
            raise BadInputError(
                response_message="Constraint set contains duplicate (experiment, i, j, s) keys.",
                response_key="error_duplicate_constraint"
            )
        object.__setattr__(self, "constraints", constraints)

    def __len__(self) -> int:
        return len(self.constraints)

    def __iter__(self) -> Iterator[CiConstraint]:
        return iter(self.constraints)
