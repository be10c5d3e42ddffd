from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np

from models.scm import Experiment


def column_index(u: int, i: int, n: int) -> int:
    """Column of ``b[u][i]`` in the canonical layout: rows of B concatenated, diagonal dropped."""
    return u * (n - 1) + (i if i < u else i - 1)


def column_pair(column: int, n: int) -> Tuple[int, int]:
    u, offset = divmod(column, n - 1)
    return u, offset if offset < u else offset + 1


@dataclass(frozen=True)
class TotalEffects:
    """Total effects ``t(x_i ~> x_u || J)`` of one experiment, keyed by ``(i, u)``."""

    experiment: Experiment
    effects: Dict[Tuple[int, int], float] = field(default_factory=dict)

    def get(self, i: int, u: int) -> float:
        return self.effects[(i, u)]


@dataclass(frozen=True, eq=False)
class LlcSystem:
    """Linear system ``T b = t`` over the off-diagonal entries of B."""

    n: int
    t_matrix: np.ndarray
    t_vector: np.ndarray
    row_provenance: Tuple[tuple, ...] = field(default_factory=tuple)

    @property
    def n_unknowns(self) -> int:
        return self.n * (self.n - 1)

    @property
    def n_rows(self) -> int:
        return self.t_matrix.shape[0]

    def extend(self, t_matrix: np.ndarray, t_vector: np.ndarray, row_provenance: Tuple[tuple, ...]) -> "LlcSystem":
        if not len(t_vector):
            return self
        return LlcSystem(
            n=self.n,
            t_matrix=np.vstack([self.t_matrix, t_matrix]),
            t_vector=np.concatenate([self.t_vector, t_vector]),
            row_provenance=self.row_provenance + tuple(row_provenance)
        )

    def rank(self) -> int:
        if not self.n_rows:
            return 0
        return int(np.linalg.matrix_rank(self.t_matrix))

    def has_full_column_rank(self) -> bool:
        return self.rank() == self.n_unknowns


@dataclass(frozen=True, eq=False)
class LlcEstimate:
    """One pass of the LLC pipeline: direct effects ``b_hat`` and noise covariance ``sigma_hat``."""

    b_hat: np.ndarray
    sigma_hat: np.ndarray
    full_rank: bool = False


@dataclass(frozen=True)
class FaithfulnessConstraints:
    """Zero restrictions read off independences: ``b[u][i] = 0`` rows and zero noise covariances."""

    n: int
    zero_entries: Tuple[Tuple[int, int], ...] = field(default_factory=tuple)
    provenance: Tuple[tuple, ...] = field(default_factory=tuple)
    sigma_zero_pairs: Tuple[Tuple[int, int], ...] = field(default_factory=tuple)

    def rows(self) -> Tuple[np.ndarray, np.ndarray, Tuple[tuple, ...]]:
        t_matrix = np.zeros((len(self.zero_entries), self.n * (self.n - 1)))
        for row, (u, i) in enumerate(self.zero_entries):
            t_matrix[row, column_index(u, i, self.n)] = 1.0
        return t_matrix, np.zeros(len(self.zero_entries)), self.provenance
