from dataclasses import dataclass, field
from typing import Iterable, Optional, Tuple

import numpy as np

from errors.bad_input_error import BadInputError


def _frozen(matrix: np.ndarray) -> np.ndarray:
    matrix = np.array(matrix, dtype=float, copy=True)
    matrix.setflags(write=False)
    return matrix


@dataclass(frozen=True, eq=False)
class LinearScm:
    """Linear structural causal model ``x = B x + e`` with ``Cov(e) = sigma_e``.

    ``b[u][i]`` is the direct effect of ``x_i`` on ``x_u``.
    """

    b: np.ndarray
    sigma_e: np.ndarray

    def __post_init__(self) -> None:

        b = _frozen(self.b)
        sigma_e = _frozen(self.sigma_e)

        if b.ndim != 2 or b.shape[0] != b.shape[1] or sigma_e.shape != b.shape:
            raise BadInputError(
                response_message=f"B {b.shape} and sigma_e {sigma_e.shape} must be equal square matrices.",
                response_key="error_invalid_scm_shape"
            )
        if np.any(np.diag(b) != 0.0):
            raise BadInputError(
                response_message="B must have a zero diagonal (no self-loops).",
                response_key="error_scm_self_loop"
            )
        if not np.allclose(sigma_e, sigma_e.T, atol=1e-12):
            raise BadInputError(
                response_message="sigma_e must be symmetric.",
                response_key="error_scm_noise_not_symmetric"
            )
        if b.shape[0] and np.linalg.eigvalsh(sigma_e).min() < -1e-10:
            raise BadInputError(
                response_message="sigma_e must be positive semidefinite.",
                response_key="error_scm_noise_not_psd"
            )

        object.__setattr__(self, "b", b)
        object.__setattr__(self, "sigma_e", sigma_e)

    @property
    def n(self) -> int:
        return self.b.shape[0]

    def to_json(self) -> dict:
        return {"b": self.b.tolist(), "sigma_e": self.sigma_e.tolist()}

    @classmethod
    def from_json(cls, payload: dict) -> "LinearScm":
        try:
            return cls(b=np.asarray(payload["b"], dtype=float), sigma_e=np.asarray(payload["sigma_e"], dtype=float))
        except (KeyError, TypeError, ValueError) as err:
            raise BadInputError(
                response_message=f"Malformed SCM payload: {err}",
                response_key="error_invalid_scm_payload"
            )


@dataclass(frozen=True)
class Experiment:
    """An intervention setting: ``j`` are the surgically intervened nodes, ``u`` the rest."""

    n: int
    j: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:

        j = tuple(sorted({int(node) for node in self.j}))
        if any(node < 0 or node >= self.n for node in j):
            raise BadInputError(
                response_message=f"Intervened nodes {list(j)} are outside 0..{self.n - 1}.",
                response_key="error_invalid_experiment"
            )
        object.__setattr__(self, "j", j)

    @classmethod
    def of(cls, n: int, intervened: Iterable[int] = ()) -> "Experiment":
        return cls(n=n, j=tuple(intervened))

    @property
    def u(self) -> Tuple[int, ...]:
        intervened = set(self.j)
        return tuple(node for node in range(self.n) if node not in intervened)

    @property
    def is_null(self) -> bool:
        return not self.j

    @property
    def j_matrix(self) -> np.ndarray:
        indicator = np.zeros(self.n)
        indicator[list(self.j)] = 1.0
        return np.diag(indicator)

    @property
    def u_matrix(self) -> np.ndarray:
        return np.eye(self.n) - self.j_matrix


@dataclass(frozen=True, eq=False)
class Dataset:
    """Data of one experiment: either ``samples`` (m x n) or an ``exact`` covariance (infinite size)."""

    experiment: Experiment
    samples: Optional[np.ndarray] = None
    exact: Optional[np.ndarray] = None

    def __post_init__(self) -> None:

        if (self.samples is None) == (self.exact is None):
            raise BadInputError(
                response_message="A dataset holds exactly one of samples or an exact covariance.",
                response_key="error_invalid_dataset"
            )

        if self.samples is not None:
            samples = _frozen(self.samples)
            if samples.ndim != 2 or samples.shape[1] != self.experiment.n or samples.shape[0] < 1:
                raise BadInputError(
                    response_message=f"Samples of shape {samples.shape} do not match {self.experiment.n} nodes.",
                    response_key="error_invalid_dataset"
                )
            object.__setattr__(self, "samples", samples)
        else:
            exact = _frozen(self.exact)
            if exact.shape != (self.experiment.n, self.experiment.n) or not np.allclose(exact, exact.T, atol=1e-10):
                raise BadInputError(
                    response_message="An exact covariance must be a symmetric n x n matrix.",
                    response_key="error_invalid_dataset"
                )
            object.__setattr__(self, "exact", exact)

    @property
    def is_infinite(self) -> bool:
        return self.exact is not None

    @property
    def size(self) -> Optional[int]:
        return None if self.samples is None else self.samples.shape[0]

    def covariance(self) -> np.ndarray:
        if self.exact is not None:
            return self.exact
        if self.samples.shape[0] < 2:
            return np.zeros((self.experiment.n, self.experiment.n))
        return np.cov(self.samples, rowvar=False, ddof=1)
