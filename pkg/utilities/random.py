from typing import Final, Optional

import numpy as np

from abstractions.utility import IUtility


class RandomStream:

    SCM: Final[int] = 0
    DATA: Final[int] = 1
    BOOTSTRAP: Final[int] = 2


class RandomUtility(IUtility):
    """Deterministic generators derived from a root seed and a tuple of stream keys.

    Every key tuple yields an independent stream, so results do not depend on the order
    or the process in which work items run.
    """

    def __init__(self, seed: int, urn: str = None) -> None:
        super().__init__(urn)
        self.urn = urn
        self.seed = int(seed)

    def generator(self, *keys: int) -> np.random.Generator:
        sequence = np.random.SeedSequence(entropy=self.seed, spawn_key=tuple(int(key) for key in keys))
        return np.random.default_rng(sequence)

    def scm_generator(self, scm_id: int) -> np.random.Generator:
        return self.generator(RandomStream.SCM, scm_id)

    def cell_generator(self, scm_id: int, setup_id: int, size: Optional[int]) -> np.random.Generator:
        return self.generator(RandomStream.DATA, scm_id, setup_id, 0 if size is None else size)

    @staticmethod
    def child(rng: np.random.Generator, *keys: int) -> np.random.Generator:
        """Independent stream derived from an existing generator's seed sequence."""
        parent = rng.bit_generator.seed_seq
        sequence = np.random.SeedSequence(entropy=parent.entropy, spawn_key=tuple(parent.spawn_key) + tuple(int(key) for key in keys))
        return np.random.default_rng(sequence)
