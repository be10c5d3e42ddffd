from typing import Final, Tuple


class Penalty:

    L1: Final[str] = "L1"
    L2: Final[str] = "L2"

    ALL: Final[Tuple[str, ...]] = (L1, L2)
