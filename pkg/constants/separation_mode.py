from typing import Final, Tuple


class SeparationMode:

    D_SEP: Final[str] = "d_sep"
    SIGMA_SEP: Final[str] = "sigma_sep"

    ALL: Final[Tuple[str, ...]] = (D_SEP, SIGMA_SEP)
