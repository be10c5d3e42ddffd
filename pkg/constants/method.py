from typing import Final, Tuple


class Method:

    LLC_NF: Final[str] = "llc_nf"
    LLC_F: Final[str] = "llc_f"
    ASP_D: Final[str] = "asp_d"
    ASP_S: Final[str] = "asp_s"

    ALL: Final[Tuple[str, ...]] = (LLC_NF, LLC_F, ASP_D, ASP_S)
    LLC: Final[Tuple[str, ...]] = (LLC_NF, LLC_F)
    ASP: Final[Tuple[str, ...]] = (ASP_D, ASP_S)
