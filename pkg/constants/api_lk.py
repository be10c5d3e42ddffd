from typing import Final


class APILK:

    GEN_SCMS: Final[str] = "GEN_SCMS"
    SIMULATE: Final[str] = "SIMULATE"
    DISCOVER: Final[str] = "DISCOVER"

    BENCH: Final[str] = "BENCH"
    REPORT: Final[str] = "REPORT"
