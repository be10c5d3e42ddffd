from typing import Final


class ConstraintKind:

    INDEPENDENT: Final[str] = "independent"
    DEPENDENT: Final[str] = "dependent"
