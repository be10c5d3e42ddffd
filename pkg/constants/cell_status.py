from typing import Final


class CellStatus:

    OK: Final[str] = "ok"
    FAILED: Final[str] = "failed"
