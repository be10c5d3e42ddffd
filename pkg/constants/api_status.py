from typing import Final


class APIStatus:

    SUCCESS: Final[str] = "SUCCESS"
    FAILED: Final[str] = "FAILED"
