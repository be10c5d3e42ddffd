from typing import Final


class ExitCode:

    SUCCESS: Final[int] = 0
    USAGE_ERROR: Final[int] = 1
    RUNTIME_ERROR: Final[int] = 2
