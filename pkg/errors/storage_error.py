from typing import Optional

from abstractions.error import IError

from constants.exit_code import ExitCode


class StorageError(IError):

    def __init__(
        self,
        response_message: str,
        response_key: str,
        path: Optional[str] = None,
        exit_code: int = ExitCode.RUNTIME_ERROR
    ) -> None:

        super().__init__(response_message, response_key, exit_code)
        self.path = path
