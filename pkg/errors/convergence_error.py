from typing import Optional

from abstractions.error import IError

from constants.exit_code import ExitCode


class ConvergenceError(IError):

    def __init__(
        self,
        response_message: str,
        response_key: str,
        residual: float,
        resample_index: Optional[int] = None,
        exit_code: int = ExitCode.RUNTIME_ERROR
    ) -> None:

        super().__init__(response_message, response_key, exit_code)
        self.residual = residual
        self.resample_index = resample_index
