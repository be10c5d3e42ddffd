from abstractions.error import IError

from constants.exit_code import ExitCode


class DegenerateInputError(IError):

    def __init__(self, response_message: str, response_key: str, exit_code: int = ExitCode.RUNTIME_ERROR) -> None:

        super().__init__(response_message, response_key, exit_code)
