from typing import Optional


class IError(Exception):

    def __init__(self, response_message: str, response_key: str, exit_code: int) -> None:
        super().__init__(response_message)
        self.response_message = response_message
        self.response_key = response_key
        self.exit_code = exit_code
        self.resample_index: Optional[int] = None

    def in_resample(self, index: int) -> "IError":
        """Tag the error with the bootstrap resample it was raised in."""
        self.response_message = f"Resample {index}: {self.response_message}"
        self.args = (self.response_message,)
        self.resample_index = index
        return self
