from abc import ABC, abstractmethod
from argparse import Namespace
from typing import Tuple
#
from abstractions.error import IError
#
from constants.api_status import APIStatus
from constants.exit_code import ExitCode
#
from dtos.responses.base import BaseResponseDTO
#
from start_utils import logger


class IController(ABC):

    def __init__(self, urn: str = None, api_name: str = None) -> None:
        super().__init__()
        self.urn = urn
        self.api_name = api_name
        self.logger = logger.bind(urn=self.urn, api_name=self.api_name)

    def validate_request(self, arguments: Namespace) -> None:
        self.request_payload = {key: value for key, value in vars(arguments).items() if value is not None}

    @abstractmethod
    def run(self, arguments: Namespace) -> dict:
        ...

    def execute(self, arguments: Namespace) -> Tuple[BaseResponseDTO, int]:
        """Run the command and fold any failure into a FAILED response with its exit code."""

        try:

            self.logger.debug("Validating request")
            self.validate_request(arguments)
            self.logger.debug("Validated request")

            response_payload: dict = self.run(arguments)

            self.logger.debug("Preparing response metadata")
            response_dto = BaseResponseDTO(
                transaction_urn=self.urn,
                status=APIStatus.SUCCESS,
                response_message=f"Successfully completed {self.api_name}.",
                response_key=f"success_{str(self.api_name).lower()}",
                data=response_payload
            )
            exit_code = ExitCode.SUCCESS
            self.logger.debug("Prepared response metadata")

        except IError as err:

            self.logger.error(f"{err.__class__.__name__} occured while running {self.api_name}: {err.response_message}")
            response_dto = BaseResponseDTO(
                transaction_urn=self.urn,
                status=APIStatus.FAILED,
                response_message=err.response_message,
                response_key=err.response_key,
                data={},
                error={"type": err.__class__.__name__}
            )
            exit_code = err.exit_code

        except Exception as err:

            self.logger.exception(f"{err.__class__.__name__} occured while running {self.api_name}: {err}")
            response_dto = BaseResponseDTO(
                transaction_urn=self.urn,
                status=APIStatus.FAILED,
                response_message="Unexpected error.",
                response_key="error_internal",
                data={},
                error={"type": err.__class__.__name__, "detail": str(err)}
            )
            exit_code = ExitCode.RUNTIME_ERROR

        return response_dto, exit_code
