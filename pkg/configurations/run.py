import json
#
from dataclasses import replace
from loguru import logger
from pydantic import BaseModel, ValidationError
from typing import Optional
#
from constants.dataset_size import parse_size
#
from dtos.configurations.bench import BenchConfigurationDTO
from dtos.configurations.ci import CITestConfigurationDTO
from dtos.configurations.llc import LlcConfigurationDTO
from dtos.configurations.scm import ScmSamplerConfigurationDTO
from dtos.configurations.search import SearchConfigurationDTO
from dtos.requests.cli.run import RunConfigRequestDTO

from configurations.bench import BenchConfiguration
from configurations.ci import CITestConfiguration
from configurations.llc import LlcConfiguration
from configurations.scm import ScmSamplerConfiguration
from configurations.search import SearchConfiguration

from errors.bad_input_error import BadInputError


def _overrides(section: BaseModel) -> dict:
    return {key: value for key, value in section.model_dump().items() if value is not None}


class RunConfiguration:
    """Bundled JSON defaults overlaid with an optional ``--config`` run file."""

    def __init__(self, path: Optional[str] = None) -> None:

        self.path = path
        self.request = RunConfigRequestDTO()
        if path is not None:
            self.request = self.load_config(path)

    def load_config(self, path: str) -> RunConfigRequestDTO:

        try:

            with open(path, 'r') as file:
                payload = json.load(file)

        except FileNotFoundError:
            raise BadInputError(response_message=f"Config file not found: {path}", response_key="error_config_not_found")

        except json.JSONDecodeError as err:
            raise BadInputError(response_message=f"Malformed config file {path}: {err}", response_key="error_config_malformed")

        try:
            request = RunConfigRequestDTO.model_validate(payload)
        except ValidationError as err:
            problems = "; ".join(f"{'.'.join(str(part) for part in error['loc'])}: {error['msg']}" for error in err.errors())
            raise BadInputError(response_message=f"Invalid config {path}: {problems}", response_key="error_config_invalid")

        logger.debug(f"Loaded run config from {path}")
        return request

    def scm_config(self) -> ScmSamplerConfigurationDTO:
        return replace(ScmSamplerConfiguration().get_config(), **_overrides(self.request.scm))

    def ci_config(self) -> CITestConfigurationDTO:
        return replace(CITestConfiguration().get_config(), **_overrides(self.request.ci))

    def llc_config(self) -> LlcConfigurationDTO:
        return replace(LlcConfiguration().get_config(), **_overrides(self.request.llc))

    def search_config(self) -> SearchConfigurationDTO:
        return replace(SearchConfiguration().get_config(), **_overrides(self.request.search))

    def bench_config(self, profile: Optional[str] = None) -> BenchConfigurationDTO:

        bench_configuration = BenchConfiguration()
        profile = profile or self.request.profile
        try:
            base = bench_configuration.get_config(profile)
        except KeyError:
            raise BadInputError(
                response_message=f"Unknown profile '{profile}'; available profiles are {bench_configuration.profiles()}.",
                response_key="error_unknown_profile"
            )

        overrides = _overrides(self.request.bench)
        try:
            if "sizes" in overrides:
                overrides["sizes"] = [parse_size(size) for size in overrides["sizes"]]
        except ValueError as err:
            raise BadInputError(response_message=f"Invalid dataset size in config: {err}", response_key="error_invalid_size")
        if self.request.seed is not None:
            overrides["seed"] = self.request.seed

        return replace(
            base,
            scm=self.scm_config(),
            ci=self.ci_config(),
            llc=self.llc_config(),
            search=self.search_config(),
            **overrides
        )
