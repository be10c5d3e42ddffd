import json
import os
#
from loguru import logger
from typing import Optional
#
from constants.dataset_size import parse_size
#
from dtos.configurations.bench import BenchConfigurationDTO

from configurations.ci import CITestConfiguration
from configurations.llc import LlcConfiguration
from configurations.scm import ScmSamplerConfiguration
from configurations.search import SearchConfiguration


class BenchConfiguration:
    _instance = None
    config_path: str = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "configs", "bench", "config.json")

    def __new__(cls):

        if cls._instance is None:
            cls._instance = super(BenchConfiguration, cls).__new__(cls)
            cls._instance.config = {}
            cls._instance.load_config()
        return cls._instance

    def load_config(self):

        try:

            with open(self.config_path, 'r') as file:
                self.config = json.load(file)

        except FileNotFoundError:
            logger.debug('Config file not found.')

        except json.JSONDecodeError:
            logger.debug('Error decoding config file.')

    def profiles(self) -> list:
        return sorted(self.config.get("profiles", {}))

    def get_config(self, profile: Optional[str] = None) -> BenchConfigurationDTO:

        profile = profile or self.config.get("profile", "desk")
        profile_config: dict = self.config.get("profiles", {}).get(profile)
        if profile_config is None:
            raise KeyError(f"unknown bench profile {profile!r}")

        defaults = BenchConfigurationDTO()
        return BenchConfigurationDTO(
            profile=profile,
            n_scms=profile_config.get("n_scms", defaults.n_scms),
            sizes=[parse_size(size) for size in profile_config.get("sizes", defaults.sizes)],
            setup_ids=list(profile_config.get("setup_ids", defaults.setup_ids)),
            methods=list(profile_config.get("methods", defaults.methods)),
            seed=self.config.get("seed", defaults.seed),
            jobs=self.config.get("jobs", defaults.jobs),
            record_runtime=self.config.get("record_runtime", defaults.record_runtime),
            scm=ScmSamplerConfiguration().get_config(),
            ci=CITestConfiguration().get_config(),
            llc=LlcConfiguration().get_config(),
            search=SearchConfiguration().get_config()
        )
