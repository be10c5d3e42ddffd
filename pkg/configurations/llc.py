import json
import os
#
from dataclasses import fields
from loguru import logger
#
from dtos.configurations.llc import LlcConfigurationDTO


class LlcConfiguration:
    _instance = None
    config_path: str = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "configs", "llc", "config.json")

    def __new__(cls):

        if cls._instance is None:
            cls._instance = super(LlcConfiguration, cls).__new__(cls)
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

    def get_config(self) -> LlcConfigurationDTO:
        known = {item.name for item in fields(LlcConfigurationDTO)}
        return LlcConfigurationDTO(**{key: value for key, value in self.config.items() if key in known})
