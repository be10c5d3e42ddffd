import os
import sys

from dotenv import load_dotenv
from loguru import logger

from configurations.bench import BenchConfiguration
from configurations.ci import CITestConfiguration
from configurations.llc import LlcConfiguration
from configurations.scm import ScmSamplerConfiguration
from configurations.search import SearchConfiguration

from dtos.configurations.bench import BenchConfigurationDTO
from dtos.configurations.ci import CITestConfigurationDTO
from dtos.configurations.llc import LlcConfigurationDTO
from dtos.configurations.scm import ScmSamplerConfigurationDTO
from dtos.configurations.search import SearchConfigurationDTO

logger.debug("Loading environment variables from .env file")
load_dotenv()
logger.debug("Loaded environment variables from .env file")

APP_NAME: str = os.getenv("APP_NAME", "cyclic_discovery")
LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")

logger.remove()
logger.add(sys.stderr, level=LOG_LEVEL, colorize=True, format="<green>{time:MMMM-D-YYYY}</green> | <black>{time:HH:mm:ss}</black> | <level>{level}</level> | <cyan>{message}</cyan> | <magenta>{name}:{function}:{line}</magenta> | <yellow>{extra}</yellow>")

ROOT_PATH: str = os.path.dirname(os.path.abspath(__file__))

logger.info("Loading Configurations")
scm_configuration: ScmSamplerConfigurationDTO = ScmSamplerConfiguration().get_config()
ci_configuration: CITestConfigurationDTO = CITestConfiguration().get_config()
llc_configuration: LlcConfigurationDTO = LlcConfiguration().get_config()
search_configuration: SearchConfigurationDTO = SearchConfiguration().get_config()
bench_configuration: BenchConfigurationDTO = BenchConfiguration().get_config()
logger.info("Loaded Configurations")
