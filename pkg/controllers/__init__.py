from typing import Dict, Type

from abstractions.controller import IController

from controllers.cli.bench import BenchController
from controllers.cli.discover import DiscoverController
from controllers.cli.gen_scms import GenScmsController
from controllers.cli.report import ReportController
from controllers.cli.simulate import SimulateController

from start_utils import logger

router: Dict[str, Type[IController]] = {}

for command, controller in (
    ("gen-scms", GenScmsController),
    ("simulate", SimulateController),
    ("discover", DiscoverController),
    ("bench", BenchController),
    ("report", ReportController),
):
    logger.debug(f"Registering {controller.__name__} command.")
    router[command] = controller
