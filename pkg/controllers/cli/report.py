from argparse import Namespace

from abstractions.controller import IController

from constants.api_lk import APILK

from services.bench.report import ReportService


class ReportController(IController):

    def __init__(self, urn: str = None) -> None:
        super().__init__(urn, APILK.REPORT)

    def run(self, arguments: Namespace) -> dict:
        paths = ReportService(urn=self.urn, api_name=self.api_name).report_from_directory(arguments.results, arguments.out)
        return {"files": paths}
