import argparse
import sys

from typing import List, Optional

from ulid import ulid

from abstractions.error import IError

from constants.exit_code import ExitCode
from constants.method import Method

from controllers import router
from controllers.cli.common import size_flag

from errors.bad_input_error import BadInputError

from start_utils import APP_NAME, logger


class CliArgumentParser(argparse.ArgumentParser):
    """Argument parser that reports usage problems as BadInputError instead of exiting."""

    def error(self, message: str) -> None:
        raise BadInputError(response_message=f"{self.prog}: {message}", response_key="error_bad_arguments")


def build_parser() -> CliArgumentParser:

    parser = CliArgumentParser(prog=APP_NAME, description="Causal discovery benchmark for cyclic linear models with latent confounders.")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=CliArgumentParser)

    def command(name: str, help_text: str, seed_required: bool) -> CliArgumentParser:
        subparser = commands.add_parser(name, help=help_text)
        subparser.add_argument("--config", help="JSON run configuration overriding the bundled defaults")
        subparser.add_argument("--seed", type=int, required=seed_required, help="root seed of every random stream")
        subparser.add_argument("--out", help="output directory")
        return subparser

    gen_scms = command("gen-scms", "sample a cohort of random SCMs", seed_required=True)
    gen_scms.add_argument("--profile", help="bench profile whose SCM count is used")
    gen_scms.add_argument("--count", type=int, help="number of SCMs")

    simulate = command("simulate", "simulate the datasets of one setup", seed_required=True)
    simulate.add_argument("--scm", required=True, help="SCM or cohort JSON")
    simulate.add_argument("--scm-id", type=int, dest="scm_id", help="cohort entry (default 0)")
    simulate.add_argument("--setup", type=int, required=True, help="experimental setup id")
    simulate.add_argument("--size", type=size_flag, default=1000, help="rows per experiment, or inf for exact covariances")

    discover = command("discover", "score every feature from a simulated setup", seed_required=False)
    discover.add_argument("--data", required=True, help="directory written by simulate")
    discover.add_argument("--method", required=True, choices=list(Method.ALL))
    discover.add_argument("--setup", type=int, help="expected setup id of the data")
    discover.add_argument("--trace", action="store_true", help="write the unpinned search trace as JSON lines")

    bench = command("bench", "run the benchmark grid and write its report", seed_required=True)
    bench.add_argument("--profile", help="named grid from the bench config (default: the config file's profile)")
    bench.add_argument("--jobs", type=int, help="worker processes")
    bench.add_argument("--method", action="append", choices=list(Method.ALL), help="restrict to a method (repeatable)")
    bench.add_argument("--setup", type=int, action="append", help="restrict to a setup id (repeatable)")
    bench.add_argument("--size", type=size_flag, action="append", help="restrict to a dataset size (repeatable)")
    bench.add_argument("--n-scms", type=int, dest="n_scms", help="cohort size")

    report = commands.add_parser("report", help="rebuild summary and plot data from a run directory")
    report.add_argument("--results", required=True, help="run directory holding results.csv and scores.csv")
    report.add_argument("--out", help="output directory (default: the run directory)")

    return parser


def main(argv: Optional[List[str]] = None) -> int:

    urn = ulid()
    try:
        arguments = build_parser().parse_args(argv)
    except IError as err:
        logger.error(err.response_message)
        sys.stderr.write(f"error: {err.response_message}\n")
        return err.exit_code
    except SystemExit as exit_request:
        return ExitCode.SUCCESS if not exit_request.code else ExitCode.USAGE_ERROR

    controller = router[arguments.command](urn=urn)
    response_dto, exit_code = controller.execute(arguments)
    sys.stdout.write(response_dto.to_json() + "\n")
    if exit_code != ExitCode.SUCCESS:
        sys.stderr.write(f"error: {response_dto.response_message}\n")
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
