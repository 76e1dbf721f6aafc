"""
Main CLI Interface for rankforge.
Runs the parse -> execute -> respond pipeline for one command line.
"""
import sys
from typing import Optional, Sequence, TextIO

import config
from cli.executor import Executor
from cli.options import OptionParser
from cli.responder import Responder
from scoring.errors import ConfigurationError, RankforgeError, UsageError
from utils.logger import setup_logger

# Setup logging
logger = setup_logger("rankforge", log_file=config.LOG_FILE, level=config.LOG_LEVEL)
for _package in ("scoring", "dataset", "cli"):
    setup_logger(_package, log_file=config.LOG_FILE, level=config.LOG_LEVEL)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2


class Rankforge:
    """Scoring CLI: option parser, executor and responder."""

    def __init__(self, color_terminal: bool = False):
        self.options = OptionParser()
        self.executor = Executor()
        self.responder = Responder(no_color=config.NO_COLOR, color_terminal=color_terminal)

    def process(self, argv: Sequence[str]) -> str:
        """
        Run one command line.

        Flow:
        1. OptionParser -> CliConfig
        2. Executor -> CommandResult
        3. Responder -> rendered text or CSV
        """
        logger.debug("Step 1: parsing options")
        cli = self.options.parse(argv)

        logger.debug("Step 2: executing")
        result = self.executor.execute(cli)

        logger.debug("Step 3: rendering")
        return self.responder.respond(result, cli.output_format)


def run(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """Entry point returning the exit status: 0 ok, 1 validation error, 2 usage error."""
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    args = list(sys.argv[1:] if argv is None else argv)

    app = Rankforge(color_terminal=out.isatty() if hasattr(out, "isatty") else False)
    try:
        out.write(app.process(args))
        return EXIT_OK
    except SystemExit as e:  # --help
        return int(e.code or 0)
    except (UsageError, ConfigurationError) as e:
        logger.debug(f"Usage error: {e}")
        err.write(f"error: {e}\n")
        return EXIT_USAGE
    except RankforgeError as e:
        logger.debug(f"Error: {e}")
        err.write(f"error: {e}\n")
        return EXIT_VALIDATION


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
