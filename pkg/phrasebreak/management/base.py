"""
Base classes for writing ``phrasebreak`` commands.

A command is a ``Command`` class derived from ``BaseCommand`` in
``phrasebreak/management/commands/<name>.py``. It declares its options in
``add_arguments`` and does its work in ``handle``; the base class parses
the command line, configures logging, loads the run configuration and
turns errors into exit codes:

=====  ===========================================
Code   Cause
=====  ===========================================
0      Success
1      Usage or configuration error
2      Invalid or unreadable input data
3      Numeric failure (non-finite loss)
=====  ===========================================
"""
import argparse
import logging
import os
import sys

from ..checkpoint import ModelCheckpoint
from ..conf import RunConfig
from ..errors import ConfigError, DataError, NumericError, PhraseBreakError
from ..log import configure_logging
from ..system.tempfile import write_atomic


logger = logging.getLogger("phrasebreak.management")


EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3


class CommandError(ConfigError):
    """
    Raised by commands for invalid option combinations.
    """


def exit_code_for(exc):
    if isinstance(exc, NumericError):
        return EXIT_NUMERIC
    if isinstance(exc, (DataError, OSError)):
        return EXIT_DATA
    return EXIT_USAGE


class CommandParser(argparse.ArgumentParser):
    """
    Raises ``CommandError`` on bad arguments instead of exiting with
    argparse's own status code.
    """

    def error(self, message):
        raise CommandError("{}\n{}".format(message, self.format_usage().rstrip()))


class BaseCommand(object):
    """
    :param stdout: Stream for command results, defaults to ``sys.stdout``.
    :param stderr: Stream for error messages, defaults to ``sys.stderr``.
    """

    help = ""

    def __init__(self, stdout=None, stderr=None):
        self.stdout = stdout or sys.stdout
        self.stderr = stderr or sys.stderr
        self.config = None

    def create_parser(self, prog_name, subcommand):
        parser = CommandParser(
            prog="{} {}".format(os.path.basename(prog_name), subcommand),
            description=self.help or None,
        )
        parser.add_argument("--config", help="YAML run configuration file.")
        parser.add_argument(
            "--seed", type=int, help="Global seed, overriding the configuration file's."
        )
        parser.add_argument(
            "--set",
            action="append",
            default=[],
            dest="overrides",
            metavar="SECTION.KEY=VALUE",
            help="Override one configuration value; may be repeated.",
        )
        parser.add_argument(
            "-v",
            "--verbosity",
            type=int,
            choices=[0, 1, 2, 3],
            help=(
                "0=warnings, 1=info, 2=debug, 3=debug with per-batch training logs. "
                "Defaults to the PHRASEBREAK_LOG_LEVEL environment variable, else info."
            ),
        )
        parser.add_argument("--logfile", help="Also write a full debug log to this file.")
        self.add_arguments(parser)
        return parser

    def add_arguments(self, parser):
        """
        Entry point for subclassed commands to add custom arguments.
        """
        pass

    def run_from_argv(self, argv):
        """
        Parses ``argv`` (``[prog, subcommand, args...]``), runs the command
        and returns its exit code. Errors are reported on ``stderr``.
        """
        try:
            parser = self.create_parser(argv[0], argv[1])
            options = vars(parser.parse_args(argv[2:]))
            self.execute(**options)
        except (PhraseBreakError, OSError) as e:
            code = exit_code_for(e)
            logger.debug("Command failed", exc_info=True)
            self.stderr.write("{}: {}\n".format(type(e).__name__, e))
            return code
        return EXIT_OK

    def execute(self, **options):
        configure_logging(options.get("verbosity"), options.get("logfile"))
        self.config = RunConfig.load(
            options.get("config"), options.get("overrides"), options.get("seed")
        )
        self.config.log_resolved()
        return self.handle(**options)

    def handle(self, **options):
        """
        The actual logic of the command. Subclasses must implement this method.
        """
        raise NotImplementedError("subclasses of BaseCommand must provide a handle() method")

    def write_config(self, output):
        """
        Writes the resolved configuration to ``<output>.config.yaml``.
        """
        path = "{}.config.yaml".format(output)
        write_atomic(path, self.config.dump())
        return path

    def encoder_config(self, backbone):
        return self.config.bilstm if backbone == "bilstm" else self.config.encoder

    def load_checkpoint(self, path):
        checkpoint = ModelCheckpoint.load(path)
        logger.info("Loaded %r", checkpoint)
        return checkpoint
