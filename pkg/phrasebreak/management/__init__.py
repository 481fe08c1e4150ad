"""
The ``phrasebreak`` command-line tool.

Each pipeline stage is a subcommand::

    phrasebreak synth --out data/
    phrasebreak corrupt data/native.jsonl --vocab data/vocab.txt --out data/pretrain.jsonl
    phrasebreak pretrain data/pretrain.jsonl --vocab data/vocab.txt --out models/rbtd.pbrk
    phrasebreak finetune data/esl.jsonl --task fine --init models/rbtd.pbrk --out models/fine.pbrk
    phrasebreak eval data/esl.jsonl --task overall --model checkpoint --init models/rbtd.pbrk \\
        --compare bilstm against-ref --references data/references.jsonl --out reports/overall
    phrasebreak score recordings.ctm --overall models/overall.pbrk --fine models/fine.pbrk

Every command accepts ``--config``, ``--seed``, ``--set section.key=value``
and ``--verbosity``; run ``phrasebreak help <command>`` for the rest.
"""
import importlib
import os
import pkgutil
import sys

from .base import EXIT_OK, EXIT_USAGE, BaseCommand, CommandError


def find_commands():
    """
    Returns the sorted names of the modules in ``management/commands``.
    """
    command_dir = os.path.join(os.path.dirname(__file__), "commands")
    return sorted(
        name
        for _, name, is_pkg in pkgutil.iter_modules([command_dir])
        if not is_pkg and not name.startswith("_")
    )


def load_command_class(name, stdout=None, stderr=None):
    module = importlib.import_module("{}.commands.{}".format(__name__, name))
    return module.Command(stdout=stdout, stderr=stderr)


class ManagementUtility(object):
    def __init__(self, argv=None, stdout=None, stderr=None):
        self.argv = list(argv if argv is not None else sys.argv)
        self.prog_name = os.path.basename(self.argv[0]) if self.argv else "phrasebreak"
        self.stdout = stdout or sys.stdout
        self.stderr = stderr or sys.stderr

    def main_help_text(self):
        lines = [
            "Usage: {} <command> [options]".format(self.prog_name),
            "",
            "Available commands:",
        ]
        for name in find_commands():
            lines.append("    {:<10}{}".format(name, load_command_class(name).help))
        lines.append("")
        lines.append("Type '{} help <command>' for help on a command.".format(self.prog_name))
        return "\n".join(lines) + "\n"

    def fetch_command(self, subcommand):
        if subcommand not in find_commands():
            raise CommandError(
                "Unknown command: {!r}. Type '{} help' for usage.".format(
                    subcommand, self.prog_name
                )
            )
        return load_command_class(subcommand, self.stdout, self.stderr)

    def execute(self):
        """
        Runs the subcommand named in ``argv`` and returns the exit code.
        """
        subcommand = self.argv[1] if len(self.argv) > 1 else "help"
        try:
            if subcommand in ("help", "-h", "--help"):
                if len(self.argv) > 2:
                    command = self.fetch_command(self.argv[2])
                    command.create_parser(self.prog_name, self.argv[2]).print_help(self.stdout)
                else:
                    self.stdout.write(self.main_help_text())
                return EXIT_OK
            command = self.fetch_command(subcommand)
        except CommandError as e:
            self.stderr.write("{}\n".format(e))
            return EXIT_USAGE
        return command.run_from_argv([self.prog_name] + self.argv[1:])


def execute_from_command_line(argv=None, stdout=None, stderr=None):
    return ManagementUtility(argv, stdout, stderr).execute()


def call_command(name, *args, stdout=None, stderr=None):
    """
    Runs command ``name`` with command-line ``args`` and returns its exit code.
    """
    return execute_from_command_line(
        ["phrasebreak", name] + [str(a) for a in args], stdout, stderr
    )


def main():
    sys.exit(execute_from_command_line())


__all__ = [
    "BaseCommand",
    "CommandError",
    "ManagementUtility",
    "call_command",
    "execute_from_command_line",
    "find_commands",
    "load_command_class",
    "main",
]
