import io
import os
import tempfile
from unittest import TestCase

from ...errors import CheckpointError, ConfigError, DataError, NumericError
from .. import call_command, execute_from_command_line, find_commands
from ..base import EXIT_DATA, EXIT_NUMERIC, EXIT_USAGE, CommandError, CommandParser, exit_code_for


def run(*args):
    stdout, stderr = io.StringIO(), io.StringIO()
    code = call_command(*args, stdout=stdout, stderr=stderr)
    return code, stdout.getvalue(), stderr.getvalue()


class ExitCodeTestCase(TestCase):
    TESTS = [
        (ConfigError("x"), EXIT_USAGE),
        (CommandError("x"), EXIT_USAGE),
        (DataError("x"), EXIT_DATA),
        (CheckpointError("x"), EXIT_DATA),
        (FileNotFoundError(2, "missing"), EXIT_DATA),
        (NumericError("x"), EXIT_NUMERIC),
    ]

    def test_mapping(self):
        for exc, code in self.TESTS:
            with self.subTest(exc=exc):
                self.assertEqual(exit_code_for(exc), code)


class CommandParserTestCase(TestCase):
    def test_error_raises(self):
        parser = CommandParser(prog="phrasebreak x")
        parser.add_argument("--out", required=True)
        with self.assertRaises(CommandError):
            parser.parse_args([])


class ManagementUtilityTestCase(TestCase):
    def test_commands_found(self):
        self.assertEqual(
            find_commands(),
            ["corrupt", "eval", "finetune", "ingest", "pretrain", "score", "synth"],
        )

    def test_main_help(self):
        stdout = io.StringIO()
        self.assertEqual(execute_from_command_line(["phrasebreak"], stdout=stdout), 0)
        self.assertIn("synth", stdout.getvalue())
        self.assertIn("Cross-validate", stdout.getvalue())

    def test_command_help(self):
        stdout = io.StringIO()
        code = execute_from_command_line(["phrasebreak", "help", "eval"], stdout=stdout)
        self.assertEqual(code, 0)
        self.assertIn("--compare", stdout.getvalue())

    def test_unknown_command(self):
        code, _, stderr = run("train")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("Unknown command", stderr)

    def test_missing_option(self):
        code, _, stderr = run("synth", "-v", "0")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("--out", stderr)

    def test_unknown_config_key(self):
        with tempfile.TemporaryDirectory() as tmp:
            code, _, stderr = run("synth", "--out", tmp, "-v", "0", "--set", "synth.colour=red")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("ConfigError", stderr)

    def test_missing_input(self):
        with tempfile.TemporaryDirectory() as tmp:
            code, _, stderr = run(
                "corrupt",
                os.path.join(tmp, "missing.jsonl"),
                "--vocab",
                os.path.join(tmp, "vocab.txt"),
                "--out",
                os.path.join(tmp, "out.jsonl"),
                "-v",
                "0",
            )
        self.assertEqual(code, EXIT_DATA)
        self.assertIn("missing.jsonl", stderr)

    def test_bad_input_names_line(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "bad.ctm")
            with open(path, "w") as f:
                f.write("u1 1 0.0 0.2 the\nu1 1 0.3 cat\n")
            code, _, stderr = run("ingest", path, "--out", os.path.join(tmp, "t.jsonl"), "-v", "0")
        self.assertEqual(code, EXIT_DATA)
        self.assertIn("line 2", stderr)
