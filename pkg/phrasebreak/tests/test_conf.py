import os
import shutil
import tempfile
from unittest import TestCase, mock

from ..conf import SEED_OFFSETS, RunConfig, derive_seed, parse_override
from ..errors import ConfigError
from ..log import logging_dictmerge, resolve_level
from ..tasks.settings import FinetuneConfig, PretrainConfig


class DeriveSeedTestCase(TestCase):
    def test_offsets(self):
        self.assertEqual(derive_seed(1234, "synth.native"), 2234)
        self.assertEqual(derive_seed(1234, "eval", 2), 1234 + 7000 + 194)
        self.assertEqual(derive_seed(2 ** 63 - 1, "corruption"), 3999)

    def test_purposes_are_distinct(self):
        seeds = [derive_seed(0, purpose) for purpose in SEED_OFFSETS]
        self.assertEqual(len(set(seeds)), len(seeds))

    def test_unknown_purpose(self):
        with self.assertRaises(ConfigError):
            derive_seed(0, "shuffle")


class ParseOverrideTestCase(TestCase):
    TESTS = [
        ("pretrain.epochs=3", ("pretrain", "epochs", 3)),
        ("finetune.lr=1e-3", ("finetune", "lr", 0.001)),
        ("finetune.class_weights=true", ("finetune", "class_weights", True)),
        ("synth.class_fractions=[1, 1, 2]", ("synth", "class_fractions", [1, 1, 2])),
        ("synth.seed=", ("synth", "seed", None)),
    ]

    def test_values(self):
        for text, expected in self.TESTS:
            self.assertEqual(parse_override(text), expected, text)

    def test_malformed(self):
        for text in ("epochs=3", "pretrain.epochs", "pretrain.epochs=[1"):
            with self.assertRaises(ConfigError, msg=text):
                parse_override(text)


class SettingsTestCase(TestCase):
    def test_inherited_defaults(self):
        cfg = PretrainConfig()
        self.assertEqual((cfg.batch_size, cfg.epochs, cfg.lr), (64, 3, 1e-4))
        self.assertEqual(cfg.held_out_fraction, 0.05)
        self.assertEqual(FinetuneConfig().batch_size, 16)

    def test_replace(self):
        cfg = FinetuneConfig().replace(backbone="bilstm")
        self.assertEqual(cfg.backbone, "bilstm")
        self.assertEqual(cfg, FinetuneConfig(backbone="bilstm"))

    def test_validation(self):
        with self.assertRaises(ConfigError):
            FinetuneConfig(lr=0)
        with self.assertRaises(ConfigError):
            FinetuneConfig(backbone="crf")
        with self.assertRaises(ConfigError):
            PretrainConfig(held_out_fraction=1.0)

    def test_unknown_option(self):
        with self.assertRaises(ConfigError):
            FinetuneConfig(learning_rate=0.1)


class RunConfigTestCase(TestCase):
    def setUp(self):
        self.tmp = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmp)

    def write(self, text):
        path = os.path.join(self.tmp, "run.yaml")
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
        return path

    def test_defaults(self):
        cfg = RunConfig.load()
        self.assertEqual(cfg.seed, 1234)
        self.assertEqual(cfg.seed_for("pretrain"), 6234)
        self.assertEqual(list(cfg.as_dict()), ["seed"] + list(cfg.section_classes))

    def test_file_overrides_and_seed(self):
        path = self.write("seed: 5\npretrain:\n  epochs: 2\nfinetune:\n  lr: 1e-2\n")
        cfg = RunConfig.load(path, overrides=["pretrain.epochs=4"], seed=9)
        self.assertEqual(cfg.seed, 9)
        self.assertEqual(cfg.pretrain.epochs, 4)
        self.assertEqual(cfg.finetune.lr, 0.01)

    def test_dump_reloads(self):
        cfg = RunConfig.load(overrides=["eval.k=3", "synth.n_esl=100"], seed=7)
        again = RunConfig.load(self.write(cfg.dump()))
        self.assertEqual(again.as_dict(), cfg.as_dict())

    def test_unknown_section(self):
        with self.assertRaises(ConfigError):
            RunConfig.load(self.write("training:\n  epochs: 2\n"))

    def test_unknown_key(self):
        with self.assertRaises(ConfigError):
            RunConfig.load(overrides=["pretrain.epoch=2"])

    def test_bad_seed(self):
        for seed in (-1, "x", True):
            with self.assertRaises(ConfigError, msg=repr(seed)):
                RunConfig({"seed": seed})

    def test_bad_file(self):
        with self.assertRaises(ConfigError):
            RunConfig.load(os.path.join(self.tmp, "missing.yaml"))
        with self.assertRaises(ConfigError):
            RunConfig.load(self.write("- a\n- b\n"))
        with self.assertRaises(ConfigError):
            RunConfig.load(self.write("pretrain: [1\n"))


class LoggingConfigTestCase(TestCase):
    def test_dictmerge(self):
        merged = logging_dictmerge(
            {"loggers": {"a": {"level": "INFO", "handlers": ["x"]}}},
            {"loggers": {"a": {"level": "DEBUG"}, "b": {}}},
        )
        self.assertEqual(merged["loggers"]["a"], {"level": "DEBUG", "handlers": ["x"]})
        self.assertIn("b", merged["loggers"])

    def test_resolve_level(self):
        self.assertEqual(resolve_level(0), "WARNING")
        self.assertEqual(resolve_level(2), "DEBUG")
        with mock.patch.dict(os.environ, {"PHRASEBREAK_LOG_LEVEL": "error"}):
            self.assertEqual(resolve_level(), "ERROR")
        with mock.patch.dict(os.environ, {"PHRASEBREAK_LOG_LEVEL": "loud"}):
            self.assertEqual(resolve_level(), "INFO")
