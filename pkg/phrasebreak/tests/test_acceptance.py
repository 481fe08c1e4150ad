"""
Desk-scale end-to-end checks. They train real models for minutes, so
they only run with ``PHRASEBREAK_SLOW_TESTS=1``.
"""
import functools
import io
import os
import shutil
import tempfile
from unittest import TestCase, skipUnless

from ..alignment.vocab import build_vocab, encode
from ..baselines.reference import AgainstReferenceAssessor
from ..conf import RunConfig, derive_seed
from ..corruption.rbtd import build_pretrain_dataset
from ..corruption.settings import CorruptionConfig
from ..evaluation.crossval import cross_validate
from ..management import call_command
from ..nn.settings import BiLstmConfig, EncoderConfig
from ..synth.esl import generate_esl, references_of
from ..synth.native import generate_native
from ..synth.settings import SynthConfig
from ..tasks.samples import RankScale
from ..tasks.settings import FinetuneConfig, PretrainConfig
from ..tasks.training import make_fit, pretrain_rbtd


SLOW = os.environ.get("PHRASEBREAK_SLOW_TESTS") == "1"
SKIP_REASON = "set PHRASEBREAK_SLOW_TESTS=1 to run the acceptance tests"

GREAT = RankScale.GREAT.index


def seed(purpose):
    return derive_seed(RunConfig.DEFAULT_SEED, purpose)


@functools.lru_cache(maxsize=None)
def corpora():
    """
    The native corpus, the learner samples and the shared vocabulary.
    """
    cfg = SynthConfig()
    native = generate_native(cfg, seed=seed("synth.native"))
    texts = generate_native(
        cfg,
        seed=seed("synth.esl_native"),
        n_texts=cfg.n_esl_texts,
        patterns_per_text=1,
        prefix="txt",
    )
    vocab = build_vocab(native + texts)
    learners = generate_esl(cfg, texts, vocab, seed=seed("synth.esl"))
    return native, learners, vocab


@functools.lru_cache(maxsize=None)
def pretrained():
    native, _, vocab = corpora()
    dataset = build_pretrain_dataset(
        [encode(s, vocab) for s in native], CorruptionConfig(), seed=seed("corruption")
    )
    return pretrain_rbtd(dataset, PretrainConfig(), EncoderConfig(), vocab, seed=seed("pretrain"))


@skipUnless(SLOW, SKIP_REASON)
class RbtdLearnabilityTestCase(TestCase):
    def test_held_out_accuracy(self):
        native, _, _ = corpora()
        self.assertGreaterEqual(len(native), 2000)
        checkpoint = pretrained()
        self.assertEqual(checkpoint["train"]["epochs"], 3)
        self.assertEqual(checkpoint["train"]["batch_size"], 64)
        self.assertGreaterEqual(checkpoint["metrics"]["accuracy"], 0.75)


@skipUnless(SLOW, SKIP_REASON)
class PretrainingTransferTestCase(TestCase):
    def cross_validate(self, model, fit):
        _, learners, _ = corpora()
        return cross_validate(learners, fit, "fine", k=5, seed=seed("eval"), model=model)

    def test_pretrained_init_beats_scratch_and_bilstm(self):
        _, _, vocab = corpora()
        cfg = FinetuneConfig()
        finetune_seed = seed("finetune")
        rbtd = self.cross_validate(
            "checkpoint", make_fit("fine", cfg, init=pretrained(), seed=finetune_seed)
        )
        scratch = self.cross_validate(
            "scratch", make_fit("fine", cfg, EncoderConfig(), vocab, seed=finetune_seed)
        )
        bilstm = self.cross_validate(
            "bilstm",
            make_fit(
                "fine", cfg.replace(backbone="bilstm"), BiLstmConfig(), vocab, seed=finetune_seed
            ),
        )
        self.assertGreaterEqual(rbtd.mean["macro_f1"], scratch.mean["macro_f1"] + 0.02)
        self.assertGreater(rbtd.mean["macro_f1"], bilstm.mean["macro_f1"])


@skipUnless(SLOW, SKIP_REASON)
class DiversePatternTestCase(TestCase):
    def test_against_reference_misses_valid_alternates(self):
        _, learners, _ = corpora()
        alternates = sum(1 for s in learners if s.truth.n_alternates)
        self.assertGreaterEqual(alternates / len(learners), 0.3)

        eval_seed = seed("eval")
        assessor = AgainstReferenceAssessor(references_of(learners))
        baseline = cross_validate(
            learners, assessor.make_fit("overall"), "overall", k=5, seed=eval_seed
        )
        model = cross_validate(
            learners,
            make_fit("overall", FinetuneConfig(), init=pretrained(), seed=seed("finetune")),
            "overall",
            k=5,
            seed=eval_seed,
        )
        baseline_great = baseline.per_category()[GREAT]
        model_great = model.per_category()[GREAT]
        self.assertGreaterEqual(model_great["recall"][0] - baseline_great["recall"][0], 0.10)
        self.assertLessEqual(
            abs(model_great["precision"][0] - baseline_great["precision"][0]), 0.05
        )


PIPELINE_SETTINGS = [
    "-v",
    "0",
    "--seed",
    "99",
    "--set",
    "synth.n_sentences=200",
    "--set",
    "synth.n_esl=60",
    "--set",
    "synth.n_esl_texts=20",
    "--set",
    "encoder.d_model=32",
    "--set",
    "encoder.n_heads=2",
    "--set",
    "encoder.n_layers=1",
    "--set",
    "encoder.ffn_dim=64",
    "--set",
    "pretrain.epochs=1",
    "--set",
    "finetune.epochs=2",
    "--set",
    "eval.k=3",
]

PIPELINE_OUTPUTS = [
    "data/native.jsonl",
    "data/esl.jsonl",
    "data/truth.jsonl",
    "data/references.jsonl",
    "data/vocab.txt",
    "pretrain.jsonl",
    "rbtd.pbrk",
    "overall.pbrk",
    "reports/overall.txt",
    "reports/overall.json",
    "reports/overall.csv",
]


def run_pipeline(root):
    path = functools.partial(os.path.join, root)

    def run(name, *args):
        stderr = io.StringIO()
        code = call_command(
            name, *(list(args) + PIPELINE_SETTINGS), stdout=io.StringIO(), stderr=stderr
        )
        assert code == 0, "{} failed ({}): {}".format(name, code, stderr.getvalue())

    vocab = path("data", "vocab.txt")
    esl = path("data", "esl.jsonl")
    run("synth", "--out", path("data"))
    run("corrupt", path("data", "native.jsonl"), "--vocab", vocab, "--out", path("pretrain.jsonl"))
    run("pretrain", path("pretrain.jsonl"), "--vocab", vocab, "--out", path("rbtd.pbrk"))
    run(
        "finetune",
        esl,
        "--task",
        "overall",
        "--init",
        path("rbtd.pbrk"),
        "--out",
        path("overall.pbrk"),
    )
    run(
        "eval",
        esl,
        "--task",
        "overall",
        "--model",
        "checkpoint",
        "--init",
        path("rbtd.pbrk"),
        "--compare",
        "scratch",
        "bilstm",
        "against-ref",
        "--vocab",
        vocab,
        "--references",
        path("data", "references.jsonl"),
        "--truth",
        path("data", "truth.jsonl"),
        "--format",
        "csv",
        "--out",
        path("reports", "overall"),
    )


@skipUnless(SLOW, SKIP_REASON)
class PipelineDeterminismTestCase(TestCase):
    def setUp(self):
        self.tmp = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmp)

    def test_repeated_run_is_byte_identical(self):
        first, second = os.path.join(self.tmp, "a"), os.path.join(self.tmp, "b")
        run_pipeline(first)
        run_pipeline(second)
        for name in PIPELINE_OUTPUTS:
            with open(os.path.join(first, name), "rb") as a, open(
                os.path.join(second, name), "rb"
            ) as b:
                self.assertEqual(a.read(), b.read(), name)
