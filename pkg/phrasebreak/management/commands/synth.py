import logging
import os

from ...alignment.tokens import write_token_sequences
from ...alignment.vocab import build_vocab
from ...synth.esl import generate_esl, references_of, write_truth
from ...synth.native import generate_native
from ...synth.stats import corpus_stats, format_stats
from ...system.tempfile import write_atomic
from ...tasks.samples import write_rated_dataset
from ..base import BaseCommand


logger = logging.getLogger("phrasebreak.management")


OUTPUT_FILES = {
    "native": "native.jsonl",
    "esl": "esl.jsonl",
    "truth": "truth.jsonl",
    "references": "references.jsonl",
    "vocab": "vocab.txt",
}


class Command(BaseCommand):
    help = "Generate the synthetic native and learner corpora."

    def add_arguments(self, parser):
        parser.add_argument("--out", required=True, help="Output directory.")

    def handle(self, **options):
        cfg = self.config.synth
        seed = self.config.seed
        paths = {k: os.path.join(options["out"], name) for k, name in OUTPUT_FILES.items()}

        native = generate_native(cfg, seed=cfg.seed_for("synth.native", seed))
        texts = generate_native(
            cfg,
            seed=cfg.seed_for("synth.esl_native", seed),
            n_texts=cfg.n_esl_texts,
            patterns_per_text=1,
            prefix="txt",
        )
        vocab = build_vocab(native + texts)
        max_len = min(self.config.encoder.max_len, self.config.bilstm.max_len)
        learners = generate_esl(
            cfg, texts, vocab, seed=cfg.seed_for("synth.esl", seed), max_len=max_len
        )

        write_token_sequences(paths["native"], native)
        write_atomic(paths["vocab"], vocab.save())
        write_rated_dataset(paths["esl"], learners)
        write_truth(paths["truth"], [s.truth for s in learners])
        references_of(learners).save(paths["references"])
        self.write_config(os.path.join(options["out"], "synth"))
        logger.info("Wrote synthetic corpora to %s", options["out"])

        self.stdout.write(format_stats(corpus_stats(native), "Native (pretraining) corpus"))
        self.stdout.write("\n")
        self.stdout.write(format_stats(corpus_stats(learners), "Learner corpus"))
