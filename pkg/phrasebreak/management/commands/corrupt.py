import logging

from ...alignment.tokens import read_token_sequences
from ...alignment.vocab import Vocabulary, encode
from ...corruption.rbtd import build_pretrain_dataset, write_pretrain_dataset
from ..base import BaseCommand


logger = logging.getLogger("phrasebreak.management")


class Command(BaseCommand):
    help = "Build the replaced-break-token pretraining dataset from native token sequences."

    def add_arguments(self, parser):
        parser.add_argument("tokens", help="Native token-sequence JSON Lines file.")
        parser.add_argument("--vocab", required=True, help="Vocabulary file.")
        parser.add_argument("--out", required=True, help="Pretraining dataset output.")

    def handle(self, **options):
        sequences = read_token_sequences(options["tokens"])
        vocab = Vocabulary.load_file(options["vocab"])
        backbone = self.config.pretrain.backbone
        max_len = self.encoder_config(backbone).max_len
        truncated = sum(1 for s in sequences if len(s) + 1 > max_len)
        if truncated:
            logger.warning("%d sequences longer than max_len %d are truncated", truncated, max_len)

        corpus = [encode(s, vocab, max_len) for s in sequences]
        dataset = build_pretrain_dataset(
            corpus, self.config.corruption, seed=self.config.seed_for("corruption")
        )
        write_pretrain_dataset(options["out"], dataset)
        self.write_config(options["out"])
        logger.info("Wrote %d pretraining samples to %s", len(dataset), options["out"])
