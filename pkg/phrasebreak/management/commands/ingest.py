import logging

from ...alignment.ctm import read_alignments
from ...alignment.tokens import build_sequence, write_token_sequences
from ...alignment.vocab import build_vocab
from ...synth.stats import corpus_stats, format_stats
from ...system.tempfile import write_atomic
from ..base import BaseCommand


logger = logging.getLogger("phrasebreak.management")


class Command(BaseCommand):
    help = "Convert forced-alignment files (CTM/TSV) to word/break token sequences."

    def add_arguments(self, parser):
        parser.add_argument("alignments", nargs="+", help="CTM or TSV alignment files.")
        parser.add_argument("--out", required=True, help="Token-sequence JSON Lines output.")
        parser.add_argument(
            "--format", choices=["ctm", "tsv"], help="Input format; detected when omitted."
        )
        parser.add_argument("--vocab", help="Also build a vocabulary and write it here.")
        parser.add_argument(
            "--min-count", type=int, default=1, help="Vocabulary count threshold (default 1)."
        )
        parser.add_argument(
            "--workers", type=int, default=1, help="Threads reading the alignment files."
        )

    def handle(self, **options):
        utterances = read_alignments(options["alignments"], options["format"], options["workers"])
        sequences = [build_sequence(utt) for utt in utterances]
        write_token_sequences(options["out"], sequences)
        logger.info("Wrote %d token sequences to %s", len(sequences), options["out"])

        if options["vocab"]:
            vocab = build_vocab(sequences, options["min_count"])
            write_atomic(options["vocab"], vocab.save())
            logger.info(
                "Wrote vocabulary %s (fingerprint %s)", options["vocab"], vocab.fingerprint()
            )

        self.write_config(options["out"])
        stats = corpus_stats(sequences)
        stats.duration = sum(utt.duration for utt in utterances)
        self.stdout.write(format_stats(stats, "Ingested corpus"))
