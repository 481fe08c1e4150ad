import logging

from ...alignment.ctm import read_alignments
from ...alignment.tokens import build_sequence
from ...alignment.vocab import encode
from ...tasks.predict import Predictor, predict_all
from ..base import BaseCommand, CommandError


logger = logging.getLogger("phrasebreak.management")


class Command(BaseCommand):
    help = "Score recordings: the overall rank and a rank for every break."

    def add_arguments(self, parser):
        parser.add_argument("alignments", nargs="+", help="CTM or TSV alignment files.")
        parser.add_argument("--overall", help="Fine-tuned overall checkpoint.")
        parser.add_argument("--fine", help="Fine-tuned fine-grained checkpoint.")
        parser.add_argument(
            "--format", choices=["ctm", "tsv"], help="Input format; detected when omitted."
        )
        parser.add_argument("--workers", type=int, default=1, help="Prediction threads.")

    def predict(self, path, task, sequences, workers):
        checkpoint = self.load_checkpoint(path)
        model = Predictor.from_checkpoint(checkpoint, task).model
        truncated = sum(1 for s in sequences if len(s) + 1 > model.max_len)
        if truncated:
            logger.warning("%d utterances are truncated to %d tokens", truncated, model.max_len)
        samples = [encode(s, model.vocab, model.max_len) for s in sequences]
        return predict_all(checkpoint, samples, workers)

    def handle(self, **options):
        if not (options["overall"] or options["fine"]):
            raise CommandError("Give --overall, --fine or both")
        utterances = read_alignments(options["alignments"], options["format"], options["workers"])
        sequences = [build_sequence(utt) for utt in utterances]

        overall = fine = None
        if options["overall"]:
            overall = self.predict(options["overall"], "overall", sequences, options["workers"])
        if options["fine"]:
            fine = self.predict(options["fine"], "fine", sequences, options["workers"])

        for i, seq in enumerate(sequences):
            fields = [seq.id]
            if overall is not None:
                fields.append("overall={}".format(overall[i].value))
            if fine is not None:
                ranks = fine[i] + [None] * (len(seq.breaks) - len(fine[i]))
                tokens = [seq.words[0]]
                for brk, rank, word in zip(seq.breaks, ranks, seq.words[1:]):
                    tokens.append("{}/{}".format(brk, rank.value if rank else "-"))
                    tokens.append(word)
                fields.append(" ".join(tokens))
            self.stdout.write("\t".join(fields) + "\n")
        logger.info("Scored %d utterances", len(sequences))
