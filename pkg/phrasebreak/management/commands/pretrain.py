import io
import logging

from ... import report_writer as rw
from ...alignment.vocab import Vocabulary
from ...corruption.rbtd import read_pretrain_dataset
from ...tasks.training import pretrain_rbtd
from ..base import BaseCommand


logger = logging.getLogger("phrasebreak.management")


class PretrainTable(rw.ReportDefinition):
    def __init__(self):
        super().__init__("pretraining", title="Performance of the pretrained discriminator")
        self.add_column("model", "Model", width=14)
        self.add_column("accuracy", "Accuracy", colstyle=rw.Style(datatype=rw.DataType.PERCENTAGE))
        self.add_column("f_score", "F-score", colstyle=rw.Style(datatype=rw.DataType.PERCENTAGE))
        self.add_column("n", "Held-out", colstyle=rw.Style(datatype=rw.DataType.INT))


def format_pretrain_metrics(name, metrics):
    """
    Renders the held-out discriminator metrics of a checkpoint, or the
    training accuracy when nothing was held out.
    """
    stream = io.StringIO()
    with PretrainTable().create_writer(stream, rw.OutputType.TEXT) as writer:
        writer.writeheader()
        if "accuracy" in metrics:
            writer.writerow(
                {
                    "model": name,
                    "accuracy": metrics["accuracy"],
                    "f_score": metrics["f_score"],
                    "n": metrics["held_out"],
                }
            )
        else:
            writer.writerow(
                {"model": name, "accuracy": metrics["train_accuracy"], "f_score": None, "n": None}
            )
    return stream.getvalue()


class Command(BaseCommand):
    help = "Pretrain the replaced-break-token discriminator."

    def add_arguments(self, parser):
        parser.add_argument("dataset", help="Pretraining dataset from the corrupt command.")
        parser.add_argument(
            "--vocab", required=True, help="Vocabulary the dataset was encoded with."
        )
        parser.add_argument("--out", required=True, help="Checkpoint output.")

    def handle(self, **options):
        dataset = read_pretrain_dataset(options["dataset"])
        vocab = Vocabulary.load_file(options["vocab"])
        cfg = self.config.pretrain
        checkpoint = pretrain_rbtd(
            dataset,
            cfg,
            self.encoder_config(cfg.backbone),
            vocab,
            seed=self.config.seed_for("pretrain"),
        )
        checkpoint.save(options["out"])
        self.write_config(options["out"])
        self.stdout.write(format_pretrain_metrics(cfg.backbone, checkpoint["metrics"]))
