import logging

from ...alignment.vocab import Vocabulary
from ...tasks.samples import read_rated_dataset
from ...tasks.training import finetune
from ..base import BaseCommand, CommandError


logger = logging.getLogger("phrasebreak.management")


class Command(BaseCommand):
    help = "Fine-tune an overall or fine-grained assessment model."

    def add_arguments(self, parser):
        parser.add_argument("dataset", help="Rated dataset (JSON Lines).")
        parser.add_argument("--task", required=True, choices=["overall", "fine"])
        parser.add_argument("--out", required=True, help="Checkpoint output.")
        parser.add_argument(
            "--init", help="Pretrained discriminator checkpoint; random initialization if omitted."
        )
        parser.add_argument(
            "--vocab", help="Vocabulary file; required without --init, checked against it with."
        )

    def handle(self, **options):
        dataset = read_rated_dataset(options["dataset"])
        cfg = self.config.finetune
        init = vocab = enc_cfg = None
        if options["init"]:
            init = self.load_checkpoint(options["init"])
        elif not options["vocab"]:
            raise CommandError("Fine-tuning without --init needs --vocab")
        else:
            enc_cfg = self.encoder_config(cfg.backbone)
        if options["vocab"]:
            vocab = Vocabulary.load_file(options["vocab"])

        checkpoint = finetune(
            options["task"],
            dataset,
            cfg,
            enc_cfg,
            vocab,
            init=init,
            seed=self.config.seed_for("finetune"),
        )
        checkpoint.save(options["out"])
        self.write_config(options["out"])
        history = checkpoint["history"]
        self.stdout.write(
            "Fine-tuned {} model ({}): loss {:.4f} -> {:.4f}\n".format(
                options["task"],
                checkpoint["init"],
                history["initial_loss"],
                history["epoch_losses"][-1],
            )
        )
