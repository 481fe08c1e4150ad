import logging

from ...alignment.vocab import Vocabulary
from ...baselines.reference import (
    AgainstReferenceAssessor,
    ReferenceSet,
    alternate_pattern_diagnostics,
)
from ...evaluation.crossval import cross_validate
from ...evaluation.reports import format_text, render_report
from ...evaluation.settings import REPORT_FORMATS
from ...synth.esl import read_truth
from ...tasks.samples import read_rated_dataset
from ...tasks.training import make_fit
from ..base import BaseCommand, CommandError


logger = logging.getLogger("phrasebreak.management")


MODELS = ["checkpoint", "scratch", "bilstm", "against-ref"]


class Command(BaseCommand):
    help = "Cross-validate assessment models and write the evaluation report."

    def add_arguments(self, parser):
        parser.add_argument("dataset", help="Rated dataset (JSON Lines).")
        parser.add_argument("--task", required=True, choices=["overall", "fine"])
        parser.add_argument(
            "--model",
            required=True,
            choices=MODELS,
            help=(
                "checkpoint: fine-tune from --init; scratch: fine-tune a random transformer; "
                "bilstm: Bi-LSTM baseline; against-ref: compare with --references."
            ),
        )
        parser.add_argument(
            "--compare",
            nargs="+",
            default=[],
            choices=MODELS,
            help="More models evaluated on the same folds and reported side by side.",
        )
        parser.add_argument("--out", required=True, help="Report path without extension.")
        parser.add_argument("--init", help="Pretrained discriminator checkpoint.")
        parser.add_argument("--vocab", help="Vocabulary file, for scratch and bilstm.")
        parser.add_argument("--references", help="References or token-sequence file.")
        parser.add_argument(
            "--truth", help="Ground-truth trace; adds alternate-pattern diagnostics."
        )
        parser.add_argument(
            "--format", nargs="+", choices=REPORT_FORMATS, help="Report formats to write."
        )
        parser.add_argument("-k", type=int, help="Number of folds.")

    def require(self, options, name, model):
        if not options[name]:
            raise CommandError('Model "{}" needs --{}'.format(model, name))
        return options[name]

    def make_fit(self, model, task, options):
        cfg = self.config.finetune
        seed = self.config.seed_for("finetune")
        if model == "checkpoint":
            init = self.load_checkpoint(self.require(options, "init", model))
            return make_fit(task, cfg, init=init, seed=seed), None
        if model in ("scratch", "bilstm"):
            backbone = "bilstm" if model == "bilstm" else "transformer"
            vocab = Vocabulary.load_file(self.require(options, "vocab", model))
            fit = make_fit(
                task,
                cfg.replace(backbone=backbone),
                self.encoder_config(backbone),
                vocab,
                seed=seed,
            )
            return fit, None
        references = ReferenceSet.load(self.require(options, "references", model))
        assessor = AgainstReferenceAssessor(references)
        return assessor.make_fit(task), assessor

    def handle(self, **options):
        task = options["task"]
        dataset = read_rated_dataset(options["dataset"])
        eval_cfg = self.config.eval
        k = options["k"] or eval_cfg.k
        seed = eval_cfg.seed if eval_cfg.seed is not None else self.config.seed_for("eval")
        formats = options["format"] or eval_cfg.formats

        models = [options["model"]] + [m for m in options["compare"] if m != options["model"]]
        reports = []
        for model in models:
            fit, assessor = self.make_fit(model, task, options)
            logger.info("Cross-validating %s on the %s task (k=%d)", model, task, k)
            report = cross_validate(
                dataset, fit, task, k, seed, model=model, per_utterance=eval_cfg.per_utterance
            )
            if assessor is not None and options["truth"]:
                if task == "overall":
                    alternates = [t.id for t in read_truth(options["truth"]) if t.n_alternates]
                    report.extra.update(
                        alternate_pattern_diagnostics(
                            dataset, assessor.predict_overall, alternates
                        )
                    )
                else:
                    logger.warning("Alternate-pattern diagnostics need the overall task")
            reports.append(report)

        paths = render_report(reports, options["out"], formats)
        self.write_config(options["out"])
        logger.info("Wrote %s", ", ".join(paths))
        self.stdout.write(format_text(reports))
