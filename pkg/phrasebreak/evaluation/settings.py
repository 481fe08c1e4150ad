from ..conf import Settings
from ..utils import listify


REPORT_FORMATS = ["text", "json", "csv", "html", "xlsx"]


class EvalConfig(Settings):
    SECTION = "eval"

    K = 5
    """
    Number of cross-validation folds.
    """

    PER_UTTERANCE = False
    """
    Average fine-grained metrics per utterance instead of pooling every
    break position of a fold into one confusion matrix.
    """

    FORMATS = ["text", "json"]
    """
    Report renderings to write. ``text`` and ``json`` are always written.
    """

    SEED = None
    """
    Seed of the fold assignment. ``None`` derives it from the global seed.
    """

    def validate(self):
        self.require(isinstance(self.k, int) and self.k >= 2, "k must be an integer >= 2")
        self.require(isinstance(self.per_utterance, bool), "per_utterance must be true or false")
        self.formats = listify(self.formats)
        unknown = [f for f in self.formats if f not in REPORT_FORMATS]
        self.require(
            not unknown,
            "Unknown report format(s) {}; choose from {}".format(
                ", ".join(map(str, unknown)), ", ".join(REPORT_FORMATS)
            ),
        )
        self.require(
            self.seed is None or (isinstance(self.seed, int) and self.seed >= 0),
            "seed must be a non-negative integer or null",
        )
