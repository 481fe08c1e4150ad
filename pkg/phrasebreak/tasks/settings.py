from ..conf import Settings


BACKBONES = ["transformer", "bilstm"]


class TrainConfig(Settings):
    """
    Minibatch training settings shared by pretraining and fine-tuning.
    """

    BATCH_SIZE = 16
    EPOCHS = 10

    LR = 1e-4
    """
    Adam learning rate.
    """

    CLASS_WEIGHTS = False
    """
    Weight the loss by inverse class frequency of the training labels.
    """

    BACKBONE = "transformer"
    """
    ``transformer`` or ``bilstm``. Only used when no init checkpoint is given.
    """

    SEED = None
    """
    Seed of initialization, batch order and dropout. ``None`` derives it
    from the global seed.
    """

    def validate(self):
        self.require(
            isinstance(self.batch_size, int) and self.batch_size >= 1, "batch_size must be >= 1"
        )
        self.require(isinstance(self.epochs, int) and self.epochs >= 1, "epochs must be >= 1")
        self.require(
            isinstance(self.lr, (int, float)) and self.lr > 0, "lr must be a positive number"
        )
        self.require(isinstance(self.class_weights, bool), "class_weights must be true or false")
        self.require(
            self.backbone in BACKBONES,
            "backbone must be one of {}, got {!r}".format(", ".join(BACKBONES), self.backbone),
        )
        self.require(
            self.seed is None or (isinstance(self.seed, int) and self.seed >= 0),
            "seed must be a non-negative integer or null",
        )


class PretrainConfig(TrainConfig):
    SECTION = "pretrain"

    BATCH_SIZE = 64
    EPOCHS = 3

    HELD_OUT_FRACTION = 0.05
    """
    Fraction of originals (with all their corrupted copies) held out for
    the reported accuracy and F-score.
    """

    def validate(self):
        super().validate()
        self.require(
            isinstance(self.held_out_fraction, (int, float))
            and 0 <= self.held_out_fraction < 1,
            "held_out_fraction must be in [0, 1)",
        )


class FinetuneConfig(TrainConfig):
    SECTION = "finetune"
