"""
Minibatch training of the assessment model: replaced-break-token
detection pretraining and overall / fine-grained fine-tuning.

Every run is deterministic given its seed. The seed is split into
independent streams for parameter initialization, dropout, the batch
order and the held-out split.
"""
import logging
from collections import OrderedDict

import numpy as np
from tqdm import tqdm

from ..corruption.rbtd import CORRUPTED, ORIGINAL
from ..errors import CheckpointError, DataError, NumericError, VocabularyMismatchError
from ..evaluation.metrics import ConfusionMatrix, compute_metrics
from ..log import BATCH_LOGGER
from ..nn.losses import inverse_frequency_weights
from ..nn.optim import Adam
from .models import AssessmentModel, check_vocabulary, make_batches
from .samples import N_RANKS


logger = logging.getLogger("phrasebreak.tasks")

batch_logger = logging.getLogger(BATCH_LOGGER)


def stream_seeds(seed, n, *key):
    """
    Derives ``n`` independent integer seeds from ``seed`` (and an
    optional ``key``, eg. the fold index).
    """
    children = np.random.SeedSequence([int(seed)] + [int(k) for k in key]).spawn(n)
    return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in children]


class TrainingHistory(object):
    def __init__(self):
        self.initial_loss = None
        self.epoch_losses = []

    def as_dict(self):
        return OrderedDict(
            [("initial_loss", self.initial_loss), ("epoch_losses", list(self.epoch_losses))]
        )

    def __repr__(self):
        return "TrainingHistory(initial={}, epochs={})".format(
            self.initial_loss, self.epoch_losses
        )


class Trainer(object):
    """
    Trains ``model`` with Adam over a seeded random batch order.

    :param AssessmentModel model:
    :param TrainConfig cfg: Batch size, epochs and learning rate.
    :param int seed: Seed of the batch order.
    :param class_weights: Optional per-class loss weights.
    """

    def __init__(self, model, cfg, seed, class_weights=None):
        self.model = model
        self.cfg = cfg
        self.rng = np.random.Generator(np.random.PCG64(seed))
        self.class_weights = class_weights
        self.optimizer = Adam(model.params, lr=cfg.lr)
        self.history = TrainingHistory()

    def mean_loss(self, samples):
        """
        The loss over ``samples`` without dropout, weighted by the number of
        targets in each batch.
        """
        total = 0.0
        count = 0
        for batch in make_batches(samples, self.cfg.batch_size):
            n = len(self.model.targets(batch))
            loss = self.model.loss_and_grads(batch, train=False, class_weights=self.class_weights)
            total += loss * n
            count += n
        self.model.params.zero_grad()
        return total / count if count else 0.0

    def fit(self, samples):
        """
        Runs ``cfg.epochs`` epochs over ``samples``.

        :rtype: TrainingHistory
        :raise NumericError: if the loss or a parameter becomes non-finite.
        """
        model = self.model
        self.history.initial_loss = self.mean_loss(samples)
        logger.info(
            "Training %s on %d samples: initial loss %.4f",
            model,
            len(samples),
            self.history.initial_loss,
        )
        quiet = not logger.isEnabledFor(logging.INFO)

        for epoch in range(1, self.cfg.epochs + 1):
            order = self.rng.permutation(len(samples))
            batches = make_batches([samples[i] for i in order], self.cfg.batch_size)
            losses = []
            progress = tqdm(
                batches,
                desc="{} epoch {}/{}".format(model.task, epoch, self.cfg.epochs),
                unit="batch",
                leave=False,
                disable=True if quiet else None,
            )
            for step, batch in enumerate(progress, start=1):
                loss = model.loss_and_grads(batch, train=True, class_weights=self.class_weights)
                if not np.isfinite(loss):
                    raise NumericError(
                        "Non-finite loss at epoch {} batch {}".format(epoch, step)
                    )
                self.optimizer.step()
                losses.append(loss)
                batch_logger.debug("epoch %d batch %d: loss %.6f", epoch, step, loss)

            model.params.check_finite()
            mean = float(np.mean(losses))
            self.history.epoch_losses.append(mean)
            logger.info("Epoch %d/%d: mean loss %.4f", epoch, self.cfg.epochs, mean)

        return self.history


def predicted_classes(model, samples, batch_size=64):
    """
    Argmax class per sample (or per break position, flattened, for the
    fine-grained task), ties going to the lower class.
    """
    predictions = []
    for batch in make_batches(samples, batch_size):
        logits = model.forward(batch, train=False)
        if model.token_level:
            logits = logits[batch.break_mask]
        predictions.extend(int(c) for c in np.argmax(logits, axis=-1))
    return predictions


def split_by_source(dataset, fraction, seed):
    """
    Splits a pretraining dataset into train and held-out parts so that all
    samples made from one original land on the same side.

    :returns: ``(train, held_out)``
    """
    sources = sorted({s.original_id for s in dataset})
    n_held = int(round(fraction * len(sources)))
    if fraction > 0 and len(sources) > 1:
        n_held = min(max(n_held, 1), len(sources) - 1)
    rng = np.random.Generator(np.random.PCG64(seed))
    held = {sources[i] for i in rng.permutation(len(sources))[:n_held]}
    train = [s for s in dataset if s.original_id not in held]
    held_out = [s for s in dataset if s.original_id in held]
    return train, held_out


def rbtd_metrics(model, samples):
    """
    Accuracy and the F-score of the corrupted class.
    """
    predictions = predicted_classes(model, samples)
    cm = ConfusionMatrix.from_pairs([s.label for s in samples], predictions, n_classes=2)
    report = compute_metrics(cm)
    return OrderedDict(
        [
            ("accuracy", float(report.accuracy)),
            ("f_score", float(report.f1[CORRUPTED])),
            ("n", cm.total()),
        ]
    )


def pretrain_rbtd(dataset, cfg, enc_cfg, vocab, seed=0):
    """
    Trains the replaced-break-token discriminator.

    :param list dataset: ``LabeledSequence`` samples.
    :param PretrainConfig cfg: Training settings; ``cfg.seed`` wins over ``seed``.
    :param enc_cfg: ``EncoderConfig`` (or ``BiLstmConfig`` with ``cfg.backbone = 'bilstm'``).
    :param Vocabulary vocab: The vocabulary the samples were encoded with.
    :returns: The ``ModelCheckpoint``; its ``metrics`` entry holds the
        held-out ``accuracy`` and ``f_score`` and the ``train_accuracy``.
    :raise DataError: if the dataset does not contain both labels.
    :raise VocabularyMismatchError: if a sample was encoded with another vocabulary.
    """
    labels = {s.label for s in dataset}
    if labels != {ORIGINAL, CORRUPTED}:
        raise DataError(
            "Pretraining needs both original and corrupted samples, found labels {}".format(
                sorted(labels)
            )
        )
    for s in dataset:
        check_vocabulary(s, vocab)

    seed = seed if cfg.seed is None else cfg.seed
    init_seed, dropout_seed, order_seed, split_seed = stream_seeds(seed, 4)
    model = AssessmentModel("rbtd", cfg.backbone, enc_cfg, vocab, init_seed, dropout_seed)
    for s in dataset:
        model.check_sample(s)

    train, held_out = split_by_source(dataset, cfg.held_out_fraction, split_seed)
    logger.info("Pretraining split: %d train, %d held-out samples", len(train), len(held_out))
    history = Trainer(model, cfg, order_seed).fit(train)

    metrics = OrderedDict([("train_accuracy", rbtd_metrics(model, train)["accuracy"])])
    if held_out:
        held = rbtd_metrics(model, held_out)
        metrics["accuracy"] = held["accuracy"]
        metrics["f_score"] = held["f_score"]
        metrics["held_out"] = held["n"]
        logger.info(
            "Held-out discriminator accuracy %.4f, corrupted-class F-score %.4f",
            held["accuracy"],
            held["f_score"],
        )

    return model.to_checkpoint(
        init="scratch",
        train=dict(cfg.as_dict()),
        metrics=dict(metrics),
        history=dict(history.as_dict()),
    )


def check_labels(task, dataset):
    """
    :raise DataError: if a sample lacks the labels of ``task``.
    """
    for s in dataset:
        if task == "overall" and s.overall is None:
            raise DataError("Sample has no overall rank", sample_id=s.id)
        if task == "fine":
            if s.fine is None:
                raise DataError("Sample has no fine-grained ranks", sample_id=s.id)
            if len(s.fine) != s.n_breaks:
                raise DataError("Fine-grained ranks are not aligned to breaks", sample_id=s.id)


def build_finetune_model(task, dataset, cfg, enc_cfg=None, vocab=None, init=None, seed=0):
    """
    Fine-tunes a model and returns it with its ``TrainingHistory``.

    All checks run before training starts. See ``finetune``.
    """
    if not dataset:
        raise DataError("Cannot fine-tune on an empty dataset")
    check_labels(task, dataset)
    seed = seed if cfg.seed is None else cfg.seed
    init_seed, dropout_seed, order_seed = stream_seeds(seed, 3)

    pretrained = None
    if init is not None:
        if init.get("task") != "rbtd":
            raise CheckpointError(
                'Fine-tuning starts from an "rbtd" checkpoint, got "{}"'.format(init.get("task"))
            )
        pretrained = AssessmentModel.from_checkpoint(init)
        if vocab is not None and vocab.fingerprint() != pretrained.vocab.fingerprint():
            raise VocabularyMismatchError(
                "Vocabulary {} differs from the init checkpoint's {}".format(
                    vocab.fingerprint(), pretrained.vocab.fingerprint()
                )
            )
        if enc_cfg is not None and (
            not isinstance(enc_cfg, type(pretrained.cfg))
            or enc_cfg.replace(vocab_size=pretrained.vocab.size) != pretrained.cfg
        ):
            raise CheckpointError("Encoder configuration differs from the init checkpoint's")
        vocab = pretrained.vocab
        enc_cfg = pretrained.cfg
        backbone = pretrained.backbone
    else:
        if vocab is None or enc_cfg is None:
            raise DataError("Fine-tuning from scratch needs a vocabulary and encoder config")
        backbone = cfg.backbone

    model = AssessmentModel(task, backbone, enc_cfg, vocab, init_seed, dropout_seed)
    for s in dataset:
        model.check_sample(s)
    if pretrained is not None:
        model.params.copy_from(pretrained.params, prefix=model.encoder.prefix)

    class_weights = None
    if cfg.class_weights:
        targets = [s.overall.index for s in dataset] if task == "overall" else [
            r.index for s in dataset for r in s.fine
        ]
        class_weights = inverse_frequency_weights(targets, N_RANKS)
        logger.info("Class weights: %s", np.round(class_weights, 4).tolist())

    history = Trainer(model, cfg, order_seed, class_weights).fit(dataset)
    model.initialized_from = "pretrained" if pretrained is not None else "scratch"
    return model, history


def finetune(task, dataset, cfg, enc_cfg=None, vocab=None, init=None, seed=0):
    """
    Fine-tunes the overall (``task='overall'``) or fine-grained
    (``task='fine'``) head. With ``init`` the encoder starts from the RBTD
    checkpoint and every parameter stays trainable; otherwise it starts
    from a seeded random initialization with ``enc_cfg`` and ``vocab``.

    :param list dataset: ``RatedSample`` list.
    :param FinetuneConfig cfg: Training settings; ``cfg.seed`` wins over ``seed``.
    :param enc_cfg: Encoder settings. With ``init`` they must match the
        checkpoint's, or be ``None`` to take them from it.
    :param Vocabulary vocab: With ``init`` it must match the checkpoint's.
    :param ModelCheckpoint init: Optional ``rbtd`` checkpoint.
    :rtype: ModelCheckpoint
    :raise DataError: on missing or misaligned labels.
    :raise CheckpointError: if ``init`` is not an ``rbtd`` checkpoint or
        its encoder configuration differs.
    :raise VocabularyMismatchError: if the vocabularies differ.
    """
    model, history = build_finetune_model(task, dataset, cfg, enc_cfg, vocab, init, seed)
    return model.to_checkpoint(
        init=model.initialized_from,
        train=dict(cfg.as_dict()),
        history=dict(history.as_dict()),
    )


def finetune_overall(dataset, cfg, enc_cfg=None, vocab=None, init=None, seed=0):
    return finetune("overall", dataset, cfg, enc_cfg, vocab, init, seed)


def finetune_finegrained(dataset, cfg, enc_cfg=None, vocab=None, init=None, seed=0):
    return finetune("fine", dataset, cfg, enc_cfg, vocab, init, seed)


def make_fit(task, cfg, enc_cfg=None, vocab=None, init=None, seed=0):
    """
    Returns a cross-validation trainer ``fit(train, fold) -> predict``
    that fine-tunes a fresh model per fold with a fold-specific seed.
    """
    from .predict import Predictor

    def fit(train, fold):
        fold_seed = stream_seeds(seed, 1, fold)[0]
        fold_cfg = cfg.replace(seed=None)
        model, _ = build_finetune_model(task, train, fold_cfg, enc_cfg, vocab, init, fold_seed)
        predictor = Predictor(model)
        if task == "overall":
            return lambda sample: predictor.predict_overall(sample)[0]
        return predictor.predict_finegrained

    return fit
