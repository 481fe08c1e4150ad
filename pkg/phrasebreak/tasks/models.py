"""
The assessment model: an encoder backbone plus one linear head.

=========  =======================  =========================
task       head input               classes
=========  =======================  =========================
rbtd       pooled sequence state    original / corrupted
overall    pooled sequence state    Poor / Fair / Great
fine       every position's state   Poor / Fair / Great
=========  =======================  =========================

The fine-grained loss only counts break positions.
"""
import io
import logging

import numpy as np

from ..alignment.vocab import PAD_ID, Vocabulary
from ..checkpoint import ModelCheckpoint
from ..errors import CheckpointError, ConfigError, DataError, VocabularyMismatchError
from ..nn.bilstm import BiLstmEncoder
from ..nn.encoder import TransformerEncoder
from ..nn.layers import Linear
from ..nn.losses import softmax_cross_entropy
from ..nn.params import ModelParams
from ..nn.settings import BiLstmConfig, EncoderConfig
from ..utils import chunk_list
from .settings import BACKBONES


logger = logging.getLogger("phrasebreak.tasks")


MODEL_KIND = "phrasebreak.model"

TASK_CLASSES = {"rbtd": 2, "overall": 3, "fine": 3}

CONFIG_CLASSES = {"transformer": EncoderConfig, "bilstm": BiLstmConfig}


class Batch(object):
    """
    Samples padded with ``[PAD]`` to the longest one.

    Attributes: ``ids`` and ``valid`` (``(batch, length)`` arrays),
    ``break_mask`` (``True`` at break positions) and ``samples``.
    """

    def __init__(self, samples):
        if not samples:
            raise DataError("Cannot build an empty batch")
        self.samples = list(samples)
        length = max(len(s) for s in self.samples)
        self.ids = np.full((len(self.samples), length), PAD_ID, dtype=np.int64)
        self.valid = np.zeros((len(self.samples), length), dtype=bool)
        self.break_mask = np.zeros((len(self.samples), length), dtype=bool)
        for row, s in enumerate(self.samples):
            self.ids[row, : len(s)] = s.ids
            self.valid[row, : len(s)] = True
            self.break_mask[row, : len(s)] = s.break_mask

    def __len__(self):
        return len(self.samples)


def check_vocabulary(sample, vocab):
    """
    :raise VocabularyMismatchError: if ``sample`` was encoded with another
        vocabulary or holds ids outside it.
    """
    fingerprint = sample.vocab_fingerprint
    if fingerprint is not None and fingerprint != vocab.fingerprint():
        raise VocabularyMismatchError(
            "Sample was encoded with vocabulary {}, model uses {}".format(
                fingerprint, vocab.fingerprint()
            ),
            sample_id=sample.id,
        )
    if sample.ids and (min(sample.ids) < 0 or max(sample.ids) >= vocab.size):
        raise VocabularyMismatchError(
            "Token id outside the model vocabulary of {} ids".format(vocab.size),
            sample_id=sample.id,
        )


class AssessmentModel(object):
    """
    :param str task: ``rbtd``, ``overall`` or ``fine``.
    :param str backbone: ``transformer`` or ``bilstm``.
    :param cfg: ``EncoderConfig`` or ``BiLstmConfig``; ``vocab_size`` is
        set from ``vocab``.
    :param Vocabulary vocab: The vocabulary the model reads.
    :param int init_seed: Seed of the parameter initialization.
    :param int dropout_seed: Seed of the dropout masks.
    """

    def __init__(self, task, backbone, cfg, vocab, init_seed=0, dropout_seed=0):
        if task not in TASK_CLASSES:
            raise ConfigError('Unknown task "{}"'.format(task))
        if backbone not in BACKBONES:
            raise ConfigError('Unknown backbone "{}"'.format(backbone))
        if not isinstance(cfg, CONFIG_CLASSES[backbone]):
            raise ConfigError(
                "A {} backbone needs a {}".format(backbone, CONFIG_CLASSES[backbone].__name__)
            )

        self.task = task
        self.backbone = backbone
        self.cfg = cfg.replace(vocab_size=vocab.size)
        self.vocab = vocab
        self.init_seed = init_seed
        self.initialized_from = "scratch"
        self.n_classes = TASK_CLASSES[task]
        self.params = ModelParams()

        rng = np.random.Generator(np.random.PCG64(init_seed))
        dropout_rng = np.random.Generator(np.random.PCG64(dropout_seed))
        if backbone == "transformer":
            self.encoder = TransformerEncoder(self.cfg, self.params, rng, dropout_rng)
        else:
            self.encoder = BiLstmEncoder(self.cfg, self.params, rng, dropout_rng)
        self.head = Linear(self.params, "head.", self.encoder.hidden_size, self.n_classes, rng)

    @property
    def token_level(self):
        return self.task == "fine"

    @property
    def max_len(self):
        return self.cfg.max_len

    def check_sample(self, sample):
        check_vocabulary(sample, self.vocab)
        if len(sample) > self.max_len:
            raise DataError(
                "Sample of {} tokens exceeds max_len {}".format(len(sample), self.max_len),
                sample_id=sample.id,
            )

    def forward(self, batch, train=False):
        """
        :returns: ``(batch, n_classes)`` logits, or ``(batch, length,
            n_classes)`` for the fine-grained task.
        """
        hidden = self.encoder.forward(batch.ids, batch.valid, train)
        if self.token_level:
            return self.head.forward(hidden)
        return self.head.forward(self.encoder.pool(hidden, batch.valid))

    def backward(self, dlogits):
        dhidden = self.head.backward(dlogits)
        if not self.token_level:
            dhidden = self.encoder.pool_backward(dhidden)
        self.encoder.backward(dhidden)

    def targets(self, batch):
        """
        Returns the class indexes the loss is computed against: one per
        sample, or one per break position (row-major) for ``fine``.

        :raise DataError: if a sample lacks its label.
        """
        targets = []
        for s in batch.samples:
            if self.task == "rbtd":
                targets.append(s.label)
            elif self.task == "overall":
                if getattr(s, "overall", None) is None:
                    raise DataError("Sample has no overall rank", sample_id=s.id)
                targets.append(s.overall.index)
            else:
                if getattr(s, "fine", None) is None:
                    raise DataError("Sample has no fine-grained ranks", sample_id=s.id)
                targets.extend(r.index for r in s.fine)
        return np.asarray(targets, dtype=np.int64)

    def loss_and_grads(self, batch, train=True, class_weights=None):
        """
        Zeroes the gradients, runs forward and backward and returns the
        mean cross-entropy. For ``fine`` the mean runs over the break
        positions of the batch only; a batch without breaks has loss 0.
        """
        self.params.zero_grad()
        logits = self.forward(batch, train)
        targets = self.targets(batch)
        if self.token_level:
            loss, grad = softmax_cross_entropy(logits[batch.break_mask], targets, class_weights)
            dlogits = np.zeros_like(logits)
            dlogits[batch.break_mask] = grad
        else:
            loss, dlogits = softmax_cross_entropy(logits, targets, class_weights)
        self.backward(dlogits.astype(logits.dtype, copy=False))
        return loss

    def metadata(self):
        return {
            "kind": MODEL_KIND,
            "task": self.task,
            "backbone": self.backbone,
            "encoder": dict(self.cfg.as_dict()),
            "vocab": self.vocab.save(),
            "vocab_fingerprint": self.vocab.fingerprint(),
            "seed": self.init_seed,
        }

    def to_checkpoint(self, **extra):
        """
        :param extra: Additional JSON-serializable metadata, eg. ``init``,
            ``train`` and ``metrics``.
        """
        metadata = self.metadata()
        metadata.update(extra)
        return ModelCheckpoint(metadata, self.params)

    @classmethod
    def from_checkpoint(cls, checkpoint, task=None):
        """
        Rebuilds a model from a checkpoint.

        :param str task: If given, the checkpoint must be of this task.
        :raise CheckpointError: on a checkpoint of another kind or task, or
            parameters that do not fit the stored configuration.
        """
        if checkpoint.get("kind") != MODEL_KIND:
            raise CheckpointError(
                "Not a model checkpoint: kind {!r}".format(checkpoint.get("kind"))
            )
        if task is not None and checkpoint["task"] != task:
            raise CheckpointError(
                'Expected a "{}" checkpoint, found "{}"'.format(task, checkpoint["task"])
            )
        backbone = checkpoint["backbone"]
        if backbone not in CONFIG_CLASSES:
            raise CheckpointError('Unknown backbone "{}" in checkpoint'.format(backbone))
        try:
            cfg = CONFIG_CLASSES[backbone](**checkpoint["encoder"])
        except ConfigError as e:
            raise CheckpointError("Invalid encoder configuration: {}".format(e)) from e
        vocab = Vocabulary.load(io.StringIO(checkpoint["vocab"]))
        if vocab.fingerprint() != checkpoint["vocab_fingerprint"]:
            raise CheckpointError("Checkpoint vocabulary does not match its fingerprint")

        model = cls(checkpoint["task"], backbone, cfg, vocab, init_seed=checkpoint.get("seed", 0))
        if model.params.names() != list(checkpoint.params):
            raise CheckpointError("Checkpoint parameters do not match the model layout")
        for name, value in checkpoint.params.items():
            try:
                model.params.assign(name, value)
            except ValueError as e:
                raise CheckpointError(str(e)) from e
        return model

    def __repr__(self):
        return "AssessmentModel({}, {}, {} parameters)".format(
            self.task, self.backbone, self.params.num_values()
        )


def make_batches(samples, batch_size):
    return [Batch(chunk) for chunk in chunk_list(samples, batch_size)]
