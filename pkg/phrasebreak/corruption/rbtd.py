"""
Replaced-break-token corruption of native sequences.

Each break token of a corrupted copy is independently replaced with
probability ``replace_prob`` by one of the three other break classes,
chosen uniformly. Word tokens are never touched. A copy in which no
token actually changed is labeled original.
"""
import logging
import re

import numpy as np

from ..alignment.tokens import BreakClass
from ..alignment.vocab import EncodedSequence, break_class_of, break_id
from ..errors import DataError
from ..io import read_jsonl, write_jsonl


logger = logging.getLogger("phrasebreak.corruption")


ORIGINAL = 0
CORRUPTED = 1

PRETRAIN_FORMAT = "phrasebreak.pretrain"

N_BREAK_CLASSES = BreakClass.count()

COPY_SUFFIX = re.compile(r"#c\d+$")


class Edit(object):
    """
    One replaced break token.
    """

    __slots__ = ("position", "old", "new")

    def __init__(self, position, old, new):
        if old is new:
            raise DataError("Edit at position {} does not change {}".format(position, old))
        self.position = position
        self.old = old
        self.new = new

    def as_list(self):
        return [self.position, self.old.key, self.new.key]

    def __eq__(self, other):
        return isinstance(other, Edit) and (self.position, self.old, self.new) == (
            other.position,
            other.old,
            other.new,
        )

    def __repr__(self):
        return "Edit({}, {} -> {})".format(self.position, self.old, self.new)


class LabeledSequence(EncodedSequence):
    """
    An encoded sequence with its pretraining label (``ORIGINAL`` or
    ``CORRUPTED``) and the edits that produced it.

    :raise DataError: if the label disagrees with the edits.
    """

    def __init__(self, id, ids, break_mask, label, edits=(), vocab_fingerprint=None):
        super().__init__(id, ids, break_mask, vocab_fingerprint)
        self.label = int(label)
        self.edits = list(edits)
        if self.label not in (ORIGINAL, CORRUPTED):
            raise DataError("Label must be 0 or 1, got {!r}".format(label), sample_id=self.id)
        if (self.label == CORRUPTED) != bool(self.edits):
            raise DataError("Label {} disagrees with edits".format(self.label), sample_id=self.id)
        for edit in self.edits:
            if not (0 <= edit.position < len(self.ids) and self.break_mask[edit.position]):
                raise DataError(
                    "Edit at non-break position {}".format(edit.position), sample_id=self.id
                )

    @property
    def original_id(self):
        """
        The id of the native sequence this sample was made from.
        """
        return COPY_SUFFIX.sub("", self.id)

    def to_record(self):
        return {
            "id": self.id,
            "ids": self.ids,
            "break_mask": list(self.break_mask),
            "label": self.label,
            "edits": [e.as_list() for e in self.edits],
        }

    @classmethod
    def from_record(cls, record, vocab_fingerprint=None):
        try:
            edits = [
                Edit(int(pos), BreakClass.from_key(old), BreakClass.from_key(new))
                for pos, old, new in record.get("edits", [])
            ]
            return cls(
                record["id"],
                record["ids"],
                record["break_mask"],
                record["label"],
                edits,
                vocab_fingerprint,
            )
        except DataError:
            raise
        except (KeyError, TypeError, ValueError) as e:
            raise DataError("Malformed pretraining record: {!r}".format(e)) from e

    def __eq__(self, other):
        return (
            super().__eq__(other)
            and isinstance(other, LabeledSequence)
            and (self.label, self.edits) == (other.label, other.edits)
        )


def corrupt_once(seq, cfg, rng, id=None):
    """
    Makes one corruption attempt of ``seq``.

    :param EncodedSequence seq: The native sequence.
    :param CorruptionConfig cfg: Provides ``replace_prob``.
    :param numpy.random.Generator rng: The random stream, advanced by this call.
    :param str id: Id of the result, defaults to ``seq.id``.
    :returns: ``LabeledSequence``, labeled by whether any token changed.
    """
    positions = seq.break_positions
    draws = rng.random(len(positions))
    offsets = rng.integers(1, N_BREAK_CLASSES, size=len(positions))

    ids = list(seq.ids)
    edits = []
    for pos, draw, offset in zip(positions, draws, offsets):
        if draw < cfg.replace_prob:
            old = break_class_of(ids[pos])
            new = BreakClass.from_index((old.index + int(offset)) % N_BREAK_CLASSES)
            ids[pos] = break_id(new)
            edits.append(Edit(pos, old, new))

    return LabeledSequence(
        seq.id if id is None else id,
        ids,
        seq.break_mask,
        CORRUPTED if edits else ORIGINAL,
        edits,
        seq.vocab_fingerprint,
    )


def build_pretrain_dataset(corpus, cfg, seed=0):
    """
    Builds the pretraining dataset: each original once, labeled original,
    plus ``cfg.copies_per_original`` corruption attempts named
    ``<id>#c<k>``, in a seeded shuffled order.

    :param corpus: ``list`` of ``EncodedSequence``.
    :param CorruptionConfig cfg: The corruption settings.
    :param int seed: Used unless ``cfg.seed`` is set.
    :raise DataError: if the corpus is empty.
    """
    if not corpus:
        raise DataError("Cannot build a pretraining dataset from an empty corpus")
    rng = np.random.Generator(np.random.PCG64(seed if cfg.seed is None else cfg.seed))

    samples = []
    for seq in corpus:
        samples.append(
            LabeledSequence(seq.id, seq.ids, seq.break_mask, ORIGINAL, (), seq.vocab_fingerprint)
        )
        for k in range(1, cfg.copies_per_original + 1):
            samples.append(corrupt_once(seq, cfg, rng, id="{}#c{}".format(seq.id, k)))

    order = rng.permutation(len(samples))
    dataset = [samples[i] for i in order]

    n_corrupted = sum(s.label for s in dataset)
    logger.info(
        "Built pretraining dataset: %d samples (%d corrupted, %d original) from %d originals",
        len(dataset),
        n_corrupted,
        len(dataset) - n_corrupted,
        len(corpus),
    )
    return dataset


def write_pretrain_dataset(path, dataset):
    fingerprints = {s.vocab_fingerprint for s in dataset}
    fingerprint = fingerprints.pop() if len(fingerprints) == 1 else None
    return write_jsonl(
        path,
        PRETRAIN_FORMAT,
        (s.to_record() for s in dataset),
        vocab_fingerprint=fingerprint,
    )


def read_pretrain_dataset(path):
    """
    Reads a dataset written by ``write_pretrain_dataset``.

    :raise DataError: naming the line of any invalid record.
    """
    header, records = read_jsonl(path, PRETRAIN_FORMAT)
    fingerprint = header.get("vocab_fingerprint")
    dataset = []
    for lineno, record in records:
        try:
            dataset.append(LabeledSequence.from_record(record, fingerprint))
        except DataError as e:
            raise e.located(filename=str(path), line=lineno)
    return dataset
