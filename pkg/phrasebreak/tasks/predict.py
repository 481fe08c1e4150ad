"""
Prediction with a fine-tuned model.

A ``Predictor`` keeps activation caches inside its layers, so one
instance must not be shared between threads. ``predict_all`` gives each
worker thread its own ``Predictor`` built from the same checkpoint.
"""
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..errors import CheckpointError
from ..nn.losses import softmax
from ..utils import chunk_list
from .models import AssessmentModel, Batch, make_batches
from .samples import RankScale


logger = logging.getLogger("phrasebreak.tasks")


class Predictor(object):
    """
    :param AssessmentModel model: A fine-tuned ``overall`` or ``fine`` model.
    """

    def __init__(self, model):
        if model.task not in ("overall", "fine"):
            raise CheckpointError('Cannot predict ranks with a "{}" model'.format(model.task))
        self.model = model

    @classmethod
    def from_checkpoint(cls, checkpoint, task=None):
        return cls(AssessmentModel.from_checkpoint(checkpoint, task))

    @property
    def task(self):
        return self.model.task

    def _require(self, task):
        if self.model.task != task:
            raise CheckpointError(
                'This is a "{}" model, "{}" predictions need a "{}" checkpoint'.format(
                    self.model.task, task, task
                )
            )

    def predict_overall(self, sample):
        """
        :returns: ``(RankScale, probabilities)``, the probabilities in
            Poor / Fair / Great order. Ties go to the lower rank.
        :raise VocabularyMismatchError: if the sample uses another vocabulary.
        """
        self._require("overall")
        self.model.check_sample(sample)
        probs = softmax(self.model.forward(Batch([sample]), train=False).astype(np.float64))[0]
        return RankScale.from_index(int(np.argmax(probs))), probs

    def predict_finegrained(self, sample):
        """
        :returns: ``list`` of ``RankScale``, one per break position in order.
        :raise VocabularyMismatchError: if the sample uses another vocabulary.
        """
        self._require("fine")
        self.model.check_sample(sample)
        if not sample.n_breaks:
            return []
        logits = self.model.forward(Batch([sample]), train=False)[0]
        return [RankScale.from_index(int(c)) for c in np.argmax(logits[sample.break_mask], axis=-1)]

    def predict_batch(self, samples, batch_size=64):
        """
        Predicts many samples with padded batches: overall ranks, or a list
        of ranks per sample for the fine-grained task.
        """
        for s in samples:
            self.model.check_sample(s)
        results = []
        for batch in make_batches(list(samples), batch_size):
            logits = self.model.forward(batch, train=False)
            if self.task == "overall":
                results.extend(RankScale.from_index(int(c)) for c in np.argmax(logits, axis=-1))
                continue
            for row, s in enumerate(batch.samples):
                classes = np.argmax(logits[row][batch.break_mask[row]], axis=-1)
                results.append([RankScale.from_index(int(c)) for c in classes])
        return results


def predict_overall(checkpoint, sample):
    return Predictor.from_checkpoint(checkpoint, "overall").predict_overall(sample)


def predict_finegrained(checkpoint, sample):
    return Predictor.from_checkpoint(checkpoint, "fine").predict_finegrained(sample)


def predict_all(checkpoint, samples, workers=1, batch_size=64):
    """
    Predicts ``samples`` with ``workers`` threads, each with its own model
    rebuilt from ``checkpoint``. Results are in input order and do not
    depend on ``workers``.
    """
    samples = list(samples)
    if workers <= 1 or len(samples) < 2:
        return Predictor.from_checkpoint(checkpoint).predict_batch(samples, batch_size)

    size = -(-len(samples) // workers)
    parts = list(chunk_list(samples, size))

    def run(part):
        return Predictor.from_checkpoint(checkpoint).predict_batch(part, batch_size)

    logger.debug("Predicting %d samples with %d threads", len(samples), len(parts))
    with ThreadPoolExecutor(max_workers=len(parts)) as executor:
        results = []
        for part_result in executor.map(run, parts):
            results.extend(part_result)
    return results
