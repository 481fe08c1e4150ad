"""
Confusion matrices and the classification metrics derived from them.

Rows are true classes and columns predicted classes. Precision, recall
and F1 of a class are 0 whenever their denominator is 0; such a class
still counts in the macro average.
"""
from collections import OrderedDict

import numpy as np

from ..errors import DataError


class ConfusionMatrix(object):
    """
    ``n_classes`` × ``n_classes`` counts, rows = true class, columns =
    predicted class.

    :param counts: Optional nested list / array of non-negative ints.
    :param int n_classes: Used when ``counts`` is not given.
    """

    def __init__(self, counts=None, n_classes=3):
        if counts is None:
            counts = np.zeros((n_classes, n_classes), dtype=np.int64)
        counts = np.array(counts, dtype=np.int64)
        if counts.ndim != 2 or counts.shape[0] != counts.shape[1]:
            raise DataError("A confusion matrix must be square, got shape {}".format(counts.shape))
        if (counts < 0).any():
            raise DataError("Confusion matrix counts must be non-negative")
        self.counts = counts

    @classmethod
    def from_pairs(cls, y_true, y_pred, n_classes=3):
        """
        Counts ``(true, predicted)`` class index pairs.

        :raise DataError: if the sequences differ in length or hold an
            index outside ``[0, n_classes)``.
        """
        cm = cls(n_classes=n_classes)
        y_true = list(y_true)
        y_pred = list(y_pred)
        if len(y_true) != len(y_pred):
            raise DataError(
                "{} true labels but {} predictions".format(len(y_true), len(y_pred))
            )
        for t, p in zip(y_true, y_pred):
            cm.add(t, p)
        return cm

    @property
    def n_classes(self):
        return self.counts.shape[0]

    def add(self, true, pred, count=1):
        true = int(getattr(true, "index", true))
        pred = int(getattr(pred, "index", pred))
        if not (0 <= true < self.n_classes and 0 <= pred < self.n_classes):
            raise DataError(
                "Class pair ({}, {}) out of range for {} classes".format(true, pred, self.n_classes)
            )
        self.counts[true, pred] += count

    def total(self):
        return int(self.counts.sum())

    def support(self):
        return [int(v) for v in self.counts.sum(axis=1)]

    def predicted(self):
        return [int(v) for v in self.counts.sum(axis=0)]

    def correct(self):
        return int(np.trace(self.counts))

    def as_lists(self):
        return self.counts.tolist()

    def __add__(self, other):
        if self.n_classes != other.n_classes:
            raise DataError("Cannot add confusion matrices of different sizes")
        return ConfusionMatrix(self.counts + other.counts)

    def __eq__(self, other):
        return isinstance(other, ConfusionMatrix) and np.array_equal(self.counts, other.counts)

    def __repr__(self):
        return "ConfusionMatrix({})".format(self.as_lists())


def _ratio(num, den):
    return num / den if den else 0.0


class MetricsReport(object):
    """
    The metrics of one confusion matrix. All values lie in ``[0, 1]``.

    Attributes: ``accuracy``, ``weighted_f1``, ``macro_f1``, and per class
    ``precision``, ``recall``, ``f1`` and ``support`` lists, plus the
    ``confusion`` matrix itself.
    """

    SCALARS = ("accuracy", "weighted_f1", "macro_f1")

    def __init__(self, confusion, precision, recall, f1, accuracy, weighted_f1, macro_f1):
        self.confusion = confusion
        self.precision = precision
        self.recall = recall
        self.f1 = f1
        self.support = confusion.support()
        self.accuracy = accuracy
        self.weighted_f1 = weighted_f1
        self.macro_f1 = macro_f1

    def scalars(self):
        return OrderedDict((name, getattr(self, name)) for name in self.SCALARS)

    def as_dict(self):
        result = self.scalars()
        result["precision"] = list(self.precision)
        result["recall"] = list(self.recall)
        result["f1"] = list(self.f1)
        result["support"] = list(self.support)
        result["confusion"] = self.confusion.as_lists()
        return result

    def __repr__(self):
        return "MetricsReport(accuracy={:.4f}, weighted_f1={:.4f}, macro_f1={:.4f})".format(
            self.accuracy, self.weighted_f1, self.macro_f1
        )


def compute_metrics(cm):
    """
    Computes accuracy, per-class precision/recall/F1 and their macro
    (unweighted) and weighted (by support) F1 averages.

    :param ConfusionMatrix cm:
    :rtype: MetricsReport
    :raise DataError: if the matrix is empty.
    """
    total = cm.total()
    if total == 0:
        raise DataError("Cannot compute metrics of an empty confusion matrix")

    support = cm.support()
    predicted = cm.predicted()
    precision = []
    recall = []
    f1 = []
    for c in range(cm.n_classes):
        tp = int(cm.counts[c, c])
        p = _ratio(tp, predicted[c])
        r = _ratio(tp, support[c])
        precision.append(p)
        recall.append(r)
        f1.append(_ratio(2 * p * r, p + r))

    return MetricsReport(
        cm,
        precision,
        recall,
        f1,
        accuracy=cm.correct() / total,
        weighted_f1=sum(s * f for s, f in zip(support, f1)) / total,
        macro_f1=sum(f1) / cm.n_classes,
    )


def per_category_report(cm, class_names=None):
    """
    Returns one row per class with its precision, recall, F1 and support.

    :param ConfusionMatrix cm:
    :param list class_names: Display names, defaults to the class indexes.
    :returns: ``list`` of ``OrderedDict`` with keys ``category``,
        ``precision``, ``recall``, ``f1``, ``support``.
    """
    class_names = class_names or [str(c) for c in range(cm.n_classes)]
    support = cm.support()
    predicted = cm.predicted()
    rows = []
    for c, name in enumerate(class_names):
        tp = int(cm.counts[c, c])
        p = _ratio(tp, predicted[c])
        r = _ratio(tp, support[c])
        rows.append(
            OrderedDict(
                [
                    ("category", name),
                    ("precision", p),
                    ("recall", r),
                    ("f1", _ratio(2 * p * r, p + r)),
                    ("support", support[c]),
                ]
            )
        )
    return rows


def mean_std(values):
    """
    Returns the mean and the population standard deviation.
    """
    values = np.asarray(list(values), dtype=np.float64)
    if not values.size:
        return 0.0, 0.0
    return float(values.mean()), float(values.std())
