"""
Stratified k-fold cross-validation of the assessment tasks.

A trainer is any callable ``fit(train_samples, fold) -> predict`` whose
result maps one ``RatedSample`` to a ``RankScale`` (overall task) or to
a list of ``RankScale``, one per break position (fine-grained task).
"""
import logging
import warnings
from collections import OrderedDict

import numpy as np
from sklearn.model_selection import KFold, StratifiedKFold

from ..errors import ConfigError, CrossValidationError, DataError, NumericError
from ..tasks.samples import N_RANKS, RankScale
from .metrics import ConfusionMatrix, MetricsReport, compute_metrics, mean_std, per_category_report


logger = logging.getLogger("phrasebreak.evaluation")


TASKS = ("overall", "fine")


def _random_state(seed):
    return int(seed) % (2 ** 32)


def kfold_split(dataset, k=5, seed=0, labels=None):
    """
    Partitions ``dataset`` into ``k`` disjoint folds. With ``labels`` the
    folds are stratified: each class's count differs by at most one
    between folds.

    :param list dataset: The samples (only its length is used).
    :param int k: Number of folds, at least 2.
    :param int seed: Seed of the shuffle.
    :param list labels: Optional class label per sample.
    :returns: ``list`` of ``k`` sorted index lists.
    :raise ConfigError: if ``k < 2``.
    :raise DataError: if there are fewer samples than folds.
    """
    n = len(dataset)
    if not isinstance(k, int) or k < 2:
        raise ConfigError("k must be an integer >= 2, got {!r}".format(k))
    if n < k:
        raise DataError("Cannot split {} samples into {} folds".format(n, k))

    indexes = np.arange(n)
    if labels is None:
        splitter = KFold(n_splits=k, shuffle=True, random_state=_random_state(seed))
        splits = splitter.split(indexes)
    else:
        labels = [getattr(label, "index", label) for label in labels]
        splitter = StratifiedKFold(n_splits=k, shuffle=True, random_state=_random_state(seed))
        try:
            with warnings.catch_warnings():
                # classes rarer than k are spread as far as they go
                warnings.simplefilter("ignore", UserWarning)
                splits = list(splitter.split(indexes, labels))
        except ValueError as e:
            raise DataError("Cannot stratify into {} folds: {}".format(k, e)) from e

    return [sorted(int(i) for i in test) for _, test in splits]


class CrossValidationReport(object):
    """
    Per-fold metrics of one model on one task, with their mean and
    population standard deviation and the confusion matrix pooled over
    all folds.
    """

    def __init__(self, task, model, folds, k, seed, per_utterance=False):
        self.task = task
        self.model = model
        self.folds = folds
        self.k = k
        self.seed = seed
        self.per_utterance = per_utterance
        self.class_names = [r.value for r in RankScale]
        self.mean = OrderedDict()
        self.std = OrderedDict()
        for name in MetricsReport.SCALARS:
            self.mean[name], self.std[name] = mean_std(getattr(f, name) for f in folds)

        self.confusion = ConfusionMatrix(n_classes=N_RANKS)
        for fold in folds:
            self.confusion = self.confusion + fold.confusion
        self.extra = OrderedDict()

    def per_category(self):
        """
        Per-class precision and recall as mean and std over folds, plus
        the support pooled over folds.
        """
        rows = []
        for c, name in enumerate(self.class_names):
            row = OrderedDict([("category", name)])
            for metric in ("precision", "recall", "f1"):
                row[metric] = mean_std(getattr(f, metric)[c] for f in self.folds)
            row["support"] = self.confusion.support()[c]
            rows.append(row)
        return rows

    def pooled_per_category(self):
        return per_category_report(self.confusion, self.class_names)

    def as_dict(self):
        return OrderedDict(
            [
                ("task", self.task),
                ("model", self.model),
                ("k", self.k),
                ("seed", self.seed),
                ("per_utterance", self.per_utterance),
                ("mean", dict(self.mean)),
                ("std", dict(self.std)),
                ("folds", [f.as_dict() for f in self.folds]),
                ("confusion", self.confusion.as_lists()),
                (
                    "per_category",
                    [
                        OrderedDict(
                            [
                                ("category", row["category"]),
                                ("precision", row["precision"][0]),
                                ("precision_std", row["precision"][1]),
                                ("recall", row["recall"][0]),
                                ("recall_std", row["recall"][1]),
                                ("support", row["support"]),
                            ]
                        )
                        for row in self.per_category()
                    ],
                ),
                ("extra", dict(self.extra)),
            ]
        )

    def __repr__(self):
        return "CrossValidationReport({} {}, accuracy={:.4f}({:.4f}))".format(
            self.model, self.task, self.mean["accuracy"], self.std["accuracy"]
        )


def stratification_labels(dataset):
    """
    Returns the overall ranks to stratify on, or ``None`` if no sample
    has one.

    :raise DataError: if only some samples have an overall rank.
    """
    ranks = [s.overall for s in dataset]
    if all(r is None for r in ranks):
        return None
    if any(r is None for r in ranks):
        missing = next(s.id for s in dataset if s.overall is None)
        raise DataError("Cannot stratify: sample has no overall rank", sample_id=missing)
    return ranks


def fold_metrics(task, samples, predictions, per_utterance=False):
    """
    Scores one fold's predictions.

    :raise DataError: if a prediction does not match its sample.
    """
    if task == "overall":
        for s in samples:
            if s.overall is None:
                raise DataError("Sample has no overall rank", sample_id=s.id)
        cm = ConfusionMatrix.from_pairs([s.overall for s in samples], predictions, N_RANKS)
        return compute_metrics(cm)

    per_sample = []
    for s, pred in zip(samples, predictions):
        if s.fine is None:
            raise DataError("Sample has no fine-grained ranks", sample_id=s.id)
        if len(pred) != len(s.fine):
            raise DataError(
                "{} predicted ranks for {} break positions".format(len(pred), len(s.fine)),
                sample_id=s.id,
            )
        per_sample.append(ConfusionMatrix.from_pairs(s.fine, pred, N_RANKS))

    pooled = ConfusionMatrix(n_classes=N_RANKS)
    for cm in per_sample:
        pooled = pooled + cm
    report = compute_metrics(pooled)
    if per_utterance:
        utterances = [compute_metrics(cm) for cm in per_sample if cm.total()]
        for name in MetricsReport.SCALARS:
            setattr(report, name, mean_std(getattr(u, name) for u in utterances)[0])
    return report


def cross_validate(dataset, fit, task, k=5, seed=0, model="model", per_utterance=False):
    """
    Trains on ``k - 1`` folds and evaluates on the held-out fold, for each
    of the ``k`` folds of ``kfold_split`` stratified on the overall rank.

    :param list dataset: ``RatedSample`` list.
    :param fit: ``fit(train_samples, fold) -> predict``.
    :param str task: ``overall`` or ``fine``.
    :param str model: Name shown in reports.
    :param bool per_utterance: Average fine-grained metrics per utterance.
    :rtype: CrossValidationReport
    :raise CrossValidationError: if training or evaluating a fold fails.
    :raise NumericError: if training diverges, naming the fold.
    """
    if task not in TASKS:
        raise ConfigError('Unknown task "{}", expected one of {}'.format(task, ", ".join(TASKS)))
    labels = stratification_labels(dataset)
    if labels is None:
        logger.warning("No overall ranks in the dataset; using unstratified folds")
    folds = kfold_split(dataset, k, seed, labels)

    reports = []
    for i, test_indexes in enumerate(folds):
        held_out = set(test_indexes)
        train = [s for j, s in enumerate(dataset) if j not in held_out]
        test = [dataset[j] for j in test_indexes]
        try:
            predict = fit(train, i)
            predictions = [predict(s) for s in test]
            report = fold_metrics(task, test, predictions, per_utterance)
        except NumericError as e:
            raise NumericError("Fold {}: {}".format(i, e)) from e
        except DataError as e:
            raise CrossValidationError("Fold {} failed: {}".format(i, e), fold=i) from e
        logger.info(
            "Fold %d/%d: accuracy=%.4f weighted_f1=%.4f macro_f1=%.4f (%d test samples)",
            i + 1,
            k,
            report.accuracy,
            report.weighted_f1,
            report.macro_f1,
            len(test),
        )
        reports.append(report)

    result = CrossValidationReport(task, model, reports, k, seed, per_utterance)
    logger.info("%s", result)
    return result
