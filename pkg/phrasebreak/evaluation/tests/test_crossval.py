from collections import Counter
from unittest import TestCase

from ...errors import ConfigError, CrossValidationError, DataError, NumericError
from ...tasks.samples import RankScale
from ...tasks.tests.utils import rated_corpus
from ..crossval import cross_validate, fold_metrics, kfold_split


def constant(rank):
    def fit(train, fold):
        return lambda sample: rank

    return fit


def oracle(task):
    def fit(train, fold):
        if task == "overall":
            return lambda sample: sample.overall
        return lambda sample: list(sample.fine)

    return fit


class KFoldSplitTestCase(TestCase):
    def test_partition(self):
        folds = kfold_split(list(range(10)), k=5, seed=1)
        self.assertEqual([len(f) for f in folds], [2] * 5)
        self.assertEqual(sorted(i for f in folds for i in f), list(range(10)))

    def test_deterministic(self):
        items = list(range(37))
        self.assertEqual(kfold_split(items, 5, seed=4), kfold_split(items, 5, seed=4))
        self.assertNotEqual(kfold_split(items, 5, seed=4), kfold_split(items, 5, seed=5))

    def test_stratified_counts(self):
        labels = [RankScale.POOR] * 21 + [RankScale.FAIR] * 136 + [RankScale.GREAT] * 643
        folds = kfold_split(labels, k=5, seed=7000, labels=labels)
        self.assertEqual(sorted(i for f in folds for i in f), list(range(len(labels))))
        for rank in RankScale:
            counts = [sum(1 for i in f if labels[i] is rank) for f in folds]
            self.assertLessEqual(max(counts) - min(counts), 1)
        poor = [sum(1 for i in f if labels[i] is RankScale.POOR) for f in folds]
        self.assertTrue(all(c in (4, 5) for c in poor))

    def test_rare_class(self):
        labels = [0, 0, 0, 0, 0, 0, 1]
        folds = kfold_split(labels, k=3, seed=0, labels=labels)
        self.assertEqual(sorted(i for f in folds for i in f), list(range(7)))

    def test_errors(self):
        with self.assertRaises(ConfigError):
            kfold_split(list(range(10)), k=1)
        with self.assertRaises(DataError):
            kfold_split(list(range(3)), k=5)


class CrossValidateTestCase(TestCase):
    def setUp(self):
        self.samples, _ = rated_corpus(30)

    def test_constant_predictor(self):
        great, _ = rated_corpus(10, ranks=[RankScale.GREAT])
        report = cross_validate(great, constant(RankScale.GREAT), "overall", k=5, seed=3)
        self.assertEqual(report.mean["accuracy"], 1.0)
        self.assertEqual(report.std["accuracy"], 0.0)
        self.assertEqual(report.confusion.total(), 10)

    def test_mean_is_average_of_folds(self):
        report = cross_validate(self.samples, constant(RankScale.FAIR), "overall", k=3, seed=2)
        self.assertEqual(len(report.folds), 3)
        for name in ("accuracy", "weighted_f1", "macro_f1"):
            values = [getattr(f, name) for f in report.folds]
            self.assertAlmostEqual(report.mean[name], sum(values) / len(values))
        self.assertEqual(report.confusion.support(), [10, 10, 10])
        self.assertEqual(report.confusion.predicted(), [0, 30, 0])

    def test_fine_oracle(self):
        report = cross_validate(self.samples, oracle("fine"), "fine", k=5, seed=1)
        self.assertEqual(report.mean["accuracy"], 1.0)
        self.assertEqual(report.confusion.total(), sum(s.n_breaks for s in self.samples))

    def test_per_utterance(self):
        pooled = cross_validate(self.samples, oracle("fine"), "fine", k=2, per_utterance=True)
        self.assertEqual(pooled.mean["accuracy"], 1.0)
        self.assertTrue(pooled.per_utterance)

    def test_per_category(self):
        report = cross_validate(self.samples, oracle("overall"), "overall", k=3)
        rows = report.per_category()
        self.assertEqual([r["category"] for r in rows], ["Poor", "Fair", "Great"])
        self.assertEqual(rows[0]["precision"], (1.0, 0.0))
        self.assertEqual([r["support"] for r in rows], [10, 10, 10])

    def test_as_dict(self):
        report = cross_validate(self.samples, constant(RankScale.GREAT), "overall", k=3, seed=9)
        data = report.as_dict()
        self.assertEqual(data["k"], 3)
        self.assertEqual(data["seed"], 9)
        self.assertEqual(len(data["folds"]), 3)
        self.assertEqual(data["per_category"][2]["recall"], 1.0)

    def test_fold_failure(self):
        def fit(train, fold):
            if fold == 2:
                raise DataError("broken fold")
            return lambda sample: sample.overall

        with self.assertRaises(CrossValidationError) as cm:
            cross_validate(self.samples, fit, "overall", k=3)
        self.assertEqual(cm.exception.fold, 2)

    def test_numeric_failure_names_fold(self):
        def fit(train, fold):
            raise NumericError("diverged")

        with self.assertRaises(NumericError) as cm:
            cross_validate(self.samples, fit, "overall", k=3)
        self.assertIn("Fold 0", str(cm.exception))

    def test_train_test_disjoint(self):
        seen = Counter()

        def fit(train, fold):
            train_ids = {s.id for s in train}

            def predict(sample):
                self.assertNotIn(sample.id, train_ids)
                seen[sample.id] += 1
                return sample.overall

            return predict

        cross_validate(self.samples, fit, "overall", k=5)
        self.assertEqual(set(seen.values()), {1})
        self.assertEqual(len(seen), 30)

    def test_unknown_task(self):
        with self.assertRaises(ConfigError):
            cross_validate(self.samples, oracle("overall"), "rbtd")


class FoldMetricsTestCase(TestCase):
    def test_misaligned_prediction(self):
        samples, _ = rated_corpus(2)
        with self.assertRaises(DataError):
            fold_metrics("fine", samples, [[], []])
