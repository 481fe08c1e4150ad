from unittest import TestCase

import numpy as np

from ...alignment.tokens import BreakClass
from ...alignment.vocab import encode
from ...errors import CheckpointError, VocabularyMismatchError
from ..models import AssessmentModel
from ..predict import Predictor, predict_all, predict_finegrained, predict_overall
from ..samples import RankScale, RatedSample
from .utils import fixed_vocab, rated_corpus, tiny_encoder, token_sequence


def sample_with_breaks(n_breaks, vocab):
    words = ["the", "cat", "sat", "on", "a", "mat"][: n_breaks + 1]
    return RatedSample.from_encoded(encode(token_sequence("s", words, BreakClass.BR1), vocab))


class PredictorTestCase(TestCase):
    @classmethod
    def setUpClass(cls):
        cls.vocab = fixed_vocab()
        cls.overall = AssessmentModel("overall", "transformer", tiny_encoder(), cls.vocab, 1)
        cls.fine = AssessmentModel("fine", "transformer", tiny_encoder(), cls.vocab, 2)

    def test_probabilities(self):
        samples, _ = rated_corpus(5)
        for s in samples:
            rank, probs = Predictor(self.overall).predict_overall(s)
            self.assertIsInstance(rank, RankScale)
            self.assertEqual(probs.shape, (3,))
            self.assertAlmostEqual(float(probs.sum()), 1.0, places=6)
            self.assertIs(rank, RankScale.from_index(int(np.argmax(probs))))

    def test_fine_lengths(self):
        predictor = Predictor(self.fine)
        for n_breaks in (0, 1, 5):
            predicted = predictor.predict_finegrained(sample_with_breaks(n_breaks, self.vocab))
            self.assertEqual(len(predicted), n_breaks)
            self.assertTrue(all(isinstance(r, RankScale) for r in predicted))

    def test_ties_go_to_lower_rank(self):
        model = AssessmentModel("overall", "transformer", tiny_encoder(), self.vocab)
        model.params.assign("head.weight", np.zeros_like(model.params["head.weight"]))
        model.params.assign("head.bias", np.zeros(3))
        rank, probs = Predictor(model).predict_overall(sample_with_breaks(2, self.vocab))
        self.assertIs(rank, RankScale.POOR)
        np.testing.assert_allclose(probs, [1 / 3] * 3, rtol=1e-6)

        model.params.assign("head.bias", np.array([0.0, 1.0, 1.0]))
        rank, _ = Predictor(model).predict_overall(sample_with_breaks(2, self.vocab))
        self.assertIs(rank, RankScale.FAIR)

    def test_vocabulary_mismatch(self):
        s = sample_with_breaks(2, self.vocab)
        foreign = RatedSample(s.id, s.ids, s.break_mask, vocab_fingerprint="f" * 16)
        with self.assertRaises(VocabularyMismatchError):
            Predictor(self.overall).predict_overall(foreign)
        out_of_range = RatedSample(s.id, [2, 500], [False, False])
        with self.assertRaises(VocabularyMismatchError):
            Predictor(self.fine).predict_finegrained(out_of_range)

    def test_wrong_task(self):
        s = sample_with_breaks(2, self.vocab)
        with self.assertRaises(CheckpointError):
            Predictor(self.overall).predict_finegrained(s)
        with self.assertRaises(CheckpointError):
            Predictor(AssessmentModel("rbtd", "transformer", tiny_encoder(), self.vocab))

    def test_checkpoint_wrappers(self):
        s = sample_with_breaks(3, self.vocab)
        rank, _ = predict_overall(self.overall.to_checkpoint(), s)
        self.assertIs(rank, Predictor(self.overall).predict_overall(s)[0])
        self.assertEqual(
            predict_finegrained(self.fine.to_checkpoint(), s),
            Predictor(self.fine).predict_finegrained(s),
        )
        with self.assertRaises(CheckpointError):
            predict_overall(self.fine.to_checkpoint(), s)

    def test_batch_matches_single(self):
        samples, _ = rated_corpus(7)
        predictor = Predictor(self.fine)
        self.assertEqual(
            predictor.predict_batch(samples, batch_size=3),
            [predictor.predict_finegrained(s) for s in samples],
        )

    def test_threads_match_serial(self):
        samples, _ = rated_corpus(9)
        checkpoint = self.overall.to_checkpoint()
        serial = predict_all(checkpoint, samples)
        self.assertEqual(predict_all(checkpoint, samples, workers=3), serial)
        self.assertEqual(serial, [Predictor(self.overall).predict_overall(s)[0] for s in samples])
