from unittest import TestCase

import numpy as np

from ...alignment.vocab import PAD_ID, Vocabulary
from ...checkpoint import ModelCheckpoint
from ...errors import CheckpointError, ConfigError, DataError
from ..models import AssessmentModel, Batch, make_batches
from .utils import fixed_vocab, rated_corpus, tiny_bilstm, tiny_encoder


class BatchTestCase(TestCase):
    def test_padding(self):
        samples, _ = rated_corpus(3)
        batch = Batch(samples)
        length = max(len(s) for s in samples)
        self.assertEqual(batch.ids.shape, (3, length))
        for row, s in enumerate(samples):
            self.assertEqual(batch.ids[row, : len(s)].tolist(), s.ids)
            self.assertTrue((batch.ids[row, len(s) :] == PAD_ID).all())
            self.assertEqual(int(batch.valid[row].sum()), len(s))
            self.assertEqual(int(batch.break_mask[row].sum()), s.n_breaks)

    def test_empty(self):
        with self.assertRaises(DataError):
            Batch([])

    def test_make_batches(self):
        samples, _ = rated_corpus(7)
        self.assertEqual([len(b) for b in make_batches(samples, 3)], [3, 3, 1])


class AssessmentModelTestCase(TestCase):
    def setUp(self):
        self.vocab = fixed_vocab()

    def test_config_errors(self):
        with self.assertRaises(ConfigError):
            AssessmentModel("rank", "transformer", tiny_encoder(), self.vocab)
        with self.assertRaises(ConfigError):
            AssessmentModel("overall", "cnn", tiny_encoder(), self.vocab)
        with self.assertRaises(ConfigError):
            AssessmentModel("overall", "bilstm", tiny_encoder(), self.vocab)

    def test_output_shapes(self):
        samples, _ = rated_corpus(4)
        batch = Batch(samples)
        for backbone, cfg in (("transformer", tiny_encoder()), ("bilstm", tiny_bilstm())):
            overall = AssessmentModel("overall", backbone, cfg, self.vocab)
            self.assertEqual(overall.forward(batch).shape, (4, 3))
            fine = AssessmentModel("fine", backbone, cfg, self.vocab)
            self.assertEqual(fine.forward(batch).shape, batch.ids.shape + (3,))
            rbtd = AssessmentModel("rbtd", backbone, cfg, self.vocab)
            self.assertEqual(rbtd.forward(batch).shape, (4, 2))

    def test_too_long(self):
        samples, _ = rated_corpus(1)
        model = AssessmentModel("overall", "transformer", tiny_encoder(max_len=4), self.vocab)
        with self.assertRaises(DataError):
            model.check_sample(samples[0])

    def test_missing_label(self):
        samples, _ = rated_corpus(2)
        s = samples[0]
        unrated = type(s)(s.id, s.ids, s.break_mask, vocab_fingerprint=s.vocab_fingerprint)
        model = AssessmentModel("overall", "transformer", tiny_encoder(), self.vocab)
        with self.assertRaises(DataError):
            model.targets(Batch([unrated]))


class CheckpointContractTestCase(TestCase):
    def setUp(self):
        self.vocab = fixed_vocab()
        self.model = AssessmentModel("fine", "transformer", tiny_encoder(), self.vocab, 3)

    def test_rebuild(self):
        checkpoint = ModelCheckpoint.from_bytes(self.model.to_checkpoint(init="scratch").to_bytes())
        rebuilt = AssessmentModel.from_checkpoint(checkpoint, task="fine")
        self.assertEqual(rebuilt.cfg, self.model.cfg)
        self.assertEqual(rebuilt.vocab, self.vocab)
        samples, _ = rated_corpus(3)
        batch = Batch(samples)
        np.testing.assert_array_equal(rebuilt.forward(batch), self.model.forward(batch))

    def test_wrong_task(self):
        with self.assertRaises(CheckpointError):
            AssessmentModel.from_checkpoint(self.model.to_checkpoint(), task="overall")

    def test_wrong_kind(self):
        checkpoint = self.model.to_checkpoint(kind="something.else")
        with self.assertRaises(CheckpointError):
            AssessmentModel.from_checkpoint(checkpoint)

    def test_fingerprint_mismatch(self):
        checkpoint = self.model.to_checkpoint(vocab=Vocabulary([("zebra", 2)]).save())
        with self.assertRaises(CheckpointError):
            AssessmentModel.from_checkpoint(checkpoint)

    def test_layout_mismatch(self):
        params = dict(self.model.params.items())
        params["head.weight"] = np.zeros((4, 3))
        checkpoint = ModelCheckpoint(self.model.metadata(), params)
        with self.assertRaises(CheckpointError):
            AssessmentModel.from_checkpoint(checkpoint)

        del params["head.bias"]
        with self.assertRaises(CheckpointError):
            AssessmentModel.from_checkpoint(ModelCheckpoint(self.model.metadata(), params))

    def test_bad_encoder_config(self):
        metadata = self.model.metadata()
        metadata["encoder"] = dict(metadata["encoder"], n_heads=5)
        with self.assertRaises(CheckpointError):
            AssessmentModel.from_checkpoint(
                ModelCheckpoint(metadata, dict(self.model.params.items()))
            )
