import inspect
from unittest import TestCase

import numpy as np

from ...errors import DataError
from ..encoder import TransformerEncoder
from ..gradcheck import grad_check
from ..layers import EncoderLayer, LayerNorm, Linear
from ..losses import softmax_cross_entropy
from ..params import ModelParams
from ..settings import EncoderConfig


def small_config(**kwargs):
    options = dict(
        vocab_size=20, d_model=16, n_heads=2, n_layers=2, ffn_dim=32, max_len=8, dropout_prob=0.1
    )
    options.update(kwargs)
    return EncoderConfig(**options)


def build(cfg=None, seed=0):
    params = ModelParams()
    rng = np.random.default_rng(seed)
    encoder = TransformerEncoder(cfg or small_config(), params, rng, np.random.default_rng(99))
    return params, encoder


class ResidualDroppingLayer(EncoderLayer):
    def backward(self, grad):
        dh = grad + self.ffn_norm.backward(self.ffn.backward(grad))
        dattended = self.attention_dropout.backward(dh)
        return self.attention_norm.backward(self.attention.backward(dattended))


class TransformerEncoderTestCase(TestCase):
    def setUp(self):
        self.params, self.encoder = build()
        self.ids = np.array([[2, 9, 4, 11, 5, 12, 3]])
        self.valid = np.ones_like(self.ids, dtype=bool)

    def test_shape(self):
        for length in range(1, 9):
            ids = self.ids[:, :1].repeat(length, axis=1)
            hidden = self.encoder.forward(ids, np.ones((1, length), dtype=bool))
            self.assertEqual(hidden.shape, (1, length, 16))
            self.assertEqual(hidden.dtype, np.float32)

    def test_deterministic(self):
        a = self.encoder.forward(self.ids, self.valid, train=False)
        b = self.encoder.forward(self.ids, self.valid, train=False)
        self.assertTrue(np.array_equal(a, b))

        params2, encoder2 = build()
        self.assertTrue(np.array_equal(encoder2.forward(self.ids, self.valid), a))

    def test_dropout_only_in_training(self):
        a = self.encoder.forward(self.ids, self.valid, train=False)
        b = self.encoder.forward(self.ids, self.valid, train=True)
        self.assertFalse(np.array_equal(a, b))

    def test_padding_is_masked(self):
        valid = np.array([[True] * 5 + [False] * 2])
        ids = self.ids.copy()
        a = self.encoder.forward(ids, valid)
        ids[0, 5] = 17
        ids[0, 6] = 0
        b = self.encoder.forward(ids, valid)
        self.assertTrue(np.array_equal(a[:, :5], b[:, :5]))

    def test_attention_rows(self):
        valid = np.array([[True] * 5 + [False] * 2])
        self.encoder.forward(self.ids, valid)
        for layer in self.encoder.layers:
            weights = layer.attention.last_weights
            np.testing.assert_allclose(weights.sum(axis=-1), 1.0, atol=1e-5)
            self.assertTrue(np.all(weights[..., 5:] == 0))

    def test_layer_norm_statistics(self):
        params = ModelParams()
        norm = LayerNorm(params, "norm.", 16)
        x = np.random.default_rng(1).normal(2.0, 3.0, size=(4, 7, 16)).astype(np.float32)
        xhat, _ = norm.normalize(x)
        self.assertLess(np.abs(xhat.mean(axis=-1)).max(), 1e-5)
        self.assertLess(np.abs(xhat.var(axis=-1) - 1).max(), 1e-4)

    def test_invalid_inputs(self):
        with self.assertRaises(DataError):
            self.encoder.forward(np.array([[2, 20]]), np.ones((1, 2), dtype=bool))
        with self.assertRaises(DataError):
            self.encoder.forward(np.full((1, 9), 2), np.ones((1, 9), dtype=bool))
        with self.assertRaises(DataError):
            self.encoder.forward(np.array([[2, 3]]), np.ones((1, 3), dtype=bool))


class EncoderGradientTestCase(TestCase):
    def setUp(self):
        self.params, self.encoder = build(seed=4)
        self.ids = np.array([[2, 9, 4, 11, 5, 12], [2, 8, 6, 15, 0, 0]])
        self.valid = self.ids != 0
        self.valid[:, 0] = True

    def sequence_loss(self, head, targets):
        def loss_and_grads():
            self.params.zero_grad()
            hidden = self.encoder.forward(self.ids, self.valid, train=False)
            logits = head.forward(self.encoder.pool(hidden, self.valid))
            loss, grad = softmax_cross_entropy(logits, targets)
            self.encoder.backward(self.encoder.pool_backward(head.backward(grad)))
            return loss

        return loss_and_grads

    def test_sequence_head(self):
        self.assertEqual(self.encoder.hidden_size, 16)
        self.assertEqual(self.ids.shape[1], 6)
        head = Linear(self.params, "head.", 16, 2, np.random.default_rng(5))
        error = grad_check(self.sequence_loss(head, [1, 0]), self.params)
        self.assertLess(error, 1e-3)

    def test_default_step_and_precision(self):
        defaults = inspect.signature(grad_check).parameters
        self.assertEqual(defaults["eps"].default, 1e-5)
        self.assertIs(defaults["dtype"].default, np.float64)

    def test_token_head(self):
        head = Linear(self.params, "head.", 16, 3, np.random.default_rng(6))
        positions = np.array([[False, False, True, False, True, False], [False] * 6])
        positions[1, 2] = True
        targets = np.array([0, 2, 1])

        def loss_and_grads():
            self.params.zero_grad()
            hidden = self.encoder.forward(self.ids, self.valid, train=False)
            logits = head.forward(hidden)
            loss, grad = softmax_cross_entropy(logits[positions], targets)
            dlogits = np.zeros_like(logits)
            dlogits[positions] = grad
            self.encoder.backward(head.backward(dlogits))
            return loss

        self.assertLess(grad_check(loss_and_grads, self.params), 1e-3)

    def test_params_restored(self):
        head = Linear(self.params, "head.", 16, 2, np.random.default_rng(5))
        before = self.params.snapshot()
        grad_check(self.sequence_loss(head, [1, 0]), self.params, num_coords=5)
        for name, value in self.params.items():
            self.assertEqual(value.dtype, np.float32)
            self.assertTrue(np.array_equal(value, before[name]))

    def test_detects_dropped_residual(self):
        self.encoder.layers[0].__class__ = ResidualDroppingLayer
        head = Linear(self.params, "head.", 16, 2, np.random.default_rng(5))
        error = grad_check(self.sequence_loss(head, [1, 0]), self.params)
        self.assertGreater(error, 1e-1)
