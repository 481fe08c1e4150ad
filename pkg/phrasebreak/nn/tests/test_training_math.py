import math
from unittest import TestCase

import numpy as np

from ...errors import DataError, NumericError
from ..gradcheck import grad_check
from ..losses import inverse_frequency_weights, softmax, softmax_cross_entropy
from ..optim import Adam, adam_step
from ..params import ModelParams, trunc_normal


class SoftmaxCrossEntropyTestCase(TestCase):
    def test_uniform(self):
        loss, grad = softmax_cross_entropy(np.zeros(3, dtype=np.float32), 1)
        self.assertAlmostEqual(loss, math.log(3), places=5)
        np.testing.assert_allclose(grad, [1 / 3, -2 / 3, 1 / 3], atol=1e-6)

    def test_saturated(self):
        loss, _ = softmax_cross_entropy(np.array([30.0, 0.0, 0.0]), 0)
        self.assertLess(loss, 1e-9)

    def test_large_logits_are_stable(self):
        loss, grad = softmax_cross_entropy(np.array([1000.0, -1000.0]), 1)
        self.assertTrue(np.isfinite(loss))
        self.assertTrue(np.all(np.isfinite(grad)))

    def test_finite_differences(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            logits = rng.normal(size=(4, 5))
            targets = rng.integers(0, 5, size=4)
            weights = rng.uniform(0.5, 2.0, size=5)
            for class_weights in (None, weights):
                _, grad = softmax_cross_entropy(logits, targets, class_weights)
                eps = 1e-6
                for idx in np.ndindex(*logits.shape):
                    shifted = logits.copy()
                    shifted[idx] += eps
                    plus, _ = softmax_cross_entropy(shifted, targets, class_weights)
                    shifted[idx] -= 2 * eps
                    minus, _ = softmax_cross_entropy(shifted, targets, class_weights)
                    numeric = (plus - minus) / (2 * eps)
                    rel = abs(numeric - grad[idx]) / max(abs(numeric), abs(grad[idx]), 1e-8)
                    self.assertLess(rel, 1e-4)

    def test_batch_is_mean(self):
        logits = np.array([[1.0, 2.0, 0.5], [0.0, -1.0, 3.0]])
        loss, _ = softmax_cross_entropy(logits, [0, 2])
        single = [softmax_cross_entropy(logits[i], t)[0] for i, t in enumerate([0, 2])]
        self.assertAlmostEqual(loss, sum(single) / 2)

    def test_invalid_target(self):
        with self.assertRaises(DataError):
            softmax_cross_entropy(np.zeros(3), 3)
        with self.assertRaises(DataError):
            softmax_cross_entropy(np.zeros((2, 3)), [0, -1])

    def test_empty(self):
        loss, grad = softmax_cross_entropy(np.zeros((0, 3)), [])
        self.assertEqual(loss, 0.0)
        self.assertEqual(grad.shape, (0, 3))

    def test_softmax(self):
        np.testing.assert_allclose(softmax(np.array([[0.0, 0.0], [0.0, 100.0]])).sum(axis=1), 1.0)

    def test_inverse_frequency_weights(self):
        weights = inverse_frequency_weights([0, 0, 0, 1, 2, 2], 4)
        np.testing.assert_allclose(weights, [0.5, 1.5, 0.75, 0.0])


class AdamTestCase(TestCase):
    def test_zero_gradient(self):
        param = np.array([1.0, -2.0, 3.0])
        m = np.zeros(3)
        v = np.zeros(3)
        for t in range(1, 4):
            adam_step(param, np.zeros(3), m, v, t)
        np.testing.assert_array_equal(param, [1.0, -2.0, 3.0])

    def test_first_step_magnitude(self):
        param = np.array([0.0])
        adam_step(param, np.array([1.0]), np.zeros(1), np.zeros(1), 1, lr=0.01)
        self.assertAlmostEqual(float(param[0]), -0.01, places=6)

    def test_against_reference(self):
        # f(x) = 0.5 * sum(a * x ** 2)
        a = np.array([1.0, 3.0, 0.5])
        param = np.array([1.0, -1.0, 2.0])
        m = np.zeros(3)
        v = np.zeros(3)
        expected = param.copy()
        ref_m = [0.0] * 3
        ref_v = [0.0] * 3
        lr, beta1, beta2, eps = 0.1, 0.9, 0.999, 1e-8
        for t in range(1, 6):
            adam_step(param, a * param, m, v, t, lr=lr)
            for j in range(3):
                g = a[j] * expected[j]
                ref_m[j] = beta1 * ref_m[j] + (1 - beta1) * g
                ref_v[j] = beta2 * ref_v[j] + (1 - beta2) * g * g
                m_hat = ref_m[j] / (1 - beta1 ** t)
                v_hat = ref_v[j] / (1 - beta2 ** t)
                expected[j] -= lr * m_hat / (math.sqrt(v_hat) + eps)
        np.testing.assert_allclose(param, expected, atol=1e-6)

    def test_shape_mismatch(self):
        with self.assertRaises(ValueError):
            adam_step(np.zeros(2), np.zeros(3), np.zeros(2), np.zeros(2), 1)

    def test_optimizer_uses_param_grads(self):
        params = ModelParams()
        params.add("w", np.ones(2))
        params.accumulate("w", np.array([1.0, -1.0]))
        opt = Adam(params, lr=0.5)
        opt.step()
        np.testing.assert_allclose(params["w"], [0.5, 1.5], atol=1e-6)
        self.assertEqual(opt.t, 1)


class ParamsTestCase(TestCase):
    def test_add_and_grads(self):
        params = ModelParams()
        params.add("a", np.zeros((2, 3)))
        params.add("b", np.ones(4))
        self.assertEqual(params.names(), ["a", "b"])
        self.assertEqual(params["a"].dtype, np.float32)
        params.accumulate("b", np.ones(4))
        params.zero_grad()
        self.assertFalse(params.grad("b").any())
        self.assertEqual(params.num_values(), 10)

    def test_check_finite(self):
        params = ModelParams()
        params.add("a", np.array([1.0, np.nan]))
        with self.assertRaises(NumericError):
            params.check_finite()

    def test_assign_shape(self):
        params = ModelParams()
        params.add("a", np.zeros(3))
        with self.assertRaises(ValueError):
            params.assign("a", np.zeros(4))

    def test_trunc_normal(self):
        values = trunc_normal(np.random.default_rng(0), (1000,), std=0.02)
        self.assertLessEqual(np.abs(values).max(), 0.0401)
        self.assertAlmostEqual(float(values.std()), 0.0176, delta=0.002)

    def test_linear_loss(self):
        params = ModelParams()
        params.add("w", np.random.default_rng(0).normal(size=300))

        def loss_and_grads():
            params.zero_grad()
            params.accumulate("w", np.ones_like(params["w"]))
            return float(params["w"].sum())

        self.assertLess(grad_check(loss_and_grads, params), 1e-6)
