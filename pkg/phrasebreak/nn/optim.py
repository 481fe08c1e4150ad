"""
The Adam optimizer.
"""
import numpy as np


def adam_step(param, grad, m, v, t, lr=1e-4, beta1=0.9, beta2=0.999, eps=1e-8):
    """
    Applies one bias-corrected Adam update in place to ``param``, ``m`` and ``v``.

    :param int t: The 1-based step number.
    :raise ValueError: if the shapes of the arrays differ.
    """
    if not (param.shape == grad.shape == m.shape == v.shape):
        raise ValueError(
            "Shape mismatch: param {}, grad {}, m {}, v {}".format(
                param.shape, grad.shape, m.shape, v.shape
            )
        )
    assert t >= 1
    m *= beta1
    m += (1 - beta1) * grad
    v *= beta2
    v += (1 - beta2) * grad * grad
    m_hat = m / (1 - beta1 ** t)
    v_hat = v / (1 - beta2 ** t)
    param -= (lr * m_hat / (np.sqrt(v_hat) + eps)).astype(param.dtype)


class Adam(object):
    """
    Adam over all parameters of a ``ModelParams``, keeping one pair of
    moment buffers per parameter name.
    """

    def __init__(self, params, lr=1e-4, beta1=0.9, beta2=0.999, eps=1e-8):
        self.params = params
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self.m = {name: np.zeros_like(value) for name, value in params.items()}
        self.v = {name: np.zeros_like(value) for name, value in params.items()}

    def step(self):
        self.t += 1
        for name, value in self.params.items():
            adam_step(
                value,
                self.params.grad(name),
                self.m[name],
                self.v[name],
                self.t,
                self.lr,
                self.beta1,
                self.beta2,
                self.eps,
            )
