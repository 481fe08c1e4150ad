"""
Layers with an explicit ``forward`` / ``backward`` pair.

A module caches what its backward pass needs during ``forward`` and
adds its parameter gradients into the shared ``ModelParams`` during
``backward``, returning the gradient with respect to its input.
Activations are ``(batch, length, features)`` arrays.
"""
import math

import numpy as np

from .params import trunc_normal


ATTENTION_MASK_VALUE = -1e9

GELU_COEF = 0.044715
SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)


class Module(object):
    def __init__(self, params, prefix):
        self.params = params
        self.prefix = prefix
        self._cache = None

    def p(self, name):
        return self.params[self.prefix + name]

    def add_param(self, name, value):
        return self.params.add(self.prefix + name, value)

    def add_grad(self, name, grad):
        self.params.accumulate(self.prefix + name, grad)

    def __repr__(self):
        return "{}({!r})".format(self.__class__.__name__, self.prefix)


class Linear(Module):
    """
    ``y = x W + b`` over the last axis.
    """

    def __init__(self, params, prefix, in_dim, out_dim, rng):
        super().__init__(params, prefix)
        self.add_param("weight", trunc_normal(rng, (in_dim, out_dim)))
        self.add_param("bias", np.zeros(out_dim))

    def forward(self, x):
        self._cache = x
        return x @ self.p("weight") + self.p("bias")

    def backward(self, grad):
        x = self._cache
        w = self.p("weight")
        self.add_grad("weight", x.reshape(-1, w.shape[0]).T @ grad.reshape(-1, w.shape[1]))
        self.add_grad("bias", grad.reshape(-1, w.shape[1]).sum(axis=0))
        return grad @ w.T


class Embedding(Module):
    def __init__(self, params, prefix, num, dim, rng):
        super().__init__(params, prefix)
        self.add_param("weight", trunc_normal(rng, (num, dim)))

    def forward(self, ids):
        self._cache = ids
        return self.p("weight")[ids]

    def backward(self, grad):
        weight = self.p("weight")
        dweight = np.zeros_like(weight)
        np.add.at(dweight, self._cache.reshape(-1), grad.reshape(-1, weight.shape[1]))
        self.add_grad("weight", dweight)


class LayerNorm(Module):
    def __init__(self, params, prefix, dim, eps=1e-5):
        super().__init__(params, prefix)
        self.eps = eps
        self.add_param("gain", np.ones(dim))
        self.add_param("bias", np.zeros(dim))

    def normalize(self, x):
        """
        Returns the normalized input before the affine rescale, and ``1/std``.
        """
        centered = x - x.mean(axis=-1, keepdims=True)
        inv_std = 1.0 / np.sqrt((centered ** 2).mean(axis=-1, keepdims=True) + self.eps)
        return centered * inv_std, inv_std

    def forward(self, x):
        xhat, inv_std = self.normalize(x)
        self._cache = (xhat, inv_std)
        return xhat * self.p("gain") + self.p("bias")

    def backward(self, grad):
        xhat, inv_std = self._cache
        dim = xhat.shape[-1]
        self.add_grad("gain", (grad * xhat).reshape(-1, dim).sum(axis=0))
        self.add_grad("bias", grad.reshape(-1, dim).sum(axis=0))
        dxhat = grad * self.p("gain")
        return inv_std * (
            dxhat
            - dxhat.mean(axis=-1, keepdims=True)
            - xhat * (dxhat * xhat).mean(axis=-1, keepdims=True)
        )


class GELU(Module):
    """
    The tanh approximation of the Gaussian error linear unit.
    """

    def __init__(self):
        super().__init__(None, "")

    def forward(self, x):
        t = np.tanh(SQRT_2_OVER_PI * (x + GELU_COEF * x ** 3))
        self._cache = (x, t)
        return 0.5 * x * (1.0 + t)

    def backward(self, grad):
        x, t = self._cache
        du = SQRT_2_OVER_PI * (1.0 + 3.0 * GELU_COEF * x ** 2)
        return grad * (0.5 * (1.0 + t) + 0.5 * x * (1.0 - t ** 2) * du)


class Dropout(Module):
    """
    Inverted dropout drawing its masks from ``rng``. Does nothing unless
    ``train`` is set.
    """

    def __init__(self, prob, rng):
        super().__init__(None, "")
        self.prob = prob
        self.rng = rng

    def forward(self, x, train):
        if not train or self.prob == 0:
            self._cache = None
            return x
        keep = self.rng.random(x.shape) >= self.prob
        mask = keep.astype(x.dtype) / x.dtype.type(1.0 - self.prob)
        self._cache = mask
        return x * mask

    def backward(self, grad):
        if self._cache is None:
            return grad
        return grad * self._cache


class MultiHeadSelfAttention(Module):
    """
    Scaled dot-product self-attention. Keys at invalid (padded) positions
    get no attention weight.
    """

    def __init__(self, params, prefix, d_model, n_heads, dropout_prob, rng, dropout_rng):
        super().__init__(params, prefix)
        assert d_model % n_heads == 0
        self.n_heads = n_heads
        self.head_dim = d_model // n_heads
        self.query = Linear(params, prefix + "query.", d_model, d_model, rng)
        self.key = Linear(params, prefix + "key.", d_model, d_model, rng)
        self.value = Linear(params, prefix + "value.", d_model, d_model, rng)
        self.output = Linear(params, prefix + "output.", d_model, d_model, rng)
        self.dropout = Dropout(dropout_prob, dropout_rng)
        self.last_weights = None

    def _split(self, x):
        b, length, _ = x.shape
        return x.reshape(b, length, self.n_heads, self.head_dim).transpose(0, 2, 1, 3)

    def _merge(self, x):
        b, _, length, _ = x.shape
        return x.transpose(0, 2, 1, 3).reshape(b, length, self.n_heads * self.head_dim)

    def forward(self, x, valid, train):
        q = self._split(self.query.forward(x))
        k = self._split(self.key.forward(x))
        v = self._split(self.value.forward(x))

        scale = x.dtype.type(1.0 / math.sqrt(self.head_dim))
        scores = (q @ k.transpose(0, 1, 3, 2)) * scale
        scores = np.where(valid[:, None, None, :], scores, x.dtype.type(ATTENTION_MASK_VALUE))
        scores = scores - scores.max(axis=-1, keepdims=True)
        weights = np.exp(scores)
        weights /= weights.sum(axis=-1, keepdims=True)
        self.last_weights = weights

        dropped = self.dropout.forward(weights, train)
        self._cache = (q, k, v, weights, dropped, scale)
        return self.output.forward(self._merge(dropped @ v))

    def backward(self, grad):
        q, k, v, weights, dropped, scale = self._cache
        dcontext = self._split(self.output.backward(grad))
        ddropped = dcontext @ v.transpose(0, 1, 3, 2)
        dv = dropped.transpose(0, 1, 3, 2) @ dcontext
        dweights = self.dropout.backward(ddropped)
        dscores = weights * (dweights - (dweights * weights).sum(axis=-1, keepdims=True))
        dscores = dscores * scale
        dq = dscores @ k
        dk = dscores.transpose(0, 1, 3, 2) @ q
        return (
            self.query.backward(self._merge(dq))
            + self.key.backward(self._merge(dk))
            + self.value.backward(self._merge(dv))
        )


class FeedForward(Module):
    def __init__(self, params, prefix, d_model, ffn_dim, dropout_prob, rng, dropout_rng):
        super().__init__(params, prefix)
        self.inner = Linear(params, prefix + "inner.", d_model, ffn_dim, rng)
        self.activation = GELU()
        self.outer = Linear(params, prefix + "outer.", ffn_dim, d_model, rng)
        self.dropout = Dropout(dropout_prob, dropout_rng)

    def forward(self, x, train):
        h = self.activation.forward(self.inner.forward(x))
        return self.dropout.forward(self.outer.forward(h), train)

    def backward(self, grad):
        grad = self.outer.backward(self.dropout.backward(grad))
        return self.inner.backward(self.activation.backward(grad))


class EncoderLayer(Module):
    """
    A pre-norm transformer block::

        h = x + Dropout(Attention(LayerNorm(x)))
        y = h + FeedForward(LayerNorm(h))
    """

    def __init__(self, params, prefix, cfg, rng, dropout_rng):
        super().__init__(params, prefix)
        self.attention_norm = LayerNorm(params, prefix + "attention_norm.", cfg.d_model)
        self.attention = MultiHeadSelfAttention(
            params,
            prefix + "attention.",
            cfg.d_model,
            cfg.n_heads,
            cfg.dropout_prob,
            rng,
            dropout_rng,
        )
        self.attention_dropout = Dropout(cfg.dropout_prob, dropout_rng)
        self.ffn_norm = LayerNorm(params, prefix + "ffn_norm.", cfg.d_model)
        self.ffn = FeedForward(
            params, prefix + "ffn.", cfg.d_model, cfg.ffn_dim, cfg.dropout_prob, rng, dropout_rng
        )

    def forward(self, x, valid, train):
        attended = self.attention.forward(self.attention_norm.forward(x), valid, train)
        h = x + self.attention_dropout.forward(attended, train)
        return h + self.ffn.forward(self.ffn_norm.forward(h), train)

    def backward(self, grad):
        dh = grad + self.ffn_norm.backward(self.ffn.backward(grad))
        dattended = self.attention_dropout.backward(dh)
        return dh + self.attention_norm.backward(self.attention.backward(dattended))
