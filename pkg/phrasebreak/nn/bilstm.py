"""
A bidirectional LSTM encoder, the recurrent baseline backbone.

Gate order in the stacked weights is input, forget, cell, output. At
padded positions both directions carry their previous state unchanged,
so the backward direction effectively starts at the last valid word.
"""
import math

import numpy as np

from .encoder import check_inputs
from .layers import Embedding, Module
from .params import uniform


def sigmoid(x):
    return 0.5 * (np.tanh(0.5 * x) + 1.0)


class LstmDirection(Module):
    def __init__(self, params, prefix, input_size, hidden_size, rng):
        super().__init__(params, prefix)
        self.hidden_size = hidden_size
        bound = 1.0 / math.sqrt(hidden_size)
        self.add_param("input_weight", uniform(rng, (input_size, 4 * hidden_size), bound))
        self.add_param("hidden_weight", uniform(rng, (hidden_size, 4 * hidden_size), bound))
        self.add_param("bias", uniform(rng, (4 * hidden_size,), bound))

    def forward(self, x, valid, reverse):
        b, length, _ = x.shape
        hs = self.hidden_size
        wx, wh, bias = self.p("input_weight"), self.p("hidden_weight"), self.p("bias")

        h = np.zeros((b, hs), dtype=x.dtype)
        c = np.zeros((b, hs), dtype=x.dtype)
        out = np.zeros((b, length, hs), dtype=x.dtype)
        steps = range(length - 1, -1, -1) if reverse else range(length)
        cache = []
        for t in steps:
            z = x[:, t] @ wx + h @ wh + bias
            i = sigmoid(z[:, :hs])
            f = sigmoid(z[:, hs : 2 * hs])
            g = np.tanh(z[:, 2 * hs : 3 * hs])
            o = sigmoid(z[:, 3 * hs :])
            c_new = f * c + i * g
            tanh_c = np.tanh(c_new)
            h_new = o * tanh_c
            m = valid[:, t, None].astype(x.dtype)
            cache.append((t, h, c, i, f, g, o, tanh_c, m))
            h = m * h_new + (1 - m) * h
            c = m * c_new + (1 - m) * c
            out[:, t] = h

        self._cache = (x, cache)
        return out

    def backward(self, grad):
        x, cache = self._cache
        hs = self.hidden_size
        wx, wh = self.p("input_weight"), self.p("hidden_weight")
        dwx = np.zeros_like(wx)
        dwh = np.zeros_like(wh)
        dbias = np.zeros(4 * hs, dtype=wx.dtype)
        dx = np.zeros_like(x)

        dh_next = np.zeros((x.shape[0], hs), dtype=x.dtype)
        dc_next = np.zeros_like(dh_next)
        for t, h_prev, c_prev, i, f, g, o, tanh_c, m in reversed(cache):
            dh = grad[:, t] + dh_next
            dh_new = m * dh
            dc_new = m * dc_next + dh_new * o * (1 - tanh_c ** 2)

            dz = np.concatenate(
                [
                    dc_new * g * i * (1 - i),
                    dc_new * c_prev * f * (1 - f),
                    dc_new * i * (1 - g ** 2),
                    dh_new * tanh_c * o * (1 - o),
                ],
                axis=1,
            )
            dwx += x[:, t].T @ dz
            dwh += h_prev.T @ dz
            dbias += dz.sum(axis=0)
            dx[:, t] = dz @ wx.T
            dh_next = (1 - m) * dh + dz @ wh.T
            dc_next = (1 - m) * dc_next + dc_new * f

        self.add_grad("input_weight", dwx)
        self.add_grad("hidden_weight", dwh)
        self.add_grad("bias", dbias)
        return dx


class BiLstmEncoder(Module):
    """
    Embedding followed by a forward and a backward LSTM whose states are
    concatenated per position, ``(batch, length, 2 * hidden_size)``.
    Sequences are pooled by concatenating the forward state at the last
    valid position with the backward state at the first position.

    :param BiLstmConfig cfg: With ``vocab_size`` set.
    """

    def __init__(self, cfg, params, rng, dropout_rng=None, prefix="bilstm."):
        super().__init__(params, prefix)
        assert cfg.vocab_size, "vocab_size must be set"
        self.cfg = cfg
        self.hidden_size = 2 * cfg.hidden_size
        self.embedding = Embedding(
            params, prefix + "embedding.", cfg.vocab_size, cfg.embed_dim, rng
        )
        self.forward_lstm = LstmDirection(
            params, prefix + "forward.", cfg.embed_dim, cfg.hidden_size, rng
        )
        self.backward_lstm = LstmDirection(
            params, prefix + "backward.", cfg.embed_dim, cfg.hidden_size, rng
        )

    def forward(self, ids, valid, train=False):
        ids = np.asarray(ids)
        valid = np.asarray(valid, dtype=bool)
        check_inputs(ids, valid, self.cfg.vocab_size, self.cfg.max_len)
        x = self.embedding.forward(ids)
        hf = self.forward_lstm.forward(x, valid, reverse=False)
        hb = self.backward_lstm.forward(x, valid, reverse=True)
        return np.concatenate([hf, hb], axis=-1)

    def backward(self, grad):
        hs = self.cfg.hidden_size
        dx = self.forward_lstm.backward(grad[..., :hs]) + self.backward_lstm.backward(
            grad[..., hs:]
        )
        self.embedding.backward(dx)

    def pool(self, hidden, valid):
        hs = self.cfg.hidden_size
        last = np.maximum(np.asarray(valid, dtype=bool).sum(axis=1) - 1, 0)
        rows = np.arange(hidden.shape[0])
        self._pool_cache = (hidden.shape, last)
        return np.concatenate([hidden[rows, last, :hs], hidden[:, 0, hs:]], axis=-1)

    def pool_backward(self, grad):
        shape, last = self._pool_cache
        hs = self.cfg.hidden_size
        dhidden = np.zeros(shape, dtype=grad.dtype)
        dhidden[np.arange(shape[0]), last, :hs] = grad[:, :hs]
        dhidden[:, 0, hs:] = grad[:, hs:]
        return dhidden
