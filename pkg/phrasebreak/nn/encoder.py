"""
The transformer encoder: embeddings, a stack of pre-norm layers and CLS pooling.
"""
import numpy as np

from ..errors import DataError
from .layers import Dropout, Embedding, EncoderLayer, LayerNorm, Module
from .params import trunc_normal


def check_inputs(ids, valid, vocab_size, max_len):
    """
    :raise DataError: if ``ids`` and ``valid`` disagree in shape, an id is
        out of range or the sequences are longer than ``max_len``.
    """
    if ids.ndim != 2 or ids.shape != valid.shape:
        raise DataError("ids and valid mask must be equal (batch, length) arrays")
    if ids.shape[1] > max_len:
        raise DataError("Sequence length {} exceeds max_len {}".format(ids.shape[1], max_len))
    if ids.size and (ids.min() < 0 or ids.max() >= vocab_size):
        raise DataError(
            "Token id out of range [0, {}): found {}..{}".format(vocab_size, ids.min(), ids.max())
        )


class TransformerEncoder(Module):
    """
    Token and learned position embeddings, ``n_layers`` pre-norm encoder
    layers and a final layer norm. Sequences are pooled by their first
    (``[CLS]``) position.

    :param EncoderConfig cfg: With ``vocab_size`` set.
    :param ModelParams params: Receives the parameters, named ``encoder.*``.
    :param numpy.random.Generator rng: Initialization stream.
    :param numpy.random.Generator dropout_rng: Dropout mask stream.
    """

    def __init__(self, cfg, params, rng, dropout_rng, prefix="encoder."):
        super().__init__(params, prefix)
        assert cfg.vocab_size, "vocab_size must be set"
        self.cfg = cfg
        self.hidden_size = cfg.d_model
        self.token_embedding = Embedding(
            params, prefix + "token_embedding.", cfg.vocab_size, cfg.d_model, rng
        )
        self.add_param("position_embedding", trunc_normal(rng, (cfg.max_len, cfg.d_model)))
        self.embedding_dropout = Dropout(cfg.dropout_prob, dropout_rng)
        self.layers = [
            EncoderLayer(params, "{}layers.{}.".format(prefix, i), cfg, rng, dropout_rng)
            for i in range(cfg.n_layers)
        ]
        self.final_norm = LayerNorm(params, prefix + "final_norm.", cfg.d_model)

    def forward(self, ids, valid, train=False):
        """
        :param ids: ``(batch, length)`` int array.
        :param valid: ``(batch, length)`` bool array, ``False`` at padding.
        :returns: ``(batch, length, d_model)`` hidden states.
        """
        ids = np.asarray(ids)
        valid = np.asarray(valid, dtype=bool)
        check_inputs(ids, valid, self.cfg.vocab_size, self.cfg.max_len)
        length = ids.shape[1]
        self._cache = length

        x = self.token_embedding.forward(ids) + self.p("position_embedding")[:length]
        x = self.embedding_dropout.forward(x, train)
        for layer in self.layers:
            x = layer.forward(x, valid, train)
        return self.final_norm.forward(x)

    def backward(self, grad):
        length = self._cache
        grad = self.final_norm.backward(grad)
        for layer in reversed(self.layers):
            grad = layer.backward(grad)
        grad = self.embedding_dropout.backward(grad)

        dposition = np.zeros_like(self.p("position_embedding"))
        dposition[:length] = grad.sum(axis=0)
        self.add_grad("position_embedding", dposition)
        self.token_embedding.backward(grad)

    def pool(self, hidden, valid):
        self._pool_shape = hidden.shape
        return hidden[:, 0, :]

    def pool_backward(self, grad):
        dhidden = np.zeros(self._pool_shape, dtype=grad.dtype)
        dhidden[:, 0, :] = grad
        return dhidden
