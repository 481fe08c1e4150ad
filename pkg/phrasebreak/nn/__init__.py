"""
A small numpy neural-network stack: a pre-norm transformer encoder,
a bidirectional LSTM, softmax cross-entropy, Adam and a finite-difference
gradient checker.

Every module implements ``forward`` and an explicit ``backward``; there
is no automatic differentiation. Parameters live in one ``ModelParams``
per model and are ``float32``.

Dependencies
------------
numpy

Usage
-----
::

    import numpy as np
    from phrasebreak.nn import Adam, EncoderConfig, ModelParams, TransformerEncoder

    params = ModelParams()
    rng = np.random.default_rng(0)
    encoder = TransformerEncoder(EncoderConfig(vocab_size=100), params, rng, rng)
    hidden = encoder.forward(ids, valid, train=True)
    ...
    encoder.backward(dhidden)
    Adam(params, lr=1e-4).step()

Members
-------
"""
from .bilstm import BiLstmEncoder
from .encoder import TransformerEncoder
from .gradcheck import grad_check
from .layers import (
    GELU,
    Dropout,
    Embedding,
    EncoderLayer,
    FeedForward,
    LayerNorm,
    Linear,
    MultiHeadSelfAttention,
)
from .losses import inverse_frequency_weights, softmax, softmax_cross_entropy
from .optim import Adam, adam_step
from .params import ModelParams
from .settings import BiLstmConfig, EncoderConfig


__all__ = [
    "Adam",
    "BiLstmConfig",
    "BiLstmEncoder",
    "Dropout",
    "Embedding",
    "EncoderConfig",
    "EncoderLayer",
    "FeedForward",
    "GELU",
    "LayerNorm",
    "Linear",
    "ModelParams",
    "MultiHeadSelfAttention",
    "TransformerEncoder",
    "adam_step",
    "grad_check",
    "inverse_frequency_weights",
    "softmax",
    "softmax_cross_entropy",
]
