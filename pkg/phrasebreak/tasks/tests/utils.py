import numpy as np

from ...alignment.tokens import BreakClass, TokenSequence
from ...alignment.vocab import build_vocab, encode
from ...nn.settings import BiLstmConfig, EncoderConfig
from ...tasks.samples import RankScale, RatedSample
from ...tasks.settings import FinetuneConfig, PretrainConfig


WORDS = ["the", "cat", "sat", "on", "a", "mat", "and", "dog", "ran", "home"]

PATTERN_OF_RANK = {
    RankScale.GREAT: BreakClass.BR0,
    RankScale.FAIR: BreakClass.BR1,
    RankScale.POOR: BreakClass.BR3,
}


def tiny_encoder(**kwargs):
    options = dict(d_model=16, n_heads=2, n_layers=1, ffn_dim=32, max_len=32, dropout_prob=0.0)
    options.update(kwargs)
    return EncoderConfig(**options)


def tiny_bilstm(**kwargs):
    options = dict(embed_dim=8, hidden_size=8, max_len=32)
    options.update(kwargs)
    return BiLstmConfig(**options)


def fast_pretrain(**kwargs):
    options = dict(batch_size=8, epochs=30, lr=1e-2, held_out_fraction=0.0)
    options.update(kwargs)
    return PretrainConfig(**options)


def fast_finetune(**kwargs):
    options = dict(batch_size=8, epochs=30, lr=1e-2)
    options.update(kwargs)
    return FinetuneConfig(**options)


def random_words(rng, n_words):
    return [WORDS[int(i)] for i in rng.integers(0, len(WORDS), n_words)]


def token_sequence(id, words, brk):
    items = [words[0]]
    for word in words[1:]:
        items += [brk, word]
    return TokenSequence(id, items)


def native_corpus(count, seed=0):
    """
    Sequences whose breaks are all ``br0``.
    """
    rng = np.random.default_rng(seed)
    return [
        token_sequence("n{}".format(i), random_words(rng, int(rng.integers(3, 7))), BreakClass.BR0)
        for i in range(count)
    ]


def fixed_vocab():
    return build_vocab([token_sequence("all", WORDS, BreakClass.BR0)])


def encoded_native(count, seed=0, vocab=None):
    vocab = vocab or fixed_vocab()
    return [encode(seq, vocab, max_len=32) for seq in native_corpus(count, seed)], vocab


def rated_corpus(count, seed=0, ranks=None, vocab=None):
    """
    Rated samples whose breaks all follow the pattern of their rank, so the
    ranks can be read off the break tokens. Fine ranks equal the overall one.

    :returns: ``(samples, vocab)``
    """
    rng = np.random.default_rng(seed)
    ranks = ranks or list(RankScale)
    sequences = []
    for i in range(count):
        rank = ranks[i % len(ranks)]
        words = random_words(rng, int(rng.integers(3, 7)))
        sequences.append((rank, token_sequence("r{}".format(i), words, PATTERN_OF_RANK[rank])))
    vocab = vocab or fixed_vocab()
    samples = []
    for rank, seq in sequences:
        encoded = encode(seq, vocab, max_len=32)
        samples.append(
            RatedSample.from_encoded(encoded, rank, [rank] * encoded.n_breaks, tokens=seq)
        )
    return samples, vocab
