from ...alignment.vocab import build_vocab
from ..native import generate_native
from ..settings import SynthConfig


def esl_texts(n_texts=20, seed=1, **overrides):
    """
    Returns ``(cfg, texts, vocab)`` for learner-corpus tests.
    """
    cfg = SynthConfig(**overrides)
    texts = generate_native(cfg, seed=seed, n_texts=n_texts, patterns_per_text=1, prefix="txt")
    return cfg, texts, build_vocab(texts)
