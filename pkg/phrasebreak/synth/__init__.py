"""
Synthetic stand-ins for the two corpora of the pipeline: a native corpus
of well-phrased texts with several valid break patterns each (for
pretraining), and a learner corpus with labeled phrasing errors (for
fine-tuning and evaluation).

They exercise the method's machinery; they make no claim to the
realism of learner speech.

Dependencies
------------
- numpy

Usage
-----
::

    from phrasebreak.synth import SynthConfig, generate_native, generate_esl

    cfg = SynthConfig(n_sentences=500, n_esl=200)
    native = generate_native(cfg, seed=cfg.seed_for('synth.native', 1234))
    texts = generate_native(
        cfg, seed=cfg.seed_for('synth.esl_native', 1234), n_texts=cfg.n_esl_texts,
        patterns_per_text=1, prefix='txt')
    vocab = build_vocab(native + texts)
    learners = generate_esl(cfg, texts, vocab, seed=cfg.seed_for('synth.esl', 1234))

    write_truth('truth.jsonl', [s.truth for s in learners])
    print(corpus_stats(learners).as_rows())

Members
-------
"""
from .esl import (
    TRUTH_FORMAT,
    EslSample,
    GroundTruth,
    TraceKind,
    aggregate_overall,
    generate_esl,
    inject_errors,
    read_truth,
    references_of,
    write_truth,
)
from .native import (
    SiteKind,
    SynthSentence,
    canonical_breaks,
    generate_native,
    generate_text,
    realize_breaks,
)
from .settings import SynthConfig
from .stats import CorpusStats, corpus_stats, format_stats


__all__ = [
    "CorpusStats",
    "EslSample",
    "GroundTruth",
    "SiteKind",
    "SynthConfig",
    "SynthSentence",
    "TRUTH_FORMAT",
    "TraceKind",
    "aggregate_overall",
    "canonical_breaks",
    "corpus_stats",
    "format_stats",
    "generate_esl",
    "generate_native",
    "generate_text",
    "inject_errors",
    "read_truth",
    "realize_breaks",
    "references_of",
    "write_truth",
]
