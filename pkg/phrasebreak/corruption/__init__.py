"""
Replaced-break-token data augmentation for discriminator pretraining.

Dependencies
------------
numpy

Usage
-----
::

    from phrasebreak.corruption import CorruptionConfig, build_pretrain_dataset

    cfg = CorruptionConfig(replace_prob=0.15, copies_per_original=3)
    dataset = build_pretrain_dataset(encoded_corpus, cfg, seed=1234)

Members
-------
"""
from .rbtd import (
    CORRUPTED,
    ORIGINAL,
    Edit,
    LabeledSequence,
    build_pretrain_dataset,
    corrupt_once,
    read_pretrain_dataset,
    write_pretrain_dataset,
)
from .settings import CorruptionConfig


__all__ = [
    "CORRUPTED",
    "CorruptionConfig",
    "Edit",
    "LabeledSequence",
    "ORIGINAL",
    "build_pretrain_dataset",
    "corrupt_once",
    "read_pretrain_dataset",
    "write_pretrain_dataset",
]
