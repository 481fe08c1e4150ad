"""
Turns forced-alignment output into word/break token sequences and
encodes them against a whole-word vocabulary.

Dependencies
------------
None beyond the standard library.

Usage
-----
::

    from phrasebreak.alignment import read_alignment, build_sequence, build_vocab, encode

    utterances = read_alignment('train.ctm')
    sequences = [build_sequence(u) for u in utterances]
    vocab = build_vocab(sequences, min_count=1)
    encoded = [encode(s, vocab, max_len=128) for s in sequences]

Members
-------
"""
from .ctm import (
    AlignedUtterance,
    AlignedWord,
    parse_ctm,
    parse_tsv,
    read_alignment,
    read_alignments,
    write_ctm,
    write_tsv,
)
from .tokens import (
    BreakClass,
    TokenSequence,
    build_sequence,
    inter_word_gaps,
    normalize_word,
    quantize,
    read_token_sequences,
    write_token_sequences,
)
from .vocab import (
    CLS_ID,
    FIRST_WORD_ID,
    PAD_ID,
    SEP_ID,
    UNK_ID,
    EncodedSequence,
    Vocabulary,
    break_class_of,
    break_id,
    build_vocab,
    encode,
)


__all__ = [
    "AlignedUtterance",
    "AlignedWord",
    "BreakClass",
    "CLS_ID",
    "EncodedSequence",
    "FIRST_WORD_ID",
    "PAD_ID",
    "SEP_ID",
    "TokenSequence",
    "UNK_ID",
    "Vocabulary",
    "break_class_of",
    "break_id",
    "build_sequence",
    "build_vocab",
    "encode",
    "inter_word_gaps",
    "normalize_word",
    "parse_ctm",
    "parse_tsv",
    "quantize",
    "read_alignment",
    "read_alignments",
    "read_token_sequences",
    "write_ctm",
    "write_token_sequences",
    "write_tsv",
]
