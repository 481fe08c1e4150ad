import os
import tempfile
from unittest import TestCase

import numpy as np

from ...errors import DataError, FormatVersionError
from ..ctm import AlignedUtterance, AlignedWord
from ..tokens import (
    BreakClass,
    TokenSequence,
    build_sequence,
    inter_word_gaps,
    normalize_word,
    quantize,
    read_token_sequences,
    write_token_sequences,
)


BR0, BR1, BR2, BR3 = BreakClass.BR0, BreakClass.BR1, BreakClass.BR2, BreakClass.BR3


def utterance_with_gaps(gaps, id="u"):
    words = []
    t = 0.0
    for i in range(len(gaps) + 1):
        words.append(AlignedWord("w{}".format(i), t, round(t + 0.3, 6)))
        if i < len(gaps):
            t = round(t + 0.3 + gaps[i], 6)
    return AlignedUtterance(id, words)


class QuantizeTestCase(TestCase):
    def test_boundaries(self):
        TESTS = [
            (0.0, BR0),
            (0.000001, BR0),
            (0.005, BR0),
            (0.010, BR0),
            (0.010001, BR1),
            (0.02, BR1),
            (0.050, BR1),
            (0.0501, BR2),
            (0.08, BR2),
            (0.200, BR2),
            (0.200001, BR3),
            (0.350, BR3),
            (1e9, BR3),
        ]
        for gap, expected in TESTS:
            self.assertIs(quantize(gap), expected, gap)

    def test_monotone(self):
        previous = BR0
        for gap in np.linspace(0, 0.5, 5001):
            cls = quantize(round(float(gap), 6))
            self.assertGreaterEqual(cls, previous)
            previous = cls

    def test_invalid(self):
        for gap in (-0.001, float("nan")):
            with self.assertRaises(DataError):
                quantize(gap)

    def test_class_table(self):
        self.assertEqual(list(BreakClass.keys()), ["br0", "br1", "br2", "br3"])
        self.assertEqual([c.index for c in BreakClass], [0, 1, 2, 3])
        self.assertIsNone(BR3.upper_bound)
        self.assertEqual(BR1.comment, "Slight / Optional break")
        self.assertIs(BreakClass.from_key("br2"), BR2)


class GapsTestCase(TestCase):
    def test_gap(self):
        utt = AlignedUtterance("u", [AlignedWord("a", 0.5, 1.0), AlignedWord("b", 1.12, 1.5)])
        self.assertEqual(inter_word_gaps(utt), [0.12])

    def test_overlap_clamps(self):
        utt = AlignedUtterance("u", [AlignedWord("a", 0.5, 1.0), AlignedWord("b", 0.9, 1.5)])
        self.assertEqual(inter_word_gaps(utt), [0.0])

    def test_single_word(self):
        self.assertEqual(inter_word_gaps(AlignedUtterance("u", [AlignedWord("a", 0, 1)])), [])


class BuildSequenceTestCase(TestCase):
    def test_examples(self):
        TESTS = [
            ([0.005, 0.30], [BR0, BR3]),
            ([0.02, 0.08], [BR1, BR2]),
            ([], []),
        ]
        for gaps, breaks in TESTS:
            seq = build_sequence(utterance_with_gaps(gaps))
            self.assertEqual(seq.breaks, breaks)
            self.assertEqual(len(seq), 2 * len(gaps) + 1)

    def test_alternation(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            gaps = [round(float(g), 6) for g in rng.uniform(0, 0.4, int(rng.integers(0, 12)))]
            seq = build_sequence(utterance_with_gaps(gaps))
            self.assertEqual(len(seq), 2 * len(gaps) + 1)
            for pos, item in enumerate(seq.items):
                self.assertEqual(isinstance(item, BreakClass), pos % 2 == 1)

    def test_punctuation_and_fillers(self):
        utt = AlignedUtterance(
            "u",
            [
                AlignedWord("Hello,", 0.0, 0.4),
                AlignedWord("<sil>", 0.4, 0.45),
                AlignedWord(",", 0.45, 0.46),
                AlignedWord("world's", 0.5, 0.9),
            ],
        )
        seq = build_sequence(utt)
        self.assertEqual(seq.words, ["hello", "world's"])
        self.assertEqual(seq.breaks, [BR2])

    def test_nothing_left(self):
        with self.assertRaises(DataError):
            build_sequence(AlignedUtterance("u", [AlignedWord("<eps>", 0, 1)]))

    def test_normalize_word(self):
        TESTS = [("The", "the"), ("'quoted'", "quoted"), ("don't", "don't"), ("--", "")]
        for surface, expected in TESTS:
            self.assertEqual(normalize_word(surface), expected)


class TokenSequenceTestCase(TestCase):
    def test_invalid_alternation(self):
        with self.assertRaises(DataError):
            TokenSequence("x", ["a", BR0])
        with self.assertRaises(DataError):
            TokenSequence("x", ["a", "b", "c"])
        with self.assertRaises(DataError):
            TokenSequence("x", [BR0, "a", BR0])
        with self.assertRaises(DataError):
            TokenSequence("x", [])

    def test_with_breaks(self):
        seq = TokenSequence("x", ["a", BR0, "b"])
        self.assertEqual(seq.with_breaks([BR3]).items, ("a", BR3, "b"))
        with self.assertRaises(DataError):
            seq.with_breaks([BR3, BR3])

    def test_strings(self):
        seq = TokenSequence("x", ["a", BR2, "b"])
        self.assertEqual(seq.to_strings(), ["a", "br2", "b"])
        self.assertEqual(TokenSequence.from_strings("x", ["a", "br2", "b"]), seq)
        with self.assertRaises(DataError):
            TokenSequence.from_strings("x", ["a", "br9", "b"])

    def test_jsonl_file(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "tokens.jsonl")
            seqs = [TokenSequence("x", ["a", BR2, "b"]), TokenSequence("y", ["c"])]
            self.assertEqual(write_token_sequences(path, seqs), 2)
            self.assertEqual(read_token_sequences(path), seqs)

            with open(path, "w", encoding="utf-8") as f:
                f.write('{"format":"phrasebreak.tokens","version":99}\n')
            with self.assertRaises(FormatVersionError):
                read_token_sequences(path)

            with open(path, "w", encoding="utf-8") as f:
                f.write('{"format":"phrasebreak.tokens","version":1}\n')
                f.write('{"id":"z","tokens":["a","br7","b"]}\n')
            with self.assertRaises(DataError) as ctx:
                read_token_sequences(path)
            self.assertEqual(ctx.exception.line, 2)
