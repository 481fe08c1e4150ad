import os
import tempfile
from collections import Counter
from unittest import TestCase

import numpy as np

from ...alignment.tokens import BreakClass, TokenSequence
from ...alignment.vocab import Vocabulary, break_class_of, break_id, encode
from ...errors import ConfigError, DataError
from ..rbtd import (
    CORRUPTED,
    ORIGINAL,
    LabeledSequence,
    build_pretrain_dataset,
    corrupt_once,
    read_pretrain_dataset,
    write_pretrain_dataset,
)
from ..settings import CorruptionConfig


def make_sequence(id, breaks):
    items = ["w"]
    for brk in breaks:
        items += [brk, "w"]
    return encode(TokenSequence(id, items), Vocabulary())


def random_corpus(rng, count):
    corpus = []
    for n in range(count):
        breaks = [BreakClass.from_index(int(i)) for i in rng.integers(0, 4, rng.integers(0, 9))]
        corpus.append(make_sequence("s{}".format(n), breaks))
    return corpus


class CorruptOnceTestCase(TestCase):
    def test_no_replacement(self):
        seq = make_sequence("x", [BreakClass.BR1, BreakClass.BR2])
        out = corrupt_once(seq, CorruptionConfig(replace_prob=0), np.random.default_rng(0))
        self.assertEqual(out.ids, seq.ids)
        self.assertEqual(out.label, ORIGINAL)
        self.assertEqual(out.edits, [])

    def test_replacement_is_uniform_over_other_classes(self):
        seq = make_sequence("x", [BreakClass.BR2])
        cfg = CorruptionConfig(replace_prob=1)
        rng = np.random.default_rng(11)
        trials = 30000
        counts = Counter(break_class_of(corrupt_once(seq, cfg, rng).ids[2]) for _ in range(trials))
        self.assertEqual(set(counts), {BreakClass.BR0, BreakClass.BR1, BreakClass.BR3})
        for cls in counts:
            self.assertAlmostEqual(counts[cls] / trials, 1 / 3, delta=0.01)

    def test_zero_edit_fraction(self):
        seq = make_sequence("x", [BreakClass.BR0] * 10)
        cfg = CorruptionConfig(replace_prob=0.15)
        rng = np.random.default_rng(12)
        trials = 100000
        originals = sum(corrupt_once(seq, cfg, rng).label == ORIGINAL for _ in range(trials))
        self.assertAlmostEqual(originals / trials, 0.85 ** 10, delta=0.01)

    def test_replacement_rate_and_word_positions(self):
        rng = np.random.default_rng(13)
        corpus = random_corpus(rng, 300)
        cfg = CorruptionConfig(replace_prob=0.15)
        n_breaks = 0
        n_edits = 0
        while n_breaks < 100000:
            for seq in corpus:
                out = corrupt_once(seq, cfg, rng)
                n_breaks += seq.n_breaks
                n_edits += len(out.edits)
                self.assertEqual(out.label == CORRUPTED, bool(out.edits))
                for pos, (a, b) in enumerate(zip(seq.ids, out.ids)):
                    if not seq.break_mask[pos]:
                        self.assertEqual(a, b)
                for edit in out.edits:
                    self.assertIsNot(edit.old, edit.new)
                    self.assertEqual(out.ids[edit.position], break_id(edit.new))
        self.assertAlmostEqual(n_edits / n_breaks, 0.15, delta=0.01)

    def test_no_breaks(self):
        seq = make_sequence("x", [])
        out = corrupt_once(seq, CorruptionConfig(replace_prob=1), np.random.default_rng(0))
        self.assertEqual(out.label, ORIGINAL)


class BuildPretrainDatasetTestCase(TestCase):
    def setUp(self):
        self.corpus = random_corpus(np.random.default_rng(5), 100)

    def test_size_and_labels(self):
        dataset = build_pretrain_dataset(self.corpus, CorruptionConfig(), seed=1)
        self.assertEqual(len(dataset), 400)
        by_original = Counter(s.original_id for s in dataset)
        self.assertEqual(set(by_original.values()), {4})
        plain = [s for s in dataset if "#" not in s.id]
        self.assertEqual(len(plain), 100)
        self.assertTrue(all(s.label == ORIGINAL for s in plain))
        for s in dataset:
            self.assertEqual(s.label == CORRUPTED, bool(s.edits))

    def test_no_copies(self):
        dataset = build_pretrain_dataset(
            self.corpus, CorruptionConfig(copies_per_original=0), seed=1
        )
        self.assertEqual(sorted(s.id for s in dataset), sorted(s.id for s in self.corpus))

    def test_deterministic(self):
        a = build_pretrain_dataset(self.corpus, CorruptionConfig(), seed=42)
        b = build_pretrain_dataset(self.corpus, CorruptionConfig(), seed=42)
        c = build_pretrain_dataset(self.corpus, CorruptionConfig(), seed=43)
        self.assertEqual(a, b)
        self.assertNotEqual([s.id for s in a], [s.id for s in c])

    def test_config_seed_wins(self):
        a = build_pretrain_dataset(self.corpus, CorruptionConfig(seed=9), seed=1)
        b = build_pretrain_dataset(self.corpus, CorruptionConfig(seed=9), seed=2)
        self.assertEqual(a, b)

    def test_empty(self):
        with self.assertRaises(DataError):
            build_pretrain_dataset([], CorruptionConfig())

    def test_config_validation(self):
        for kwargs in ({"replace_prob": 1.5}, {"copies_per_original": -1}, {"bogus": 1}):
            with self.assertRaises(ConfigError):
                CorruptionConfig(**kwargs)

    def test_file(self):
        dataset = build_pretrain_dataset(self.corpus[:10], CorruptionConfig(), seed=3)
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "pretrain.jsonl")
            write_pretrain_dataset(path, dataset)
            self.assertEqual(read_pretrain_dataset(path), dataset)

    def test_ids_containing_hash(self):
        corpus = [
            make_sequence("utt#1", [BreakClass.BR1]),
            make_sequence("utt#2", [BreakClass.BR3]),
        ]
        dataset = build_pretrain_dataset(corpus, CorruptionConfig(copies_per_original=2), seed=3)
        by_original = Counter(s.original_id for s in dataset)
        self.assertEqual(by_original, Counter({"utt#1": 3, "utt#2": 3}))


class LabeledSequenceTestCase(TestCase):
    def test_label_must_match_edits(self):
        seq = make_sequence("x", [BreakClass.BR0])
        with self.assertRaises(DataError):
            LabeledSequence("x", seq.ids, seq.break_mask, CORRUPTED, [])

    def test_bad_record(self):
        record = {"id": "x", "ids": [2, 1, 5, 1], "break_mask": [False, False, True, False]}
        record.update(label=1, edits=[[1, "br0", "br1"]])
        with self.assertRaises(DataError):
            LabeledSequence.from_record(record)
        record.update(edits=[[2, "br0", "br0"]])
        with self.assertRaises(DataError):
            LabeledSequence.from_record(record)
        del record["ids"]
        with self.assertRaises(DataError):
            LabeledSequence.from_record(record)
