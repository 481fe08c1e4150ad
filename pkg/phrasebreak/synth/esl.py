"""
The synthetic learner corpus: renditions of native texts with labeled
phrasing errors.

Every break position is labeled by the rule that produced its break:

=========  ===========================================  =====
Trace      Rule                                         Rank
=========  ===========================================  =====
ok         the site's default break                     Great
alternate  an optional site read without a break        Great
spurious   br2/br3 inside a phrase                      Poor
missed     a required br2/br3 dropped to br0            Poor
weak       a comma break weakened to br1                Fair
=========  ===========================================  =====

The overall rank aggregates the position ranks: Poor when at least 20%
of the positions are Poor, Great when at least 90% are Great and none
is Poor, Fair otherwise.

Each sample is drawn for a preassigned overall rank, so the corpus
matches ``SynthConfig.class_fractions`` exactly. Errors are injected at
the configured rates scaled by the target (lighter for Great, heavier
for Poor) and a rendition is redrawn until its rank is the target.

Ground truth file (JSON Lines)::

    {"format": "phrasebreak.truth", "version": 1}
    {"id": "esl00000", "text_id": "txt00012", "overall": 2, "fine": [3, 1, ...],
     "trace": ["ok", "spurious", ...]}
"""
import logging
from collections import Counter, OrderedDict

import numpy as np

from ..alignment.tokens import BreakClass
from ..alignment.vocab import DEFAULT_MAX_LEN, encode
from ..baselines.reference import ReferenceSet
from ..datatypes import EnumX
from ..errors import ConfigError, DataError
from ..io import read_jsonl, write_jsonl
from ..tasks.samples import RankScale, RatedSample
from ..utils import largest_remainder_counts
from .native import ALTERNATE_BREAK, SiteKind, SynthSentence, realize_breaks


logger = logging.getLogger("phrasebreak.synth")


TRUTH_FORMAT = "phrasebreak.truth"


class TraceKind(EnumX):
    """
    ``value`` is ``(rank, comment)``.
    """

    OK = ("ok", RankScale.GREAT, "Default break")
    ALTERNATE = ("alternate", RankScale.GREAT, "Valid alternate pattern")
    SPURIOUS = ("spurious", RankScale.POOR, "Break inside a phrase")
    MISSED = ("missed", RankScale.POOR, "Required break dropped")
    WEAK = ("weak", RankScale.FAIR, "Weakened break")

    @property
    def rank(self):
        return self.value[0]

    @property
    def comment(self):
        return self.value[1]


TARGET_ERROR_SCALE = {RankScale.POOR: 3.0, RankScale.FAIR: 1.0, RankScale.GREAT: 0.25}


def aggregate_overall(fine):
    """
    The overall rank of per-position ranks. No positions is Great.
    """
    n = len(fine)
    poor = sum(1 for r in fine if r is RankScale.POOR)
    great = sum(1 for r in fine if r is RankScale.GREAT)
    if 5 * poor >= n and poor:
        return RankScale.POOR
    if 10 * great >= 9 * n and not poor:
        return RankScale.GREAT
    return RankScale.FAIR


def inject_errors(seq, rng, spurious_rate, missed_rate, weak_rate):
    """
    Applies the error rules to a fluent rendition.

    :param SynthSentence seq: The rendition, with its site kinds.
    :param numpy.random.Generator rng: Advanced by a fixed number of draws
        per position whatever the rates.
    :returns: ``(breaks, trace)``, a ``BreakClass`` and a ``TraceKind`` per
        break position.
    """
    draws = rng.random((len(seq.sites), 3))
    heavy = rng.integers(BreakClass.BR2.index, BreakClass.BR3.index + 1, size=len(seq.sites))

    breaks, trace = [], []
    for site, brk, (u_spurious, u_missed, u_weak), h in zip(seq.sites, seq.breaks, draws, heavy):
        if site is SiteKind.NONE and u_spurious < spurious_rate:
            breaks.append(BreakClass.from_index(int(h)))
            trace.append(TraceKind.SPURIOUS)
        elif site in (SiteKind.CLAUSE, SiteKind.SENTENCE) and u_missed < missed_rate:
            breaks.append(BreakClass.BR0)
            trace.append(TraceKind.MISSED)
        elif site is SiteKind.CLAUSE and u_weak < weak_rate:
            breaks.append(BreakClass.BR1)
            trace.append(TraceKind.WEAK)
        elif site is SiteKind.OPTIONAL and brk is ALTERNATE_BREAK:
            breaks.append(brk)
            trace.append(TraceKind.ALTERNATE)
        else:
            breaks.append(brk)
            trace.append(TraceKind.OK)
    return breaks, trace


class GroundTruth(object):
    """
    The labels of one learner sample and the rule behind each of them.

    :param RankScale overall: Must equal ``aggregate_overall(fine)``.
    :param list fine: One ``RankScale`` per break position.
    :param list trace: One ``TraceKind`` per break position.
    :raise DataError: if the labels are inconsistent.
    """

    def __init__(self, id, overall, fine, trace, text_id=None):
        self.id = str(id)
        self.overall = overall
        self.fine = list(fine)
        self.trace = list(trace)
        self.text_id = text_id
        if len(self.fine) != len(self.trace):
            raise DataError("fine and trace lengths differ", sample_id=self.id)
        if any(t.rank is not r for t, r in zip(self.trace, self.fine)):
            raise DataError("fine ranks do not match the trace", sample_id=self.id)
        if overall is not aggregate_overall(self.fine):
            raise DataError(
                "Overall rank {} does not aggregate the fine ranks".format(overall),
                sample_id=self.id,
            )

    @classmethod
    def from_trace(cls, id, trace, text_id=None):
        fine = [t.rank for t in trace]
        return cls(id, aggregate_overall(fine), fine, trace, text_id)

    @property
    def n_alternates(self):
        return sum(1 for t in self.trace if t is TraceKind.ALTERNATE)

    def error_counts(self):
        return Counter(t.key for t in self.trace if t.rank is not RankScale.GREAT)

    def to_record(self):
        return OrderedDict(
            [
                ("id", self.id),
                ("text_id", self.text_id),
                ("overall", self.overall.rank),
                ("fine", [r.rank for r in self.fine]),
                ("trace", [t.key for t in self.trace]),
            ]
        )

    @classmethod
    def from_record(cls, record):
        try:
            return cls(
                record["id"],
                RankScale.from_rank(record["overall"]),
                [RankScale.from_rank(r) for r in record["fine"]],
                [TraceKind.from_key(t) for t in record["trace"]],
                record.get("text_id"),
            )
        except DataError as e:
            raise e.located(sample_id=record.get("id"))
        except (KeyError, TypeError, ValueError) as e:
            raise DataError("Malformed ground truth record: {!r}".format(e)) from e

    def __eq__(self, other):
        return isinstance(other, GroundTruth) and self.to_record() == other.to_record()

    def __repr__(self):
        return "GroundTruth({!r}, overall={})".format(self.id, self.overall)


def write_truth(path, truths):
    return write_jsonl(path, TRUTH_FORMAT, (t.to_record() for t in truths))


def read_truth(path):
    """
    :raise DataError: naming the line of any invalid record.
    """
    _, records = read_jsonl(path, TRUTH_FORMAT)
    truths = []
    for lineno, record in records:
        try:
            truths.append(GroundTruth.from_record(record))
        except DataError as e:
            raise e.located(filename=str(path), line=lineno)
    return truths


class EslSample(RatedSample):
    """
    A rated learner sample that also carries its ``truth`` and the
    canonical ``reference`` rendition of its text.
    """

    def __init__(self, *args, truth=None, reference=None, **kwargs):
        super().__init__(*args, **kwargs)
        self.truth = truth
        self.reference = reference

    @property
    def sequence(self):
        return self.tokens


def _draw(cfg, text, target, rng, sample_id):
    scale = TARGET_ERROR_SCALE[target]
    rates = [min(1.0, r * scale) for r in (cfg.spurious_rate, cfg.missed_rate, cfg.weak_rate)]
    for _ in range(cfg.max_attempts):
        rendition = text.with_breaks(
            realize_breaks(text.sites, rng, cfg.alt_pattern_rate), id=sample_id
        )
        breaks, trace = inject_errors(rendition, rng, *rates)
        truth = GroundTruth.from_trace(sample_id, trace, text.text_id)
        if truth.overall is target:
            return rendition.with_breaks(breaks), truth
    raise ConfigError(
        "No {} rendition of text {} in {} attempts: the error rates cannot reach the "
        "class fractions".format(target.value, text.text_id, cfg.max_attempts)
    )


def generate_esl(cfg, native, vocab, seed=0, max_len=DEFAULT_MAX_LEN):
    """
    Generates ``cfg.n_esl`` rated learner samples reading the ``native``
    texts in turn. The overall ranks follow ``cfg.class_fractions`` by
    largest remainder, in a seeded order.

    :param SynthConfig cfg: The synthetic corpus settings.
    :param list native: ``SynthSentence`` texts.
    :param Vocabulary vocab: Encodes the samples.
    :param int seed: Seed of the generator.
    :param int max_len: Longest encoded sample allowed.
    :returns: ``list`` of ``EslSample``.
    :raise DataError: if ``native`` is empty or lacks site kinds.
    :raise ConfigError: if a text is longer than ``max_len``, or if the
        error rates cannot produce a target rank.
    """
    if not native:
        raise DataError("Cannot generate learner samples without texts")
    for text in native:
        if not isinstance(text, SynthSentence):
            raise DataError("Text has no site kinds", sample_id=getattr(text, "id", None))
        if len(text) + 1 > max_len:
            raise ConfigError(
                "Text {} has {} tokens, more than max_len {} allows".format(
                    text.id, len(text), max_len
                )
            )

    rng = np.random.Generator(np.random.PCG64(seed))
    counts = largest_remainder_counts(cfg.class_fractions, cfg.n_esl)
    targets = [rank for rank, n in zip(RankScale, counts) for _ in range(n)]
    targets = [targets[i] for i in rng.permutation(len(targets))]

    samples = []
    for i, target in enumerate(targets):
        text = native[i % len(native)]
        sample_id = "esl{:05d}".format(i)
        tokens, truth = _draw(cfg, text, target, rng, sample_id)
        encoded = encode(tokens, vocab, max_len)
        samples.append(
            EslSample(
                encoded.id,
                encoded.ids,
                encoded.break_mask,
                overall=truth.overall,
                fine=truth.fine,
                tokens=tokens,
                text_id=text.text_id,
                vocab_fingerprint=encoded.vocab_fingerprint,
                truth=truth,
                reference=text.canonical(id=text.text_id),
            )
        )

    logger.info(
        "Generated %d learner samples (%s) from %d texts",
        len(samples),
        ", ".join("{} {}".format(n, rank.value) for rank, n in zip(RankScale, counts)),
        len(native),
    )
    return samples


def references_of(samples):
    """
    The canonical reference of every text read in ``samples``.

    :rtype: ReferenceSet
    """
    refs = ReferenceSet()
    for s in samples:
        if s.text_id not in refs:
            refs.add(s.text_id, s.reference)
    return refs
