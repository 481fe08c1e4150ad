"""
The against-reference baseline: a test break sequence is scored by its
agreement with a reference rendition of the same text, and the score is
mapped onto the rank scale.

The similarity is the position-wise exact-match rate of the break
classes. It is kept behind ``break_similarity`` so another measure can
replace it.

References file (JSON Lines)::

    {"format": "phrasebreak.references", "version": 1}
    {"text_id": "t1", "tokens": ["the", "br0", "cat", "br3", "sat"]}

A text may have several reference records.
"""
import json
import logging
import os
from collections import OrderedDict

from ..alignment.tokens import TOKENS_FORMAT, TokenSequence, read_token_sequences
from ..errors import DataError, FormatVersionError
from ..io import read_jsonl, write_jsonl
from ..tasks.samples import RankScale


logger = logging.getLogger("phrasebreak.baselines")


REFERENCES_FORMAT = "phrasebreak.references"

FAIR_THRESHOLD = 0.3
GREAT_THRESHOLD = 0.7


def _check_words(test, ref):
    if test.words != ref.words:
        raise DataError(
            "Reference {!r} has a different word sequence".format(ref.id), sample_id=test.id
        )


def break_similarity(test, ref):
    """
    The fraction of break positions where ``test`` and ``ref`` have the
    same break class. A single word (no break positions) scores 1.0.

    :param TokenSequence test:
    :param TokenSequence ref: A rendition of the same words.
    :rtype: float
    :raise DataError: if the word sequences differ.
    """
    _check_words(test, ref)
    pairs = list(zip(test.breaks, ref.breaks))
    if not pairs:
        return 1.0
    return sum(1 for a, b in pairs if a is b) / len(pairs)


def rank_from_similarity(score):
    """
    Maps a similarity onto ``[0, 0.3)`` Poor, ``[0.3, 0.7)`` Fair and
    ``[0.7, 1]`` Great.

    :raise DataError: if ``score`` is outside ``[0, 1]``.
    """
    if not 0 <= score <= 1:
        raise DataError("Similarity {!r} outside [0, 1]".format(score))
    if score >= GREAT_THRESHOLD:
        return RankScale.GREAT
    if score >= FAIR_THRESHOLD:
        return RankScale.FAIR
    return RankScale.POOR


def fine_rank_against_reference(test, ref):
    """
    Ranks each break position: the reference's class is Great, an
    adjacent class is Fair, anything further is Poor.

    :returns: ``list`` of ``RankScale``, one per break position.
    :raise DataError: if the word sequences differ.
    """
    _check_words(test, ref)
    ranks = []
    for a, b in zip(test.breaks, ref.breaks):
        distance = abs(a.index - b.index)
        if distance == 0:
            ranks.append(RankScale.GREAT)
        elif distance == 1:
            ranks.append(RankScale.FAIR)
        else:
            ranks.append(RankScale.POOR)
    return ranks


def best_reference(test, refs):
    """
    Returns ``(score, ref)`` of the reference most similar to ``test``;
    the first one wins ties.

    :raise DataError: if ``refs`` is empty.
    """
    refs = list(refs)
    if not refs:
        raise DataError("No reference to compare against", sample_id=test.id)
    best = None
    for ref in refs:
        score = break_similarity(test, ref)
        if best is None or score > best[0]:
            best = (score, ref)
    return best


def best_of_references(test, refs):
    """
    The highest ``break_similarity`` of ``test`` over ``refs``.

    :raise DataError: if ``refs`` is empty.
    """
    return best_reference(test, refs)[0]


class ReferenceSet(object):
    """
    Reference renditions by text id. All references of one text share the
    same word sequence.
    """

    def __init__(self):
        self._references = OrderedDict()

    def add(self, text_id, seq):
        """
        :raise DataError: if ``seq`` has other words than the text's
            existing references.
        """
        existing = self._references.setdefault(str(text_id), [])
        if existing and existing[0].words != seq.words:
            raise DataError(
                "References of text {!r} have different words".format(text_id), sample_id=seq.id
            )
        existing.append(seq)

    def get(self, text_id):
        """
        :raise DataError: if the text has no reference.
        """
        try:
            return list(self._references[str(text_id)])
        except KeyError:
            raise DataError("No reference for text {!r}".format(text_id)) from None

    def __contains__(self, text_id):
        return str(text_id) in self._references

    def __len__(self):
        return len(self._references)

    def text_ids(self):
        return list(self._references)

    @classmethod
    def from_sequences(cls, sequences):
        """
        Builds a set keyed by each sequence's id.
        """
        refs = cls()
        for seq in sequences:
            refs.add(seq.id, seq)
        return refs

    def save(self, path):
        records = (
            {"text_id": text_id, "tokens": seq.to_strings()}
            for text_id, seqs in self._references.items()
            for seq in seqs
        )
        return write_jsonl(path, REFERENCES_FORMAT, records)

    @classmethod
    def load(cls, path):
        """
        Reads a references file, or a token-sequence file whose sequence
        ids are taken as text ids.

        :raise DataError: naming the line of an invalid record.
        """
        if _file_format(path) == TOKENS_FORMAT:
            return cls.from_sequences(read_token_sequences(path))

        _, records = read_jsonl(path, REFERENCES_FORMAT)
        refs = cls()
        for lineno, record in records:
            try:
                text_id = record["text_id"]
                refs.add(text_id, TokenSequence.from_strings(text_id, record["tokens"]))
            except DataError as e:
                raise e.located(filename=str(path), line=lineno)
            except (KeyError, TypeError) as e:
                raise DataError(
                    "Malformed reference record: {!r}".format(e), filename=str(path), line=lineno
                ) from e
        logger.info("Loaded references for %d texts from %s", len(refs), path)
        return refs


def _file_format(path):
    filename = os.fspath(path)
    with open(filename, "r", encoding="utf-8") as f:
        first = f.readline()
    try:
        return json.loads(first).get("format")
    except (ValueError, AttributeError):
        raise FormatVersionError("Missing format header", filename=filename, line=1) from None


class AgainstReferenceAssessor(object):
    """
    Ranks rated samples against their text's references. Samples must
    carry their ``tokens``; references are looked up by ``text_id``
    (falling back to the sample id).

    Needs no training, so ``fit`` only hands out the predictor for the
    cross-validation harness.
    """

    def __init__(self, references):
        self.references = references

    def references_for(self, sample):
        if sample.tokens is None:
            raise DataError("Sample has no tokens to compare", sample_id=sample.id)
        return self.references.get(sample.text_id if sample.text_id is not None else sample.id)

    def similarity(self, sample):
        return best_of_references(sample.tokens, self.references_for(sample))

    def predict_overall(self, sample):
        return rank_from_similarity(self.similarity(sample))

    def predict_finegrained(self, sample):
        """
        Ranks the breaks that survived encoding; a truncated sample gets
        as many ranks as the models predict for it.
        """
        _, ref = best_reference(sample.tokens, self.references_for(sample))
        return fine_rank_against_reference(sample.tokens, ref)[: sample.n_breaks]

    def make_fit(self, task):
        predict = self.predict_overall if task == "overall" else self.predict_finegrained

        def fit(train, fold):
            return predict

        return fit


def alternate_pattern_diagnostics(samples, predict, alternates):
    """
    Counts the samples realized with a valid alternate break pattern, and
    how many of them ``predict`` misranks.

    :param list samples: Rated samples with overall ranks.
    :param predict: ``predict(sample) -> RankScale``.
    :param alternates: Ids of the samples using an alternate pattern.
    :returns: ``OrderedDict`` with ``alternate_items``,
        ``alternate_misranked`` and ``alternate_misranked_as_poor``.
    """
    alternates = set(alternates)
    items = misranked = as_poor = 0
    for s in samples:
        if s.id not in alternates:
            continue
        items += 1
        rank = predict(s)
        if rank != s.overall:
            misranked += 1
            if rank is RankScale.POOR:
                as_poor += 1
    if items:
        logger.info("%d of %d alternate-pattern samples misranked", misranked, items)
    return OrderedDict(
        [
            ("alternate_items", items),
            ("alternate_misranked", misranked),
            ("alternate_misranked_as_poor", as_poor),
        ]
    )
