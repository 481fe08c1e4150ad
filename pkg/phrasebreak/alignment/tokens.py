"""
Word/break token sequences.

An utterance of ``n`` words becomes ``w0, b0, w1, ..., b(n-2), w(n-1)``
where each break ``b_i`` is the ``BreakClass`` of the silence between
``w_i`` and ``w(i+1)``:

======  ==================  ========================
Class   Gap duration        Comment
======  ==================  ========================
br0     (0, 10ms]           No break
br1     (10ms, 50ms]        Slight / Optional break
br2     (50ms, 200ms]       Break
br3     (200ms, +inf)       Long break
======  ==================  ========================

A gap of exactly 0 (abutting or overlapping words) is br0.
"""
import re

from ..datatypes import EnumX
from ..errors import DataError
from ..io import read_jsonl, write_jsonl
from .ctm import TIME_PRECISION, AlignedUtterance


class BreakClass(EnumX):
    """
    The four break token classes. ``value`` is ``(upper_bound, comment)``
    with the upper bound in seconds (inclusive), ``None`` for br3.
    """

    BR0 = ("br0", 0.010, "No break")
    BR1 = ("br1", 0.050, "Slight / Optional break")
    BR2 = ("br2", 0.200, "Break")
    BR3 = ("br3", None, "Long break")

    @property
    def upper_bound(self):
        return self.value[0]

    @property
    def comment(self):
        return self.value[1]


TOKENS_FORMAT = "phrasebreak.tokens"

_NON_WORD_CHARS_RE = re.compile(r"[^\w']+", re.UNICODE)


def inter_word_gaps(utt):
    """
    Returns the ``len(utt) - 1`` silences between adjacent words, in seconds.
    Overlapping words give a gap of 0.
    """
    return [
        round(max(0.0, nxt.start - cur.end), TIME_PRECISION)
        for cur, nxt in zip(utt.words, utt.words[1:])
    ]


def quantize(gap):
    """
    Maps a gap in seconds to its ``BreakClass``. Upper bounds are inclusive.

    :raise DataError: if ``gap`` is negative or NaN.
    """
    if not gap >= 0:
        raise DataError("Gap must be a non-negative duration, got {}".format(gap))
    for cls in BreakClass:
        if cls.upper_bound is None or gap <= cls.upper_bound:
            return cls
    assert False, "unreachable"


def normalize_word(surface):
    """
    Lowercases a word and strips punctuation (apostrophes inside words are kept).
    Returns ``''`` for tokens that are not words, such as ``<eps>`` or ``,``.
    """
    if surface.startswith("<") and surface.endswith(">"):
        return ""
    return _NON_WORD_CHARS_RE.sub("", surface.lower()).strip("'")


class TokenSequence(object):
    """
    A strictly alternating word/break sequence that starts and ends with a word.

    :param str id: The utterance id.
    :param items: Words as ``str`` at even positions, ``BreakClass`` at odd positions.
    :raise DataError: if the alternation is violated.
    """

    def __init__(self, id, items):
        self.id = str(id)
        self.items = tuple(items)
        if len(self.items) % 2 != 1:
            raise DataError(
                "Token sequence must have an odd number of items, found {}".format(
                    len(self.items)
                ),
                sample_id=self.id,
            )
        for pos, item in enumerate(self.items):
            if pos % 2 == 0:
                if not isinstance(item, str) or not item:
                    raise DataError(
                        "Expected a word at position {}, found {!r}".format(pos, item),
                        sample_id=self.id,
                    )
            elif not isinstance(item, BreakClass):
                raise DataError(
                    "Expected a break at position {}, found {!r}".format(pos, item),
                    sample_id=self.id,
                )

    @property
    def words(self):
        return list(self.items[0::2])

    @property
    def breaks(self):
        return list(self.items[1::2])

    def with_breaks(self, breaks, id=None):
        """
        Returns a copy with the same words and the given breaks.
        """
        breaks = list(breaks)
        if len(breaks) != len(self.items) // 2:
            raise DataError(
                "Expected {} breaks, got {}".format(len(self.items) // 2, len(breaks)),
                sample_id=self.id,
            )
        items = list(self.items)
        items[1::2] = breaks
        return TokenSequence(self.id if id is None else id, items)

    def to_strings(self):
        return [str(item) for item in self.items]

    @classmethod
    def from_strings(cls, id, strings):
        """
        Builds a sequence from ``['the', 'br0', 'cat', ...]``.
        """
        items = []
        for pos, s in enumerate(strings):
            if pos % 2 == 1:
                try:
                    items.append(BreakClass.from_key(s))
                except KeyError:
                    raise DataError(
                        "Unknown break token {!r} at position {}".format(s, pos), sample_id=id
                    ) from None
            else:
                items.append(s)
        return cls(id, items)

    def __len__(self):
        return len(self.items)

    def __eq__(self, other):
        return isinstance(other, TokenSequence) and (self.id, self.items) == (
            other.id,
            other.items,
        )

    def __hash__(self):
        return hash((self.id, self.items))

    def __repr__(self):
        return "TokenSequence({!r}, {})".format(self.id, " ".join(self.to_strings()))


def build_sequence(utt):
    """
    Tokenizes an aligned utterance into words and quantized breaks.

    Words are normalized with ``normalize_word``; tokens that normalize
    to nothing (punctuation, ``<eps>``) are dropped and their time becomes
    part of the surrounding gap.

    :raise DataError: if no word remains.
    """
    kept = []
    for w in utt.words:
        surface = normalize_word(w.surface)
        if surface:
            kept.append((surface, w))
    if not kept:
        raise DataError("Utterance has no words after normalization", sample_id=utt.id)

    filtered = AlignedUtterance(utt.id, [w for _, w in kept])
    items = [kept[0][0]]
    for gap, (surface, _) in zip(inter_word_gaps(filtered), kept[1:]):
        items.append(quantize(gap))
        items.append(surface)
    return TokenSequence(utt.id, items)


def write_token_sequences(path, sequences):
    return write_jsonl(
        path, TOKENS_FORMAT, ({"id": s.id, "tokens": s.to_strings()} for s in sequences)
    )


def read_token_sequences(path):
    """
    Reads a token-sequence JSON Lines file written by ``write_token_sequences``.
    """
    _header, records = read_jsonl(path, TOKENS_FORMAT)
    sequences = []
    for lineno, record in records:
        try:
            sequences.append(TokenSequence.from_strings(record["id"], record["tokens"]))
        except KeyError as e:
            raise DataError("Missing field {}".format(e), filename=str(path), line=lineno) from e
        except DataError as e:
            raise e.located(filename=str(path), line=lineno)
    return sequences

