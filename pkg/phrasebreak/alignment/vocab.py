"""
Whole-word vocabulary and sequence encoding.

Ids ``0..7`` are reserved (``[PAD] [UNK] [CLS] [SEP] [BR0] .. [BR3]``);
corpus words follow from id 8 in order of descending frequency, ties
broken lexicographically.

The text form is one header line ``#phrasebreak.vocab<TAB>1`` followed
by ``<id><TAB><token><TAB><count>`` for every id, reserved ones included
(with count 0).
"""
import hashlib
import io
import logging
from collections import Counter, OrderedDict

from ..errors import DataError, FormatVersionError, ParseError
from ..io import FORMAT_VERSION
from .tokens import BreakClass


logger = logging.getLogger("phrasebreak.alignment")


PAD_ID = 0
UNK_ID = 1
CLS_ID = 2
SEP_ID = 3
BREAK_BASE_ID = 4
FIRST_WORD_ID = 8

RESERVED_TOKENS = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[BR0]", "[BR1]", "[BR2]", "[BR3]"]

VOCAB_FORMAT = "phrasebreak.vocab"

DEFAULT_MAX_LEN = 128


def break_id(cls):
    return BREAK_BASE_ID + cls.index


def break_class_of(token_id):
    """
    Returns the ``BreakClass`` of a break id, or ``None`` for any other id.
    """
    if BREAK_BASE_ID <= token_id < FIRST_WORD_ID:
        return BreakClass.from_index(token_id - BREAK_BASE_ID)
    return None


class Vocabulary(object):
    """
    Maps words to ids. Build one with ``build_vocab`` or ``Vocabulary.load``.

    :param words: Iterable of ``(word, count)`` in id order, starting at id 8.
    """

    def __init__(self, words=()):
        self._tokens = list(RESERVED_TOKENS)
        self._counts = [0] * len(RESERVED_TOKENS)
        self._ids = OrderedDict()
        self._fingerprint = None
        for word, count in words:
            if word in self._ids or word in RESERVED_TOKENS:
                raise DataError("Duplicate vocabulary entry {!r}".format(word))
            self._ids[word] = len(self._tokens)
            self._tokens.append(word)
            self._counts.append(int(count))

    def __len__(self):
        return len(self._tokens)

    @property
    def size(self):
        return len(self._tokens)

    def __contains__(self, word):
        return word in self._ids

    def word_id(self, word):
        return self._ids.get(word, UNK_ID)

    def token(self, token_id):
        return self._tokens[token_id]

    def count(self, word):
        token_id = self._ids.get(word)
        return 0 if token_id is None else self._counts[token_id]

    def decode(self, ids):
        """
        Returns the tokens for ``ids``, eg. ``['[CLS]', 'the', '[BR0]', 'cat']``.
        """
        return [self._tokens[i] if 0 <= i < len(self._tokens) else "[UNK]" for i in ids]

    def save(self, stream=None):
        """
        Writes the text form to ``stream``, or returns it if ``stream`` is ``None``.
        """
        out = stream if stream is not None else io.StringIO()
        out.write("#{}\t{}\n".format(VOCAB_FORMAT, FORMAT_VERSION))
        for token_id, (token, count) in enumerate(zip(self._tokens, self._counts)):
            out.write("{}\t{}\t{}\n".format(token_id, token, count))
        if stream is None:
            return out.getvalue()

    @classmethod
    def load(cls, stream, filename=None):
        """
        Reads the text form written by ``save``.

        :raise FormatVersionError: on a missing or unsupported header.
        :raise ParseError: on malformed lines or out-of-order ids.
        """
        lines = iter(enumerate(stream, start=1))
        try:
            _, header = next(lines)
        except StopIteration:
            raise FormatVersionError("Empty vocabulary file", filename=filename) from None
        if header.rstrip("\r\n") != "#{}\t{}".format(VOCAB_FORMAT, FORMAT_VERSION):
            raise FormatVersionError(
                "Expected a {} version {} header".format(VOCAB_FORMAT, FORMAT_VERSION),
                filename=filename,
                line=1,
            )

        words = []
        expected_id = 0
        for lineno, line in lines:
            line = line.rstrip("\r\n")
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) != 3:
                raise ParseError(
                    "Expected 3 tab-separated fields, found {}".format(len(fields)),
                    filename=filename,
                    line=lineno,
                )
            try:
                token_id, count = int(fields[0]), int(fields[2])
            except ValueError:
                raise ParseError(
                    "Non-integer id or count", filename=filename, line=lineno
                ) from None
            if token_id != expected_id:
                raise ParseError(
                    "Expected id {}, found {}".format(expected_id, token_id),
                    filename=filename,
                    line=lineno,
                )
            if token_id < FIRST_WORD_ID:
                if fields[1] != RESERVED_TOKENS[token_id]:
                    raise ParseError(
                        "Reserved id {} must be {}".format(token_id, RESERVED_TOKENS[token_id]),
                        filename=filename,
                        line=lineno,
                    )
            else:
                words.append((fields[1], count))
            expected_id += 1

        if expected_id < FIRST_WORD_ID:
            raise ParseError("Vocabulary is missing reserved tokens", filename=filename)
        return cls(words)

    @classmethod
    def load_file(cls, path):
        with open(path, "r", encoding="utf-8") as f:
            return cls.load(f, filename=str(path))

    def fingerprint(self):
        """
        Returns the first 16 hex digits of the SHA-256 of the text form.
        """
        if self._fingerprint is None:
            digest = hashlib.sha256(self.save().encode("utf-8")).hexdigest()
            self._fingerprint = digest[:16]
        return self._fingerprint

    def __eq__(self, other):
        return (
            isinstance(other, Vocabulary)
            and self._tokens == other._tokens
            and self._counts == other._counts
        )

    def __repr__(self):
        return "Vocabulary({} tokens)".format(len(self))


def build_vocab(corpus, min_count=1):
    """
    Builds a vocabulary from the words of ``corpus``.

    :param corpus: Iterable of ``TokenSequence``.
    :param int min_count: Words seen fewer times are left out (they encode as ``[UNK]``).
    :raise DataError: if the corpus is empty or ``min_count < 1``.
    """
    if min_count < 1:
        raise DataError("min_count must be at least 1, got {}".format(min_count))
    counts = Counter()
    n_sequences = 0
    for seq in corpus:
        counts.update(seq.words)
        n_sequences += 1
    if not n_sequences:
        raise DataError("Cannot build a vocabulary from an empty corpus")

    kept = sorted(
        ((w, c) for w, c in counts.items() if c >= min_count), key=lambda wc: (-wc[1], wc[0])
    )
    vocab = Vocabulary(kept)
    logger.info(
        "Built vocabulary of %d words (%d distinct, min_count=%d) from %d sequences",
        len(kept),
        len(counts),
        min_count,
        n_sequences,
    )
    return vocab


class EncodedSequence(object):
    """
    Token ids starting with ``[CLS]`` and the parallel break-position mask.

    :param str id: The sample id.
    :param ids: ``list`` of ``int``.
    :param break_mask: ``list`` of ``bool``, ``True`` exactly at break ids.
    :param str vocab_fingerprint: The fingerprint of the vocabulary used, if known.
    """

    def __init__(self, id, ids, break_mask, vocab_fingerprint=None):
        self.id = str(id)
        self.ids = [int(i) for i in ids]
        self.break_mask = [bool(m) for m in break_mask]
        self.vocab_fingerprint = vocab_fingerprint
        if len(self.ids) != len(self.break_mask):
            raise DataError(
                "ids and break_mask lengths differ ({} != {})".format(
                    len(self.ids), len(self.break_mask)
                ),
                sample_id=self.id,
            )
        for token_id, is_break in zip(self.ids, self.break_mask):
            if is_break != (break_class_of(token_id) is not None):
                raise DataError("break_mask is inconsistent with ids", sample_id=self.id)

    @property
    def break_positions(self):
        return [pos for pos, is_break in enumerate(self.break_mask) if is_break]

    @property
    def n_breaks(self):
        return sum(self.break_mask)

    def breaks(self):
        """
        Returns the ``BreakClass`` at each break position.
        """
        return [break_class_of(self.ids[pos]) for pos in self.break_positions]

    def with_ids(self, ids, id=None):
        return EncodedSequence(
            self.id if id is None else id, ids, self.break_mask, self.vocab_fingerprint
        )

    def __len__(self):
        return len(self.ids)

    def __eq__(self, other):
        return isinstance(other, EncodedSequence) and (
            self.id,
            self.ids,
            self.break_mask,
            self.vocab_fingerprint,
        ) == (other.id, other.ids, other.break_mask, other.vocab_fingerprint)

    def __repr__(self):
        return "EncodedSequence({!r}, {} ids)".format(self.id, len(self.ids))


def encode(seq, vocab, max_len=DEFAULT_MAX_LEN):
    """
    Encodes a ``TokenSequence`` as ``[CLS]`` followed by word and break ids,
    truncated to ``max_len``. No ``[SEP]`` is appended.

    :raise DataError: if ``max_len < 2``.
    """
    if max_len < 2:
        raise DataError("max_len must be at least 2, got {}".format(max_len))
    ids = [CLS_ID]
    mask = [False]
    for item in seq.items[: max_len - 1]:
        if isinstance(item, BreakClass):
            ids.append(break_id(item))
            mask.append(True)
        else:
            ids.append(vocab.word_id(item))
            mask.append(False)
    return EncodedSequence(seq.id, ids, mask, vocab.fingerprint())
