"""
Rated samples for the overall and fine-grained assessment tasks, and
their JSON Lines form::

    {"format": "phrasebreak.rated", "version": 1, "vocab_fingerprint": "..."}
    {"id": "u1", "ids": [2, 9, 4, ...], "break_mask": [false, false, true, ...],
     "overall": 3, "fine": [3, 2, ...], "tokens": ["the", "br0", ...], "text_id": "t1"}

``overall``, ``fine``, ``tokens`` and ``text_id`` are optional.
"""
from ..alignment.tokens import TokenSequence
from ..alignment.vocab import EncodedSequence
from ..datatypes import EnumX
from ..errors import DataError
from ..io import read_jsonl, write_jsonl


RATED_FORMAT = "phrasebreak.rated"


class RankScale(EnumX):
    POOR = ("1", "Poor")
    FAIR = ("2", "Fair")
    GREAT = ("3", "Great")

    @property
    def rank(self):
        return self.index + 1

    @classmethod
    def from_rank(cls, value):
        """
        Parses a rank given as ``1``/``2``/``3`` (int or str).

        :raise DataError: for anything else.
        """
        try:
            return cls.from_key(str(int(value)))
        except (KeyError, TypeError, ValueError):
            raise DataError("Invalid rank {!r}, expected 1, 2 or 3".format(value)) from None


N_RANKS = RankScale.count()


class RatedSample(EncodedSequence):
    """
    An encoded sequence with optional overall and per-break ranks.

    :param RankScale overall: The utterance rank, or ``None``.
    :param list fine: One ``RankScale`` per break position, or ``None``.
    :param TokenSequence tokens: The unencoded sequence, if kept.
    :param str text_id: Id of the text read, used to look up references.
    :raise DataError: if ``fine`` is not aligned to the break positions.
    """

    def __init__(
        self,
        id,
        ids,
        break_mask,
        overall=None,
        fine=None,
        tokens=None,
        text_id=None,
        vocab_fingerprint=None,
    ):
        super().__init__(id, ids, break_mask, vocab_fingerprint)
        self.overall = overall
        self.fine = list(fine) if fine is not None else None
        self.tokens = tokens
        self.text_id = text_id
        if overall is not None and not isinstance(overall, RankScale):
            raise DataError("overall must be a RankScale, got {!r}".format(overall), sample_id=id)
        if self.fine is not None:
            if len(self.fine) != self.n_breaks:
                raise DataError(
                    "{} fine labels for {} break positions".format(len(self.fine), self.n_breaks),
                    sample_id=self.id,
                )
            if not all(isinstance(r, RankScale) for r in self.fine):
                raise DataError("fine labels must be RankScale values", sample_id=self.id)

    @classmethod
    def from_encoded(cls, seq, overall=None, fine=None, tokens=None, text_id=None):
        return cls(
            seq.id, seq.ids, seq.break_mask, overall, fine, tokens, text_id, seq.vocab_fingerprint
        )

    def to_record(self):
        record = {"id": self.id, "ids": self.ids, "break_mask": list(self.break_mask)}
        if self.overall is not None:
            record["overall"] = self.overall.rank
        if self.fine is not None:
            record["fine"] = [r.rank for r in self.fine]
        if self.tokens is not None:
            record["tokens"] = self.tokens.to_strings()
        if self.text_id is not None:
            record["text_id"] = self.text_id
        return record

    @classmethod
    def from_record(cls, record, vocab_fingerprint=None):
        try:
            overall = record.get("overall")
            fine = record.get("fine")
            tokens = record.get("tokens")
            return cls(
                record["id"],
                record["ids"],
                record["break_mask"],
                overall=RankScale.from_rank(overall) if overall is not None else None,
                fine=[RankScale.from_rank(r) for r in fine] if fine is not None else None,
                tokens=TokenSequence.from_strings(record["id"], tokens) if tokens else None,
                text_id=record.get("text_id"),
                vocab_fingerprint=vocab_fingerprint,
            )
        except DataError as e:
            raise e.located(sample_id=record.get("id"))
        except (KeyError, TypeError, ValueError) as e:
            raise DataError("Malformed rated record: {!r}".format(e)) from e

    def __eq__(self, other):
        return (
            super().__eq__(other)
            and isinstance(other, RatedSample)
            and (self.overall, self.fine, self.tokens, self.text_id)
            == (other.overall, other.fine, other.tokens, other.text_id)
        )

    def __repr__(self):
        return "RatedSample({!r}, overall={}, {} breaks)".format(
            self.id, self.overall, self.n_breaks
        )


def write_rated_dataset(path, samples):
    fingerprints = {s.vocab_fingerprint for s in samples}
    fingerprint = fingerprints.pop() if len(fingerprints) == 1 else None
    return write_jsonl(
        path, RATED_FORMAT, (s.to_record() for s in samples), vocab_fingerprint=fingerprint
    )


def read_rated_dataset(path):
    """
    Reads a dataset written by ``write_rated_dataset``.

    :raise DataError: naming the line of any invalid record.
    """
    header, records = read_jsonl(path, RATED_FORMAT)
    fingerprint = header.get("vocab_fingerprint")
    samples = []
    for lineno, record in records:
        try:
            samples.append(RatedSample.from_record(record, fingerprint))
        except DataError as e:
            raise e.located(filename=str(path), line=lineno)
    return samples
