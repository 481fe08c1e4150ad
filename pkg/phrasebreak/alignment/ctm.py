"""
Reading and writing forced-alignment output.

Two line formats are understood:

- Kaldi-style CTM: ``<utt-id> <channel> <start-sec> <dur-sec> <word>``
- TSV fallback: ``<utt-id> <word> <start-sec> <end-sec>``

Lines starting with ``;;`` or ``#`` and blank lines are ignored. Lines
of one utterance must be contiguous and their start times must not
decrease. Times are kept at microsecond resolution.
"""
import io
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor

from ..errors import DataError, ParseError


logger = logging.getLogger("phrasebreak.alignment")


TIME_PRECISION = 6
"""
Number of decimals times are rounded to after arithmetic.
"""

COMMENT_PREFIXES = (";;", "#")


class AlignedWord(object):
    """
    One word with its aligned start and end time in seconds.

    :raise DataError: if the surface is empty or contains whitespace,
        or if the times are negative or reversed.
    """

    __slots__ = ("surface", "start", "end")

    def __init__(self, surface, start, end):
        if not surface or any(c.isspace() for c in surface):
            raise DataError("Word surface must be non-empty and without whitespace")
        if not (start >= 0 and math.isfinite(start)):
            raise DataError("Word start must be a finite non-negative time, got {}".format(start))
        if not (end >= start and math.isfinite(end)):
            raise DataError("Word end {} precedes start {}".format(end, start))
        self.surface = surface.lower()
        self.start = float(start)
        self.end = float(end)

    @property
    def duration(self):
        return round(self.end - self.start, TIME_PRECISION)

    def __eq__(self, other):
        return (
            isinstance(other, AlignedWord)
            and (self.surface, self.start, self.end) == (other.surface, other.start, other.end)
        )

    def __hash__(self):
        return hash((self.surface, self.start, self.end))

    def __repr__(self):
        return "AlignedWord({!r}, {}, {})".format(self.surface, self.start, self.end)


class AlignedUtterance(object):
    """
    An utterance id and its aligned words in time order.

    :raise DataError: if there are no words or start times decrease.
    """

    def __init__(self, id, words):
        self.id = str(id)
        self.words = tuple(words)
        if not self.words:
            raise DataError("Utterance has no words", sample_id=self.id)
        for prev, cur in zip(self.words, self.words[1:]):
            if cur.start < prev.start:
                raise DataError(
                    "Word start times decrease ({} after {})".format(cur.start, prev.start),
                    sample_id=self.id,
                )

    @property
    def duration(self):
        """
        Seconds from the first word's start to the last word's end.
        """
        return round(max(w.end for w in self.words) - self.words[0].start, TIME_PRECISION)

    def __len__(self):
        return len(self.words)

    def __eq__(self, other):
        return isinstance(other, AlignedUtterance) and (self.id, self.words) == (
            other.id,
            other.words,
        )

    def __repr__(self):
        return "AlignedUtterance({!r}, {} words)".format(self.id, len(self.words))


def _parse_time(text, what, filename, lineno):
    try:
        value = float(text)
    except ValueError:
        raise ParseError(
            "Non-numeric {} {!r}".format(what, text), filename=filename, line=lineno
        ) from None
    if not math.isfinite(value):
        raise ParseError("Non-finite {} {!r}".format(what, text), filename=filename, line=lineno)
    return value


class _UtteranceCollector(object):
    """
    Groups parsed words into utterances, enforcing contiguity and
    monotone start times, with errors naming the offending line.
    """

    def __init__(self, filename):
        self.filename = filename
        self.utterances = []
        self.seen = set()
        self.current_id = None
        self.current_words = []

    def add(self, utt_id, surface, start, end, lineno):
        if utt_id != self.current_id:
            self.flush()
            if utt_id in self.seen:
                raise ParseError(
                    "Lines of utterance {!r} are not contiguous".format(utt_id),
                    filename=self.filename,
                    line=lineno,
                )
            self.current_id = utt_id
            self.seen.add(utt_id)
        elif start < self.current_words[-1].start:
            raise ParseError(
                "Non-monotone start time {} in utterance {!r}".format(start, utt_id),
                filename=self.filename,
                line=lineno,
            )

        try:
            self.current_words.append(AlignedWord(surface, start, end))
        except DataError as e:
            raise ParseError(e.message, filename=self.filename, line=lineno) from e

    def flush(self):
        if self.current_words:
            self.utterances.append(AlignedUtterance(self.current_id, self.current_words))
        self.current_words = []

    def finish(self):
        self.flush()
        return self.utterances


def _data_lines(stream):
    for lineno, line in enumerate(stream, start=1):
        line = line.strip()
        if not line or line.startswith(COMMENT_PREFIXES):
            continue
        yield lineno, line.split()


def parse_ctm(stream, filename=None):
    """
    Parses CTM lines into utterances, in order of first appearance.

    :param stream: Iterable of text lines (eg. an open file).
    :param str filename: Optional name used in error messages.
    :returns: ``list`` of ``AlignedUtterance``.
    :raise ParseError: on a wrong field count, non-numeric or negative
        times, non-contiguous utterances or non-monotone start times.
    """
    collector = _UtteranceCollector(filename)
    for lineno, fields in _data_lines(stream):
        if len(fields) != 5:
            raise ParseError(
                "Expected 5 CTM fields, found {}".format(len(fields)),
                filename=filename,
                line=lineno,
            )
        utt_id, _channel, start, dur, word = fields
        start = _parse_time(start, "start time", filename, lineno)
        dur = _parse_time(dur, "duration", filename, lineno)
        if start < 0:
            raise ParseError(
                "Negative start time {}".format(start), filename=filename, line=lineno
            )
        if dur < 0:
            raise ParseError("Negative duration {}".format(dur), filename=filename, line=lineno)
        end = round(start + dur, TIME_PRECISION)
        collector.add(utt_id, word, start, end, lineno)

    return collector.finish()


def parse_tsv(stream, filename=None):
    """
    Parses 4-column ``id word start end`` lines into utterances.

    Same contract and errors as ``parse_ctm``; ``end < start`` is a parse error.
    """
    collector = _UtteranceCollector(filename)
    for lineno, fields in _data_lines(stream):
        if len(fields) != 4:
            raise ParseError(
                "Expected 4 TSV fields, found {}".format(len(fields)),
                filename=filename,
                line=lineno,
            )
        utt_id, word, start, end = fields
        start = _parse_time(start, "start time", filename, lineno)
        end = _parse_time(end, "end time", filename, lineno)
        if start < 0:
            raise ParseError("Negative start time {}".format(start), filename=filename, line=lineno)
        if end < start:
            raise ParseError(
                "Negative duration {}".format(end - start), filename=filename, line=lineno
            )
        collector.add(utt_id, word, start, end, lineno)

    return collector.finish()


PARSERS = {"ctm": parse_ctm, "tsv": parse_tsv}


def detect_format(lines):
    """
    Guesses ``'ctm'`` or ``'tsv'`` from the field count of the first data line.
    Defaults to ``'ctm'`` for empty input.
    """
    for _lineno, fields in _data_lines(lines):
        return "tsv" if len(fields) == 4 else "ctm"
    return "ctm"


def read_alignment(path_or_stream, fmt=None):
    """
    Reads one alignment file or stream.

    :param path_or_stream: A path, or an iterable of text lines.
    :param str fmt: ``'ctm'``, ``'tsv'`` or ``None`` to detect.
    :returns: ``list`` of ``AlignedUtterance``.
    """
    if isinstance(path_or_stream, (str, bytes, os.PathLike)):
        filename = os.fspath(path_or_stream)
        with open(filename, "r", encoding="utf-8") as f:
            lines = f.read().splitlines()
    else:
        filename = getattr(path_or_stream, "name", None)
        lines = list(path_or_stream)

    fmt = fmt or detect_format(lines)
    if fmt not in PARSERS:
        raise DataError('Unknown alignment format "{}"'.format(fmt), filename=filename)
    utterances = PARSERS[fmt](lines, filename=filename)
    logger.debug("Read %d utterances from %s", len(utterances), filename or "<stream>")
    return utterances


def read_alignments(paths, fmt=None, workers=1):
    """
    Reads several alignment files, optionally in parallel, and merges
    their utterances in the order the paths are given.

    :raise DataError: if an utterance id occurs in more than one file.
    """
    paths = list(paths)
    if workers > 1 and len(paths) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_file = list(pool.map(lambda p: read_alignment(p, fmt), paths))
    else:
        per_file = [read_alignment(p, fmt) for p in paths]

    merged = []
    seen = {}
    for path, utterances in zip(paths, per_file):
        for utt in utterances:
            if utt.id in seen:
                raise DataError(
                    "Duplicate utterance id (also in {})".format(seen[utt.id]),
                    filename=os.fspath(path),
                    sample_id=utt.id,
                )
            seen[utt.id] = os.fspath(path)
            merged.append(utt)
    logger.info("Read %d utterances from %d file(s)", len(merged), len(paths))
    return merged


def _format_time(t):
    return "{:.{}f}".format(t, TIME_PRECISION)


def write_ctm(utterances, stream=None):
    """
    Serializes utterances as CTM lines (channel ``1``).

    :returns: The text, if ``stream`` is ``None``.
    """
    out = stream if stream is not None else io.StringIO()
    for utt in utterances:
        for w in utt.words:
            out.write(
                "{} 1 {} {} {}\n".format(
                    utt.id, _format_time(w.start), _format_time(w.duration), w.surface
                )
            )
    if stream is None:
        return out.getvalue()


def write_tsv(utterances, stream=None):
    """
    Serializes utterances as ``id word start end`` lines.

    :returns: The text, if ``stream`` is ``None``.
    """
    out = stream if stream is not None else io.StringIO()
    for utt in utterances:
        for w in utt.words:
            out.write(
                "{}\t{}\t{}\t{}\n".format(
                    utt.id, w.surface, _format_time(w.start), _format_time(w.end)
                )
            )
    if stream is None:
        return out.getvalue()
