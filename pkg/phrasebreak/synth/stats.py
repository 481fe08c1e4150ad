"""
Corpus statistics: clips, words, break classes and rank counts.
"""
import io
from collections import OrderedDict

from .. import report_writer as rw
from ..alignment.tokens import BreakClass, TokenSequence
from ..tasks.samples import RankScale


class CorpusStats(object):
    def __init__(self):
        self.clips = 0
        self.words = 0
        self.breaks = OrderedDict((cls.key, 0) for cls in BreakClass)
        self.overall = OrderedDict((rank.value, 0) for rank in RankScale)
        self.fine = OrderedDict((rank.value, 0) for rank in RankScale)
        self.duration = None

    def add(self, item):
        """
        Counts one ``TokenSequence``, ``AlignedUtterance`` or encoded
        (optionally rated) sample.
        """
        self.clips += 1
        tokens = item if isinstance(item, TokenSequence) else getattr(item, "tokens", None)
        if tokens is not None:
            self.words += len(tokens.words)
            breaks = tokens.breaks
        elif hasattr(item, "break_mask"):
            breaks = item.breaks()
            self.words += len(item.ids) - 1 - len(breaks)
        else:
            breaks = []
            self.words += len(getattr(item, "words", ()))
        for brk in breaks:
            self.breaks[brk.key] += 1

        overall = getattr(item, "overall", None)
        if overall is not None:
            self.overall[overall.value] += 1
        for rank in getattr(item, "fine", None) or ():
            self.fine[rank.value] += 1

        duration = getattr(item, "duration", None)
        if duration is not None:
            self.duration = (self.duration or 0.0) + duration

    def as_rows(self):
        """
        Returns ``[(label, value), ...]``; rank rows only when ranks were
        counted, the duration only when known.
        """
        rows = [("Clips", self.clips), ("Words", self.words)]
        rows.extend((key, n) for key, n in self.breaks.items())
        if any(self.overall.values()):
            rows.extend(("Overall {}".format(k), n) for k, n in self.overall.items())
        if any(self.fine.values()):
            rows.extend(("Break {}".format(k), n) for k, n in self.fine.items())
        if self.duration is not None:
            rows.append(("Duration (h)", round(self.duration / 3600.0, 2)))
        return rows

    def as_dict(self):
        return OrderedDict(
            [
                ("clips", self.clips),
                ("words", self.words),
                ("breaks", dict(self.breaks)),
                ("overall", dict(self.overall)),
                ("fine", dict(self.fine)),
                ("duration", self.duration),
            ]
        )


def corpus_stats(corpus):
    """
    :param corpus: Iterable of token sequences, aligned utterances or samples.
    :rtype: CorpusStats
    """
    stats = CorpusStats()
    for item in corpus:
        stats.add(item)
    return stats


class StatsTable(rw.ReportDefinition):
    def __init__(self, title):
        super().__init__("stats", title=title)
        self.add_column("name", "", width=16)
        self.add_column("value", "Value", width=10)


def format_stats(stats, title="Corpus statistics"):
    """
    Renders ``stats`` as a plain-text table.
    """
    stream = io.StringIO()
    with StatsTable(title).create_writer(stream, rw.OutputType.TEXT) as writer:
        writer.writeheader()
        writer.writerows({"name": name, "value": value} for name, value in stats.as_rows())
    return stream.getvalue()
