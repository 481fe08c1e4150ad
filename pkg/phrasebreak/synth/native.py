"""
Native, well-phrased synthetic texts.

A text is one or more sentences built from the closed lexicon. Each gap
between adjacent words is a *site* whose kind fixes the breaks a fluent
reader uses there:

==========  ======================  ==========================
Site        Where                   Breaks
==========  ======================  ==========================
none        inside a phrase         br0
optional    phrase boundary         br1, or br0 as alternate
clause      comma between clauses   br2
sentence    between sentences       br3
==========  ======================  ==========================

The optional sites give every text several valid break patterns.
"""
import logging
import math

import numpy as np

from ..alignment.tokens import BreakClass, TokenSequence
from ..datatypes import EnumX
from ..errors import DataError
from . import lexicon


logger = logging.getLogger("phrasebreak.synth")


class SiteKind(EnumX):
    """
    ``value`` is the site's default (canonical) break.
    """

    NONE = ("none", BreakClass.BR0)
    OPTIONAL = ("optional", BreakClass.BR1)
    CLAUSE = ("clause", BreakClass.BR2)
    SENTENCE = ("sentence", BreakClass.BR3)

    @property
    def default_break(self):
        return self.value


ALTERNATE_BREAK = BreakClass.BR0


def realize_breaks(sites, rng, alt_pattern_rate):
    """
    Draws one fluent rendition of ``sites``. An optional site takes the
    alternate ``br0`` with probability ``alt_pattern_rate``, any other
    site its default break. One number is drawn per optional site.

    :param numpy.random.Generator rng: Advanced by this call.
    :returns: ``list`` of ``BreakClass``.
    """
    breaks = []
    for site in sites:
        if site is SiteKind.OPTIONAL and rng.random() < alt_pattern_rate:
            breaks.append(ALTERNATE_BREAK)
        else:
            breaks.append(site.default_break)
    return breaks


def canonical_breaks(sites):
    return [site.default_break for site in sites]


class SynthSentence(TokenSequence):
    """
    A generated rendition of a text. Besides the tokens it keeps the site
    kind of each break position and the id of the text it renders.

    :param sites: One ``SiteKind`` per break position.
    :param str text_id: Defaults to ``id``.
    :raise DataError: if ``sites`` does not match the break positions.
    """

    def __init__(self, id, items, sites, text_id=None):
        super().__init__(id, items)
        self.sites = tuple(sites)
        self.text_id = self.id if text_id is None else str(text_id)
        if len(self.sites) != len(self.items) // 2:
            raise DataError(
                "{} sites for {} break positions".format(len(self.sites), len(self.items) // 2),
                sample_id=self.id,
            )

    def with_breaks(self, breaks, id=None):
        seq = super().with_breaks(breaks, id)
        return SynthSentence(seq.id, seq.items, self.sites, self.text_id)

    def canonical(self, id=None):
        """
        The rendition with every site at its default break.
        """
        return self.with_breaks(canonical_breaks(self.sites), id)

    @property
    def n_alternates(self):
        return sum(
            1
            for site, brk in zip(self.sites, self.breaks)
            if site is SiteKind.OPTIONAL and brk is ALTERNATE_BREAK
        )


def _pick(rng, words):
    return words[int(rng.integers(len(words)))]


def _noun_phrase(rng, head=()):
    return list(head) + [_pick(rng, lexicon.DETERMINERS), _pick(rng, lexicon.NOUNS)]


def _clause(rng, n_words, conjunction=None):
    # Phrases of exactly n_words words (plus the conjunction); every phrase
    # but a bare verb ends with its noun.
    subject = _noun_phrase(rng)
    verb = [_pick(rng, lexicon.VERBS)]
    phrases = [subject, verb]
    remaining = n_words - 3
    if remaining >= 2:
        verb.extend(_noun_phrase(rng))
        remaining -= 2
    while remaining >= 3:
        phrases.append(_noun_phrase(rng, [_pick(rng, lexicon.PREPOSITIONS)]))
        remaining -= 3
    nominal = [p for p in phrases if len(p) >= 2]
    for _ in range(remaining):
        phrase = nominal[int(rng.integers(len(nominal)))]
        phrase.insert(len(phrase) - 1, _pick(rng, lexicon.ADJECTIVES))
    if conjunction:
        subject.insert(0, conjunction)
    return phrases


def _sentence(rng, n_words, comma_rate):
    n_clauses = max(1, math.ceil((n_words + 1) / 10))
    spare = n_words - (n_clauses - 1) - 3 * n_clauses
    sizes = 3 + rng.multinomial(spare, [1.0 / n_clauses] * n_clauses)

    words, sites = [], []
    for k, size in enumerate(sizes):
        conjunction = None
        if k:
            conjunction = _pick(rng, lexicon.CONJUNCTIONS)
            sites.append(SiteKind.CLAUSE if rng.random() < comma_rate else SiteKind.OPTIONAL)
        for j, phrase in enumerate(_clause(rng, int(size), conjunction)):
            if j:
                sites.append(SiteKind.OPTIONAL)
            sites.extend([SiteKind.NONE] * (len(phrase) - 1))
            words.extend(phrase)
    return words, sites


def generate_text(cfg, rng):
    """
    Generates the words of one text and the site kind of every gap.

    :param SynthConfig cfg: Provides the sentence shape settings.
    :returns: ``(words, sites)`` with ``len(sites) == len(words) - 1``.
    """
    lo, hi = cfg.words_per_sentence
    words, sites = [], []
    for k in range(1 + int(rng.integers(cfg.max_sentences_per_text))):
        sentence_words, sentence_sites = _sentence(
            rng, int(rng.integers(lo, hi + 1)), cfg.comma_rate
        )
        if k:
            sites.append(SiteKind.SENTENCE)
        words.extend(sentence_words)
        sites.extend(sentence_sites)
    return words, sites


def _interleave(words, breaks):
    items = [words[0]]
    for brk, word in zip(breaks, words[1:]):
        items.append(brk)
        items.append(word)
    return items


def generate_native(cfg, seed=0, n_texts=None, patterns_per_text=None, prefix="nat"):
    """
    Generates the native corpus: ``n_texts`` texts, each realized
    ``patterns_per_text`` times with independently drawn optional breaks.

    Ids are ``<prefix>00000``, with a ``-p<k>`` suffix per pattern when
    there are several; ``text_id`` is the unsuffixed id.

    :param SynthConfig cfg: The synthetic corpus settings.
    :param int seed: Seed of the generator.
    :param int n_texts: Defaults to ``cfg.n_sentences``.
    :param int patterns_per_text: Defaults to ``cfg.patterns_per_text``.
    :returns: ``list`` of ``SynthSentence``.
    """
    n_texts = cfg.n_sentences if n_texts is None else n_texts
    patterns = cfg.patterns_per_text if patterns_per_text is None else patterns_per_text
    rng = np.random.Generator(np.random.PCG64(seed))

    corpus = []
    for t in range(n_texts):
        text_id = "{}{:05d}".format(prefix, t)
        words, sites = generate_text(cfg, rng)
        for p in range(patterns):
            breaks = realize_breaks(sites, rng, cfg.alt_pattern_rate)
            id = text_id if patterns == 1 else "{}-p{}".format(text_id, p + 1)
            corpus.append(SynthSentence(id, _interleave(words, breaks), sites, text_id))

    logger.info(
        "Generated %d native sequences from %d texts (%d words)",
        len(corpus),
        n_texts,
        sum(len(s.words) for s in corpus),
    )
    return corpus
