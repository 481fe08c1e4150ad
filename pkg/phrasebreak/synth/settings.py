from ..conf import Settings, derive_seed


class SynthConfig(Settings):
    """
    Settings of the synthetic native and learner corpora.
    """

    SECTION = "synth"

    N_SENTENCES = 2000
    """
    Number of native texts in the pretraining corpus.
    """

    PATTERNS_PER_TEXT = 1
    """
    Renditions of each native text, each with independently drawn
    optional breaks.
    """

    WORDS_PER_SENTENCE = [5, 20]
    """
    Inclusive ``[min, max]`` words of one sentence.
    """

    MAX_SENTENCES_PER_TEXT = 2
    """
    A text holds one to this many sentences, separated by ``br3``.
    """

    COMMA_RATE = 0.3
    """
    Probability that two clauses are joined at a comma (``br2``) rather
    than by a bare conjunction (an optional break).
    """

    ALT_PATTERN_RATE = 0.3
    """
    Probability that an optional phrase boundary is read without a break
    (``br0``) instead of its default ``br1``.
    """

    N_ESL = 800
    """
    Number of rated learner samples.
    """

    N_ESL_TEXTS = 200
    """
    Number of distinct texts read by the learners.
    """

    SPURIOUS_RATE = 0.05
    """
    Per phrase-internal gap: probability of a spurious ``br2``/``br3``.
    """

    MISSED_RATE = 0.15
    """
    Per required break: probability that it is dropped to ``br0``.
    """

    WEAK_RATE = 0.25
    """
    Per required ``br2``: probability that it is weakened to ``br1``.
    """

    CLASS_FRACTIONS = [21, 136, 643]
    """
    Relative Poor / Fair / Great counts of the learner samples.
    """

    MAX_ATTEMPTS = 200
    """
    Error-injection attempts per learner sample before the class targets
    are declared unreachable.
    """

    SEED = None
    """
    Seed of the generators. ``None`` derives one stream per corpus from
    the global seed.
    """

    def validate(self):
        for key in ("n_sentences", "patterns_per_text", "n_esl", "n_esl_texts", "max_attempts"):
            value = getattr(self, key)
            self.require(
                isinstance(value, int) and not isinstance(value, bool) and value >= 1,
                "{} must be a positive integer".format(key),
            )
        self.require(
            isinstance(self.max_sentences_per_text, int) and self.max_sentences_per_text >= 1,
            "max_sentences_per_text must be a positive integer",
        )
        self.require(
            isinstance(self.words_per_sentence, (list, tuple))
            and len(self.words_per_sentence) == 2
            and all(isinstance(n, int) for n in self.words_per_sentence)
            and 3 <= self.words_per_sentence[0] <= self.words_per_sentence[1],
            "words_per_sentence must be [min, max] with 3 <= min <= max",
        )
        self.words_per_sentence = list(self.words_per_sentence)
        for key in ("comma_rate", "alt_pattern_rate", "spurious_rate", "missed_rate", "weak_rate"):
            value = getattr(self, key)
            self.require(
                isinstance(value, (int, float)) and 0 <= value <= 1,
                "{} must be in [0, 1], got {!r}".format(key, value),
            )
        self.require(
            isinstance(self.class_fractions, (list, tuple))
            and len(self.class_fractions) == 3
            and all(isinstance(f, (int, float)) and f >= 0 for f in self.class_fractions)
            and sum(self.class_fractions) > 0,
            "class_fractions must be three non-negative numbers, not all zero",
        )
        self.class_fractions = list(self.class_fractions)
        self.require(
            self.seed is None or (isinstance(self.seed, int) and self.seed >= 0),
            "seed must be a non-negative integer or null",
        )

    def seed_for(self, purpose, global_seed):
        """
        The seed of one synthetic stream, derived from ``seed`` when set and
        from the run's global seed otherwise.

        :param str purpose: ``synth.native``, ``synth.esl_native`` or ``synth.esl``.
        """
        return derive_seed(global_seed if self.seed is None else self.seed, purpose)
