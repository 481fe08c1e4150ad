from ..conf import Settings


class CorruptionConfig(Settings):
    SECTION = "corruption"

    REPLACE_PROB = 0.15
    """
    Probability that each break token of a corrupted copy is replaced.
    """

    COPIES_PER_ORIGINAL = 3
    """
    Number of corruption attempts made per original sequence.
    """

    SEED = None
    """
    Seed of the corruption stream. ``None`` derives it from the global seed.
    """

    def validate(self):
        self.require(
            isinstance(self.replace_prob, (int, float)) and 0 <= self.replace_prob <= 1,
            "replace_prob must be in [0, 1], got {!r}".format(self.replace_prob),
        )
        self.require(
            isinstance(self.copies_per_original, int) and self.copies_per_original >= 0,
            "copies_per_original must be a non-negative integer",
        )
        self.require(
            self.seed is None or (isinstance(self.seed, int) and self.seed >= 0),
            "seed must be a non-negative integer or null",
        )
