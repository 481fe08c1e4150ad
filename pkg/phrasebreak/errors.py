"""
Exception hierarchy shared by all ``phrasebreak`` packages.

The command-line layer maps these to exit codes: ``ConfigError`` → 1,
``DataError`` (and subclasses) → 2, ``NumericError`` → 3.
"""


class PhraseBreakError(Exception):
    """
    Base class of all errors raised by this package.
    """

    pass


class ConfigError(PhraseBreakError):
    """
    Raised for unknown configuration sections/keys, invalid values
    or invalid command-line combinations.
    """

    pass


class DataError(PhraseBreakError, ValueError):
    """
    Raised if input data is invalid.

    :param str message: What is wrong.
    :param str filename: Optional file the data came from.
    :param int line: Optional 1-based line number within ``filename``.
    :param str sample_id: Optional utterance/sample id concerned.
    """

    def __init__(self, message, filename=None, line=None, sample_id=None):
        super().__init__(message)
        self.message = message
        self.filename = filename
        self.line = line
        self.sample_id = sample_id

    def __str__(self):
        where = []
        if self.filename is not None:
            where.append(str(self.filename))
        if self.line is not None:
            where.append("line {}".format(self.line))
        if self.sample_id is not None:
            where.append("sample {}".format(self.sample_id))
        if where:
            return "{}: {}".format(", ".join(where), self.message)
        return self.message

    def located(self, filename=None, line=None, sample_id=None):
        """
        Fills in any missing location details and returns ``self``, so
        callers further up can re-raise with context.
        """
        if self.filename is None:
            self.filename = filename
        if self.line is None:
            self.line = line
        if self.sample_id is None:
            self.sample_id = sample_id
        return self


class ParseError(DataError):
    """
    Raised for malformed lines in alignment, JSON Lines or vocabulary files.
    """

    pass


class FormatVersionError(DataError):
    """
    Raised if an artifact lacks its format marker or has an unsupported version.
    """

    pass


class VocabularyMismatchError(DataError):
    """
    Raised if encoded ids do not belong to the vocabulary of a checkpoint.
    """

    pass


class CheckpointError(DataError):
    """
    Raised for unreadable checkpoints or checkpoints of the wrong kind.
    """

    pass


class CrossValidationError(DataError):
    """
    Raised if training or evaluating one fold fails. ``fold`` is 0-based.
    """

    def __init__(self, message, fold):
        super().__init__(message)
        self.fold = fold


class NumericError(PhraseBreakError, ArithmeticError):
    """
    Raised if a loss or parameter becomes non-finite during training.
    """

    pass
