"""
Formatter classes to convert report values into strings.
"""


class IFormatter:
    """
    Interface for report cell value formatting.

    Extend this class to suit your needs and pass it to
    ``ReportDefinition.set_formatter()``.
    """

    def format(self, datatype, v):
        """
        Format the value ``v`` for the given ``datatype``.
        """
        if v is None:
            return ""

        try:
            return getattr(self, datatype.value)(v) if datatype is not None else str(v)
        except (AttributeError, TypeError, ValueError):
            return str(v)

    def format_text(self, v):
        return str(v)

    def format_int(self, v):
        raise NotImplementedError

    def format_float(self, v):
        raise NotImplementedError

    def format_percentage(self, v):
        raise NotImplementedError

    def format_metric(self, v):
        raise NotImplementedError


class DefaultFormatter(IFormatter):
    """
    Default report cell value formatting. Metrics are ``(mean, std)``
    pairs of fractions, shown in percentage points as ``82.5(0.50)``.
    """

    def format_int(self, v):
        return str(int(v))

    def format_float(self, v):
        return "{:.4f}".format(v)

    def format_percentage(self, v):
        return "{:.1f}".format(100 * v)

    def format_metric(self, v):
        mean, std = v
        return "{:.1f}({:.2f})".format(100 * mean, 100 * std)
