from ..enums import DataType
from .base import IReportWriter


class TextReportWriter(IReportWriter):
    """
    Writes a report as a plain-text table with aligned columns. Numeric
    columns are right-aligned. Rows are buffered until ``close()``.
    """

    def __init__(self, definition, stream):
        super().__init__(definition, stream)
        self.rows = []

    def writerow(self, rowdict, styledict=None, rowstyle=None, header=False):
        cells = []
        for col, _, datatype, text in self._format_cells(rowdict, styledict, rowstyle, header):
            right = datatype not in (None, DataType.TEXT)
            cells.append((text, right))
        self.rows.append((cells, header))

    def close(self, exception_was_raised=False):
        if exception_was_raised:
            return
        widths = [0] * len(self.definition.columns)
        for cells, _ in self.rows:
            for i, (text, _) in enumerate(cells):
                widths[i] = max(widths[i], len(text))

        if self.definition.title:
            self.stream.write(self.definition.title + "\n")
        for cells, header in self.rows:
            line = "  ".join(
                text.rjust(widths[i]) if right else text.ljust(widths[i])
                for i, (text, right) in enumerate(cells)
            )
            self.stream.write(line.rstrip() + "\n")
            if header:
                self.stream.write("  ".join("-" * w for w in widths) + "\n")
