import csv

from .base import IReportWriter


class CSVReportWriter(IReportWriter):
    """
    Writes a report in the CSV format.

    This writer expects a string stream, so files must be opened
    in text mode, viz::

        with open(path, 'w', newline='', encoding='utf-8') as f:
    """

    def __init__(self, definition, stream):
        super().__init__(definition, stream)
        self.writer = csv.DictWriter(
            stream, fieldnames=self.definition.list_fields(), extrasaction="ignore"
        )

    def writerow(self, rowdict, styledict=None, rowstyle=None, header=False):
        output = {}
        for col, _, _, text in self._format_cells(rowdict, styledict, rowstyle, header):
            output[col.field_name] = text
        self.writer.writerow(output)
