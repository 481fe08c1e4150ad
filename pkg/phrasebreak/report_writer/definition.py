import re
from collections import namedtuple

from .enums import OutputType
from .formats import DefaultFormatter
from .styles import Style
from .writers.csv import CSVReportWriter
from .writers.excel import ExcelReportWriter
from .writers.html import HTMLReportWriter
from .writers.text import TextReportWriter


ColumnDef = namedtuple("ColumnDef", "index field_name label width colstyle")


class ReportDefinition:
    """
    Defines the columns, styles and data formats of a report table.

    Styles cascade in a similar manner to CSS. Order of precedence is:
    individual cell styles, row styles, column styles and finally the
    default style.

    :param str name: Identifies the table; used as the HTML table id and
        the Excel sheet name.
    :param str title: Optional caption written above the table.
    """

    def __init__(self, name, title=None):
        self.name = name
        self.title = title
        self.empty_style = Style()
        self.default_style = self.empty_style
        self.formatter = DefaultFormatter()
        self.columns = []
        self.column_map = {}

    @property
    def slug(self):
        return re.sub(r"[^a-z0-9]+", "-", self.name.lower()).strip("-") or "report"

    def set_formatter(self, formatter):
        """
        Sets the ``IFormatter`` subclass to use for formatting data
        values in this report.
        """
        self.formatter = formatter

    def set_default_style(self, style):
        self.default_style = style

    def add_column(self, field_name, label=None, width=None, colstyle=None):
        """
        Adds a column to the report.

        :param str field_name: The dict key of this column in the data passed to ``writerow()``.
        :param str label: An optional label to output in the heading row.
        :param int width: An optional 'em' width for this column.
        :param Style colstyle: An optional style to apply to this entire column.
        """
        assert field_name not in self.column_map
        index = len(self.columns)
        colstyle = colstyle or self.empty_style
        self.columns.append(ColumnDef(index, field_name, label or field_name, width, colstyle))
        self.column_map[field_name] = index

    def create_writer(self, stream, output_type):
        """
        Creates an ``IReportWriter`` that writes the report to ``stream``.

        The stream must be opened with the mode of ``output_type.value.file_mode``
        (binary for Excel, text otherwise). It is not closed by the writer.

        :param OutputType output_type: The data format to write the report in.
        """
        if output_type == OutputType.EXCEL:
            return ExcelReportWriter(self, stream)
        elif output_type == OutputType.CSV:
            return CSVReportWriter(self, stream)
        elif output_type == OutputType.HTML:
            return HTMLReportWriter(self, stream)
        elif output_type == OutputType.TEXT:
            return TextReportWriter(self, stream)
        else:
            assert False, "Invalid output type {}".format(output_type)

    def list_fields(self):
        return [c.field_name for c in self.columns]
