from pyexcelerate import Alignment, Color, Fill, Font, Format, Style as ExcelStyle, Workbook

from ..enums import DataType
from ..styles import Style
from .base import IReportWriter


def _to_excel_color(color):
    return Color((color >> 16) & 0xFF, (color >> 8) & 0xFF, color & 0xFF)


class ExcelWorkbook:
    """
    Collects report tables as sheets of one XLSX workbook, written to
    ``stream`` (opened in binary mode) by ``save()``.
    """

    def __init__(self, stream):
        self.stream = stream
        self.workbook = Workbook()
        self.sheet_names = set()

    def new_sheet(self, name):
        name = name[:31]
        base, n = name, 1
        while name in self.sheet_names:
            n += 1
            suffix = " ({})".format(n)
            name = base[: 31 - len(suffix)] + suffix
        self.sheet_names.add(name)
        return self.workbook.new_sheet(name)

    def save(self):
        self.workbook._save(self.stream)


class ExcelReportWriter(IReportWriter):
    """
    Writes a report as one sheet of an Excel workbook.

    ``stream`` is either a binary stream, which then receives a workbook
    holding this single sheet on ``close()``, or an ``ExcelWorkbook`` that
    the caller saves once all its sheets are written.
    """

    def __init__(self, definition, stream):
        super().__init__(definition, stream)
        if isinstance(stream, ExcelWorkbook):
            self.workbook = stream
            self.owns_workbook = False
        else:
            self.workbook = ExcelWorkbook(stream)
            self.owns_workbook = True
        self.sheet = self.workbook.new_sheet(definition.name)
        self.style_cache = {}
        self.rowcount = 0

        if definition.title:
            self.rowcount += 1
            self.sheet.set_cell_value(self.rowcount, 1, definition.title)
            self.sheet.set_cell_style(self.rowcount, 1, ExcelStyle(font=Font(bold=True)))

        for column in definition.columns:
            if column.width is not None:
                self.sheet.set_col_style(column.index + 1, ExcelStyle(size=column.width * 2))

    def writerow(self, rowdict, styledict=None, rowstyle=None, header=False):
        self.rowcount += 1
        for col in self.definition.columns:
            cellstyle = styledict.get(col.field_name) if styledict else None
            value = rowdict.get(col.field_name)
            if header:
                datatype = None
                value = col.label if value is None else value
            else:
                datatype = self._determine_datatype(cellstyle, rowstyle, col.colstyle)
                # metrics are (mean, std) pairs; excel gets the rendered text
                if datatype == DataType.METRIC and value is not None:
                    value = self.definition.formatter.format(datatype, value)
            if value is None:
                continue
            self.sheet.set_cell_value(self.rowcount, col.index + 1, value)

            style = Style.merged(self.definition.default_style, col.colstyle, rowstyle, cellstyle)
            if header:
                style = style.replace(bold=True, datatype=None)
            excel_style = self._get_excel_style(style)
            if excel_style is not None:
                self.sheet.set_cell_style(self.rowcount, col.index + 1, excel_style)

    def close(self, exception_was_raised=False):
        if not exception_was_raised and self.owns_workbook:
            self.workbook.save()

    def _get_excel_style(self, style):
        key = style.key
        if key not in self.style_cache:
            self.style_cache[key] = self._create_excel_style(style)
        return self.style_cache[key]

    def _create_excel_style(self, style):
        s = style.as_dict()
        if not s:
            return None

        result = ExcelStyle()
        number_format = self._number_format(s.get("datatype"))
        if number_format is not None:
            result.format = Format(number_format)

        font_kwargs = {}
        if s.get("bold") is not None:
            font_kwargs["bold"] = s["bold"]
        if s.get("italic") is not None:
            font_kwargs["italic"] = s["italic"]
        if s.get("color") is not None:
            font_kwargs["color"] = _to_excel_color(s["color"])
        if font_kwargs:
            result.font = Font(**font_kwargs)

        if s.get("bgcolor") is not None:
            result.fill = Fill(background=_to_excel_color(s["bgcolor"]))
        if s.get("align") is not None:
            result.alignment = Alignment(horizontal=s["align"].value)
        return result

    def _number_format(self, datatype):
        if datatype == DataType.INT:
            return "0"
        elif datatype == DataType.FLOAT:
            return "0.0000"
        elif datatype == DataType.PERCENTAGE:
            return "0.0%"
        return None
