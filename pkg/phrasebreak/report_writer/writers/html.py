import html

from ..enums import DataType
from .base import IReportWriter


PAGE_HEADER = """<!DOCTYPE html>
<html>
<head>
  <meta charset="utf-8"/>
  <title>{}</title>
  <style type="text/css">
    body {{ font-family: Calibri, Helvetica, Arial, sans-serif; font-size: 11pt; }}
  </style>
</head>
<body>
"""

PAGE_FOOTER = """</body>
</html>
"""


def write_page_header(stream, title):
    stream.write(PAGE_HEADER.format(html.escape(title)))


def write_page_footer(stream):
    stream.write(PAGE_FOOTER)


class HTMLReportWriter(IReportWriter):
    """
    Writes a report as an HTML table. Several tables may be written to
    the same stream between ``write_page_header()`` and
    ``write_page_footer()``.

    The table id is derived from the definition name, so equal reports
    render to identical markup.
    """

    def __init__(self, definition, stream):
        super().__init__(definition, stream)
        self.table_id = "pbrw-" + definition.slug
        self.rowcount = 0

        self._write_styles()
        self._write_header()

    def writerow(self, rowdict, styledict=None, rowstyle=None, header=False):
        output = []
        self.rowcount += 1
        rowid = "pbrw-" + str(self.rowcount)

        output.append('    <tr class="{}">'.format(rowid))
        tag = "th" if header else "td"
        for col, cellstyle, datatype, text in self._format_cells(
            rowdict, styledict, rowstyle, header
        ):
            combined = [s for s in (rowstyle, cellstyle) if s is not None]
            css = " ".join(self._css_for_style(s) for s in combined)
            style = ' style="{}"'.format(css) if css else ""
            value = html.escape(text).replace("\n", "<br>")
            output.append("<{}{}>{}</{}>".format(tag, style, value, tag))

        output.append("</tr>\n")
        self.stream.write("".join(output))

    def close(self, exception_was_raised=False):
        if not exception_was_raised:
            self.stream.write("  </tbody>\n</table>\n")

    def _write_styles(self):
        styles = ["#{} {{ border-collapse: collapse; margin-bottom: 1em; }}".format(self.table_id)]
        styles.append(
            "#{0} td, #{0} th {{ border: 1px solid #ddd; padding: 3px 6px; {1} }}".format(
                self.table_id, self._css_for_style(self.definition.default_style)
            )
        )
        for col in self.definition.columns:
            css = self._css_for_style(col.colstyle, col.width)
            if col.colstyle.datatype not in (None, DataType.TEXT):
                css = (css + " text-align: right;").strip()
            if css:
                styles.append(
                    "#{} td:nth-of-type({}) {{ {} }}".format(self.table_id, col.index + 1, css)
                )

        self.stream.write('<style type="text/css">\n{}\n</style>\n'.format("\n".join(styles)))

    def _write_header(self):
        self.stream.write('<table id="{}">\n'.format(self.table_id))
        if self.definition.title:
            title = html.escape(self.definition.title)
            self.stream.write("  <caption>{}</caption>\n".format(title))
        self.stream.write("  <tbody>\n")

    def _css_for_style(self, style=None, width=None):
        css = {}
        s = style.as_dict() if style is not None else {}

        if width is not None:
            css["width"] = "{}em".format(width)
        if s.get("bold") is not None:
            css["font-weight"] = "bold" if s["bold"] else "normal"
        if s.get("italic") is not None:
            css["font-style"] = "italic" if s["italic"] else "normal"
        if s.get("color") is not None:
            css["color"] = "#{:06x}".format(s["color"])
        if s.get("bgcolor") is not None:
            css["background-color"] = "#{:06x}".format(s["bgcolor"])
        if s.get("align") is not None:
            css["text-align"] = s["align"].value

        return " ".join("{}: {};".format(k, v) for k, v in css.items())
