"""
Provides classes to define styled report tables and render them as
plain text, CSV, HTML or Excel.


Dependencies
------------
- PyExcelerate


Usage
-----
::

    from phrasebreak import report_writer as rw

    ROWS = [
        {'model': 'checkpoint', 'accuracy': (0.825, 0.005), 'support': 800},
        {'model': 'bilstm', 'accuracy': (0.781, 0.012), 'support': 800},
    ]


    class ModelTable(rw.ReportDefinition):
        def __init__(self):
            super().__init__('models', title='Overall assessment')
            self.add_column('model', 'Model', width=16)
            self.add_column('accuracy', 'Acc.', colstyle=rw.Style(datatype=rw.DataType.METRIC))
            self.add_column('support', 'N', colstyle=rw.Style(datatype=rw.DataType.INT))


    with open('/tmp/models.txt', 'w', encoding='utf-8') as f:
        with ModelTable().create_writer(f, rw.OutputType.TEXT) as writer:
            writer.writeheader()
            writer.writerows(ROWS)

    # Model       Acc.        N
    # ----------  ----------  ---
    # checkpoint  82.5(0.50)  800
    # bilstm      78.1(1.20)  800


Members
-------
"""
from .definition import ReportDefinition
from .enums import Align, DataType, OutputType
from .formats import DefaultFormatter, IFormatter
from .styles import Style
from .writers.base import IReportWriter
from .writers.excel import ExcelWorkbook
from .writers.html import write_page_footer, write_page_header


__all__ = [
    "Align",
    "DataType",
    "DefaultFormatter",
    "ExcelWorkbook",
    "IFormatter",
    "IReportWriter",
    "OutputType",
    "ReportDefinition",
    "Style",
    "write_page_footer",
    "write_page_header",
]
