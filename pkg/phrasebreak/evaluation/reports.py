"""
Renders cross-validation reports: a summary table of mean(std) metrics,
per-fold values, per-category precision/recall and the pooled confusion
matrix. Several reports (eg. one per model) render side by side.
"""
import io
import json
import logging
from collections import OrderedDict

from .. import report_writer as rw
from ..io import FORMAT_VERSION
from ..system.tempfile import AtomicFile, write_atomic
from ..utils import listify


logger = logging.getLogger("phrasebreak.evaluation")


REPORT_FORMAT = "phrasebreak.report"

EXTENSIONS = OrderedDict(
    [("text", "txt"), ("json", "json"), ("csv", "csv"), ("html", "html"), ("xlsx", "xlsx")]
)

METRIC_STYLE = rw.Style(datatype=rw.DataType.METRIC)
FLOAT_STYLE = rw.Style(datatype=rw.DataType.FLOAT)
INT_STYLE = rw.Style(datatype=rw.DataType.INT)
HEADER_STYLE = rw.Style(bold=True, bgcolor=0xEEEEEE)


class SummaryTable(rw.ReportDefinition):
    def __init__(self):
        super().__init__("summary", title="Metric avg.(std) over folds")
        self.add_column("model", "Model", width=14)
        self.add_column("task", "Task", width=8)
        self.add_column("accuracy", "Accuracy", colstyle=METRIC_STYLE)
        self.add_column("weighted_f1", "Weighted F1", colstyle=METRIC_STYLE)
        self.add_column("macro_f1", "Macro F1", colstyle=METRIC_STYLE)

    @staticmethod
    def rows(reports):
        for r in reports:
            row = {"model": r.model, "task": r.task}
            for name in r.mean:
                row[name] = (r.mean[name], r.std[name])
            yield row


class FoldTable(rw.ReportDefinition):
    def __init__(self):
        super().__init__("folds", title="Per-fold metrics")
        self.add_column("model", "Model", width=14)
        self.add_column("fold", "Fold", colstyle=INT_STYLE)
        self.add_column("accuracy", "Accuracy", colstyle=FLOAT_STYLE)
        self.add_column("weighted_f1", "Weighted F1", colstyle=FLOAT_STYLE)
        self.add_column("macro_f1", "Macro F1", colstyle=FLOAT_STYLE)
        self.add_column("n", "Items", colstyle=INT_STYLE)

    @staticmethod
    def rows(reports):
        for r in reports:
            for i, fold in enumerate(r.folds):
                row = {"model": r.model, "fold": i + 1, "n": fold.confusion.total()}
                row.update(fold.scalars())
                yield row


class CategoryTable(rw.ReportDefinition):
    """
    Precision and recall per rank, one column pair per model.
    """

    def __init__(self, models):
        super().__init__("categories", title="Performance on different categories")
        self.add_column("category", "Category", width=10)
        for i, model in enumerate(models):
            self.add_column("precision_{}".format(i), "{} P".format(model), colstyle=METRIC_STYLE)
            self.add_column("recall_{}".format(i), "{} R".format(model), colstyle=METRIC_STYLE)
        self.add_column("support", "Support", colstyle=INT_STYLE)

    @staticmethod
    def rows(reports):
        tables = [r.per_category() for r in reports]
        for c, first in enumerate(tables[0]):
            row = {"category": first["category"], "support": first["support"]}
            for i, table in enumerate(tables):
                row["precision_{}".format(i)] = table[c]["precision"]
                row["recall_{}".format(i)] = table[c]["recall"]
            yield row


class ConfusionTable(rw.ReportDefinition):
    def __init__(self, report):
        super().__init__(
            "confusion {}".format(report.model),
            title="Pooled confusion matrix of {} (rows true, columns predicted)".format(
                report.model
            ),
        )
        self.add_column("true", "True", width=10)
        for name in report.class_names:
            self.add_column(name, name, colstyle=INT_STYLE)

    @staticmethod
    def rows(report):
        for name, counts in zip(report.class_names, report.confusion.as_lists()):
            row = {"true": name}
            row.update(zip(report.class_names, counts))
            yield row


class DiagnosticsTable(rw.ReportDefinition):
    def __init__(self):
        super().__init__("diagnostics", title="Diagnostics")
        self.add_column("model", "Model", width=14)
        self.add_column("name", "Name", width=28)
        self.add_column("value", "Value", colstyle=INT_STYLE)

    @staticmethod
    def rows(reports):
        for r in reports:
            for name, value in r.extra.items():
                yield {"model": r.model, "name": name, "value": value}


def _tables(reports):
    """
    Yields ``(definition, rows)`` for every table of the report.
    """
    yield SummaryTable(), list(SummaryTable.rows(reports))
    yield FoldTable(), list(FoldTable.rows(reports))
    yield CategoryTable([r.model for r in reports]), list(CategoryTable.rows(reports))
    for r in reports:
        yield ConfusionTable(r), list(ConfusionTable.rows(r))
    diagnostics = list(DiagnosticsTable.rows(reports))
    if diagnostics:
        yield DiagnosticsTable(), diagnostics


def _write_tables(stream, reports, output_type, separator=""):
    for i, (definition, rows) in enumerate(_tables(reports)):
        if i and separator:
            stream.write(separator)
        with definition.create_writer(stream, output_type) as writer:
            writer.writeheader(rowstyle=HEADER_STYLE)
            writer.writerows(rows)


def format_text(reports):
    """
    Returns the plain-text rendering of one or more reports.
    """
    reports = listify(reports)
    stream = io.StringIO()
    _write_tables(stream, reports, rw.OutputType.TEXT, separator="\n")
    return stream.getvalue()


def report_document(reports):
    return OrderedDict(
        [
            ("format", REPORT_FORMAT),
            ("version", FORMAT_VERSION),
            ("reports", [r.as_dict() for r in listify(reports)]),
        ]
    )


def render_report(reports, path_prefix, formats=("text", "json")):
    """
    Writes ``<path_prefix>.<ext>`` for each requested format. Text and
    JSON are always written.

    :param reports: A ``CrossValidationReport`` or a list of them.
    :param str path_prefix: Output path without extension.
    :param formats: Any of ``text``, ``json``, ``csv``, ``html``, ``xlsx``.
    :returns: ``list`` of the paths written.
    """
    reports = listify(reports)
    wanted = set(listify(formats)) | {"text", "json"}
    paths = []
    for fmt, ext in EXTENSIONS.items():
        if fmt not in wanted:
            continue
        path = "{}.{}".format(path_prefix, ext)
        if fmt == "text":
            write_atomic(path, format_text(reports))
        elif fmt == "json":
            write_atomic(path, json.dumps(report_document(reports), indent=2) + "\n")
        elif fmt == "csv":
            with AtomicFile(path, "w") as f:
                _write_tables(f, reports, rw.OutputType.CSV, separator="\n")
        elif fmt == "html":
            with AtomicFile(path, "w") as f:
                rw.write_page_header(f, "Evaluation report")
                _write_tables(f, reports, rw.OutputType.HTML)
                rw.write_page_footer(f)
        elif fmt == "xlsx":
            with AtomicFile(path, "wb") as f:
                workbook = rw.ExcelWorkbook(f)
                _write_tables(workbook, reports, rw.OutputType.EXCEL)
                workbook.save()
        paths.append(path)
        logger.info("Wrote %s report %s", fmt, path)
    return paths
