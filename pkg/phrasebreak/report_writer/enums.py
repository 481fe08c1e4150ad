from collections import namedtuple
from enum import Enum


class OutputDef(namedtuple("OutputDef", "key extension is_binary")):
    @property
    def file_mode(self):
        return "wb" if self.is_binary else "w"


class OutputType(Enum):
    """
    Enum of output data formats that can be written by the report writer.

    The value of each enum is an ``OutputDef`` object with the attributes
    ``key``, ``extension``, ``is_binary`` and ``file_mode``.
    """

    TEXT = OutputDef("text", "txt", False)
    CSV = OutputDef("csv", "csv", False)
    HTML = OutputDef("html", "html", False)
    EXCEL = OutputDef("xlsx", "xlsx", True)

    @classmethod
    def from_key(cls, key):
        for output_type in cls:
            if output_type.value.key == key:
                return output_type
        raise KeyError('Unknown report format "{}"'.format(key))


class DataType(Enum):
    """
    Enum of data types understood by the report writer & ``IFormatter``.
    """

    TEXT = "format_text"
    INT = "format_int"
    FLOAT = "format_float"
    PERCENTAGE = "format_percentage"
    METRIC = "format_metric"


class Align(Enum):
    """
    Enum of horizontal alignment for ``Style``.
    """

    LEFT = "left"
    CENTER = "center"
    RIGHT = "right"
