"""
Reading and writing versioned JSON Lines artifacts.
"""
from .utils import (
    FORMAT_VERSION,
    check_header,
    dumps_record,
    read_jsonl,
    write_jsonl,
)


__all__ = [
    "FORMAT_VERSION",
    "check_header",
    "dumps_record",
    "read_jsonl",
    "write_jsonl",
]
