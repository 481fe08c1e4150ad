"""
Functions pertaining to artifact IO: versioned JSON Lines files.
"""
import json
import logging
import os

from ..errors import FormatVersionError, ParseError
from ..system.tempfile import AtomicFile


logger = logging.getLogger("phrasebreak.io")


FORMAT_VERSION = 1


def dumps_record(record):
    """
    Serializes one record as a compact single JSON line (no newline).
    Key order is preserved, so equal inputs give byte-identical lines.
    """
    return json.dumps(record, separators=(",", ":"), ensure_ascii=False)


def make_header(format_name, **extra):
    header = {"format": format_name, "version": FORMAT_VERSION}
    header.update(extra)
    return header


def write_jsonl(path, format_name, records, **header_extra):
    """
    Writes a JSON Lines artifact atomically: a header record with
    ``format``/``version`` (and ``header_extra``), then one line per record.

    :returns: The number of records written.
    """
    count = 0
    with AtomicFile(path, "w") as f:
        f.write(dumps_record(make_header(format_name, **header_extra)))
        f.write("\n")
        for record in records:
            f.write(dumps_record(record))
            f.write("\n")
            count += 1
    logger.info("Wrote %d %s records to %s", count, format_name, path)
    return count


def read_jsonl(path, format_name):
    """
    Reads a JSON Lines artifact written by ``write_jsonl``.

    :returns: ``(header, records)`` where ``records`` is a list of
        ``(line_number, dict)`` tuples.
    :raise FormatVersionError: if the header is missing or of another format/version.
    :raise ParseError: on invalid JSON, naming the line.
    """
    filename = os.fspath(path)
    header = None
    records = []
    with open(filename, "r", encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except ValueError as e:
                raise ParseError(
                    "Invalid JSON: {}".format(e), filename=filename, line=lineno
                ) from e
            if not isinstance(obj, dict):
                raise ParseError("Expected a JSON object", filename=filename, line=lineno)

            if header is None:
                check_header(obj, format_name, filename)
                header = obj
            else:
                records.append((lineno, obj))

    if header is None:
        raise FormatVersionError(
            'Empty file, expected a "{}" header'.format(format_name), filename=filename
        )
    return header, records


def check_header(header, format_name, filename=None):
    if header.get("format") != format_name:
        raise FormatVersionError(
            'Expected format "{}", found {!r}'.format(format_name, header.get("format")),
            filename=filename,
            line=1,
        )
    if header.get("version") != FORMAT_VERSION:
        raise FormatVersionError(
            "Unsupported {} version {!r} (expected {})".format(
                format_name, header.get("version"), FORMAT_VERSION
            ),
            filename=filename,
            line=1,
        )
