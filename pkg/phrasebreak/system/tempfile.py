"""
Atomic file output.

Artifacts are written to a temporary file in the destination directory
and moved into place with ``os.replace`` only once fully written and
flushed, so readers never see a half-written dataset or checkpoint and
a failed command leaves any previous output untouched.

Usage
-----
::

    from phrasebreak.system.tempfile import AtomicFile

    with AtomicFile('/data/out.jsonl', 'w') as f:
        f.write(...)

    # or, for a single payload:
    write_atomic('/data/model.pbrk', blob)
"""
import logging
import os
from tempfile import NamedTemporaryFile


logger = logging.getLogger("phrasebreak.system")


class AtomicFile(object):
    """
    A file-like context manager writing to ``path`` atomically.

    :param str path: The final destination.
    :param str mode: ``'w'`` (text, utf-8, ``\\n`` newlines) or ``'wb'``.
    """

    def __init__(self, path, mode="w"):
        assert mode in ("w", "wb"), "AtomicFile supports only 'w' and 'wb'"
        self.path = os.fspath(path)
        self.mode = mode
        self._tmpfile = None

    def __enter__(self):
        directory = os.path.dirname(os.path.abspath(self.path))
        os.makedirs(directory, exist_ok=True)
        kwargs = {} if self.mode == "wb" else {"encoding": "utf-8", "newline": "\n"}
        self._tmpfile = NamedTemporaryFile(
            self.mode,
            prefix=".{}.".format(os.path.basename(self.path)),
            suffix=".tmp",
            dir=directory,
            delete=False,
            **kwargs
        )
        return self._tmpfile

    def __exit__(self, exc_type, exc_val, exc_tb):
        name = self._tmpfile.name
        try:
            if exc_type is None:
                self._tmpfile.flush()
                os.fsync(self._tmpfile.fileno())
            self._tmpfile.close()
        finally:
            if exc_type is None:
                os.replace(name, self.path)
                logger.debug("Wrote %s", self.path)
            else:
                try:
                    os.unlink(name)
                except OSError:
                    pass
        return False


def write_atomic(path, data):
    """
    Writes ``data`` (``str`` or ``bytes``) to ``path`` atomically.
    """
    with AtomicFile(path, "wb" if isinstance(data, bytes) else "w") as f:
        f.write(data)
