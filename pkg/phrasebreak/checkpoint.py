"""
The on-disk model checkpoint format.

Layout::

    PBRK1\\n
    <metadata length in bytes, ASCII decimal>\\n
    <metadata: JSON object, sorted keys, ASCII>
    <parameters: little-endian float32, in the order of metadata["params"]>

``metadata["params"]`` lists ``[name, shape]`` pairs. Saving a loaded
checkpoint reproduces the file byte for byte.
"""
import json
import logging
import os
from collections import OrderedDict

import numpy as np

from .errors import CheckpointError
from .system.tempfile import write_atomic


logger = logging.getLogger("phrasebreak.checkpoint")


MAGIC = b"PBRK1\n"

BLOB_DTYPE = np.dtype("<f4")


def _dumps(metadata):
    return json.dumps(metadata, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


class ModelCheckpoint(object):
    """
    Model parameters plus a JSON-serializable metadata dict.

    :param dict metadata: Model kind, configs, vocabulary and any other
        description. The ``params`` key is managed by this class.
    :param params: Mapping of parameter name to array, in blob order.
    """

    def __init__(self, metadata, params):
        self.params = OrderedDict(
            (name, np.array(value, dtype=np.float32)) for name, value in params.items()
        )
        self.metadata = dict(metadata)
        self.metadata["params"] = [[name, list(v.shape)] for name, v in self.params.items()]

    def get(self, key, default=None):
        return self.metadata.get(key, default)

    def __getitem__(self, key):
        try:
            return self.metadata[key]
        except KeyError:
            raise CheckpointError('Checkpoint has no "{}" entry'.format(key)) from None

    def to_bytes(self):
        meta = _dumps(self.metadata).encode("ascii")
        parts = [MAGIC, str(len(meta)).encode("ascii"), b"\n", meta]
        parts.extend(value.astype(BLOB_DTYPE).tobytes() for value in self.params.values())
        return b"".join(parts)

    @classmethod
    def from_bytes(cls, data, filename=None):
        """
        :raise CheckpointError: on a bad magic, a malformed header or a
            parameter blob of the wrong size.
        """
        if not data.startswith(MAGIC):
            raise CheckpointError("Not a phrasebreak checkpoint (bad magic)", filename=filename)
        pos = len(MAGIC)
        newline = data.find(b"\n", pos)
        if newline < 0:
            raise CheckpointError("Truncated checkpoint header", filename=filename)
        try:
            meta_len = int(data[pos:newline].decode("ascii"))
        except (UnicodeDecodeError, ValueError):
            raise CheckpointError("Malformed metadata length", filename=filename) from None
        meta_start = newline + 1
        meta_end = meta_start + meta_len
        if meta_end > len(data):
            raise CheckpointError("Truncated checkpoint metadata", filename=filename)
        try:
            metadata = json.loads(data[meta_start:meta_end].decode("ascii"))
            layout = [(name, tuple(shape)) for name, shape in metadata["params"]]
        except (UnicodeDecodeError, ValueError, KeyError, TypeError) as e:
            raise CheckpointError(
                "Malformed checkpoint metadata: {}".format(e), filename=filename
            ) from e

        expected = sum(int(np.prod(shape)) for _, shape in layout) * BLOB_DTYPE.itemsize
        blob = data[meta_end:]
        if len(blob) != expected:
            raise CheckpointError(
                "Parameter blob has {} bytes, expected {}".format(len(blob), expected),
                filename=filename,
            )

        params = OrderedDict()
        offset = 0
        for name, shape in layout:
            count = int(np.prod(shape))
            values = np.frombuffer(blob, dtype=BLOB_DTYPE, count=count, offset=offset)
            params[name] = values.reshape(shape).astype(np.float32)
            offset += count * BLOB_DTYPE.itemsize
        return cls(metadata, params)

    def save(self, path):
        write_atomic(path, self.to_bytes())
        logger.info("Saved checkpoint %s (%d parameter tensors)", path, len(self.params))

    @classmethod
    def load(cls, path):
        filename = os.fspath(path)
        try:
            with open(filename, "rb") as f:
                data = f.read()
        except OSError as e:
            raise CheckpointError("Cannot read checkpoint: {}".format(e), filename=filename) from e
        return cls.from_bytes(data, filename=filename)

    def __repr__(self):
        return "ModelCheckpoint(task={!r}, backbone={!r}, {} tensors)".format(
            self.metadata.get("task"), self.metadata.get("backbone"), len(self.params)
        )
