"""
Named parameter storage shared by all modules of one model.
"""
import contextlib
from collections import OrderedDict

import numpy as np

from ..errors import NumericError


DTYPE = np.float32


class ModelParams(object):
    """
    An ordered ``name -> array`` mapping with a matching gradient buffer
    per parameter. Modules look their arrays up by name on every call, so
    replacing the arrays (eg. when promoting to ``float64``) is seen by
    all modules.
    """

    def __init__(self):
        self._values = OrderedDict()
        self._grads = OrderedDict()

    def add(self, name, value):
        """
        Registers a new parameter, stored as ``float32``.
        """
        assert name not in self._values, "duplicate parameter {}".format(name)
        value = np.ascontiguousarray(value, dtype=DTYPE)
        self._values[name] = value
        self._grads[name] = np.zeros_like(value)
        return value

    def __getitem__(self, name):
        return self._values[name]

    def __contains__(self, name):
        return name in self._values

    def __iter__(self):
        return iter(self._values)

    def __len__(self):
        return len(self._values)

    def names(self):
        return list(self._values)

    def items(self):
        return self._values.items()

    def grad(self, name):
        return self._grads[name]

    def accumulate(self, name, grad):
        self._grads[name] += grad

    def zero_grad(self):
        for g in self._grads.values():
            g.fill(0)

    def num_values(self):
        return sum(v.size for v in self._values.values())

    def check_finite(self, what="parameter"):
        """
        :raise NumericError: if any parameter holds a NaN or infinity.
        """
        for name, value in self._values.items():
            if not np.all(np.isfinite(value)):
                raise NumericError("Non-finite {} {}".format(what, name))

    def assign(self, name, value):
        """
        Overwrites a parameter in place, keeping its dtype.

        :raise ValueError: on a shape mismatch.
        """
        target = self._values[name]
        value = np.asarray(value)
        if value.shape != target.shape:
            raise ValueError(
                "Shape mismatch for {}: {} != {}".format(name, value.shape, target.shape)
            )
        target[...] = value

    def copy_from(self, other, prefix=""):
        """
        Copies every parameter of ``other`` whose name starts with ``prefix``.
        """
        for name, value in other.items():
            if name.startswith(prefix):
                self.assign(name, value)

    def snapshot(self):
        return OrderedDict((k, v.copy()) for k, v in self._values.items())

    @contextlib.contextmanager
    def promoted(self, dtype):
        """
        Temporarily swaps every parameter (and gradient) for a copy of the
        given dtype. The original arrays are restored on exit, unchanged.
        """
        values, grads = self._values, self._grads
        self._values = OrderedDict((k, v.astype(dtype)) for k, v in values.items())
        self._grads = OrderedDict((k, np.zeros_like(v)) for k, v in self._values.items())
        try:
            yield self
        finally:
            self._values, self._grads = values, grads


def trunc_normal(rng, shape, std=0.02):
    """
    Normal samples with values beyond two standard deviations redrawn.
    """
    out = rng.normal(0.0, std, size=shape)
    bad = np.abs(out) > 2 * std
    while np.any(bad):
        out[bad] = rng.normal(0.0, std, size=int(bad.sum()))
        bad = np.abs(out) > 2 * std
    return out.astype(DTYPE)


def uniform(rng, shape, bound):
    return rng.uniform(-bound, bound, size=shape).astype(DTYPE)
