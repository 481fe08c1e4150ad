"""
System tools such as atomic file output.
"""
from .tempfile import AtomicFile, write_atomic


__all__ = ["AtomicFile", "write_atomic"]
