"""
Additional data types such as ordered enumerations.
"""
from .enumx import EnumX


__all__ = ["EnumX"]
