"""
Extensions to the built-in Enum class for small ordered label sets.

Each member has a ``name`` (the python variable name), a ``key``
(the string used in files and on the command line), an ``index``
(0-based declaration order, used as the class id in models) and a
``value`` holding any remaining declared data.

Members order and compare on ``index``, so ordered scales such as
break classes or ranks sort naturally. Equality with a plain string
compares against the ``key``.

Usage
-----
::

    class Speed(EnumX):
        SLOW = ('slow', 'Slow')
        FAST = ('fast', 'Fast')


    >>> Speed.FAST.key
    'fast'

    >>> Speed.FAST.index
    1

    >>> Speed.FAST.value
    'Fast'

    >>> Speed.SLOW < Speed.FAST
    True

    >>> Speed.from_key('slow')
    <Speed.SLOW: 'Slow'>

    >>> Speed.from_index(1)
    <Speed.FAST: 'Fast'>

    >>> list(Speed.keys())
    ['slow', 'fast']
"""
import enum
import operator
from collections import OrderedDict


class EnumX(enum.Enum):
    def __init__(self, *values):
        if len(values) == 1:
            self.key = self.name
        else:
            self.key = values[0]
            self._value_ = values[1] if len(values) == 2 else values[1:]
        self.index = len(self.__class__._member_names_)

    def as_tuple(self):
        """
        Returns the key-value pair of this enum instance.
        """
        return (self.key, self.value)

    def __hash__(self):
        return super().__hash__()

    def __str__(self):
        return self.key

    def _cmp(self, other, op):
        if self.__class__ is other.__class__:
            return op(self.index, other.index)
        elif isinstance(other, str) and op in (operator.eq, operator.ne):
            return op(self.key, other)
        return NotImplemented

    def __eq__(self, other):
        return self._cmp(other, operator.eq)

    def __ne__(self, other):
        return self._cmp(other, operator.ne)

    def __gt__(self, other):
        return self._cmp(other, operator.gt)

    def __ge__(self, other):
        return self._cmp(other, operator.ge)

    def __lt__(self, other):
        return self._cmp(other, operator.lt)

    def __le__(self, other):
        return self._cmp(other, operator.le)

    @classmethod
    def _get_key_cache(cls):
        if "_key_cache" not in cls.__dict__:
            setattr(cls, "_key_cache", OrderedDict((e.key, e) for e in cls))
        return cls._key_cache

    @classmethod
    def all(cls):
        """
        Returns all key-value pairs as an iterator of tuples.
        """
        return (e.as_tuple() for e in cls)

    @classmethod
    def as_dict(cls):
        """
        Returns the key-value pairs of the enumeration as a dict.
        """
        return dict(cls.all())

    @classmethod
    def keys(cls):
        """
        Returns an iterable of all keys of this enumeration, in declaration order.
        """
        return (e.key for e in cls)

    @classmethod
    def count(cls):
        return len(cls.__members__)

    @classmethod
    def from_key(cls, key):
        """
        Returns the enum instance for the given string key.

        :raise KeyError: if no member has that key.
        """
        keymap = cls._get_key_cache()
        try:
            return keymap[key]
        except KeyError:
            raise KeyError('Key "{}" not found in enum "{}"'.format(key, cls.__name__)) from None

    @classmethod
    def from_index(cls, index):
        """
        Returns the enum instance declared at position ``index``.

        :raise IndexError: if ``index`` is out of range.
        """
        members = list(cls)
        if not 0 <= index < len(members):
            raise IndexError(
                "Index {} out of range for enum \"{}\"".format(index, cls.__name__)
            )
        return members[int(index)]
