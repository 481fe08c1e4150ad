"""
Cell styles of report tables.
"""
import enum


STYLE_KEYS = ("datatype", "bold", "italic", "color", "bgcolor", "align")


class Style(object):
    """
    An immutable set of style settings. Unset settings are left out, so
    that a more specific style only overrides what it sets.

    :param DataType datatype: How values are formatted, see ``IFormatter``.
    :param bool bold:
    :param bool italic:
    :param int color: Font color as 24-bit RGB, eg. ``0x336699``.
    :param int bgcolor: Background color as 24-bit RGB.
    :param Align align: Horizontal alignment.
    """

    def __init__(self, **settings):
        unknown = set(settings) - set(STYLE_KEYS)
        if unknown:
            raise TypeError("Unknown style settings: {}".format(", ".join(sorted(unknown))))
        self._settings = {k: v for k, v in settings.items() if v is not None}
        self.key = frozenset(self._settings.items())

    @property
    def datatype(self):
        return self._settings.get("datatype")

    def get(self, name):
        return self._settings.get(name)

    def as_dict(self):
        return dict(self._settings)

    def replace(self, **settings):
        """
        A copy with ``settings`` changed; ``None`` unsets a setting.
        """
        merged = dict(self._settings, **settings)
        return Style(**merged)

    @classmethod
    def merged(cls, *styles):
        """
        Merges ``styles`` in order, later settings winning. ``None`` entries
        are skipped.
        """
        settings = {}
        for style in styles:
            if style is not None:
                settings.update(style._settings)
        return cls(**settings)

    def __bool__(self):
        return bool(self._settings)

    def __eq__(self, other):
        return isinstance(other, Style) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        parts = []
        for k in STYLE_KEYS:
            if k not in self._settings:
                continue
            v = self._settings[k]
            if k in ("color", "bgcolor"):
                v = "0x{:06x}".format(v)
            elif isinstance(v, enum.Enum):
                v = v.name
            parts.append("{}={}".format(k, v))
        return "Style({})".format(", ".join(parts))
