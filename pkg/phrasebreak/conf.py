"""
Provides the ability to define configuration sections with documented defaults.

By subclassing ``Settings`` and creating upper-case class attributes for
each option, you initialize default values for that section. Instances
take lower-case keyword overrides, reject unknown keys and expose the
resolved values as lower-case attributes.

    - ``my_package/settings.py``::

        from phrasebreak.conf import Settings

        class MyConfig(Settings):
            SECTION = 'mine'

            FIRST_OPTION = 'default'
            \"\"\"What the first option does.\"\"\"

            SECOND_OPTION = 2

    - code::

        cfg = MyConfig(first_option='overridden')
        print(cfg.first_option)     # output: 'overridden'
        print(cfg.second_option)    # output: 2
        MyConfig(third_option=1)    # raises ConfigError

``RunConfig`` groups the sections of a whole pipeline run and loads
them from a YAML file, with ``section.key=value`` overrides from the
command line.

Seed derivation
---------------
Every random stream is seeded from the single global ``seed`` via
``derive_seed(seed, purpose)``, which adds the fixed per-purpose offset
from ``SEED_OFFSETS``.
"""
import copy
import logging
import re
from collections import OrderedDict

import yaml

from .errors import ConfigError


logger = logging.getLogger("phrasebreak.conf")


class ConfigLoader(yaml.SafeLoader):
    """
    Safe YAML loader that also reads exponent floats without a dot, eg. ``1e-4``.
    """


ConfigLoader.add_implicit_resolver(
    "tag:yaml.org,2002:float",
    re.compile(r"^[-+]?(?:[0-9][0-9_]*)(?:\.[0-9_]*)?[eE][-+]?[0-9]+$"),
    list("-+0123456789"),
)


SEED_OFFSETS = OrderedDict(
    [
        ("synth.native", 1000),
        ("synth.esl_native", 2000),
        ("synth.esl", 3000),
        ("corruption", 4000),
        ("pretrain", 5000),
        ("finetune", 6000),
        ("eval", 7000),
    ]
)
"""
Offsets added to the global seed for each consumer of randomness.
"""


def derive_seed(seed, purpose, index=0):
    """
    Derives the seed of one random stream from the global seed.

    :param int seed: The global seed.
    :param str purpose: One of the keys of ``SEED_OFFSETS``.
    :param int index: Optional sub-stream number (eg. the fold index).
    """
    try:
        offset = SEED_OFFSETS[purpose]
    except KeyError:
        raise ConfigError('Unknown seed purpose "{}"'.format(purpose)) from None
    return (int(seed) + offset + 97 * int(index)) % (2 ** 63)


class _SettingsMetaclass(type):
    """
    Collects the upper-case class attributes of a ``Settings`` subclass,
    together with those of its bases, as the ordered option defaults.
    """

    def __new__(mcs, name, bases, dct):
        options = OrderedDict()
        for base in bases:
            options.update(getattr(base, "_options", {}))
        for k, v in dct.items():
            if k.isupper() and not k.startswith("_") and k != "SECTION":
                options[k.lower()] = v
        dct["_options"] = options
        return type.__new__(mcs, name, bases, dct)


class Settings(metaclass=_SettingsMetaclass):
    """
    Base class for configuration sections.

    :param overrides: Lower-case option names and their values.
    :raise ConfigError: on unknown options or failed validation.
    """

    SECTION = None

    def __init__(self, **overrides):
        unknown = sorted(set(overrides) - set(self._options))
        if unknown:
            raise ConfigError(
                "Unknown option(s) {} in section \"{}\"".format(
                    ", ".join(unknown), self.SECTION or self.__class__.__name__
                )
            )

        for k, default in self._options.items():
            setattr(self, k, copy.deepcopy(overrides.get(k, default)))

        self.validate()

    def validate(self):
        """
        Checks the resolved values. Override in subclasses and raise
        ``ConfigError`` for invalid settings.
        """
        pass

    def require(self, condition, message):
        if not condition:
            raise ConfigError("[{}] {}".format(self.SECTION or self.__class__.__name__, message))

    def as_dict(self):
        """
        Returns the resolved options as an ordered dict.
        """
        return OrderedDict((k, getattr(self, k)) for k in self._options)

    def replace(self, **overrides):
        """
        Returns a copy with some options changed.
        """
        kw = dict(self.as_dict())
        kw.update(overrides)
        return self.__class__(**kw)

    def __eq__(self, other):
        return self.__class__ is other.__class__ and self.as_dict() == other.as_dict()

    def __repr__(self):
        return "{}({})".format(
            self.__class__.__name__,
            ", ".join("{}={!r}".format(k, v) for k, v in self.as_dict().items()),
        )


def parse_override(text):
    """
    Parses a ``section.key=value`` command-line override. The value is
    read as a YAML scalar, so ``1e-4``, ``true`` and ``[1, 2]`` work.

    :returns: ``(section, key, value)``
    """
    if "=" not in text:
        raise ConfigError('Override "{}" is not of the form section.key=value'.format(text))
    path, raw = text.split("=", 1)
    if "." not in path:
        raise ConfigError('Override "{}" must name a section, eg. pretrain.epochs=3'.format(text))
    section, key = path.strip().split(".", 1)
    try:
        value = yaml.load(raw, Loader=ConfigLoader) if raw.strip() else None
    except yaml.YAMLError as e:
        raise ConfigError('Cannot parse value of override "{}": {}'.format(text, e)) from e
    return section, key, value


class RunConfig:
    """
    All configuration sections of a pipeline run, plus the global seed.

    Sections are looked up as attributes, eg. ``cfg.pretrain.epochs``.

    :param dict data: Nested dict of ``{section: {key: value}}`` and
        an optional top-level ``seed``.
    """

    DEFAULT_SEED = 1234

    def __init__(self, data=None):
        from .corruption.settings import CorruptionConfig
        from .evaluation.settings import EvalConfig
        from .nn.settings import BiLstmConfig, EncoderConfig
        from .synth.settings import SynthConfig
        from .tasks.settings import FinetuneConfig, PretrainConfig

        self.section_classes = OrderedDict(
            [
                ("synth", SynthConfig),
                ("corruption", CorruptionConfig),
                ("encoder", EncoderConfig),
                ("bilstm", BiLstmConfig),
                ("pretrain", PretrainConfig),
                ("finetune", FinetuneConfig),
                ("eval", EvalConfig),
            ]
        )

        data = dict(data or {})
        seed = data.pop("seed", self.DEFAULT_SEED)
        if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
            raise ConfigError("seed must be a non-negative integer, got {!r}".format(seed))
        self.seed = seed

        unknown = sorted(set(data) - set(self.section_classes))
        if unknown:
            raise ConfigError("Unknown configuration section(s): {}".format(", ".join(unknown)))

        self.sections = OrderedDict()
        for name, cls in self.section_classes.items():
            values = data.get(name) or {}
            if not isinstance(values, dict):
                raise ConfigError('Section "{}" must be a mapping'.format(name))
            self.sections[name] = cls(**values)

    def __getattr__(self, name):
        sections = self.__dict__.get("sections")
        if sections is not None and name in sections:
            return sections[name]
        raise AttributeError(name)

    @classmethod
    def load(cls, filename=None, overrides=None, seed=None):
        """
        Loads a YAML configuration file (or the defaults if ``filename`` is
        ``None``) and applies command-line overrides.

        :param str filename: Optional YAML file.
        :param list overrides: Optional list of ``section.key=value`` strings.
        :param int seed: Optional global seed overriding the file's.
        """
        data = {}
        if filename:
            try:
                with open(filename, "r", encoding="utf-8") as f:
                    data = yaml.load(f, Loader=ConfigLoader) or {}
            except OSError as e:
                raise ConfigError("Cannot read config file {}: {}".format(filename, e)) from e
            except yaml.YAMLError as e:
                raise ConfigError("Invalid YAML in {}: {}".format(filename, e)) from e
            if not isinstance(data, dict):
                raise ConfigError("Config file {} must contain a mapping".format(filename))

        for text in overrides or ():
            section, key, value = parse_override(text)
            data.setdefault(section, {})
            if not isinstance(data[section], dict):
                raise ConfigError('Section "{}" must be a mapping'.format(section))
            data[section][key] = value

        if seed is not None:
            data["seed"] = seed

        return cls(data)

    def seed_for(self, purpose, index=0):
        return derive_seed(self.seed, purpose, index)

    def as_dict(self):
        result = OrderedDict([("seed", self.seed)])
        for name, section in self.sections.items():
            result[name] = dict(section.as_dict())
        return result

    def dump(self):
        """
        Returns the resolved configuration as YAML text, sections in fixed order.
        """
        return yaml.safe_dump(
            {k: v for k, v in self.as_dict().items()}, default_flow_style=False, sort_keys=False
        )

    def log_resolved(self):
        logger.info("Resolved configuration:\n%s", self.dump())
