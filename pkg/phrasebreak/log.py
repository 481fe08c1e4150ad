"""
Logging configuration for the ``phrasebreak`` command-line tools.

Every package logs to its own ``phrasebreak.<package>`` logger; this
module only decides where those records go. Configs are plain
``logging.config.dictConfig`` dicts that can be merged with
``logging_dictmerge``.

The level is taken from the ``--verbosity`` option, or failing that
from the ``PHRASEBREAK_LOG_LEVEL`` environment variable.
"""
import copy
import logging
import logging.config
import os


LOG_LEVEL_ENV_VAR = "PHRASEBREAK_LOG_LEVEL"

VERBOSITY_LEVELS = {0: "WARNING", 1: "INFO", 2: "DEBUG", 3: "DEBUG"}

BATCH_LOGGER = "phrasebreak.batches"


def logging_dictmerge(*dicts):
    """
    Merges two or more logging config dicts into a single combined dict
    which can be passed to ``logging.config.dictConfig``.
    """
    result = {}
    for dct in dicts:
        for k, v in dct.items():
            if isinstance(v, dict) and k in result:
                result[k] = logging_dictmerge(result[k], v)
            else:
                result[k] = copy.deepcopy(v)

    return result


ROOT_LOGGER_CONFIG = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "console": {
            "format": "%(asctime)s %(levelname)-7s %(name)s: %(message)s",
            "datefmt": "%H:%M:%S",
        },
    },
    "handlers": {
        "console_always": {
            "level": "DEBUG",
            "class": "logging.StreamHandler",
            "formatter": "console",
            "stream": "ext://sys.stderr",
        },
    },
    "loggers": {
        "phrasebreak": {
            "handlers": ["console_always"],
            "level": "INFO",
            "propagate": False,
        },
    },
}
"""
Prints all ``phrasebreak`` output to stderr, keeping stdout for
command results.
"""


FILE_LOGGER_CONFIG = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "file": {"format": "%(asctime)s %(levelname)-7s %(name)s: %(message)s"},
    },
    "handlers": {
        "logfile": {
            "level": "DEBUG",
            "class": "logging.FileHandler",
            "mode": "w",
            "filename": "phrasebreak.log",
            "formatter": "file",
        },
    },
    "loggers": {
        "phrasebreak": {
            "handlers": ["console_always", "logfile"],
        },
    },
}
"""
Merge this configuration to also write a full log file.
"""


def resolve_level(verbosity=None):
    """
    Returns the level name for the given ``--verbosity`` value, falling back
    to ``PHRASEBREAK_LOG_LEVEL`` and then ``INFO``.
    """
    if verbosity is not None:
        return VERBOSITY_LEVELS.get(int(verbosity), "DEBUG")

    level = os.environ.get(LOG_LEVEL_ENV_VAR, "").strip().upper()
    if level in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        return level
    return "INFO"


def configure_logging(verbosity=None, logfile=None):
    """
    Applies the console (and optionally file) logging configuration.

    :param int verbosity: 0-3, or ``None`` to use the environment variable.
    :param str logfile: Optional path of a full debug log.
    """
    config = ROOT_LOGGER_CONFIG
    if logfile:
        config = logging_dictmerge(config, FILE_LOGGER_CONFIG)
        config["handlers"]["logfile"]["filename"] = logfile

    level = resolve_level(verbosity)
    # per-batch training records only at the highest verbosity
    batch_level = "DEBUG" if verbosity is not None and int(verbosity) >= 3 else "INFO"
    config = logging_dictmerge(
        config,
        {
            "loggers": {
                "phrasebreak": {"level": level},
                BATCH_LOGGER: {"level": batch_level},
            }
        },
    )
    logging.config.dictConfig(config)
