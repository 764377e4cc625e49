"""Exception hierarchy shared across the pipeline.

The CLI maps these onto exit codes: ConfigError -> 2, DataError -> 3,
anything else -> 4.
"""


class SpeechmarkError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(SpeechmarkError):
    """Invalid configuration value or inconsistent flag combination."""


class DataError(SpeechmarkError):
    """Malformed or contract-violating input data."""


class SchemaError(DataError):
    """A recording document violates the interchange schema.

    Messages name the offending field (and file, when known) so that
    adapter authors can locate the problem without a debugger.
    """


class VocabularyMismatchError(DataError):
    """Score-name vocabulary of an artifact does not match this build."""
