"""Exception types shared across the package.

The CLI maps these onto process exit codes, so user-facing failures should
raise one of them rather than a bare ValueError.
"""


class SarcsiError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(SarcsiError):
    """Bad configuration: malformed file, schema violation, or bad flag value."""


class ParameterError(ConfigError):
    """Physically invalid acquisition parameter (non-positive, inconsistent)."""


class EvanescentOrderError(SarcsiError):
    """The requested diffraction order has no propagating (real-angle) solution."""


class DopplerRangeError(SarcsiError):
    """A Doppler frequency outside the realizable range |f_d| <= 2V/lambda."""


class AliasingError(SarcsiError):
    """Scene extent exceeds the unambiguous extent of the simulation grid."""
