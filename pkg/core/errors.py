"""
Exception hierarchy for the workbench
"""


class WorkbenchError(Exception):
    """Base class for every error raised by constamax."""


class ConfigError(WorkbenchError):
    """Invalid settings file, environment value or flag."""


class FieldError(WorkbenchError):
    """Bad field parameters, missing modulus or cross-field arithmetic."""


class ProfileError(WorkbenchError):
    """A (q, r, n) setting violates gcd/divisibility or coset-shape preconditions."""


class CodeConstructionError(WorkbenchError):
    """A code cannot be built as requested."""


class FamilyRangeError(CodeConstructionError):
    """Family index outside the range the construction supports."""


class DegenerateCodeError(CodeConstructionError):
    """Construction yields a trivial (k = 0) object."""


class CertificationError(WorkbenchError):
    """A structural precondition of a certificate does not hold."""
