"""Error taxonomy shared by the whole package.

Every failure mode that the math can produce has its own class so callers
(and the CLI exit-code mapping) can react precisely.
"""


class QuotDTError(Exception):
    """Base class for all package errors."""


class ZeroWeightError(QuotDTError):
    """A character monomial evaluated to weight zero at the sampled parameters.

    The parameter point is inadmissible; callers are expected to resample.
    """


class NonzeroFixedPartError(QuotDTError):
    """A virtual character has a nonzero constant term.

    Virtual dimension zero means the fixed part must vanish; a violation is an
    internal invariant failure, not a sampling accident.
    """


class ParameterDependenceError(QuotDTError):
    """A quantity that must be parameter independent differed between samples."""


class NonIntegralError(QuotDTError):
    """A localization sum that must be an integer came out non-integral."""


class SingularBasisMatrixError(QuotDTError):
    """The cobordism basis matrix was singular over the rationals."""
