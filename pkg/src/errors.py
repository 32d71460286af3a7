"""
Error types for elliptic rotations

Every error carries a machine-readable ``code`` (printed by the CLI on
stderr) and the process ``exit_code`` the CLI returns for it.
"""


class EllipticRotationError(Exception):
    """
    Base class for all library errors
    """

    code = 'EllipticRotationError'
    exit_code = 2

    def __init__(self, message: str = ''):
        super().__init__(message or self.code)
        self.message = message or self.code

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


# Input validation (exit 2)

class NonPositiveCoefficient(EllipticRotationError):
    code = 'NonPositiveCoefficient'


class DimensionTooSmall(EllipticRotationError):
    code = 'DimensionTooSmall'


class DimensionMismatch(EllipticRotationError):
    code = 'DimensionMismatch'


class ZeroVector(EllipticRotationError):
    code = 'ZeroVector'


class WrongVectorCount(EllipticRotationError):
    code = 'WrongVectorCount'


class NotSkew(EllipticRotationError):
    code = 'NotSkew'


class AxisNotUnit(EllipticRotationError):
    code = 'AxisNotUnit'


class NotARotation(EllipticRotationError):
    code = 'NotARotation'


class HalfTurn(EllipticRotationError):
    code = 'HalfTurn'


class NormMismatch(EllipticRotationError):
    code = 'NormMismatch'


class AntipodalInput(EllipticRotationError):
    code = 'AntipodalInput'


class SpaceMismatch(EllipticRotationError):
    code = 'SpaceMismatch'


class ZeroQuaternion(EllipticRotationError):
    code = 'ZeroQuaternion'


class NotUnit(EllipticRotationError):
    code = 'NotUnit'


class ConfigError(EllipticRotationError):
    code = 'ConfigError'


# Numerical failures (exit 3)

class SingularResolvent(EllipticRotationError):
    code = 'SingularResolvent'
    exit_code = 3


class ResidualAboveTolerance(EllipticRotationError):
    code = 'ResidualAboveTolerance'
    exit_code = 3
