"""
radicsum.errors
===============

Exceptions raised by radicsum. Every exception carries the exit code that the
command line interface reports when it is raised.
"""


class RadicsumError(Exception):
    """
    Mixin shared by all radicsum exceptions.
    """
    exit_code = 1


class DomainError(RadicsumError, ValueError):
    """
    An argument lies outside the domain of an operation.
    """
    exit_code = 2


class DomainBoundaryError(DomainError):
    """
    A difference stencil would evaluate phi at r < 1.
    """


class StepUnderflowError(RadicsumError, ArithmeticError):
    """
    The effective step of a difference stencil is too small to be resolved
    in double precision.
    """
    exit_code = 2


class NumericOverflowError(RadicsumError, ArithmeticError):
    """
    A sum or closed-form term exceeds the floating-point range.
    """
    exit_code = 3


class LimitConvergenceError(RadicsumError, ArithmeticError):
    """
    Extrapolation of a limit did not settle within the requested tolerance.
    """
    exit_code = 4

    def __init__(self, message, extrapolants=None):
        super().__init__(message)
        self.extrapolants = list(extrapolants) if extrapolants is not None else []
