# starkres: Resonances of the perturbed one-dimensional Stark operator
# Copyright (C) 2026  The starkres developers
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.
"""Exceptions raised by the numerical layers of `starkres`."""

__all__ = [
    "AiryOverflowError",
    "BranchCutError",
    "BranchJumpError",
    "CompletenessError",
    "DomainError",
    "NonConvergenceError",
    "SingularOperatorError",
    "UnderResolutionError",
    "ZeroOnContourError",
]

from starkres.exceptions._starkres_error import StarkresError


class AiryOverflowError(StarkresError, OverflowError):
    """
    An unscaled Airy value would leave the double precision exponent range.

    Callers should switch to the log-scaled evaluation path instead.

    Attributes:
        log_scale: The real part of the logarithm of the offending value.
    """

    def __init__(self, msg: str, log_scale: float) -> None:
        """
        Initialize the overflow error.

        Args:
            msg: The error message.
            log_scale: The real part of the logarithm of the offending value.
        """
        super().__init__(msg)
        self.log_scale = log_scale


class BranchCutError(StarkresError, ValueError):
    """The asymptotic Airy path was forced onto the negative real axis."""


class DomainError(StarkresError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class NonConvergenceError(StarkresError):
    """
    A numerical procedure did not reach its tolerance within its budget.

    Attributes:
        achieved_error: The best error estimate reached, if one is available.
    """

    def __init__(self, msg: str, achieved_error: float | None = None) -> None:
        """
        Initialize the non-convergence error.

        Args:
            msg: The error message.
            achieved_error: The best error estimate reached, if available.
        """
        super().__init__(msg)
        self.achieved_error = achieved_error


class UnderResolutionError(NonConvergenceError):
    """The quadrature rule is too coarse for the requested spectral parameter."""


class ZeroOnContourError(NonConvergenceError):
    """An argument-principle contour passes through or near a zero."""


class SingularOperatorError(StarkresError):
    """The discretized operator `I + Y0` is numerically singular."""


class BranchJumpError(StarkresError):
    """
    Consecutive samples differ in phase by too much to track a branch.

    Attributes:
        index: Position of the sample at which tracking failed.
        jump: The offending phase increment, in radians.
    """

    def __init__(self, msg: str, index: int, jump: float) -> None:
        """
        Initialize the branch jump error.

        Args:
            msg: The error message.
            index: Position of the sample at which tracking failed.
            jump: The offending phase increment, in radians.
        """
        super().__init__(msg)
        self.index = index
        self.jump = jump


class CompletenessError(StarkresError):
    """
    The zeros located in a region do not account for its contour count.

    Attributes:
        expected: The winding number of the certifying contour.
        found: The total multiplicity of the located zeros.
    """

    def __init__(self, msg: str, expected: int, found: int) -> None:
        """
        Initialize the completeness error.

        Args:
            msg: The error message.
            expected: The winding number of the certifying contour.
            found: The total multiplicity of the located zeros.
        """
        super().__init__(msg)
        self.expected = expected
        self.found = found
