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
"""
Custom Typing Helpers.

This module centralizes the array aliases and small enumerations shared by the
numerical modules and the CLI, so annotations read the same everywhere and the
string forms used on the command line and in artifacts are parsed in one
place.

Examples:
    >>> from starkres.typing import Complex128NDArray
    >>> Complex128NDArray  # doctest: +ELLIPSIS
    numpy.ndarray[tuple[...], numpy.dtype[numpy.complex128]]
"""

__all__ = [
    "AiryRegime",
    "ClaimId",
    "Complex128NDArray",
    "ExitCode",
    "Float64NDArray",
    "HalfPlane",
    "Side",
]

from enum import IntEnum, StrEnum
from typing import Self

import numpy as np
import numpy.typing as npt

Float64NDArray = npt.NDArray[np.float64]
"""Alias for a NumPy ndarray with float64 data type."""

Complex128NDArray = npt.NDArray[np.complex128]
"""Alias for a NumPy ndarray with complex128 data type."""


class ExitCode(IntEnum):
    """
    Standard process exit codes used by CLI commands.

    Attributes:
        OKAY: Exit code 0, indicating successful execution.
        GENERAL: Exit code 1, indicating a general error.
        MALFORMED_INPUT: Exit code 2, the potential descriptor or the command
            options could not be parsed or validated.
        NON_CONVERGENCE: Exit code 3, a numerical procedure did not converge
            (quadrature budget, branch tracking, singular operators, overflow).
        CERTIFICATION: Exit code 4, the resonance search could not certify
            completeness of the located zeros.
    """

    OKAY = 0
    GENERAL = 1
    MALFORMED_INPUT = 2
    NON_CONVERGENCE = 3
    CERTIFICATION = 4


class _ParsableStrEnum(StrEnum):
    """String enumeration with a `from_string` constructor and nice errors."""

    @classmethod
    def _label(cls) -> str:
        """Human readable name of the enumeration used in error messages."""
        return cls.__name__.lower()

    @classmethod
    def from_string(cls, value: str) -> Self:
        """
        Parse a member from its string form, case-insensitively.

        Args:
            value: The string form of the member.

        Returns:
            The parsed member.

        Raises:
            ValueError: If `value` does not name a member.
        """
        try:
            return cls(value.strip().lower())
        except ValueError as exc:
            choices = ", ".join(sorted(member.value for member in cls))
            msg = f"Unknown {cls._label()} {value!r}; expected one of: {choices}."
            raise ValueError(msg) from exc


class HalfPlane(_ParsableStrEnum):
    """
    Half of the complex spectral plane a kernel is evaluated for.

    Examples:
        >>> from starkres.typing import HalfPlane
        >>> HalfPlane.from_string("upper")
        <HalfPlane.UPPER: 'upper'>
        >>> HalfPlane.UPPER.conjugate
        <HalfPlane.LOWER: 'lower'>
        >>> HalfPlane.from_string("left")
        Traceback (most recent call last):
            ...
        ValueError: Unknown half plane 'left'; expected one of: lower, upper.
    """

    UPPER = "upper"
    LOWER = "lower"

    @classmethod
    def _label(cls) -> str:
        return "half plane"

    @property
    def conjugate(self) -> "HalfPlane":
        """The mirror image of this half-plane under complex conjugation."""
        return HalfPlane.LOWER if self is HalfPlane.UPPER else HalfPlane.UPPER

    @classmethod
    def of(cls, value: complex) -> "HalfPlane | None":
        """
        The half-plane a spectral parameter lies in, `None` on the real axis.

        Args:
            value: The spectral parameter.

        Returns:
            The open half-plane containing `value`, or `None` if it is real.

        Examples:
            >>> from starkres.typing import HalfPlane
            >>> HalfPlane.of(1 + 2j)
            <HalfPlane.UPPER: 'upper'>
            >>> HalfPlane.of(3.0) is None
            True
        """
        imag = complex(value).imag
        if imag > 0.0:
            return cls.UPPER
        if imag < 0.0:
            return cls.LOWER
        return None


class Side(_ParsableStrEnum):
    """
    Which perturbation determinant, plus or minus, is meant.

    Examples:
        >>> from starkres.typing import Side
        >>> Side.PLUS.half_plane
        <HalfPlane.UPPER: 'upper'>
        >>> Side.from_string("MINUS")
        <Side.MINUS: 'minus'>
    """

    PLUS = "plus"
    MINUS = "minus"

    @property
    def half_plane(self) -> HalfPlane:
        """The half-plane in which this determinant is defined directly."""
        return HalfPlane.UPPER if self is Side.PLUS else HalfPlane.LOWER


class AiryRegime(_ParsableStrEnum):
    """
    Evaluation path that produced an Airy function value.

    Attributes:
        SERIES: Maclaurin two-series solution inside the crossover disc.
        TAYLOR: Taylor re-expansion of the Airy equation along a ray, used on
            the annulus between the Maclaurin disc and the asymptotic circle.
        ASYMPTOTIC: Large-argument expansion in the sector |arg z| <= 2pi/3.
        CONNECTION: Large-argument expansion routed through the rotated
            arguments of the connection formula, near the negative real axis.
    """

    SERIES = "series"
    TAYLOR = "taylor"
    ASYMPTOTIC = "asymptotic"
    CONNECTION = "connection"

    @classmethod
    def _label(cls) -> str:
        return "Airy regime"


class ClaimId(_ParsableStrEnum):
    """
    Identifiers of the asymptotic claims checked by `starkres.asymptotics`.

    Attributes:
        LOGDET: High-energy law of the plus log-determinant.
        PHASE: High-energy law of the scattering phase on the positive axis.
        TRACE: High-energy law of the trace of the sandwiched free resolvent.
        BORN_EXPANSION: Leading term of the Born amplitude away from the
            positive axis.
        BORN_BOUND: Growth bound of the Born amplitude near the positive axis.
        BORN_RAY: Leading term of the Born amplitude on the growth ray
            arg = pi/3.
        DETERMINANT_RAY: Order 3/2, type 4/3 growth of the minus determinant on
            the growth ray.

    Examples:
        >>> from starkres.typing import ClaimId
        >>> [claim.value for claim in ClaimId]  # doctest: +NORMALIZE_WHITESPACE
        ['logdet', 'phase', 'trace', 'born_expansion', 'born_bound',
         'born_ray', 'determinant_ray']
        >>> ClaimId.from_string("Determinant_Ray")
        <ClaimId.DETERMINANT_RAY: 'determinant_ray'>
    """

    LOGDET = "logdet"
    PHASE = "phase"
    TRACE = "trace"
    BORN_EXPANSION = "born_expansion"
    BORN_BOUND = "born_bound"
    BORN_RAY = "born_ray"
    DETERMINANT_RAY = "determinant_ray"

    @classmethod
    def _label(cls) -> str:
        return "claim id"
