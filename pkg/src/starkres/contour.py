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
Argument-principle machinery: rectangles and adaptive winding numbers.

Functions are handed over as logarithms, `log f`, on any branch, so values
that overflow in linear scale can still be wound around a contour. Only the
imaginary part matters: each edge is bisected until consecutive samples differ
in argument by less than `pi/4`, and the reduced increments are summed.
"""

__all__ = ["LogFunction", "Rectangle", "cauchy_derivative", "winding_number"]

import cmath
import math
from collections.abc import Callable, Iterator
from dataclasses import dataclass
from typing import Final

from starkres.exceptions import ZeroOnContourError

LogFunction = Callable[[complex], complex]

_MAX_STEP: Final = 0.25 * math.pi
_EDGE_SAMPLES: Final = 8
_MAX_DEPTH: Final = 24
_INTEGER_TOLERANCE: Final = 1.0e-3


@dataclass(frozen=True, slots=True)
class Rectangle:
    """
    A closed axis-parallel rectangle in the complex plane.

    Examples:
        >>> from starkres.contour import Rectangle
        >>> box = Rectangle(0.0, 2.0, 1.0, 2.0)
        >>> box.center, box.contains(1.5 + 1.5j)
        ((1+1.5j), True)
        >>> [cell.re_max for cell in box.quarters()]
        [1.0, 2.0, 1.0, 2.0]
    """

    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self) -> None:
        """Reject degenerate rectangles."""
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            msg = f"Degenerate rectangle {self!r}."
            raise ValueError(msg)

    @property
    def center(self) -> complex:
        """The center point."""
        return complex(
            0.5 * (self.re_min + self.re_max), 0.5 * (self.im_min + self.im_max)
        )

    @property
    def diameter(self) -> float:
        """Length of the diagonal."""
        return math.hypot(self.re_max - self.re_min, self.im_max - self.im_min)

    @property
    def vertices(self) -> tuple[complex, complex, complex, complex]:
        """Corners in counter-clockwise order starting bottom left."""
        return (
            complex(self.re_min, self.im_min),
            complex(self.re_max, self.im_min),
            complex(self.re_max, self.im_max),
            complex(self.re_min, self.im_max),
        )

    def contains(self, z: complex) -> bool:
        """Whether `z` lies in the closed rectangle."""
        return (
            self.re_min <= z.real <= self.re_max
            and self.im_min <= z.imag <= self.im_max
        )

    def quarters(self, fraction: float = 0.5) -> tuple["Rectangle", ...]:
        """
        Split into four cells at the given relative position.

        Args:
            fraction: Relative position of the split in both directions.

        Returns:
            Bottom left, bottom right, top left and top right cells.
        """
        re_mid = self.re_min + fraction * (self.re_max - self.re_min)
        im_mid = self.im_min + fraction * (self.im_max - self.im_min)
        return (
            Rectangle(self.re_min, re_mid, self.im_min, im_mid),
            Rectangle(re_mid, self.re_max, self.im_min, im_mid),
            Rectangle(self.re_min, re_mid, im_mid, self.im_max),
            Rectangle(re_mid, self.re_max, im_mid, self.im_max),
        )

    def inflated(self, amount: float) -> "Rectangle":
        """The rectangle grown by `amount` on every side, keeping `im_min`."""
        return Rectangle(
            self.re_min - amount,
            self.re_max + amount,
            self.im_min,
            self.im_max + amount,
        )

    def edges(self) -> Iterator[tuple[complex, complex]]:
        """The four oriented edges."""
        corners = self.vertices
        for k in range(4):
            yield corners[k], corners[(k + 1) % 4]


def _reduced(step: float) -> float:
    return math.remainder(step, 2.0 * math.pi)


def _edge_increment(
    log_f: LogFunction,
    a: complex,
    b: complex,
    log_a: complex,
    log_b: complex,
    depth: int,
) -> float:
    """Argument increment along `[a, b]`, bisecting until steps are small."""
    step = _reduced(log_b.imag - log_a.imag)
    if abs(step) < _MAX_STEP:
        mid = 0.5 * (a + b)
        log_mid = log_f(mid)
        first = _reduced(log_mid.imag - log_a.imag)
        second = _reduced(log_b.imag - log_mid.imag)
        if abs(first) < _MAX_STEP and abs(second) < _MAX_STEP:
            return first + second
    else:
        mid = 0.5 * (a + b)
        log_mid = log_f(mid)
    if depth >= _MAX_DEPTH or not math.isfinite(log_mid.real):
        msg = (
            f"Argument tracking failed near {mid:.6g}; "
            "a zero lies on or near the contour."
        )
        raise ZeroOnContourError(msg)
    return _edge_increment(log_f, a, mid, log_a, log_mid, depth + 1) + _edge_increment(
        log_f, mid, b, log_mid, log_b, depth + 1
    )


def winding_number(log_f: LogFunction, rectangle: Rectangle) -> int:
    """
    Number of zeros, with multiplicity, of `f` inside a rectangle.

    Args:
        log_f: A logarithm of a function analytic on a neighbourhood of the
            rectangle, on any branch.
        rectangle: The contour.

    Returns:
        The winding number of `f` around the boundary.

    Raises:
        ZeroOnContourError: If a zero sits on or too near the boundary.

    Examples:
        >>> import cmath
        >>> from starkres.contour import Rectangle, winding_number
        >>> log_f = lambda z: cmath.log((z - 1j) * (z - 2j) ** 2)
        >>> winding_number(log_f, Rectangle(-1.0, 1.0, 0.5, 3.0))
        3
        >>> winding_number(log_f, Rectangle(-1.0, 1.0, 0.5, 1.5))
        1
    """
    total = 0.0
    for a, b in rectangle.edges():
        points = [a + (b - a) * k / _EDGE_SAMPLES for k in range(_EDGE_SAMPLES + 1)]
        logs = [log_f(z) for z in points]
        for k in range(_EDGE_SAMPLES):
            total += _edge_increment(
                log_f, points[k], points[k + 1], logs[k], logs[k + 1], 0
            )
    turns = total / (2.0 * math.pi)
    count = round(turns)
    if abs(turns - count) > _INTEGER_TOLERANCE:
        msg = f"Winding {turns:.6f} around {rectangle!r} is not an integer."
        raise ZeroOnContourError(msg, achieved_error=abs(turns - count))
    return int(count)


def cauchy_derivative(
    func: Callable[[complex], complex], z: complex, radius: float, points: int = 4
) -> tuple[complex, float]:
    """
    Derivative of an analytic function by the trapezoidal Cauchy integral.

    Args:
        func: The function.
        z: The point.
        radius: Radius of the circle around `z`.
        points: Number of nodes on the circle.

    Returns:
        The derivative and the largest modulus seen on the circle.

    Examples:
        >>> from starkres.contour import cauchy_derivative
        >>> value, _ = cauchy_derivative(lambda z: z**3, 1.0 + 1.0j, 1e-2)
        >>> abs(value - 3 * (1 + 1j) ** 2) < 1e-12
        True
    """
    roots = [cmath.exp(2j * math.pi * k / points) for k in range(points)]
    values = [func(z + radius * root) for root in roots]
    derivative = sum(
        value / root for value, root in zip(values, roots, strict=True)
    ) / (points * radius)
    return derivative, max(abs(value) for value in values)
