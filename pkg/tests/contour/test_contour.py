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
"""Tests for rectangles and winding numbers in `starkres.contour`."""

import cmath

import pytest

from starkres.contour import Rectangle, cauchy_derivative, winding_number
from starkres.exceptions import ZeroOnContourError


@pytest.mark.parametrize(
    ("zeros", "rectangle", "expected"),
    [
        ([0.5 + 0.5j], Rectangle(0.0, 1.0, 0.0, 1.0), 1),
        ([0.5 + 0.5j, 0.5 + 0.5j, 0.2 + 0.9j], Rectangle(0.0, 1.0, 0.0, 1.0), 3),
        ([2.0 + 2.0j], Rectangle(0.0, 1.0, 0.0, 1.0), 0),
        ([-3.0 - 1.0j, 3.0 - 1.0j, -2.0j], Rectangle(-4.0, 4.0, -3.0, -0.5), 3),
    ],
)
def test_counts_polynomial_zeros(
    zeros: list[complex], rectangle: Rectangle, expected: int
) -> None:
    """Zeros are counted with multiplicity."""

    def log_f(z: complex) -> complex:
        return sum((cmath.log(z - zero) for zero in zeros), 0j)

    assert winding_number(log_f, rectangle) == expected


def test_counts_zeros_of_huge_functions() -> None:
    """Functions far outside the double range wind through their logarithm."""

    def log_f(z: complex) -> complex:
        return 800.0 + cmath.log(z - (1.0 + 1.0j)) + cmath.log(z - 3.5j)

    assert winding_number(log_f, Rectangle(-2.0, 2.0, 0.5, 4.0)) == 2
    assert winding_number(log_f, Rectangle(-2.0, 2.0, 0.5, 2.0)) == 1


def test_zero_on_contour() -> None:
    """A zero on an edge cannot be wound around."""

    def log_f(z: complex) -> complex:
        return cmath.log(z - 1.0) if z != 1.0 else complex(-float("inf"), 0.0)

    with pytest.raises(ZeroOnContourError):
        winding_number(log_f, Rectangle(0.0, 2.0, 0.0, 1.0))


def test_rectangle_geometry() -> None:
    """Splitting and growing keep the expected corners."""
    box = Rectangle(0.0, 4.0, 1.0, 2.0)
    cells = box.quarters(0.25)
    assert (cells[0].re_max, cells[0].im_max) == (1.0, 1.25)
    assert cells[3].vertices[2] == complex(4.0, 2.0)
    grown = box.inflated(1.0)
    assert (grown.re_min, grown.re_max, grown.im_min, grown.im_max) == (
        -1.0,
        5.0,
        1.0,
        3.0,
    )
    assert box.diameter == pytest.approx(17**0.5)
    assert len(list(box.edges())) == 4
    with pytest.raises(ValueError, match="Degenerate rectangle"):
        Rectangle(1.0, 1.0, 0.0, 1.0)


def test_cauchy_derivative() -> None:
    """The trapezoidal Cauchy integral differentiates entire functions."""
    value, largest = cauchy_derivative(cmath.exp, 0.5 + 0.25j, 0.1, points=16)
    assert abs(value - cmath.exp(0.5 + 0.25j)) <= 1e-12
    assert largest == pytest.approx(abs(cmath.exp(0.6 + 0.25j)), rel=1e-12)
