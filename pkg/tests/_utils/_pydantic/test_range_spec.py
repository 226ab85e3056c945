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
"""Tests for the `RangeSpec` type and its grid helpers."""

import numpy as np
import pytest
from numpy.testing import assert_allclose
from pydantic import TypeAdapter, ValidationError

from starkres._utils._pydantic import RangeSpec, _range_bounds, _to_np_array

_ADAPTER = TypeAdapter(RangeSpec)


@pytest.mark.parametrize(
    "value",
    ["-10:10", " -8:0 ", "1e2:1e2:1e3", ".5:2.5", [0.0, 1.0, 4.0]],
)
def test_valid_specs(value: str | list[float]) -> None:
    """Range strings and explicit lists validate."""
    _ADAPTER.validate_python(value)


@pytest.mark.parametrize("value", ["10", "a:b", "1:2:3:4", "1::2", [1.0]])
def test_invalid_specs(value: str | list[float]) -> None:
    """Single numbers, words and too many parts are rejected."""
    with pytest.raises(ValidationError):
        _ADAPTER.validate_python(value)


@pytest.mark.parametrize("value", ["3:1", "0:0", "1:-1:-5"])
def test_bounds_must_increase(value: str) -> None:
    """Ranges must run from left to right."""
    with pytest.raises(ValueError, match="must be finite and increasing"):
        _range_bounds(value)


@pytest.mark.parametrize(
    ("value", "points", "expected"),
    [
        ("-50:50", 5, [-50.0, -25.0, 0.0, 25.0, 50.0]),
        ("10:5:25", None, [10.0, 15.0, 20.0, 25.0]),
        ("2.5:0.25:3", 99, [2.5, 2.75, 3.0]),
        ("0:1", None, [0.0, 1.0]),
    ],
)
def test_to_np_array(value: str, points: int | None, expected: list[float]) -> None:
    """Two part ranges use `points`, three part ranges their step."""
    grid = _to_np_array(value, points)
    assert grid.dtype == np.float64
    assert_allclose(grid, expected, rtol=0.0, atol=1e-12)
