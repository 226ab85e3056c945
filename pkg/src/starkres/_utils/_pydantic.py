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
Pydantic helpers for grid options.

Range options on the command line (`--re`, `--im`, `--range`, `--grid`) share one
string syntax, `start:end` or `start:step:end`, validated here and expanded to
NumPy grids.
"""

__all__ = ()


import math
from typing import Annotated

import numpy as np
from pydantic import Field, StringConstraints

from starkres.typing import Float64NDArray

_NUMBER = r"[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?"

"""A string specifying a range in the format 'start:end' or 'start:step:end'."""
RangeSpec = (
    Annotated[
        str,
        StringConstraints(
            pattern=rf"^{_NUMBER}(:{_NUMBER}){{1,2}}$", strip_whitespace=True
        ),
    ]
    | Annotated[list[float], Field(min_length=2)]
)


def _range_parts(value: RangeSpec) -> list[float]:
    """
    Split a range specification into its numeric parts.

    Args:
        value: A range specification string or a list of floats.

    Returns:
        The numbers making up the range.

    Examples:
        >>> from starkres._utils._pydantic import _range_parts
        >>> _range_parts("-10:10")
        [-10.0, 10.0]
        >>> _range_parts("1e2:1e2:1e3")
        [100.0, 100.0, 1000.0]
    """
    if isinstance(value, str):
        return [float(part.strip()) for part in value.split(":")]
    return [float(part) for part in value]


def _range_bounds(value: RangeSpec) -> tuple[float, float]:
    """
    Return the first and last number of a range specification.

    Args:
        value: A range specification string or a list of floats.

    Returns:
        The `(start, end)` pair.

    Raises:
        ValueError: If the bounds are not finite or not strictly increasing.

    Examples:
        >>> from starkres._utils._pydantic import _range_bounds
        >>> _range_bounds("-8:0")
        (-8.0, 0.0)
        >>> _range_bounds("3:1")
        Traceback (most recent call last):
            ...
        ValueError: Range '3:1' must be finite and increasing.
    """
    parts = _range_parts(value)
    start, end = parts[0], parts[-1]
    if not (math.isfinite(start) and math.isfinite(end) and end > start):
        msg = f"Range {value!r} must be finite and increasing."
        raise ValueError(msg)
    return start, end


def _to_np_array(value: RangeSpec, points: int | None = None) -> Float64NDArray:
    """
    Convert a range specification to a NumPy grid.

    A two-part string with `points` gives a linear grid with that many points;
    a three-part string uses its middle number as the step. A list of floats is
    taken as the grid itself.

    Args:
        value: A list of floats or a range specification string.
        points: The number of grid points for a `start:end` range.

    Returns:
        A NumPy array of floats.

    Examples:
        >>> from starkres._utils._pydantic import _to_np_array
        >>> _to_np_array("0:1", points=5)
        array([0.  , 0.25, 0.5 , 0.75, 1.  ])
        >>> _to_np_array("0:0.5:2")
        array([0. , 0.5, 1. , 1.5, 2. ])
        >>> _to_np_array([2.0, 3.0])
        array([2., 3.])
    """
    if not isinstance(value, str):
        return np.asarray(value, dtype=np.float64)
    parts = _range_parts(value)
    start, end = parts[0], parts[-1]
    if len(parts) == 3:  # noqa: PLR2004
        step = parts[1]
        return np.arange(start, end + step / 2.0, step, dtype=np.float64)
    return np.linspace(start, end, 2 if points is None else points, dtype=np.float64)
