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
"""Detmap command implementation."""

__all__ = []

from concurrent.futures import ThreadPoolExecutor
from functools import partial
from pathlib import Path

import numpy as np

from starkres._utils._pydantic import _to_np_array
from starkres.artifacts import write_csv
from starkres.cli._cli_command import CliCommand
from starkres.fredholm import QuadratureRule, det_side
from starkres.potential import Potential
from starkres.resonance import log_d_minus_upper, log_d_plus_lower
from starkres.typing import ExitCode, Side


def log_determinant(
    potential: Potential, lam: complex, *, rule: QuadratureRule, side: Side
) -> complex:
    """
    A logarithm of `D_plus` or `D_minus` anywhere in the plane.

    In its own closed half-plane a determinant is computed directly, in the
    other one through its entire extension.

    Args:
        potential: The potential.
        lam: The spectral parameter.
        rule: The quadrature rule.
        side: Which determinant.

    Returns:
        A logarithm of the determinant.

    Examples:
        >>> from starkres.cli._detmap_command import log_determinant
        >>> from starkres.fredholm import build_rule
        >>> from starkres.potential import make_potential
        >>> from starkres.typing import Side
        >>> zero = make_potential({"gamma": 1.0, "form": "zero"})
        >>> log_determinant(zero, 3 - 2j, rule=build_rule(16, 1.0), side=Side.PLUS)
        0j
    """
    lam = complex(lam)
    if potential.vanishes:
        return 0j
    if side is Side.PLUS:
        if lam.imag >= 0.0:
            return det_side(potential, lam, rule, side).log_d
        return log_d_plus_lower(potential, lam, rule)
    if lam.imag <= 0.0:
        return det_side(potential, lam, rule, side).log_d
    return log_d_minus_upper(potential, lam, rule)


class DetmapCommand(CliCommand):
    """
    Map log|D| and arg D of a perturbation determinant over a rectangle.

    The rectangle is given by `--re` and `--im`. Rows of the CSV run over the
    imaginary axis of the grid and, within a row, over the real axis.
    """

    def run(  # type: ignore[override]  # noqa: PLR0913
        self,
        *,
        potential: Path,
        n: int,
        tol: float,
        re_range: str,
        im_range: str,
        points: int,
        side: Side,
        out: Path | None,
        threads: int,
    ) -> ExitCode:
        """
        Execute the determinant map.

        Args:
            potential: The potential descriptor file.
            n: Number of quadrature nodes.
            tol: Tolerance of the resolution check.
            re_range: Real extent of the map.
            im_range: Imaginary extent of the map.
            points: Grid points along each `start:end` range.
            side: Which determinant to map.
            out: The artifact path.
            threads: Worker threads.

        Returns:
            An exit code indicating success or failure.
        """
        config, model, rule = self.prepare(
            potential,
            n=n,
            tol=tol,
            threads=threads,
            out=out,
            re_range=re_range,
            im_range=im_range,
            points=points,
            side=side,
        )
        re_grid = _to_np_array(re_range, points)
        im_grid = _to_np_array(im_range, points)
        re_mesh, im_mesh = np.meshgrid(re_grid, im_grid)
        lambdas = (re_mesh + 1j * im_mesh).ravel()
        if not model.vanishes:
            corner = max(abs(re_grid[0]), abs(re_grid[-1]))
            self.check_resolution(model, config, complex(corner, 0.0))
        evaluate = partial(log_determinant, model, rule=rule, side=side)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            logs = np.array(list(pool.map(evaluate, lambdas)), dtype=np.complex128)
        self.info("Evaluated %s on %d grid points.", side, lambdas.size)
        path = self.artifact_path(out, "detmap.csv")
        write_csv(
            path,
            {
                "re": lambdas.real,
                "im": lambdas.imag,
                "log_abs": logs.real,
                "arg": np.angle(np.exp(1j * logs.imag)),
            },
            config_hash=config.config_hash(),
            n=rule.size,
            extra={"side": side.value},
        )
        self.info("Wrote %s.", path)
        return ExitCode.OKAY
