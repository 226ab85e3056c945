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
"""Phase command implementation."""

__all__ = []

from pathlib import Path

from starkres._utils._pydantic import _to_np_array
from starkres.artifacts import write_csv
from starkres.cli._cli_command import CliCommand
from starkres.scattering import scattering_phase
from starkres.typing import ExitCode


class PhaseCommand(CliCommand):
    """
    Compute the scattering phase on a real interval.

    The phase (1/pi) arg D_plus(lambda + i0) is unwrapped along the grid
    given by `--range` and `--points` and pinned to the principal value at
    the right end, so the right end must lie in the high-energy regime.
    """

    def run(  # type: ignore[override]  # noqa: PLR0913
        self,
        *,
        potential: Path,
        n: int,
        tol: float,
        lam_range: str,
        points: int,
        out: Path | None,
    ) -> ExitCode:
        """
        Execute the phase computation.

        Args:
            potential: The potential descriptor file.
            n: Number of quadrature nodes.
            tol: Tolerance of the resolution check.
            lam_range: The real interval.
            points: Grid points for a `start:end` range.
            out: The artifact path.

        Returns:
            An exit code indicating success or failure.
        """
        config, model, rule = self.prepare(
            potential, n=n, tol=tol, out=out, lam_range=lam_range, points=points
        )
        grid = _to_np_array(lam_range, points)
        if not model.vanishes:
            self.check_resolution(model, config, complex(grid[-1], 0.0))
        phase = scattering_phase(model, grid, rule)
        self.info(
            "Phase runs from %.6g at %g to %.6g at %g.",
            phase[0],
            grid[0],
            phase[-1],
            grid[-1],
        )
        path = self.artifact_path(out, "phase.csv")
        write_csv(
            path,
            {"lambda": grid, "phase": phase},
            config_hash=config.config_hash(),
            n=rule.size,
        )
        self.info("Wrote %s.", path)
        return ExitCode.OKAY
