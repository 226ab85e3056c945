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
"""Reconstruct command implementation."""

__all__ = []

from concurrent.futures import ThreadPoolExecutor
from functools import partial
from pathlib import Path

import numpy as np

from starkres._utils._pydantic import _to_np_array
from starkres.artifacts import write_csv
from starkres.cli._cli_command import CliCommand
from starkres.cli._resonances_command import resolve_resonances
from starkres.scattering import s_matrix
from starkres.trace_formulas import s_from_resonances
from starkres.typing import ExitCode


class ReconstructCommand(CliCommand):
    """
    Rebuild the scattering matrix from the resonances and compare.

    S is assembled from the resonances within `--radius` and the slope of the
    phase at 0, normalized to 1 at `--anchor`, and written next to the direct
    S on the `--range` grid.
    """

    def run(  # type: ignore[override]  # noqa: PLR0913
        self,
        *,
        potential: Path,
        n: int,
        radius: float,
        lam_range: str,
        points: int,
        anchor: float,
        out: Path | None,
        threads: int,
        no_cache: bool,
    ) -> ExitCode:
        """
        Execute the reconstruction.

        Args:
            potential: The potential descriptor file.
            n: Number of quadrature nodes.
            radius: The search radius, also the truncation radius.
            lam_range: The real interval.
            points: Grid points for a `start:end` range.
            anchor: Real point where S is normalized to 1.
            out: The artifact path.
            threads: Worker threads.
            no_cache: Skip the resonance cache.

        Returns:
            An exit code indicating success or failure.
        """
        config, model, rule = self.prepare(
            potential,
            n=n,
            threads=threads,
            out=out,
            radius=radius,
            lam_range=lam_range,
            points=points,
            anchor=anchor,
        )
        grid = _to_np_array(lam_range, points)
        resonances = resolve_resonances(
            self, config, model, rule, radius=radius, use_cache=not no_cache
        )
        rebuilt = np.array(
            [s_from_resonances(resonances, complex(lam), anchor) for lam in grid],
            dtype=np.complex128,
        )
        with ThreadPoolExecutor(max_workers=threads) as pool:
            samples = list(pool.map(partial(s_matrix, model, rule=rule), grid))
        direct = np.array([sample.s for sample in samples], dtype=np.complex128)
        error = np.abs(rebuilt - direct)
        self.info("max |S_rebuilt - S| = %.3g over %d points.", error.max(), grid.size)
        path = self.artifact_path(out, "reconstruct.csv")
        write_csv(
            path,
            {
                "lambda": grid,
                "rebuilt_re": rebuilt.real,
                "rebuilt_im": rebuilt.imag,
                "direct_re": direct.real,
                "direct_im": direct.imag,
                "error": error,
            },
            config_hash=config.config_hash(),
            n=rule.size,
            extra={"radius": radius, "resonances": resonances.total_multiplicity()},
        )
        self.info("Wrote %s.", path)
        return ExitCode.OKAY
