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
"""Count command implementation."""

__all__ = []

from pathlib import Path

import numpy as np

from starkres._utils._pydantic import _to_np_array
from starkres.artifacts import write_csv
from starkres.cli._cli_command import CliCommand
from starkres.cli._resonances_command import resolve_resonances
from starkres.exceptions import DomainError
from starkres.resonance import counting_exponent, counting_function
from starkres.typing import ExitCode


class CountCommand(CliCommand):
    """
    Tabulate the resonance counting function N(r).

    N(r) counts resonances with |lambda| <= r, with multiplicity, over the
    radii of `--grid` (by default `0:RADIUS` with `--points` radii). The
    resonances come from the cache or from a search with `--radius`.
    """

    def run(  # type: ignore[override]  # noqa: PLR0913
        self,
        *,
        potential: Path,
        n: int,
        radius: float,
        grid: str | None,
        points: int,
        out: Path | None,
        threads: int,
        no_cache: bool,
    ) -> ExitCode:
        """
        Execute the count.

        Args:
            potential: The potential descriptor file.
            n: Number of quadrature nodes.
            radius: The search radius.
            grid: Radii at which to count.
            points: Grid points for a `start:end` range.
            out: The artifact path.
            threads: Worker threads.
            no_cache: Skip the resonance cache.

        Returns:
            An exit code indicating success or failure.
        """
        grid_spec = f"0:{radius}" if grid is None else grid
        config, model, rule = self.prepare(
            potential,
            n=n,
            threads=threads,
            out=out,
            radius=radius,
            grid=grid_spec,
            points=points,
        )
        radii = _to_np_array(grid_spec, points)
        resonances = resolve_resonances(
            self, config, model, rule, radius=radius, use_cache=not no_cache
        )
        counts = np.array([counting_function(resonances, r) for r in radii])
        try:
            exponent = counting_exponent(resonances)
        except DomainError as exc:
            self.info("No growth exponent: %s", exc)
        else:
            self.info("log N(r) / log r slope %.4g.", exponent)
        path = self.artifact_path(out, "count.csv")
        write_csv(
            path,
            {"r": radii, "count": counts},
            config_hash=config.config_hash(),
            n=rule.size,
        )
        self.info("Wrote %s.", path)
        return ExitCode.OKAY
