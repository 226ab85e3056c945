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
"""Study command implementation."""

__all__ = []

from pathlib import Path
from typing import Final

from starkres._utils._pydantic import _to_np_array
from starkres.artifacts import StudyReport, write_json
from starkres.asymptotics import StudyTolerances, run_study
from starkres.cli._cli_command import CliCommand
from starkres.typing import ClaimId, ExitCode

_DEFAULT_GRIDS: Final = {
    ClaimId.LOGDET: "100:150:1000",
    ClaimId.PHASE: "100:150:1000",
    ClaimId.TRACE: "100:150:1000",
    ClaimId.BORN_EXPANSION: "10:10:60",
    ClaimId.BORN_BOUND: "10:10:60",
    ClaimId.BORN_RAY: "2.5:0.25:4",
    ClaimId.DETERMINANT_RAY: "2.5:0.25:4",
}


class StudyCommand(CliCommand):
    """
    Check one asymptotic claim by a least-squares fit over a parameter grid.

    The grid holds |lambda| for the high-energy and Born claims and t, with
    lambda = t^2 exp(i pi/3), for the ray claims. The report is written either
    way; a failed claim exits with status 1.
    """

    def run(  # type: ignore[override]  # noqa: PLR0913
        self,
        *,
        claim_id: ClaimId,
        potential: Path,
        n: int,
        grid: str | None,
        angle: float | None,
        tolerances: Path | None,
        out: Path | None,
        threads: int,
    ) -> ExitCode:
        """
        Execute the study.

        Args:
            claim_id: The claim.
            potential: The potential descriptor file.
            n: Number of quadrature nodes.
            grid: The parameter grid, a claim specific default if omitted.
            angle: Direction of the ray for the ray based claims.
            tolerances: Tolerance manifest overriding the defaults.
            out: The artifact path.
            threads: Worker threads.

        Returns:
            An exit code indicating success or failure.
        """
        manifest = StudyTolerances.load(tolerances)
        grid_spec = _DEFAULT_GRIDS[claim_id] if grid is None else grid
        config, model, rule = self.prepare(
            potential,
            n=n,
            threads=threads,
            out=out,
            claim_id=claim_id,
            grid=grid_spec,
            angle=angle,
            tolerance=manifest.for_claim(claim_id),
        )
        study = run_study(
            model,
            claim_id,
            _to_np_array(grid_spec).tolist(),
            rule,
            angle=angle,
            tolerances=manifest,
            threads=threads,
        )
        path = self.artifact_path(out, f"study_{claim_id.value}.json")
        write_json(path, StudyReport.from_study(study, config.config_hash(), rule.size))
        self.info("Wrote %s.", path)
        if not study.passed:
            self.error(
                "Claim %s failed: fitted %s against %s within %g.",
                claim_id,
                study.fit.coefficient,
                study.target,
                study.tolerance,
            )
            return ExitCode.GENERAL
        return ExitCode.OKAY
