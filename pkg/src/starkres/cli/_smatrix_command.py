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
"""Smatrix command implementation."""

__all__ = []

from concurrent.futures import ThreadPoolExecutor
from functools import partial
from pathlib import Path

import numpy as np

from starkres._utils._pydantic import _to_np_array
from starkres.artifacts import write_csv
from starkres.cli._cli_command import CliCommand
from starkres.scattering import s_matrix
from starkres.typing import ExitCode


class SmatrixCommand(CliCommand):
    """
    Compute the scattering matrix and its Born amplitudes on a real interval.

    Besides S = 1 - 2 pi i (A0 - A1) the CSV holds |S|, which is 1 for an
    exact computation; a departure beyond `--tol` is logged as a warning.
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
        threads: int,
    ) -> ExitCode:
        """
        Execute the scattering matrix computation.

        Args:
            potential: The potential descriptor file.
            n: Number of quadrature nodes.
            tol: Allowed departure from unitarity and from the doubled rule.
            lam_range: The real interval.
            points: Grid points for a `start:end` range.
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
            lam_range=lam_range,
            points=points,
        )
        grid = _to_np_array(lam_range, points)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            samples = list(pool.map(partial(s_matrix, model, rule=rule), grid))
        s = np.array([sample.s for sample in samples], dtype=np.complex128)
        a0 = np.array([sample.a0 for sample in samples], dtype=np.complex128)
        a1 = np.array([sample.a1 for sample in samples], dtype=np.complex128)
        drift = float(np.abs(np.abs(s) - 1.0).max())
        if drift > tol:
            self.warning("max ||S| - 1| = %.3g exceeds the tolerance %g.", drift, tol)
        else:
            self.info("max ||S| - 1| = %.3g.", drift)
        path = self.artifact_path(out, "smatrix.csv")
        write_csv(
            path,
            {
                "lambda": grid,
                "s_re": s.real,
                "s_im": s.imag,
                "s_abs": np.abs(s),
                "a0_re": a0.real,
                "a0_im": a0.imag,
                "a1_re": a1.real,
                "a1_im": a1.imag,
            },
            config_hash=config.config_hash(),
            n=rule.size,
        )
        self.info("Wrote %s.", path)
        return ExitCode.OKAY
