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
"""Trace-check command implementation."""

__all__ = []

import math
from pathlib import Path

import numpy as np

from starkres._utils._pydantic import _to_np_array
from starkres.artifacts import (
    ComplexValue,
    TraceCheckReport,
    TraceRadiusEntry,
    write_json,
)
from starkres.cli._cli_command import CliCommand
from starkres.cli._resonances_command import resolve_resonances
from starkres.exceptions import DomainError
from starkres.fredholm import logdet_prime
from starkres.potential import v0_integral
from starkres.scattering import phase_derivative, trace_integrals
from starkres.trace_formulas import (
    breit_wigner_phase,
    p_from_trace_formula,
    trace_formula_residual,
)
from starkres.typing import ExitCode, Side


class TraceCheckCommand(CliCommand):
    """
    Check the trace formulas against a resonance set.

    The report holds the trace formula residual at `--at` for each
    truncation radius of `--grid` (by default five radii up to `--radius`),
    direct and resonance based phase derivatives on the `--breit-wigner`
    grid, the constant p against its recovery from three sample points and against
    the phase slope at 0, and the high-energy trace integrals up to
    `--cutoff`.
    """

    def run(  # type: ignore[override]  # noqa: PLR0913
        self,
        *,
        potential: Path,
        n: int,
        radius: float,
        grid: str | None,
        at: complex,
        breit_wigner: str,
        cutoff: float,
        out: Path | None,
        threads: int,
        no_cache: bool,
    ) -> ExitCode:
        """
        Execute the trace formula checks.

        Args:
            potential: The potential descriptor file.
            n: Number of quadrature nodes.
            radius: The search radius.
            grid: Truncation radii, at most `radius`.
            at: Upper half-plane point of the trace formula check.
            breit_wigner: Real grid of the Breit-Wigner comparison.
            cutoff: Half length of the trace integrals.
            out: The artifact path.
            threads: Worker threads.
            no_cache: Skip the resonance cache.

        Returns:
            An exit code indicating success or failure.

        Raises:
            DomainError: If `at` is not in the upper half-plane or a
                truncation radius exceeds the search radius.
        """
        grid_spec = f"{0.4 * radius}:{0.15 * radius}:{radius}" if grid is None else grid
        config, model, rule = self.prepare(
            potential,
            n=n,
            threads=threads,
            out=out,
            radius=radius,
            grid=grid_spec,
            at_re=at.real,
            at_im=at.imag,
            breit_wigner=breit_wigner,
            cutoff=cutoff,
        )
        if at.imag <= 0.0:
            msg = f"The check point {at} must lie in the upper half-plane."
            raise DomainError(msg)
        radii = _to_np_array(grid_spec)
        if radii[-1] > radius * (1.0 + 1.0e-12):
            msg = (
                f"Truncation radius {radii[-1]:g} "
                f"exceeds the search radius {radius:g}."
            )
            raise DomainError(msg)
        resonances = resolve_resonances(
            self, config, model, rule, radius=radius, use_cache=not no_cache
        )
        scale = max(abs(logdet_prime(model, at, rule, Side.PLUS)), 1.0e-300)
        residuals = [
            trace_formula_residual(model, resonances, at, rule, radius=float(r))
            for r in radii
        ]
        monotone = bool(np.all(np.diff(residuals) <= 0.0))
        if not monotone:
            self.warning("Trace formula residuals do not decrease: %s.", residuals)
        pairs = [
            (float(lam), *breit_wigner_phase(model, resonances, float(lam), rule))
            for lam in _to_np_array(breit_wigner)
        ]
        points = (at, -at.conjugate(), at + 1j)
        estimate = p_from_trace_formula(model, resonances, points, rule)
        slope = phase_derivative(model, 0.0, rule)
        integrals = trace_integrals(model, cutoff, rule)
        report = TraceCheckReport(
            at=ComplexValue.of(at),
            residuals=[
                TraceRadiusEntry(
                    radius=float(r), residual=value, relative_residual=value / scale
                )
                for r, value in zip(radii, residuals, strict=True)
            ],
            monotone=monotone,
            breit_wigner=pairs,
            p=ComplexValue.of(resonances.p_const),
            p_recovered=ComplexValue.of(estimate.value),
            p_spread=estimate.spread,
            phase_slope=slope,
            phase_slope_from_p=resonances.p_const.imag / math.pi,
            trace_re_integral=integrals.re_integral,
            trace_im_integral=integrals.im_integral,
            recovered_v0=integrals.recovered_v0,
            v0=v0_integral(model),
            config_hash=config.config_hash(),
            n=rule.size,
        )
        path = self.artifact_path(out, "trace_check.json")
        write_json(path, report)
        self.info("Wrote %s.", path)
        return ExitCode.OKAY
