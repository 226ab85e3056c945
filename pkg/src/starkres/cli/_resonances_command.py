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
"""Resonances command implementation."""

__all__ = []

from pathlib import Path

from starkres._cache import load_resonances, save_resonances
from starkres.artifacts import ResonanceReport, write_json
from starkres.cli._cli_command import CliCommand
from starkres.cli._run_config import RunConfig
from starkres.fredholm import QuadratureRule
from starkres.potential import Potential
from starkres.resonance import ResonanceSet, find_resonances
from starkres.typing import ExitCode


def search_config(config: RunConfig, radius: float) -> RunConfig:
    """
    The configuration a resonance search with `radius` is cached under.

    Commands that only consume resonances share the search of the
    `resonances` command with the same potential, rule size and radius.

    Args:
        config: The configuration of the running command.
        radius: The search radius.

    Returns:
        The configuration of the equivalent `resonances` run.
    """
    return RunConfig(
        command=ResonancesCommand.command_name(),
        potential=config.potential,
        n=config.n,
        parameters={"radius": radius},
    )


def resolve_resonances(
    command: CliCommand,
    config: RunConfig,
    potential: Potential,
    rule: QuadratureRule,
    *,
    radius: float,
    use_cache: bool,
) -> ResonanceSet:
    """
    Load a cached resonance set or search for it and cache the result.

    Args:
        command: The running command, for logging.
        config: The configuration of the running command.
        potential: The potential.
        rule: The quadrature rule.
        radius: The search radius.
        use_cache: Whether to read and write the cache.

    Returns:
        The certified resonance set.
    """
    key = search_config(config, radius).config_hash()
    if use_cache and (cached := load_resonances(key)) is not None:
        command.info("Using %d cached resonance(s), key %s.", len(cached), key[:12])
        return cached
    resonances = find_resonances(potential, radius, rule, threads=config.threads)
    command.info(
        "Located %d resonance(s) within |lambda| <= %g.",
        resonances.total_multiplicity(),
        radius,
    )
    if use_cache:
        save_resonances(resonances, key)
    return resonances


class ResonancesCommand(CliCommand):
    """
    Locate all resonances within a radius and write them as JSON.

    Zeros of D_plus in the lower half-plane are counted by the argument
    principle on the conjugate rectangle, isolated by subdivision and refined
    by Newton's method. The search is certified complete or the command exits
    with status 4.
    """

    def run(  # type: ignore[override]  # noqa: PLR0913
        self,
        *,
        potential: Path,
        n: int,
        tol: float,
        radius: float,
        out: Path | None,
        threads: int,
        no_cache: bool,
    ) -> ExitCode:
        """
        Execute the resonance search.

        Args:
            potential: The potential descriptor file.
            n: Number of quadrature nodes.
            tol: Tolerance of the resolution check.
            radius: The search radius.
            out: The artifact path.
            threads: Worker threads.
            no_cache: Skip the resonance cache.

        Returns:
            An exit code indicating success or failure.
        """
        config, model, rule = self.prepare(
            potential, n=n, tol=tol, threads=threads, out=out, radius=radius
        )
        if not model.vanishes:
            self.check_resolution(model, config, complex(radius, 0.0))
        resonances = resolve_resonances(
            self, config, model, rule, radius=radius, use_cache=not no_cache
        )
        path = self.artifact_path(out, "resonances.json")
        write_json(path, ResonanceReport.from_set(resonances, config.config_hash()))
        self.info("Wrote %s.", path)
        return ExitCode.OKAY
