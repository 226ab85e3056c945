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
"""The `starkres` command group."""

__all__ = []


from importlib.metadata import version
from typing import Final

import click

from starkres.cli._count_command import CountCommand
from starkres.cli._detmap_command import DetmapCommand
from starkres.cli._phase_command import PhaseCommand
from starkres.cli._reconstruct_command import ReconstructCommand
from starkres.cli._register_command import register_command
from starkres.cli._resonances_command import ResonancesCommand
from starkres.cli._smatrix_command import SmatrixCommand
from starkres.cli._study_command import StudyCommand
from starkres.cli._trace_check_command import TraceCheckCommand

_STARKRES_VERSION: Final[str] = version("starkres")


@click.group()
@click.version_option(
    version=_STARKRES_VERSION,
    message="%(prog)s %(version)s\nLicense: GNU GPL v3 <https://www.gnu.org/licenses/>",
)
def cli() -> None:
    """starkres - resonances of the perturbed one-dimensional Stark operator."""


register_command(ResonancesCommand, cli)
register_command(DetmapCommand, cli)
register_command(PhaseCommand, cli)
register_command(SmatrixCommand, cli)
register_command(TraceCheckCommand, cli)
register_command(CountCommand, cli)
register_command(StudyCommand, cli)
register_command(ReconstructCommand, cli)
