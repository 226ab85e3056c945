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
"""Common CLI options and arguments for starkres commands."""

__all__ = []

from collections.abc import Callable
from pathlib import Path
from typing import Any, Final, TypeVar, cast

import click

from starkres._utils._click import _complex_callback
from starkres.fredholm import DEFAULT_RULE_SIZE, MIN_RULE_SIZE
from starkres.typing import ClaimId, Side

AnyCallable = Callable[..., Any]
FC = TypeVar("FC", bound="AnyCallable | click.Command")
CommonOptionDecorator = Callable[[AnyCallable], AnyCallable]
CommonOptionEntry = tuple[CommonOptionDecorator, str | None]
_RANGE_HELP: Final = "Give `start:end` with `--points`, or `start:step:end`."


def _argument_help_records(
    params: list[click.Parameter],
) -> list[tuple[str, str]]:
    """
    Build shared help records for common positional arguments.

    Args:
        params: The Click parameters used by a command.

    Returns:
        Help records suitable for `click.HelpFormatter.write_dl`.
    """
    return [
        (param.human_readable_name, option_entry[1])
        for param in params
        if param.name is not None
        and (option_entry := COMMON_OPTIONS.get(param.name)) is not None
        and option_entry[1] is not None
    ]


# Dictionary of common Click options and arguments
# These can be requested by command classes to maintain consistency
COMMON_OPTIONS: Final[dict[str, CommonOptionEntry]] = {
    "angle": (
        click.option(
            "--angle",
            default=None,
            type=float,
            help="Direction of the ray in radians, for ray based claims.",
        ),
        None,
    ),
    "anchor": (
        click.option(
            "--anchor",
            default=-100.0,
            show_default=True,
            type=float,
            help="Real point far to the left where S is normalized to 1.",
        ),
        None,
    ),
    "breit_wigner": (
        click.option(
            "--breit-wigner",
            "breit_wigner",
            default="-4.5:1:4.5",
            show_default=True,
            help=f"Real grid of the Breit-Wigner comparison. {_RANGE_HELP}",
        ),
        None,
    ),
    "claim_id": (
        click.argument(
            "claim_id",
            required=True,
            type=click.Choice([claim.value for claim in ClaimId], case_sensitive=False),
            callback=lambda _ctx, _param, value: ClaimId.from_string(value),
        ),
        "The asymptotic claim to study.",
    ),
    "cutoff": (
        click.option(
            "--cutoff",
            default=100.0,
            show_default=True,
            type=click.FloatRange(min=0.0, min_open=True),
            help="Half length of the real interval of the trace integrals.",
        ),
        None,
    ),
    "grid": (
        click.option(
            "--grid",
            default=None,
            help=f"Parameter grid; defaults depend on the command. {_RANGE_HELP}",
        ),
        None,
    ),
    "im_range": (
        click.option(
            "--im",
            "im_range",
            default="-8:0",
            show_default=True,
            help=f"Imaginary extent of the map. {_RANGE_HELP}",
        ),
        None,
    ),
    "lam_range": (
        click.option(
            "--range",
            "lam_range",
            default="-50:50",
            show_default=True,
            help=f"Real spectral interval. {_RANGE_HELP}",
        ),
        None,
    ),
    "n": (
        click.option(
            "--n",
            "n",
            default=DEFAULT_RULE_SIZE,
            show_default=True,
            type=click.IntRange(min=MIN_RULE_SIZE),
            help="Number of Gauss-Legendre quadrature nodes.",
        ),
        None,
    ),
    "no_cache": (
        click.option(
            "--no-cache",
            is_flag=True,
            default=False,
            help="Neither read nor write the resonance cache.",
        ),
        None,
    ),
    "out": (
        click.option(
            "-o",
            "--out",
            default=None,
            type=click.Path(dir_okay=False, writable=True, path_type=Path),
            help="Artifact path; defaults to a file named after the command.",
        ),
        None,
    ),
    "points": (
        click.option(
            "--points",
            default=201,
            show_default=True,
            type=click.IntRange(min=2),
            help="Number of grid points along each `start:end` range.",
        ),
        None,
    ),
    "potential": (
        click.option(
            "-p",
            "--potential",
            required=True,
            type=click.Path(exists=True, dir_okay=False, readable=True, path_type=Path),
            help="Potential descriptor, YAML or JSON.",
        ),
        None,
    ),
    "at": (
        click.option(
            "--at",
            default="2+2j",
            show_default=True,
            callback=_complex_callback,
            help="Upper half-plane point at which the trace formula is checked.",
        ),
        None,
    ),
    "radius": (
        click.option(
            "--radius",
            default=25.0,
            show_default=True,
            type=click.FloatRange(min=0.0, min_open=True),
            help="Resonance search radius.",
        ),
        None,
    ),
    "re_range": (
        click.option(
            "--re",
            "re_range",
            default="-10:10",
            show_default=True,
            help=f"Real extent of the map. {_RANGE_HELP}",
        ),
        None,
    ),
    "side": (
        click.option(
            "--side",
            default=Side.PLUS.value,
            show_default=True,
            type=click.Choice([side.value for side in Side], case_sensitive=False),
            callback=lambda _ctx, _param, value: Side.from_string(value),
            help="Which perturbation determinant to map.",
        ),
        None,
    ),
    "threads": (
        click.option(
            "--threads",
            default=1,
            show_default=True,
            type=click.IntRange(min=1),
            help="Worker threads; artifacts do not depend on it.",
        ),
        None,
    ),
    "tol": (
        click.option(
            "--tol",
            default=1.0e-6,
            show_default=True,
            type=click.FloatRange(min=0.0, min_open=True),
            help="Allowed change of D_plus when the quadrature is doubled.",
        ),
        None,
    ),
    "tolerances": (
        click.option(
            "--tolerances",
            default=None,
            type=click.Path(exists=True, dir_okay=False, readable=True, path_type=Path),
            help="YAML manifest overriding the per-claim study tolerances.",
        ),
        None,
    ),
    "verbosity": (
        click.option(
            "-v",
            "--verbosity",
            count=True,
            default=0,
            help="The verbosity level to use for this command.",
        ),
        None,
    ),
}


def get_option(name: str) -> Callable[[FC], FC]:
    """
    Get a common option or argument by name.

    Args:
        name: The name of the option/argument to retrieve.

    Returns:
        The Click option or argument decorator.

    Raises:
        KeyError: If the option name is not found.
    """
    if (entry := COMMON_OPTIONS.get(name)) is None:
        msg = (
            f"Unknown option '{name}'. "
            f"Available options: {', '.join(COMMON_OPTIONS.keys())}"
        )
        raise KeyError(msg)
    return cast("Callable[[FC], FC]", entry[0])
