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
"""Tests for `starkres.cli._options`."""

import click
import pytest

from starkres.cli._options import COMMON_OPTIONS, _argument_help_records, get_option


def test_get_option_returns_decorator() -> None:
    """Known names resolve to the decorator stored in `COMMON_OPTIONS`."""
    assert get_option("radius") is COMMON_OPTIONS["radius"][0]


def test_get_option_unknown_name() -> None:
    """Unknown names list the available options."""
    with pytest.raises(KeyError, match=r"Unknown option 'nope'\. Available options: "):
        get_option("nope")


def test_only_claim_id_is_positional() -> None:
    """Every shared parameter except the claim is an option."""

    @get_option("claim_id")
    @get_option("radius")
    def command(**kwargs: object) -> None:
        del kwargs

    attached = command.__click_params__  # type: ignore[attr-defined]
    params = {param.name: param for param in attached}
    assert isinstance(params["claim_id"], click.Argument)
    assert isinstance(params["radius"], click.Option)
    records = _argument_help_records(list(params.values()))
    assert records == [("CLAIM_ID", "The asymptotic claim to study.")]


def test_defaults_for_common_options() -> None:
    """Defaults of the shared options are stable."""

    @click.command()
    @get_option("n")
    @get_option("tol")
    @get_option("threads")
    @get_option("radius")
    def command(**kwargs: object) -> None:
        del kwargs

    defaults = {param.name: param.default for param in command.params}
    assert defaults == {"n": 128, "tol": 1.0e-6, "threads": 1, "radius": 25.0}
