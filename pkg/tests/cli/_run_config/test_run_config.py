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
"""Tests for `starkres.cli._run_config.RunConfig`."""

from pathlib import Path
from typing import Any

import pytest
from pydantic import ValidationError

from starkres.cli._run_config import RunConfig
from starkres.typing import ClaimId, Side

BOX: dict[str, Any] = {"gamma": 1.0, "form": "box", "coeffs": [1.0]}


def _config(**overrides: Any) -> RunConfig:
    return RunConfig.model_validate(
        {"command": "detmap", "potential": BOX, "n": 64} | overrides
    )


def test_hash_ignores_threads_and_output() -> None:
    """Artifacts do not depend on the thread count or where they go."""
    base = _config()
    assert base.config_hash() == _config(threads=8).config_hash()
    assert base.config_hash() == _config(out=Path("elsewhere.csv")).config_hash()


@pytest.mark.parametrize(
    "overrides",
    [
        {"n": 65},
        {"tol": 1e-3},
        {"command": "phase"},
        {"potential": {"gamma": 2.0, "form": "box", "coeffs": [1.0]}},
        {"parameters": {"side": Side.MINUS}},
    ],
)
def test_hash_tracks_results(overrides: dict[str, Any]) -> None:
    """Anything that changes the numbers changes the hash."""
    assert _config().config_hash() != _config(**overrides).config_hash()


def test_hash_is_stable_across_parameter_order() -> None:
    """Parameters are hashed in canonical order."""
    one = _config(parameters={"radius": 5.0, "points": 3.0})
    two = _config(parameters={"points": 3.0, "radius": 5.0})
    assert one.config_hash() == two.config_hash()


def test_with_parameters_extends() -> None:
    """Added parameters are merged with the existing ones."""
    config = _config(parameters={"radius": 5.0}).with_parameters(
        claim_id=ClaimId.TRACE
    )
    assert config.parameters == {"radius": 5.0, "claim_id": ClaimId.TRACE}


@pytest.mark.parametrize(
    "overrides",
    [
        {"n": 4},
        {"tol": 0.0},
        {"threads": 0},
        {"command": ""},
        {"unknown": 1},
        {"parameters": {"radius": float("nan")}},
        {"parameters": {"grid": "5:1"}},
    ],
)
def test_rejects_malformed_configuration(overrides: dict[str, Any]) -> None:
    """Out of range settings fail validation before any computation."""
    with pytest.raises(ValidationError):
        _config(**overrides)
