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
"""Tests for the asymptotic studies in `starkres.asymptotics`."""

import math
from pathlib import Path

import pytest
from pydantic import ValidationError

from starkres.asymptotics import StudyTolerances, run_study
from starkres.exceptions import DomainError
from starkres.fredholm import QuadratureRule, build_rule
from starkres.potential import Potential, make_potential
from starkres.typing import ClaimId


def test_tolerance_defaults() -> None:
    """Every claim has a positive default tolerance."""
    tolerances = StudyTolerances.load(None)
    assert tolerances.for_claim(ClaimId.DETERMINANT_RAY) == 0.05
    assert all(tolerances.for_claim(claim) > 0.0 for claim in ClaimId)


def test_tolerance_manifest(tmp_path: Path) -> None:
    """Manifests override single tolerances and reject unknown or bad values."""
    path = tmp_path / "tolerances.yaml"
    path.write_text("born_ray: 0.3\nlogdet: 0.01\n", encoding="utf-8")
    tolerances = StudyTolerances.load(path)
    assert tolerances.for_claim(ClaimId.BORN_RAY) == 0.3
    assert tolerances.for_claim(ClaimId.LOGDET) == 0.01
    assert tolerances.for_claim(ClaimId.PHASE) == 0.1
    with pytest.raises(ValidationError):
        StudyTolerances.safe_load("phase: -1.0")
    with pytest.raises(ValidationError):
        StudyTolerances.safe_load("volume: 0.1")


@pytest.mark.parametrize("claim_id", list(ClaimId))
def test_zero_potential_passes_every_claim(
    zero_potential: Potential, claim_id: ClaimId
) -> None:
    """The free case is trivially consistent with every claim."""
    study = run_study(zero_potential, claim_id, [3.0, 1.0, 2.0], build_rule(16, 1.0))
    assert study.passed
    assert [sample.parameter for sample in study.samples] == [1.0, 2.0, 3.0]
    assert study.fit.coefficient == 0j


@pytest.mark.parametrize("grid", [[1.0, 2.0], [0.0, 1.0, 2.0], [-1.0, 1.0, 2.0]])
def test_grid_checks(
    canonical_potential: Potential, canonical_rule: QuadratureRule, grid: list[float]
) -> None:
    """Studies need three positive parameters."""
    with pytest.raises(DomainError, match="at least three positive"):
        run_study(canonical_potential, ClaimId.PHASE, grid, canonical_rule)


@pytest.mark.parametrize("claim_id", [ClaimId.BORN_RAY, ClaimId.DETERMINANT_RAY])
def test_ray_claims_need_nonzero_edge_value(claim_id: ClaimId) -> None:
    """The growth-ray laws are stated for potentials with `V(0) != 0`."""
    sine = make_potential({"gamma": math.pi, "form": "sine", "coeffs": [1.0, 1.0]})
    with pytest.raises(DomainError, match="V\\(0\\) != 0"):
        run_study(sine, claim_id, [2.5, 3.0, 3.5], build_rule(32, math.pi))


def test_born_bound_holds_near_the_axis(
    canonical_potential: Potential, canonical_rule: QuadratureRule
) -> None:
    """The Born amplitude stays below its growth bound."""
    study = run_study(
        canonical_potential,
        ClaimId.BORN_BOUND,
        [10.0, 20.0, 30.0, 40.0],
        canonical_rule,
    )
    assert study.quantity == "log |A0|"
    assert study.target == 1.0
    assert study.passed


def test_study_is_thread_independent(
    canonical_potential: Potential, canonical_rule: QuadratureRule
) -> None:
    """Worker threads do not change the samples or their order."""
    grid = [10.0, 20.0, 30.0, 40.0, 50.0]
    serial = run_study(
        canonical_potential, ClaimId.BORN_EXPANSION, grid, canonical_rule
    )
    threaded = run_study(
        canonical_potential, ClaimId.BORN_EXPANSION, grid, canonical_rule, threads=3
    )
    assert serial.samples == threaded.samples
    assert serial.fit == threaded.fit


def test_custom_tolerances_flow_into_the_study(
    canonical_potential: Potential,
    canonical_rule: QuadratureRule,
) -> None:
    """The study records the tolerance it was judged by."""
    tolerances = StudyTolerances(born_expansion=0.5)
    study = run_study(
        canonical_potential,
        ClaimId.BORN_EXPANSION,
        [10.0, 20.0, 30.0],
        canonical_rule,
        tolerances=tolerances,
    )
    assert study.tolerance == 0.5
