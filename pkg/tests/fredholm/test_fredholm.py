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
"""Tests for the determinants of `starkres.fredholm`."""

import cmath
import itertools
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

import starkres.fredholm
from starkres.exceptions import BranchJumpError, DomainError, UnderResolutionError
from starkres.fredholm import (
    QuadratureRule,
    anchor_radius,
    build_composite_rule,
    build_rule,
    build_y0,
    continued_det,
    converged_det,
    det_side,
    log_det,
    log_det_tracked,
    logdet_prime,
    neumann_log_det,
    rule_for,
    unwrap_arguments,
    y_full,
)
from starkres.green import trace_y0_oscillatory
from starkres.potential import Potential, make_potential
from starkres.typing import HalfPlane, Side


@pytest.mark.parametrize(("n", "gamma"), [(4, 1.0), (16, 0.0), (16, -1.0)])
def test_build_rule_rejects_bad_arguments(n: int, gamma: float) -> None:
    """Rules need at least eight nodes on a non-empty interval."""
    with pytest.raises(DomainError):
        build_rule(n, gamma)


def test_rule_for_uses_breakpoints() -> None:
    """Panels of piecewise potentials never straddle a breakpoint."""
    potential = make_potential({
        "gamma": 2.0,
        "form": "poly",
        "coeffs": [[1.0], [0.0, 1.0]],
        "breaks": [0.5],
    })
    rule = rule_for(potential, 40)
    assert rule.size == 40
    assert np.all(np.diff(rule.nodes) > 0.0)
    assert np.count_nonzero(rule.nodes < 0.5) == 10
    assert rule.integrate(np.ones(rule.size)) == pytest.approx(2.0)
    assert build_composite_rule(40, [(0.0, 0.01), (0.01, 1.0)]).order == 15


@pytest.mark.parametrize("side", list(Side))
@pytest.mark.parametrize("lam", [0.0, 3.0 + 2.0j, -5.0 - 1.0j, 40.0])
def test_zero_potential_has_unit_determinant(
    zero_potential: Potential, side: Side, lam: complex
) -> None:
    """Without a potential both determinants are identically one."""
    rule = build_rule(16, 1.0)
    sample = continued_det(zero_potential, lam, rule, side)
    assert sample.d_value == 1.0
    assert sample.log_d == 0.0
    assert logdet_prime(zero_potential, lam, rule, side) == 0j


def test_conjugation_symmetry(
    canonical_potential: Potential, canonical_rule: QuadratureRule
) -> None:
    """`D_minus(conj lambda) = conj D_plus(lambda)` at 50 random points."""
    rng = np.random.default_rng(1019)
    points = rng.uniform(-30.0, 30.0, 50) + 1j * rng.uniform(0.0, 10.0, 50)
    points[:5] = points[:5].real
    for lam in points:
        plus = det_side(canonical_potential, complex(lam), canonical_rule, Side.PLUS)
        minus = det_side(
            canonical_potential, complex(lam).conjugate(), canonical_rule, Side.MINUS
        )
        scale = max(1.0, abs(plus.d_value))
        assert abs(minus.d_value - plus.d_value.conjugate()) <= 1e-10 * scale


def test_rule_convergence(canonical_potential: Potential) -> None:
    """Refining the rule settles the determinant."""
    lam = 4.0 + 1.0j
    values = [
        det_side(canonical_potential, lam, rule_for(canonical_potential, n), Side.PLUS)
        for n in (16, 64, 256)
    ]
    assert [sample.rule_size for sample in values] == [16, 64, 256]
    coarse = abs(values[0].d_value - values[2].d_value)
    fine = abs(values[1].d_value - values[2].d_value)
    assert fine <= max(0.1 * coarse, 1e-12)
    assert fine <= 1e-10


def test_weak_coupling_matches_trace(canonical_potential: Potential) -> None:
    """For a small potential `log D` is the trace of `Y0` to second order."""
    weak = canonical_potential.scaled(1e-4)
    lam = 3.0 + 1.0j
    sample = det_side(weak, lam, rule_for(weak, 48), Side.PLUS)
    assert abs(sample.log_d - trace_y0_oscillatory(weak, lam)) <= 1e-7


def test_determinant_tends_to_one(
    canonical_potential: Potential, canonical_rule: QuadratureRule
) -> None:
    """`D_plus` approaches one far out in the upper half-plane."""

    def distance(radius: float) -> float:
        sample = det_side(canonical_potential, radius * 1j, canonical_rule, Side.PLUS)
        return abs(sample.d_value - 1.0)

    distances = [distance(r) for r in (10.0, 100.0, 1000.0)]
    assert distances[0] > distances[1] > distances[2]
    assert distances[2] < 0.05


def test_det_side_stays_in_its_half_plane(
    canonical_potential: Potential, canonical_rule: QuadratureRule
) -> None:
    """Off its half-plane a determinant must be continued explicitly."""
    with pytest.raises(DomainError):
        det_side(canonical_potential, 1.0 - 1.0j, canonical_rule, Side.PLUS)
    continued = continued_det(
        canonical_potential, 2.0 - 1e-9j, canonical_rule, Side.PLUS
    )
    boundary = det_side(canonical_potential, 2.0, canonical_rule, Side.PLUS)
    assert abs(continued.d_value - boundary.d_value) <= 1e-7


def test_converged_det_refines(canonical_potential: Potential) -> None:
    """Doubling stops once consecutive determinants agree."""
    sample = converged_det(
        canonical_potential, 1.0 + 1.0j, Side.PLUS, tol=1e-4, n_start=16
    )
    reference = det_side(
        canonical_potential, 1.0 + 1.0j, rule_for(canonical_potential, 512), Side.PLUS
    )
    assert sample.rule_size >= 32
    assert abs(sample.d_value - reference.d_value) <= 1e-3


def test_logdet_prime_matches_finite_difference(
    canonical_potential: Potential, canonical_rule: QuadratureRule
) -> None:
    """The analytic logarithmic derivative matches a central difference."""
    lam, h = 1.5 + 0.8j, 1e-5

    def log_d(value: complex) -> complex:
        return det_side(canonical_potential, value, canonical_rule, Side.PLUS).log_d

    expected = (log_d(lam + h) - log_d(lam - h)) / (2 * h)
    prime = logdet_prime(canonical_potential, lam, canonical_rule, Side.PLUS)
    assert abs(prime - expected) <= 1e-6


def test_y_full_inverts_identity_plus_y0(
    canonical_potential: Potential, canonical_rule: QuadratureRule
) -> None:
    """`(I - Y)(I + Y0)` is the identity."""
    lam = -1.0 + 2.0j
    y0 = build_y0(canonical_potential, lam, canonical_rule)
    y = y_full(canonical_potential, lam, canonical_rule)
    identity = np.eye(canonical_rule.size)
    assert y.half_plane is HalfPlane.UPPER
    assert_allclose((identity - y.entries) @ y0.identity_plus(), identity, atol=1e-10)


def test_log_det_and_series_agree() -> None:
    """The LU logarithm and the log series give the same small determinant."""
    rng = np.random.default_rng(7)
    matrix = 0.01 * (rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6)))
    series = neumann_log_det(matrix)
    direct = log_det(np.eye(6) + matrix)
    assert abs(series - direct) <= 1e-13
    with pytest.raises(DomainError):
        neumann_log_det(np.eye(2, dtype=complex))


def test_unwrap_arguments_start() -> None:
    """A given start shifts the whole branch by whole turns."""
    values = np.exp(1j * np.linspace(0.0, 1.0, 5))
    assert_allclose(unwrap_arguments(values, start=4 * math.pi)[-1], 4 * math.pi + 1.0)
    assert unwrap_arguments([]).size == 0
    with pytest.raises(BranchJumpError) as info:
        unwrap_arguments([1.0, -1.0])
    assert info.value.index == 1


def test_log_det_tracked(
    canonical_potential: Potential, canonical_rule: QuadratureRule
) -> None:
    """The tracked logarithm is continuous and exponentiates to `D_plus`."""
    radius = anchor_radius(canonical_potential, canonical_rule)
    path = [radius * cmath.exp(1j * t) for t in np.linspace(0.5 * math.pi, 0.1, 200)]
    samples = log_det_tracked(canonical_potential, path, canonical_rule, Side.PLUS)
    logs = np.array([sample.log_d for sample in samples])
    assert np.all(np.abs(np.diff(logs.imag)) < 0.5 * math.pi)
    for sample in samples[::20]:
        assert abs(cmath.exp(sample.log_d) - sample.d_value) <= 1e-12
    assert log_det_tracked(canonical_potential, [], canonical_rule, Side.PLUS) == []


def test_log_det_tracked_needs_anchor() -> None:
    """A path starting where the log series diverges is refused."""
    strong = make_potential({"gamma": 1.0, "form": "box", "coeffs": [50.0]})
    with pytest.raises(DomainError, match="not an anchor"):
        log_det_tracked(strong, [1.0j, 2.0j], rule_for(strong, 16), Side.PLUS)


def test_split_weights_integrate_partial_intervals() -> None:
    """Row `i` of the lower weights integrates polynomials over `[0, x_i]`."""
    rule = build_rule(40, 2.0)
    lower, upper = rule.split_weights()
    assert rule.order == 2 * 13 - 1
    for degree in (0, 3, 12):
        assert_allclose(
            lower @ rule.nodes**degree,
            rule.nodes ** (degree + 1) / (degree + 1),
            rtol=1e-12,
            atol=1e-14,
        )
    assert_allclose(lower + upper, np.broadcast_to(rule.weights, (40, 40)))
    assert np.all(upper[16:, :13] == 0.0)


def test_refinement_converges_spectrally(canonical_potential: Potential) -> None:
    """Each doubling of the rule gains at least a digit until round-off."""
    lam = 12.0 + 3.0j
    values = [
        det_side(
            canonical_potential, lam, rule_for(canonical_potential, n), Side.PLUS
        ).d_value
        for n in (8, 16, 32, 64)
    ]
    changes = [abs(b - a) for a, b in itertools.pairwise(values)]
    for earlier, later in itertools.pairwise(changes):
        assert later <= max(0.1 * earlier, 1e-13)
    assert changes[-1] <= 1e-12


def test_log_det_tracked_checks_anchor(
    canonical_potential: Potential,
    canonical_rule: QuadratureRule,
    monkeypatch: pytest.MonkeyPatch,
) -> None:
    """A log series that misses the LU determinant at the anchor is refused."""
    radius = anchor_radius(canonical_potential, canonical_rule)

    def shifted(entries: np.ndarray) -> complex:
        return neumann_log_det(entries) + 1e-3

    monkeypatch.setattr(starkres.fredholm, "neumann_log_det", shifted)
    with pytest.raises(UnderResolutionError, match="anchor"):
        log_det_tracked(
            canonical_potential, [radius * 1j], canonical_rule, Side.PLUS
        )
