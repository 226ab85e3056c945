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
"""
Identities linking the resonances to the determinant and the scattering phase.

With the resonances `lambda_n` and `p = D_plus'(0) / D_plus(0)` the plus
determinant has the genus one product

    D_plus(lambda) = D_plus(0) exp(p lambda)
                     * prod (1 - lambda/lambda_n) exp(lambda/lambda_n),

whose logarithmic derivative is the trace formula
`D_plus'/D_plus = p + sum lambda / (lambda_n (lambda - lambda_n))`. Taking
imaginary parts on the real axis gives the Breit-Wigner form of the phase
derivative, and substituting the product into `S = conj(D_plus) / D_plus`
expresses the scattering matrix through the resonances and `Im p` alone.
Every sum and product here is truncated to `|lambda_n| <= radius`.
"""

__all__ = [
    "HadamardValue",
    "PEstimate",
    "breit_wigner_phase",
    "hadamard_eval",
    "krein_consistency",
    "p_from_trace_formula",
    "phase_moment_direct",
    "phase_moments",
    "resonance_sum",
    "s_from_resonances",
    "sum_convergence",
    "symmetric_product",
    "trace_formula_residual",
]

import cmath
import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Final

import numpy as np
import numpy.typing as npt

from starkres.exceptions import DomainError
from starkres.fredholm import QuadratureRule, logdet_prime
from starkres.potential import Potential
from starkres.resonance import Resonance, ResonanceSet
from starkres.scattering import phase_derivative, scattering_phase
from starkres.typing import Float64NDArray, Side

logger = logging.getLogger(__name__)

_MIN_SEPARATION: Final = 1.0e-3
_UNIT_MODULUS_TOLERANCE: Final = 1.0e-6
_SUPPORT_TOLERANCE: Final = 1.0e-12


def _included(resonances: ResonanceSet, radius: float | None) -> tuple[Resonance, ...]:
    if radius is None:
        return resonances.items
    if radius > resonances.search_radius:
        msg = (
            f"Radius {radius} exceeds the certified radius "
            f"{resonances.search_radius}."
        )
        raise DomainError(msg)
    return resonances.within(radius)


@dataclass(frozen=True, slots=True)
class HadamardValue:
    """
    A truncated Hadamard product.

    Attributes:
        value: The product value.
        tail_diagnostic: `|lambda|^2` times the sum of `|lambda_n|^-2` over the
            outer half of the included resonances; a heuristic for the size of
            the omitted factors, not a bound.
    """

    value: complex
    tail_diagnostic: float


def hadamard_eval(
    resonances: ResonanceSet, lam: complex, *, radius: float | None = None
) -> HadamardValue:
    """
    The genus one product of `D_plus` over the resonances.

    Args:
        resonances: The resonance set with its `D_plus(0)` and `p`.
        lam: The spectral parameter.
        radius: Truncation radius, the certified radius by default.

    Returns:
        The product and its truncation diagnostic.

    Examples:
        >>> from starkres.resonance import Resonance, ResonanceSet
        >>> from starkres.trace_formulas import hadamard_eval
        >>> rs = ResonanceSet((Resonance(2 - 1j),), 5.0, 0.3 + 0.1j, 0.9 + 0.2j)
        >>> hadamard_eval(rs, 0.0).value
        (0.9+0.2j)
    """
    items = _included(resonances, radius)
    lam = complex(lam)
    log_value = resonances.p_const * lam
    for item in items:
        ratio = lam / item.lam
        log_value += item.multiplicity * (cmath.log(1.0 - ratio) + ratio)
    cutoff = resonances.search_radius if radius is None else radius
    outer = [item for item in items if abs(item.lam) > 0.5 * cutoff]
    diagnostic = abs(lam) ** 2 * sum(
        item.multiplicity / abs(item.lam) ** 2 for item in outer
    )
    return HadamardValue(
        value=resonances.d_plus_at_zero * cmath.exp(log_value),
        tail_diagnostic=diagnostic,
    )


def resonance_sum(
    resonances: ResonanceSet, lam: complex, *, radius: float | None = None
) -> complex:
    """
    `sum lambda / (lambda_n (lambda - lambda_n))` over the included resonances.

    Raises:
        DomainError: If `lam` is within `1e-3` of an included resonance.
    """
    total = 0j
    for item in _included(resonances, radius):
        if abs(lam - item.lam) < _MIN_SEPARATION:
            msg = (
                f"Spectral parameter {lam!r} is too close to the resonance "
                f"{item.lam!r}."
            )
            raise DomainError(msg)
        total += item.multiplicity * lam / (item.lam * (lam - item.lam))
    return total


def trace_formula_residual(
    potential: Potential,
    resonances: ResonanceSet,
    lam: complex,
    rule: QuadratureRule,
    *,
    radius: float | None = None,
) -> float:
    """
    `|Tr(R0 - R)(lambda) - p - sum lambda / (lambda_n (lambda - lambda_n))|`.

    Args:
        potential: The potential.
        resonances: The resonance set.
        lam: A spectral parameter in the upper half-plane.
        rule: The quadrature rule.
        radius: Truncation radius of the resonance sum.

    Returns:
        The residual of the truncated trace formula.

    Raises:
        DomainError: If `Im lam <= 0` or `lam` is too close to a resonance.
    """
    lam = complex(lam)
    if lam.imag <= 0.0:
        msg = f"The trace formula is checked in the upper half-plane, got {lam!r}."
        raise DomainError(msg)
    rhs = resonances.p_const + resonance_sum(resonances, lam, radius=radius)
    return abs(logdet_prime(potential, lam, rule, Side.PLUS) - rhs)


def breit_wigner_phase(
    potential: Potential,
    resonances: ResonanceSet,
    lam: float,
    rule: QuadratureRule,
    *,
    radius: float | None = None,
    step: float = 1.0e-3,
) -> tuple[float, float]:
    """
    The phase derivative directly and from the resonance sum.

    The right-hand side is `phi'(0) + (lambda / pi) Im sum 1 / (lambda_n
    (lambda - lambda_n))`, with `phi'(0)` from the same stencil as the direct
    value, so at `lambda = 0` the two sides coincide.

    Args:
        potential: The potential.
        resonances: The resonance set.
        lam: A real spectral parameter.
        rule: The quadrature rule.
        radius: Truncation radius of the resonance sum.
        step: Stencil spacing of the phase derivative.

    Returns:
        The pair `(lhs, rhs)`.
    """
    lhs = phase_derivative(potential, lam, rule, step=step)
    at_zero = lhs if lam == 0.0 else phase_derivative(potential, 0.0, rule, step=step)
    total = resonance_sum(resonances, complex(lam), radius=radius)
    return lhs, at_zero + total.imag / math.pi


def krein_consistency(
    potential: Potential,
    resonances: ResonanceSet,
    test_function: Callable[[Float64NDArray], Float64NDArray],
    grid: npt.ArrayLike,
    rule: QuadratureRule,
    *,
    radius: float | None = None,
) -> tuple[float, float]:
    """
    `-integral f phi'` with the phase derivative computed two ways.

    Args:
        potential: The potential.
        resonances: The resonance set.
        test_function: A smooth function vanishing outside the grid.
        grid: Increasing real grid covering the support of the test function.
        rule: The quadrature rule.
        radius: Truncation radius of the resonance sum.

    Returns:
        The pair `(lhs, rhs)` from the direct and the resonance phase derivative.

    Raises:
        DomainError: If the test function does not vanish at the grid ends.
    """
    points = np.asarray(grid, dtype=np.float64)
    f = np.asarray(test_function(points), dtype=np.float64)
    peak = float(np.abs(f).max()) if f.size else 0.0
    if peak == 0.0:
        return 0.0, 0.0
    if max(abs(f[0]), abs(f[-1])) > _SUPPORT_TOLERANCE * max(peak, 1.0):
        msg = "The test function does not vanish at the ends of the phase grid."
        raise DomainError(msg)
    phase = scattering_phase(potential, points, rule)
    direct = np.gradient(phase, points, edge_order=2)
    at_zero = phase_derivative(potential, 0.0, rule)
    sums = np.array(
        [resonance_sum(resonances, complex(x), radius=radius) for x in points]
    )
    summed = at_zero + sums.imag / math.pi
    return (
        -float(np.trapezoid(f * direct, points)),
        -float(np.trapezoid(f * summed, points)),
    )


def symmetric_product(
    resonances: ResonanceSet, lam: complex, *, radius: float | None = None
) -> complex:
    """
    `prod (1 - lambda / conj lambda_n) / (1 - lambda / lambda_n)`.

    Every factor has unit modulus for real `lambda`.

    Examples:
        >>> from starkres.resonance import Resonance, ResonanceSet
        >>> from starkres.trace_formulas import symmetric_product
        >>> items = (Resonance(2 - 1j), Resonance(4 - 3j, 2))
        >>> rs = ResonanceSet(items, 6.0, 0j, 1 + 0j)
        >>> abs(abs(symmetric_product(rs, 1.7)) - 1.0) < 1e-14
        True
    """
    value = 1 + 0j
    for item in _included(resonances, radius):
        factor = (1.0 - lam / item.lam.conjugate()) / (1.0 - lam / item.lam)
        value *= factor**item.multiplicity
    return value


def _s1(resonances: ResonanceSet, lam: complex, radius: float | None) -> complex:
    slope = resonances.p_const.imag / math.pi
    log_value = -2j * math.pi * lam * slope
    for item in _included(resonances, radius):
        log_value += item.multiplicity * (lam / item.lam.conjugate() - lam / item.lam)
    return cmath.exp(log_value) * symmetric_product(resonances, lam, radius=radius)


def s_from_resonances(
    resonances: ResonanceSet,
    lam: complex,
    far_left_anchor: float,
    *,
    radius: float | None = None,
) -> complex:
    """
    The scattering matrix rebuilt from the resonances and `Im p`.

    `S(lambda) = S(0) S1(lambda)` with
    `S1 = exp(-2 pi i lambda phi'(0)) prod (1 - lambda/conj l_n) / (1 - lambda/l_n)
    exp(lambda/conj l_n - lambda/l_n)`, `phi'(0) = Im p / pi`, and `S(0)` fixed
    by `S -> 1` at the far left: `S(0) = conj S1(far_left_anchor)`.

    Args:
        resonances: The resonance set.
        lam: The spectral parameter.
        far_left_anchor: A real point far to the left where `S` is close to 1.
        radius: Truncation radius.

    Returns:
        The reconstructed scattering matrix.

    Raises:
        DomainError: If `S1` at the anchor is not of unit modulus.
    """
    anchor = _s1(resonances, complex(far_left_anchor), radius)
    if abs(abs(anchor) - 1.0) > _UNIT_MODULUS_TOLERANCE:
        msg = f"|S1| = {abs(anchor):.6g} at the anchor {far_left_anchor}; expected 1."
        raise DomainError(msg)
    return anchor.conjugate() * _s1(resonances, complex(lam), radius)


def phase_moments(
    resonances: ResonanceSet, m: int, *, radius: float | None = None
) -> float:
    """
    The derivative `phi^(m)(0) = -((m - 1)! / pi) Im sum lambda_n^(-m)`, `m >= 2`.

    Examples:
        >>> from starkres.resonance import Resonance, ResonanceSet
        >>> from starkres.trace_formulas import phase_moments
        >>> rs = ResonanceSet((Resonance(-1j),), 2.0, 0j, 1 + 0j)
        >>> round(phase_moments(rs, 3) * 3.141592653589793, 12)
        2.0
    """
    if m < 2:  # noqa: PLR2004
        msg = f"Phase moments start at m = 2, got {m}."
        raise DomainError(msg)
    total = sum(
        item.multiplicity * item.lam ** (-m) for item in _included(resonances, radius)
    )
    return -math.factorial(m - 1) * complex(total).imag / math.pi


def phase_moment_direct(
    potential: Potential,
    m: int,
    rule: QuadratureRule,
    *,
    half_width: float = 0.5,
    points: int = 21,
) -> float:
    """
    `phi^(m)(0)` from a polynomial fit to the phase around 0.

    Args:
        potential: The potential.
        m: Derivative order.
        rule: The quadrature rule.
        half_width: Half width of the sampling interval.
        points: Number of samples.

    Returns:
        The fitted derivative.
    """
    grid = np.linspace(-half_width, half_width, points)
    phase = scattering_phase(potential, grid, rule)
    degree = min(points - 1, m + 8)
    fit = np.polynomial.Polynomial.fit(grid, phase, degree)
    return float(fit.deriv(m)(0.0))


@dataclass(frozen=True, slots=True)
class PEstimate:
    """
    `p` recovered from the trace formula at sample points.

    Attributes:
        value: Mean of the per-point estimates.
        spread: Largest deviation of a single estimate from the mean.
        samples: The per-point estimates.
    """

    value: complex
    spread: float
    samples: tuple[complex, ...]


def p_from_trace_formula(
    potential: Potential,
    resonances: ResonanceSet,
    points: Sequence[complex],
    rule: QuadratureRule,
    *,
    radius: float | None = None,
) -> PEstimate:
    """
    Recover `p` as `D'/D - sum lambda / (lambda_n (lambda - lambda_n))`.

    Args:
        potential: The potential.
        resonances: The resonance set.
        points: Spectral parameters in the upper half-plane.
        rule: The quadrature rule.
        radius: Truncation radius.

    Returns:
        The estimate and its spread over the points.
    """
    if not points:
        msg = "At least one sample point is needed."
        raise DomainError(msg)
    samples = tuple(
        logdet_prime(potential, lam, rule, Side.PLUS)
        - resonance_sum(resonances, complex(lam), radius=radius)
        for lam in points
    )
    value = complex(np.mean(samples))
    spread = max(abs(sample - value) for sample in samples)
    logger.info("p from %d point(s): %s, spread %.3g.", len(samples), value, spread)
    return PEstimate(value=value, spread=spread, samples=samples)


def sum_convergence(resonances: ResonanceSet, m1: float = 1.6) -> Float64NDArray:
    """
    Partial sums of `sum |lambda_n|^(-m1)` in order of modulus.

    Examples:
        >>> from starkres.resonance import Resonance, ResonanceSet
        >>> from starkres.trace_formulas import sum_convergence
        >>> rs = ResonanceSet((Resonance(-1j), Resonance(-2j, 2)), 3.0, 0j, 1 + 0j)
        >>> sum_convergence(rs, 1.0).tolist()
        [1.0, 2.0]
    """
    terms = [item.multiplicity * abs(item.lam) ** (-m1) for item in resonances]
    return np.cumsum(np.asarray(terms, dtype=np.float64))
