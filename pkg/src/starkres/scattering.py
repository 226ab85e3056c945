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
Scattering quantities of the perturbed Stark operator.

With the standard Airy function the generalised eigenfunctions of `H0` are
`Ai(x - lambda)`, so on a quadrature rule the vector

    psi_i = Ai(x_i - lambda) |V|^(1/2)(x_i) sqrt(w_i)

discretises `Psi(lambda)`, the Born amplitude is `A0 = psi^T V_S psi` with
`V_S = sign V`, and the scattering matrix on the real axis is

    S(lambda) = 1 - 2 pi i (A0 - A1),  A1 = psi^T V_S Y psi.

The same normalisation makes the jump of `Y0` across the real axis equal to
`2 pi i psi psi^T V_S`, and gives `S = conj(D_plus) / D_plus`. All vectors are
continued analytically: `psi^T psi` carries no complex conjugation.
"""

__all__ = [
    "PsiVector",
    "ScatteringSample",
    "TraceIntegrals",
    "amplitude_a1",
    "born_a0",
    "jump_defect",
    "log_born_a0",
    "phase_derivative",
    "psi_vector",
    "reduced_amplitude",
    "s_matrix",
    "scattering_phase",
    "sqrt_upper",
    "trace_integrals",
]

import cmath
import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Final

import numpy as np
import numpy.typing as npt
import scipy.linalg

from starkres.airy import MAX_EXPONENT, scaled_airy
from starkres.exceptions import AiryOverflowError, DomainError, NonConvergenceError
from starkres.fredholm import (
    QuadratureRule,
    build_y0,
    det_side,
    unwrap_arguments,
    y_full,
)
from starkres.potential import Potential, split_sign
from starkres.typing import Complex128NDArray, Float64NDArray, HalfPlane, Side

logger = logging.getLogger(__name__)

_TWO_PI_I: Final = 2j * math.pi
_LOW_ENERGY_DISTANCE: Final = 0.5
_PIN_TOLERANCE: Final = 1.0e-8


@dataclass(frozen=True, slots=True)
class PsiVector:
    """
    The discretised functional `Psi(lambda)` in scaled form.

    The components are `mantissa * exp(log_scale)`.

    Attributes:
        lam: The spectral parameter.
        mantissa: Scaled components.
        log_scale: Common log-scale of the components.
        signs: `sign V` at the quadrature nodes.
    """

    lam: complex
    mantissa: Complex128NDArray
    log_scale: float
    signs: Float64NDArray

    @property
    def components(self) -> Complex128NDArray:
        """
        The unscaled components.

        Raises:
            AiryOverflowError: If they leave the double precision range.
        """
        if self.log_scale > MAX_EXPONENT:
            msg = f"Psi at lambda = {self.lam!r} overflows; use the scaled form."
            raise AiryOverflowError(msg, log_scale=self.log_scale)
        return self.mantissa * math.exp(self.log_scale)

    @property
    def log_norm_sq(self) -> complex:
        """Logarithm of `sum psi_i^2`."""
        return cmath.log(complex(np.sum(self.mantissa**2))) + 2.0 * self.log_scale

    @property
    def norm_sq(self) -> complex:
        """The analytic continuation `sum psi_i^2` of the squared norm."""
        if 2.0 * self.log_scale > MAX_EXPONENT:
            msg = f"|Psi|^2 at lambda = {self.lam!r} overflows; use log_norm_sq."
            raise AiryOverflowError(msg, log_scale=2.0 * self.log_scale)
        return complex(np.sum(self.mantissa**2)) * math.exp(2.0 * self.log_scale)


@dataclass(frozen=True, slots=True)
class ScatteringSample:
    """
    Scattering data at one spectral parameter.

    Attributes:
        lam: The spectral parameter.
        a0: The Born amplitude.
        a1: The higher order amplitude.
        s: The scattering matrix `1 - 2 pi i (a0 - a1)`.
        phase: `-arg(s) / (2 pi)` reduced to `(-1/2, 1/2]` on the real axis,
            `nan` elsewhere.
    """

    lam: complex
    a0: complex
    a1: complex
    s: complex
    phase: float


def sqrt_upper(lam: complex) -> complex:
    """
    The square root with values in the closed upper half-plane.

    On the positive axis this is the positive root, on the negative axis the
    boundary value from above.

    Examples:
        >>> from starkres.scattering import sqrt_upper
        >>> sqrt_upper(4.0), sqrt_upper(-4.0)
        ((2+0j), 2j)
    """
    lam = complex(lam)
    return cmath.sqrt(complex(lam.real, abs(lam.imag)))


def psi_vector(potential: Potential, lam: complex, rule: QuadratureRule) -> PsiVector:
    """
    The vector `Ai(x_i - lambda) |V|^(1/2)(x_i) sqrt(w_i)`.

    Args:
        potential: The potential.
        lam: Any spectral parameter.
        rule: The quadrature rule.

    Returns:
        The scaled vector.

    Examples:
        >>> from starkres.fredholm import build_rule
        >>> from starkres.potential import make_potential
        >>> from starkres.scattering import psi_vector
        >>> zero = make_potential({"gamma": 1.0, "form": "zero"})
        >>> psi_vector(zero, 1.0, build_rule(8, 1.0)).norm_sq
        0j
    """
    split = split_sign(potential)
    left = np.sqrt(rule.weights) * split.sqrt_abs(rule.nodes)
    signs = split.sign(rule.nodes)
    airy = scaled_airy(rule.nodes - complex(lam))
    active = left > 0.0
    scale = float(airy.log_scale[active].max()) if active.any() else 0.0
    mantissa = airy.mantissa * np.exp(airy.log_scale - scale) * left
    return PsiVector(lam=complex(lam), mantissa=mantissa, log_scale=scale, signs=signs)


def log_born_a0(potential: Potential, lam: complex, rule: QuadratureRule) -> complex:
    """
    Logarithm of the Born amplitude, for spectral parameters where it overflows.

    Args:
        potential: The potential, not identically zero.
        lam: Any spectral parameter.
        rule: The quadrature rule.

    Returns:
        A logarithm of `A0(lambda)`.
    """
    airy = scaled_airy(rule.nodes - complex(lam))
    values = potential(rule.nodes)
    active = values != 0.0
    if not active.any():
        msg = "The Born amplitude of the zero potential has no logarithm."
        raise DomainError(msg)
    scale = float(airy.log_scale[active].max())
    squares = (airy.mantissa * np.exp(airy.log_scale - scale)) ** 2
    return cmath.log(rule.integrate(squares * values)) + 2.0 * scale


def born_a0(potential: Potential, lam: complex, rule: QuadratureRule) -> complex:
    """
    The Born amplitude `A0(lambda)`, the integral of `Ai(x - lambda)^2 V(x)`.

    Args:
        potential: The potential.
        lam: Any spectral parameter; `A0` is entire.
        rule: The quadrature rule.

    Returns:
        The amplitude.

    Raises:
        AiryOverflowError: If the value leaves the double precision range.
    """
    if potential.vanishes:
        return 0j
    log_value = log_born_a0(potential, lam, rule)
    if log_value.real > MAX_EXPONENT:
        msg = f"Born amplitude at lambda = {lam!r} overflows; use log_born_a0."
        raise AiryOverflowError(msg, log_scale=log_value.real)
    return cmath.exp(log_value)


def reduced_amplitude(
    potential: Potential,
    lam: complex,
    rule: QuadratureRule,
    *,
    continued: bool = False,
) -> tuple[complex, float]:
    """
    `psi^T V_S (I + Y0)^(-1) psi = A0 - A1` in scaled form.

    Uses the upper half-plane kernel. This is the factor relating the two
    determinants, `D_minus = D_plus (1 - 2 pi i (A0 - A1))`.

    Args:
        potential: The potential.
        lam: The spectral parameter, in the closed upper half-plane unless
            `continued` is set.
        rule: The quadrature rule.
        continued: Continue the upper formula below the real axis.

    Returns:
        A mantissa and log-scale, the value being `mantissa * exp(log_scale)`.
    """
    if potential.vanishes:
        return 0j, 0.0
    psi = psi_vector(potential, lam, rule)
    y0 = build_y0(potential, lam, rule, HalfPlane.UPPER, continued=continued)
    solved = scipy.linalg.solve(y0.identity_plus(), psi.mantissa, check_finite=False)
    mantissa = complex(np.sum(psi.mantissa * psi.signs * solved))
    return mantissa, 2.0 * psi.log_scale


def amplitude_a1(potential: Potential, lam: complex, rule: QuadratureRule) -> complex:
    """
    The amplitude `A1(lambda) = psi^T V_S Y(lambda) psi`.

    Args:
        potential: The potential.
        lam: A spectral parameter in the closed upper half-plane.
        rule: The quadrature rule.

    Returns:
        The amplitude.

    Raises:
        AiryOverflowError: If the value leaves the double precision range.
        SingularOperatorError: If `I + Y0` is numerically singular.
    """
    if potential.vanishes:
        return 0j
    psi = psi_vector(potential, lam, rule)
    if 2.0 * psi.log_scale > MAX_EXPONENT:
        msg = f"A1 at lambda = {lam!r} overflows."
        raise AiryOverflowError(msg, log_scale=2.0 * psi.log_scale)
    y = y_full(potential, lam, rule, HalfPlane.UPPER)
    value = (psi.mantissa * psi.signs) @ y.entries @ psi.mantissa
    return complex(value) * math.exp(2.0 * psi.log_scale)


def s_matrix(
    potential: Potential, lam: complex, rule: QuadratureRule
) -> ScatteringSample:
    """
    The scattering matrix and its amplitudes.

    Args:
        potential: The potential.
        lam: A spectral parameter in the closed upper half-plane.
        rule: The quadrature rule.

    Returns:
        The scattering sample.

    Raises:
        DomainError: If `Im lambda < 0`; continue through the determinants
            instead.

    Examples:
        >>> from starkres.fredholm import build_rule
        >>> from starkres.potential import make_potential
        >>> from starkres.scattering import s_matrix
        >>> zero = make_potential({"gamma": 1.0, "form": "zero"})
        >>> s_matrix(zero, 1.5, build_rule(16, 1.0)).s
        (1+0j)
    """
    lam = complex(lam)
    if lam.imag < 0.0:
        msg = f"The stationary formula needs Im lambda >= 0, got {lam!r}."
        raise DomainError(msg)
    a0 = born_a0(potential, lam, rule)
    a1 = amplitude_a1(potential, lam, rule)
    s = 1.0 - _TWO_PI_I * (a0 - a1)
    phase = -cmath.phase(s) / (2.0 * math.pi) if lam.imag == 0.0 else math.nan
    return ScatteringSample(lam=lam, a0=a0, a1=a1, s=s, phase=phase)


def _pinned_arguments(
    grid: Float64NDArray, values: Sequence[complex]
) -> Float64NDArray:
    """
    Arguments of `D_plus` on a real grid, principal at the right end.

    When the left end also lies where `|D - 1| < 1/2` its principal argument is
    the decaying branch too, and the tracked branch has to land on it.

    Raises:
        BranchJumpError: If the grid is too coarse to unwrap.
        NonConvergenceError: If the branch misses the left end.
    """
    arguments = unwrap_arguments(values)
    arguments += cmath.phase(values[-1]) - arguments[-1]
    if abs(values[0] - 1.0) < _LOW_ENERGY_DISTANCE:
        miss = float(arguments[0] - cmath.phase(values[0]))
        if abs(miss) > _PIN_TOLERANCE:
            msg = (
                f"Phase pinned at lambda = {grid[-1]:g} misses lambda = {grid[0]:g} "
                f"by {miss / math.pi:.3g}; end the grid at higher energy."
            )
            raise NonConvergenceError(msg, achieved_error=abs(miss))
    return arguments


def scattering_phase(
    potential: Potential, lambdas: npt.ArrayLike, rule: QuadratureRule
) -> Float64NDArray:
    """
    The scattering phase `(1/pi) arg D_plus(lambda + i0)` on a real grid.

    The argument is unwrapped along the grid and pinned at the right end to the
    principal value, which is the branch decaying at infinity as long as the
    grid ends in the high-energy regime. A grid starting at low energy, where
    `|D_plus - 1| < 1/2`, must also meet the principal value there.

    Args:
        potential: The potential.
        lambdas: Strictly increasing real grid.
        rule: The quadrature rule.

    Returns:
        The phase at each grid point.

    Raises:
        DomainError: If the grid is not strictly increasing.
        BranchJumpError: If the grid is too coarse to unwrap.
        NonConvergenceError: If the phase pinned at the right end misses the
            low-energy left end.
    """
    grid = np.asarray(lambdas, dtype=np.float64)
    if grid.ndim != 1 or np.any(np.diff(grid) <= 0.0):
        msg = "Phase grid must be a strictly increasing one dimensional array."
        raise DomainError(msg)
    if potential.vanishes:
        return np.zeros_like(grid)
    values = [det_side(potential, float(lam), rule, Side.PLUS).d_value for lam in grid]
    return _pinned_arguments(grid, values) / math.pi


def phase_derivative(
    potential: Potential, lam: float, rule: QuadratureRule, *, step: float = 1.0e-3
) -> float:
    """
    The derivative of the scattering phase by a five point stencil.

    Args:
        potential: The potential.
        lam: A real spectral parameter.
        rule: The quadrature rule.
        step: The stencil spacing.

    Returns:
        The derivative `phi_sc'(lambda)`.
    """
    offsets = np.array([-2.0, -1.0, 0.0, 1.0, 2.0])
    values = scattering_phase(potential, lam + step * offsets, rule)
    stencil = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / (12.0 * step)
    return float(stencil @ values)


def jump_defect(potential: Potential, lam: float, rule: QuadratureRule) -> float:
    """
    Largest entry of `Y0(lambda + i0) - Y0(lambda - i0) - 2 pi i psi psi^T V_S`.

    Args:
        potential: The potential.
        lam: A real spectral parameter.
        rule: The quadrature rule.

    Returns:
        The maximal absolute deviation.
    """
    upper = build_y0(potential, lam, rule, HalfPlane.UPPER).entries
    lower = build_y0(potential, lam, rule, HalfPlane.LOWER).entries
    psi = psi_vector(potential, lam, rule).components
    signs = split_sign(potential).sign(rule.nodes)
    expected = _TWO_PI_I * np.outer(psi, psi * signs)
    return float(np.abs(upper - lower - expected).max())


@dataclass(frozen=True, slots=True)
class TraceIntegrals:
    """
    Real-axis integrals of `log D_plus(lambda + i0) / sqrt(lambda + i0)`.

    Attributes:
        cutoff: The integrals run over `[-cutoff, cutoff]`.
        re_integral: Integral of the real part, tending to `pi V0 / 2`.
        im_integral: Integral of the imaginary part, tending to 0.
        recovered_v0: `2 / pi` times `re_integral`.
    """

    cutoff: float
    re_integral: float
    im_integral: float
    recovered_v0: float


def trace_integrals(
    potential: Potential,
    cutoff: float,
    rule: QuadratureRule,
    *,
    panel_width: float = 0.5,
    panel_nodes: int = 16,
) -> TraceIntegrals:
    """
    The high-energy trace integrals over `[-cutoff, cutoff]`.

    Closing the real axis by a large half circle, on which
    `log D_plus ~ i V0 / (2 sqrt(lambda))`, gives
    `integral of log D_plus / sqrt(lambda + i0) -> pi V0 / 2`. Both halves of
    the axis are integrated in `u = sqrt(|lambda|)`, which removes the inverse
    square root singularity, with composite Gauss-Legendre panels.

    Args:
        potential: The potential.
        cutoff: Half length of the integration interval.
        rule: The quadrature rule for the determinants.
        panel_width: Panel width in `u`.
        panel_nodes: Nodes per panel.

    Returns:
        The two integrals and the recovered `V0`.
    """
    if not cutoff > 0.0:
        msg = f"Cutoff must be positive, got {cutoff}."
        raise DomainError(msg)
    if potential.vanishes:
        return TraceIntegrals(
            cutoff=cutoff, re_integral=0.0, im_integral=0.0, recovered_v0=0.0
        )
    top = math.sqrt(cutoff)
    edges = np.linspace(0.0, top, max(1, math.ceil(top / panel_width)) + 1)
    base, base_weights = np.polynomial.legendre.leggauss(panel_nodes)
    half = 0.5 * np.diff(edges)[:, None]
    u = (half * (base[None, :] + 1.0) + edges[:-1, None]).ravel()
    w = (half * base_weights[None, :]).ravel()
    grid = np.concatenate((-(u[::-1] ** 2), u**2))
    values = [det_side(potential, float(lam), rule, Side.PLUS).d_value for lam in grid]
    arguments = _pinned_arguments(grid, values)
    logs = np.log(np.abs(values)) + 1j * arguments
    negative, positive = logs[: u.size][::-1], logs[u.size :]
    total = complex(np.sum(2.0 * w * positive) + np.sum(2.0 * w * negative / 1j))
    logger.info("Trace integrals over [-%g, %g]: %s.", cutoff, cutoff, total)
    return TraceIntegrals(
        cutoff=cutoff,
        re_integral=total.real,
        im_integral=total.imag,
        recovered_v0=2.0 * total.real / math.pi,
    )
