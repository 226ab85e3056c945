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
The free resolvent kernel of the Stark operator `-d^2/dx^2 + x`.

For `Im lambda > 0` the kernel is assembled from two Airy solutions,

    R0(x, y, lambda) = -u_minus(x<) u_plus(x>) / W,

with `u_plus(x) = Ai(x - lambda)`, recessive as `x -> +inf`,
`u_minus(x) = Ai(w (x - lambda))`, `w = exp(2 pi i/3)`, square integrable as
`x -> -inf`, and `W = u_minus u_plus' - u_minus' u_plus`. The lower half-plane
uses the conjugate rotation. The construction is entire in `lambda`, which is
what the continued determinants rely on.

The time-integral representation of the same kernel,

    R0 = exp(i pi/4) / sqrt(4 pi) * integral over t > 0 of
         exp(i (x - y)^2 / (4 t) - i t (x + y) / 2 - i t^3 / 12 + i t lambda)
         dt / sqrt(t),

is evaluated independently by `r0_time_integral` on a rotated contour and serves
as an oracle. Expanding `-i t x + i (x - y + t^2)^2 / (4 t) - i t^3 / 3` gives
the exponent above, which is symmetric in `x` and `y` like the kernel itself.

Matrices of the kernel on a quadrature rule take separate weights for the two
sides of the diagonal, where `R0` has a kink; see `kernel_matrix`.
"""

__all__ = [
    "FreeSolutions",
    "GreenKernelEval",
    "KernelPath",
    "free_solutions",
    "kernel_derivative_matrix",
    "kernel_matrix",
    "r0_kernel",
    "r0_time_integral",
    "resolve_half_plane",
    "trace_y0_oscillatory",
]

import cmath
import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from enum import StrEnum
from typing import Final

import numpy as np
import numpy.typing as npt
from scipy.integrate import quad

from starkres.airy import DEFAULT_R_MAX, MAX_EXPONENT, scaled_airy
from starkres.exceptions import AiryOverflowError, DomainError, NonConvergenceError
from starkres.potential import Potential
from starkres.typing import Complex128NDArray, Float64NDArray, HalfPlane

logger = logging.getLogger(__name__)

_OMEGA: Final = complex(-0.5, math.sqrt(3.0) / 2.0)
_NEGLIGIBLE_LOG: Final = -45.0
_QUAD_LIMIT: Final = 500
_EXCURSION_ANGLE: Final = math.pi / 12.0
_ORACLE_PREFACTOR: Final = cmath.exp(0.25j * math.pi) / math.sqrt(4.0 * math.pi)
_TRACE_PREFACTOR: Final = cmath.exp(0.25j * math.pi) / math.sqrt(2.0)


class KernelPath(StrEnum):
    """How a kernel value was computed."""

    TWO_SOLUTION = "two_solution"
    TIME_INTEGRAL = "time_integral"


@dataclass(frozen=True, slots=True)
class GreenKernelEval:
    """
    One value of the free resolvent kernel.

    Attributes:
        value: The kernel value `R0(x, y, lambda)`.
        half_plane: The half-plane whose boundary branch was used.
        branch_note: The construction that produced the value.
    """

    value: complex
    half_plane: HalfPlane
    branch_note: KernelPath


@dataclass(frozen=True, slots=True)
class FreeSolutions:
    """
    Scaled values of `u_minus` and `u_plus` at a set of points for one `lambda`.

    Values are `mantissa * exp(scale)`; derivatives are taken in `x`. The
    Wronskian `W` is stored the same way.
    """

    points: Float64NDArray
    lam: complex
    half_plane: HalfPlane
    minus: Complex128NDArray
    minus_prime: Complex128NDArray
    minus_scale: Float64NDArray
    plus: Complex128NDArray
    plus_prime: Complex128NDArray
    plus_scale: Float64NDArray
    wronskian: complex
    wronskian_scale: float


def resolve_half_plane(
    lam: complex, half_plane: HalfPlane | None, *, continued: bool = False
) -> HalfPlane:
    """
    Check the half-plane requested for a spectral parameter.

    Args:
        lam: The spectral parameter.
        half_plane: The requested half-plane, or `None` to infer it.
        continued: Allow evaluating a half-plane's formula outside it.

    Returns:
        The half-plane whose kernel formula is to be used.

    Raises:
        DomainError: If `lam` is real and no half-plane is given, or the
            half-plane does not contain `lam`.

    Examples:
        >>> from starkres.green import resolve_half_plane
        >>> from starkres.typing import HalfPlane
        >>> resolve_half_plane(1 - 1j, None)
        <HalfPlane.LOWER: 'lower'>
        >>> resolve_half_plane(2.0, None)
        Traceback (most recent call last):
            ...
        starkres.exceptions._numerical_errors.DomainError: Real spectral parameter 2.0 needs an explicit half plane.
    """  # noqa: E501
    located = HalfPlane.of(lam)
    if half_plane is None:
        if located is None:
            value = complex(lam).real
            msg = f"Real spectral parameter {value!r} needs an explicit half plane."
            raise DomainError(msg)
        return located
    if not continued and located is not None and located is not half_plane:
        msg = f"Spectral parameter {lam!r} does not lie in the {half_plane} half plane."
        raise DomainError(msg)
    return half_plane


def free_solutions(
    points: npt.ArrayLike,
    lam: complex,
    half_plane: HalfPlane,
    *,
    r_max: float = DEFAULT_R_MAX,
) -> FreeSolutions:
    """
    Evaluate the two Airy solutions and their Wronskian at `points`.

    Args:
        points: Positions `x`.
        lam: The spectral parameter.
        half_plane: Which rotation builds `u_minus`.
        r_max: Largest admissible Airy argument.

    Returns:
        The scaled solution values.
    """
    x = np.atleast_1d(np.asarray(points, dtype=np.float64))
    z = x - complex(lam)
    rotation = _OMEGA if half_plane is HalfPlane.UPPER else _OMEGA.conjugate()
    plus = scaled_airy(z, r_max=r_max)
    minus = scaled_airy(rotation * z, r_max=r_max)
    k = x.size // 2
    wronskian = complex(
        minus.mantissa[k] * plus.prime_mantissa[k]
        - rotation * minus.prime_mantissa[k] * plus.mantissa[k]
    )
    return FreeSolutions(
        points=x,
        lam=complex(lam),
        half_plane=half_plane,
        minus=minus.mantissa,
        minus_prime=rotation * minus.prime_mantissa,
        minus_scale=minus.log_scale,
        plus=plus.mantissa,
        plus_prime=plus.prime_mantissa,
        plus_scale=plus.log_scale,
        wronskian=wronskian,
        wronskian_scale=float(minus.log_scale[k] + plus.log_scale[k]),
    )


def _split_weights(
    solutions: FreeSolutions,
    lower: Float64NDArray | None,
    upper: Float64NDArray | None,
) -> tuple[Float64NDArray, Float64NDArray]:
    """Branch weights, pointwise evaluation when none are given."""
    if lower is not None and upper is not None:
        return lower, upper
    x = solutions.points
    share = (x[:, None] > x[None, :]) + 0.5 * (x[:, None] == x[None, :])
    return share, share.T


def _combine_branches(
    solutions: FreeSolutions,
    outer: Complex128NDArray,
    lower: Float64NDArray | None,
    upper: Float64NDArray | None,
) -> Complex128NDArray:
    """
    Weight the two branches of a kernel built from `u_minus(x<)` and `u_plus(x>)`.

    `outer[i, j]` is the mantissa of the branch with `x_i` as the smaller
    argument; its transpose is the branch with `x_j` the smaller one. Entries with
    a zero weight are dropped before they can overflow.
    """
    below, above = _split_weights(solutions, lower, upper)
    exponent = (
        solutions.minus_scale[:, None]
        + solutions.plus_scale[None, :]
        - solutions.wronskian_scale
    )
    with np.errstate(over="ignore", invalid="ignore"):
        branch = outer / solutions.wronskian * np.exp(exponent)
        return np.where(above != 0.0, above * branch, 0j) + np.where(
            below != 0.0, below * branch.T, 0j
        )


def kernel_matrix(
    solutions: FreeSolutions,
    lower: Float64NDArray | None = None,
    upper: Float64NDArray | None = None,
) -> Complex128NDArray:
    """
    The kernel `R0(x_i, x_j, lambda)` over all pairs of points.

    `R0(x, y)` has a kink at `y = x`, so a quadrature that integrates across the
    diagonal with one smooth rule only converges algebraically. With the branch
    weights of a rule, entry `(i, j)` is instead

        lower[i, j] R0(x_i, x_j; y < x) + upper[i, j] R0(x_i, x_j; y > x),

    each branch continued smoothly past the diagonal, so that summing a row
    against samples of `f` integrates `R0(x_i, y) f(y)` over both sides of the
    kink separately.

    Args:
        solutions: Solution values at the points.
        lower: Weights of the integral over `y < x_i`, by default one below the
            diagonal and one half on it.
        upper: Weights of the integral over `y > x_i`, the mirror default.

    Returns:
        The kernel matrix; symmetric for the default weights.
    """
    outer = -np.outer(solutions.minus, solutions.plus)
    return _combine_branches(solutions, outer, lower, upper)


def kernel_derivative_matrix(
    solutions: FreeSolutions,
    lower: Float64NDArray | None = None,
    upper: Float64NDArray | None = None,
) -> Complex128NDArray:
    """
    The matrix of `d/d lambda R0(x_i, x_j, lambda)`.

    Since `W` does not depend on `lambda` and `d/d lambda u(x - lambda) = -u'`,
    the derivative is `(u_minus'(x<) u_plus(x>) + u_minus(x<) u_plus'(x>)) / W`.
    The branch weights act as in `kernel_matrix` and do not depend on `lambda`.

    Args:
        solutions: Solution values at the points.
        lower: Weights of the integral over `y < x_i`.
        upper: Weights of the integral over `y > x_i`.

    Returns:
        The derivative matrix.
    """
    outer = np.outer(solutions.minus_prime, solutions.plus) + np.outer(
        solutions.minus, solutions.plus_prime
    )
    return _combine_branches(solutions, outer, lower, upper)


def r0_kernel(
    x: float, y: float, lam: complex, half_plane: HalfPlane | None = None
) -> GreenKernelEval:
    """
    Evaluate `R0(x, y, lambda)` by the two-solution construction.

    Args:
        x: First position.
        y: Second position.
        lam: The spectral parameter; real values are boundary values from the
            side named by `half_plane`.
        half_plane: The half-plane, required for real `lam`.

    Returns:
        The kernel value.

    Raises:
        AiryOverflowError: If the value leaves the double precision range.

    Examples:
        >>> from starkres.green import r0_kernel
        >>> upper = r0_kernel(0.3, 0.7, 2 + 1j)
        >>> lower = r0_kernel(0.3, 0.7, 2 - 1j)
        >>> abs(upper.value - lower.value.conjugate()) < 1e-12
        True
    """
    side = resolve_half_plane(lam, half_plane)
    low, high = min(x, y), max(x, y)
    solutions = free_solutions([low, high], lam, side)
    exponent = float(
        solutions.minus_scale[0] + solutions.plus_scale[1] - solutions.wronskian_scale
    )
    if exponent > MAX_EXPONENT:
        msg = f"Kernel value at lambda = {lam!r} overflows (log-scale {exponent:.1f})."
        raise AiryOverflowError(msg, log_scale=exponent)
    value = -solutions.minus[0] * solutions.plus[1] / solutions.wronskian
    return GreenKernelEval(
        value=complex(value * math.exp(exponent)),
        half_plane=side,
        branch_note=KernelPath.TWO_SOLUTION,
    )


@dataclass(frozen=True, slots=True)
class _Leg:
    """A straight piece `start + r exp(i angle)`, `0 <= r <= length`, of a contour."""

    start: complex
    angle: float
    length: float
    sign: float = 1.0


def _decay_length(
    start: complex, angle: float, log_modulus: Callable[[complex], float]
) -> float:
    """Distance along a ray after which the integrand is negligible."""
    direction = cmath.exp(1j * angle)
    r = 1.0e-8
    while log_modulus(start + r * direction) > _NEGLIGIBLE_LOG:
        r *= 2.0
        if r > 1.0e6:  # noqa: PLR2004
            msg = "Oscillatory integrand does not decay along the chosen contour."
            raise NonConvergenceError(msg)
    lo, hi = 0.5 * r, r
    for _ in range(40):
        mid = 0.5 * (lo + hi)
        if log_modulus(start + mid * direction) > _NEGLIGIBLE_LOG:
            lo = mid
        else:
            hi = mid
    return hi


def _contour(
    lam: complex,
    log_modulus: Callable[[complex], float],
    *,
    saddle_shift: float | None = None,
) -> list[_Leg]:
    """
    Integration contour for `exp(i t lambda - i t^3 / 12)` type integrands.

    Off the positive real axis a single ray into the lower right quadrant makes
    every factor decay. Near the positive axis the contour is bent through the
    saddle `t = 2 sqrt(lambda - shift)` of the cubic phase; pieces where the
    integrand is below `exp(-45)` are dropped.
    """
    arg = cmath.phase(lam)
    if saddle_shift is None or arg >= _EXCURSION_ANGLE or lam.real <= saddle_shift:
        angle = -0.5 * min(arg, math.pi / 3.0) if arg >= _EXCURSION_ANGLE else None
        if angle is None:
            angle = -0.5 * arg if saddle_shift is None else -math.pi / 6.0
        return [_Leg(0j, angle, _decay_length(0j, angle, log_modulus))]
    saddle = 2.0 * cmath.sqrt(lam - 0.5 * saddle_shift)
    near_zero = 0.25 * math.pi + 0.5 * cmath.phase(saddle)
    corner = 0.5 * saddle * (1.0 + 1.0j)
    back = cmath.phase(corner - saddle)
    away = -math.pi / 6.0
    return [
        _Leg(0j, near_zero, _decay_length(0j, near_zero, log_modulus)),
        _Leg(
            saddle,
            back,
            min(abs(corner - saddle), _decay_length(saddle, back, log_modulus)),
            sign=-1.0,
        ),
        _Leg(saddle, away, _decay_length(saddle, away, log_modulus)),
    ]


def _complex_quad(
    func: Callable[[float], complex], lo: float, hi: float, epsabs: float
) -> tuple[complex, float]:
    """Integrate a complex function of a real variable with QUADPACK."""
    results = [
        quad(
            lambda s: part(func(s)),
            lo,
            hi,
            epsabs=epsabs,
            epsrel=1.0e-10,
            limit=_QUAD_LIMIT,
            full_output=1,
        )
        for part in (lambda v: v.real, lambda v: v.imag)
    ]
    value = complex(results[0][0], results[1][0])
    return value, float(results[0][1] + results[1][1])


def _contour_integral(
    integrand: Callable[[complex], complex], legs: list[_Leg], epsabs: float
) -> tuple[complex, float]:
    """
    Integrate `integrand(t) / sqrt(t)` along the legs.

    A leg starting at the origin is parametrised by `t = s^2 exp(i angle)`,
    which removes the inverse square root singularity.
    """
    total = 0j
    error = 0.0
    for leg in legs:
        direction = cmath.exp(1j * leg.angle)
        if leg.start == 0:
            half = cmath.exp(0.5j * leg.angle)

            def on_leg(s: float, direction: complex = direction) -> complex:
                return 2.0 * integrand(s * s * direction)

            value, err = _complex_quad(on_leg, 0.0, math.sqrt(leg.length), epsabs)
            value *= half
        else:

            def on_leg(
                r: float, leg: _Leg = leg, direction: complex = direction
            ) -> complex:
                t = leg.start + r * direction
                return integrand(t) / cmath.sqrt(t) * direction

            value, err = _complex_quad(on_leg, 0.0, leg.length, epsabs)
        total += leg.sign * value
        error += err
    return total, error


def _check_converged(
    value: complex, error: float, epsabs: float, what: str
) -> None:
    """Raise when a contour integral misses its tolerance by a wide margin."""
    if not math.isfinite(error) or error > 100.0 * max(epsabs, 1.0e-8 * abs(value)):
        msg = f"{what} did not converge (estimated error {error:.3g})."
        raise NonConvergenceError(msg, achieved_error=error)


def r0_time_integral(
    x: float, y: float, lam: complex, *, epsabs: float = 1.0e-11
) -> complex:
    """
    Evaluate `R0(x, y, lambda)` from its time-integral representation.

    Args:
        x: First position.
        y: Second position.
        lam: The spectral parameter, `Im lambda > 0`.
        epsabs: Absolute tolerance of each quadrature.

    Returns:
        The kernel value.

    Raises:
        DomainError: If `Im lambda <= 0`, where the integral does not converge
            absolutely.

    Examples:
        >>> from starkres.green import r0_kernel, r0_time_integral
        >>> oracle = r0_time_integral(0.2, 0.8, 1 + 2j)
        >>> abs(oracle - r0_kernel(0.2, 0.8, 1 + 2j).value) < 1e-6
        True
    """
    lam = complex(lam)
    if lam.imag <= 0.0:
        msg = f"The time integral needs Im lambda > 0, got {lam!r}."
        raise DomainError(msg)
    d2 = (x - y) ** 2
    mean = 0.5 * (x + y)

    def exponent(t: complex) -> complex:
        singular = 0j if d2 == 0.0 else 0.25j * d2 / t
        return singular - 1j * t * mean - 1j * t**3 / 12.0 + 1j * t * lam

    def integrand(t: complex) -> complex:
        if t == 0:
            return 0j if d2 else 1.0 + 0j
        return cmath.exp(exponent(t))

    legs = _contour(lam, lambda t: exponent(t).real if t else 0.0)
    value, error = _contour_integral(integrand, legs, epsabs)
    _check_converged(value, error, epsabs, "Time-integral kernel")
    return complex(_ORACLE_PREFACTOR * value)


def trace_y0_oscillatory(
    potential: Potential, lam: complex, *, epsabs: float = 1.0e-12
) -> complex:
    """
    `Tr Y0(lambda)` from the Fourier transform of the potential.

    Evaluates `exp(i pi/4) / sqrt(2) * integral over t > 0 of
    exp(i t lambda - i t^3 / 12) Vhat(t) dt / sqrt(t)` on a contour adapted to
    `lambda`, with `Vhat` continued to complex `t` by a composite Gauss-Legendre
    rule fine enough for the largest `|t|` on the contour.

    Args:
        potential: The potential.
        lam: The spectral parameter, `Im lambda >= 0`.
        epsabs: Absolute tolerance of each quadrature.

    Returns:
        The trace.

    Raises:
        DomainError: If `Im lambda < 0`.
    """
    lam = complex(lam)
    if lam.imag < 0.0:
        msg = f"The oscillatory trace needs Im lambda >= 0, got {lam!r}."
        raise DomainError(msg)
    if potential.vanishes:
        return 0j
    gamma = potential.gamma
    reach = 2.0 * math.sqrt(abs(lam)) + 12.0
    per_unit = 48 + int(1.5 * reach)
    nodes: list[Float64NDArray] = []
    weights: list[Float64NDArray] = []
    for a, b in potential.pieces:
        count = max(32, int(per_unit * (b - a)) + 1)
        base, base_weights = np.polynomial.legendre.leggauss(count)
        nodes.append(0.5 * (b - a) * (base + 1.0) + a)
        weights.append(0.5 * (b - a) * base_weights)
    x = np.concatenate(nodes)
    wv = np.concatenate(weights) * potential(x) / math.sqrt(2.0 * math.pi)

    def integrand(t: complex) -> complex:
        phase = 1j * t * (lam - x) - 1j * t**3 / 12.0
        return complex(np.sum(wv * np.exp(phase)))

    def log_modulus(t: complex) -> float:
        base = (1j * t * lam - 1j * t**3 / 12.0).real
        return base + gamma * max(t.imag, 0.0)

    legs = _contour(lam, log_modulus, saddle_shift=gamma)
    value, error = _contour_integral(integrand, legs, epsabs)
    _check_converged(value, error, epsabs, "Oscillatory trace")
    logger.debug(
        "Oscillatory trace at lambda = %s on %d leg(s), error %.2g.",
        lam,
        len(legs),
        error,
    )
    return complex(_TRACE_PREFACTOR * value)
