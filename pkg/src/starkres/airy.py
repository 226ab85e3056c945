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
Airy function evaluation on the whole complex plane.

Values are produced in a scaled form, `value = mantissa * exp(log_scale)` with a
real `log_scale`, so that arguments whose Airy values over- or underflow double
precision can still be combined in kernels and determinants. Four evaluation
paths are stitched together by modulus and argument of `z`:

- `series`: the two-series Maclaurin solution of `w'' = z w` for `|z| <= 4`.
- `taylor`: Taylor re-expansion of the Airy equation along the ray through `z`
  for `4 < |z| < 8`, started on the asymptotic circle where `Ai` is recessive
  (`|arg z| < pi/3`) and on the Maclaurin circle elsewhere.
- `asymptotic`: the large argument expansion in `exp(-zeta)`,
  `zeta = (2/3) z^(3/2)`, for `|z| >= 8` and `|arg z| <= 2pi/3`.
- `connection`: `Ai(z) = -w Ai(w z) - w^2 Ai(w^2 z)` with `w = exp(2pi i/3)` for
  `|z| >= 8` near the negative real axis, routing both terms through the
  asymptotic path.

Powers of `z` use the principal branch, `arg z` in `(-pi, pi]`.

Examples:
    >>> from starkres.airy import airy_ai
    >>> value = airy_ai(0.0)
    >>> round(value.ai.real, 12)
    0.355028053888
    >>> value.regime
    <AiryRegime.SERIES: 'series'>
"""

__all__ = [
    "DEFAULT_R_MAX",
    "MAX_EXPONENT",
    "AiryValue",
    "ScaledAiry",
    "airy_ai",
    "airy_ai_log",
    "airy_rotated",
    "scaled_airy",
]

import math
from dataclasses import dataclass
from typing import Final

import numpy as np
import numpy.typing as npt

from starkres.exceptions import AiryOverflowError, BranchCutError, DomainError
from starkres.typing import AiryRegime, Complex128NDArray, Float64NDArray

DEFAULT_R_MAX: Final = 1.0e5
MAX_EXPONENT: Final = 700.0

_C1: Final = 0.355028053887817239  # Ai(0)
_C2: Final = 0.258819403792806798  # -Ai'(0)
_TWO_SQRT_PI: Final = 2.0 * math.sqrt(math.pi)
_OMEGA: Final = complex(-0.5, math.sqrt(3.0) / 2.0)
_OMEGA_SQ: Final = _OMEGA.conjugate()
_SERIES_RADIUS: Final = 4.0
_ASYMPTOTIC_RADIUS: Final = 8.0
_RECESSIVE_ANGLE: Final = math.pi / 3.0
_CONNECTION_ANGLE: Final = 2.0 * math.pi / 3.0
_MAX_SERIES_TERMS: Final = 80
_MAX_ASYMPTOTIC_TERMS: Final = 60
_TAYLOR_STEPS: Final = 16
_TAYLOR_TERMS: Final = 32
_EPS: Final = float(np.finfo(np.float64).eps)
_REGIMES: Final = tuple(AiryRegime)


@dataclass(frozen=True, slots=True)
class AiryValue:
    """
    A single value of `Ai` and its derivative with an error estimate.

    Attributes:
        ai: The value `Ai(z)`.
        ai_prime: The derivative `Ai'(z)`.
        regime: The evaluation path that produced the value.
        est_abs_err: Estimated absolute error of `ai` and `ai_prime`.
    """

    ai: complex
    ai_prime: complex
    regime: AiryRegime
    est_abs_err: float


@dataclass(frozen=True, slots=True)
class ScaledAiry:
    """
    Vectorised Airy values in scaled form.

    The true values are `mantissa * exp(log_scale)` and
    `prime_mantissa * exp(log_scale)`; `err_mantissa` is the absolute error
    estimate on the same scale.

    Attributes:
        mantissa: Scaled values of `Ai`.
        prime_mantissa: Scaled values of `Ai'`.
        log_scale: Real log-scales shared by `Ai` and `Ai'`.
        err_mantissa: Scaled absolute error estimates.
        regime_codes: Index into `AiryRegime` of the path used per element.
    """

    mantissa: Complex128NDArray
    prime_mantissa: Complex128NDArray
    log_scale: Float64NDArray
    err_mantissa: Float64NDArray
    regime_codes: npt.NDArray[np.int8]

    def regime(self, index: int | tuple[int, ...] = 0) -> AiryRegime:
        """
        The evaluation path used for one element.

        Args:
            index: Index of the element.

        Returns:
            The regime of that element.
        """
        return _REGIMES[int(self.regime_codes[index])]

    def values(self) -> tuple[Complex128NDArray, Complex128NDArray]:
        """
        Unscaled values of `Ai` and `Ai'`.

        Returns:
            The pair `(Ai(z), Ai'(z))` as arrays.

        Raises:
            AiryOverflowError: If any value leaves the double precision range.
        """
        worst = float(np.max(np.abs(self.log_scale), initial=0.0))
        if worst > MAX_EXPONENT:
            msg = (
                f"Airy value with log-scale {worst:.1f} exceeds the double "
                "precision range, use the log-scaled evaluation instead."
            )
            raise AiryOverflowError(msg, log_scale=worst)
        factor = np.exp(self.log_scale)
        return self.mantissa * factor, self.prime_mantissa * factor


def _maclaurin(
    z: Complex128NDArray,
) -> tuple[Complex128NDArray, Complex128NDArray, Float64NDArray]:
    """Two-series solution `Ai = c1 f - c2 g` summed until the terms are negligible."""
    z3 = z**3
    t = np.ones_like(z)
    s = z.copy()
    p = np.zeros_like(z)
    q = np.ones_like(z)
    f, g, fp, gp = t.copy(), s.copy(), p.copy(), q.copy()
    biggest = np.maximum(1.0, np.abs(z))
    dropped = np.zeros(z.shape, dtype=np.float64)
    for k in range(1, _MAX_SERIES_TERMS + 1):
        t = t * z3 / ((3 * k) * (3 * k - 1))
        s = s * z3 / ((3 * k + 1) * (3 * k))
        p = z * z / 2.0 if k == 1 else p * z3 / ((3 * k - 3) * (3 * k - 1))
        q = q * z3 / ((3 * k - 2) * (3 * k))
        f += t
        g += s
        fp += p
        gp += q
        dropped = _C1 * (np.abs(t) + np.abs(p)) + _C2 * (np.abs(s) + np.abs(q))
        biggest = np.maximum(biggest, dropped)
        if np.all(dropped <= _EPS * 1.0e-3 * biggest):
            break
    ai = _C1 * f - _C2 * g
    ai_prime = _C1 * fp - _C2 * gp
    return ai, ai_prime, dropped + 8.0 * _EPS * biggest


def _asymptotic_sums(
    zeta: Complex128NDArray,
) -> tuple[Complex128NDArray, Complex128NDArray, Float64NDArray]:
    """
    Sum the asymptotic series of `Ai` and `Ai'` in powers of `-1/zeta`.

    Each element stops at its smallest term; the magnitude of the last kept
    term is returned as the relative error estimate.
    """
    sum_u = np.ones_like(zeta)
    sum_v = np.ones_like(zeta)
    power = np.ones_like(zeta)
    last = np.ones(zeta.shape, dtype=np.float64)
    active = np.ones(zeta.shape, dtype=bool)
    u = 1.0
    with np.errstate(over="ignore", invalid="ignore"):
        inverse = -1.0 / zeta
        for k in range(1, _MAX_ASYMPTOTIC_TERMS + 1):
            u *= (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216 * k)
            v = -(6 * k + 1) / (6 * k - 1) * u
            power = power * inverse
            term_u = u * power
            term_v = v * power
            size = np.maximum(np.abs(term_u), np.abs(term_v))
            active &= size <= last
            sum_u = np.where(active, sum_u + term_u, sum_u)
            sum_v = np.where(active, sum_v + term_v, sum_v)
            last = np.where(active, size, last)
            active &= size > _EPS * np.abs(sum_u)
            if not active.any():
                break
    return sum_u, sum_v, last + 4.0 * _EPS


def _asymptotic(z: Complex128NDArray) -> ScaledAiry:
    """Large argument expansion in the sector `|arg z| <= 2pi/3`."""
    root = np.sqrt(z)
    zeta = (2.0 / 3.0) * z * root
    quarter = np.sqrt(root)
    sum_u, sum_v, rel_err = _asymptotic_sums(zeta)
    phase = np.exp(-1j * zeta.imag) / _TWO_SQRT_PI
    mantissa = phase / quarter * sum_u
    prime_mantissa = -quarter * phase * sum_v
    err = rel_err * np.maximum(np.abs(mantissa), np.abs(prime_mantissa))
    codes = np.full(z.shape, _REGIMES.index(AiryRegime.ASYMPTOTIC), dtype=np.int8)
    return ScaledAiry(mantissa, prime_mantissa, -zeta.real, err, codes)


def _connection(z: Complex128NDArray) -> ScaledAiry:
    """Route `Ai` near the negative axis through the rotated arguments."""
    first = _asymptotic(_OMEGA * z)
    second = _asymptotic(_OMEGA_SQ * z)
    scale = np.maximum(first.log_scale, second.log_scale)
    w1 = np.exp(first.log_scale - scale)
    w2 = np.exp(second.log_scale - scale)
    mantissa = -_OMEGA * first.mantissa * w1 - _OMEGA_SQ * second.mantissa * w2
    prime_mantissa = (
        -_OMEGA_SQ * first.prime_mantissa * w1 - _OMEGA * second.prime_mantissa * w2
    )
    err = first.err_mantissa * w1 + second.err_mantissa * w2
    codes = np.full(z.shape, _REGIMES.index(AiryRegime.CONNECTION), dtype=np.int8)
    return ScaledAiry(mantissa, prime_mantissa, scale, err, codes)


def _taylor_step(
    a: Complex128NDArray,
    w: Complex128NDArray,
    dw: Complex128NDArray,
    h: Complex128NDArray,
) -> tuple[Complex128NDArray, Complex128NDArray]:
    """
    Advance `(w, w')` from `a` to `a + h` with the Taylor series of `w'' = z w`.

    With `d_n = c_n h^n` the coefficients obey
    `d_{n+2} = (a h^2 d_n + h^3 d_{n-1}) / ((n + 2)(n + 1))`.
    """
    ah2 = a * h * h
    h3 = h * h * h
    previous = np.zeros_like(w)
    terms = [w, dw * h]
    for n in range(_TAYLOR_TERMS - 2):
        current = (ah2 * terms[n] + h3 * previous) / ((n + 2) * (n + 1))
        previous = terms[n]
        terms.append(current)
    value = np.sum(terms, axis=0)
    slope = np.sum([n * term for n, term in enumerate(terms)], axis=0) / h
    return value, slope


def _taylor(z: Complex128NDArray) -> ScaledAiry:
    """Propagate `Ai` along the ray through `z` across the middle annulus."""
    direction = np.exp(1j * np.angle(z))
    inward = np.abs(np.angle(z)) < _RECESSIVE_ANGLE
    start = np.where(inward, _ASYMPTOTIC_RADIUS, _SERIES_RADIUS) * direction
    w = np.empty_like(z)
    dw = np.empty_like(z)
    rel_err = np.empty(z.shape, dtype=np.float64)
    if inward.any():
        far = _asymptotic(start[inward])
        far_ai, far_prime = far.values()
        w[inward], dw[inward] = far_ai, far_prime
        rel_err[inward] = far.err_mantissa / np.maximum(
            np.abs(far.mantissa), np.abs(far.prime_mantissa)
        )
    if (~inward).any():
        near_ai, near_prime, near_err = _maclaurin(start[~inward])
        w[~inward], dw[~inward] = near_ai, near_prime
        rel_err[~inward] = near_err / np.maximum(np.abs(near_ai), np.abs(near_prime))
    h = (z - start) / _TAYLOR_STEPS
    a = start
    for _ in range(_TAYLOR_STEPS):
        w, dw = _taylor_step(a, w, dw, h)
        a = a + h
    rel_err = rel_err + 64.0 * _TAYLOR_STEPS * _EPS
    err = rel_err * np.maximum(np.abs(w), np.abs(dw))
    codes = np.full(z.shape, _REGIMES.index(AiryRegime.TAYLOR), dtype=np.int8)
    return ScaledAiry(w, dw, np.zeros(z.shape), err, codes)


def _as_complex_array(z: npt.ArrayLike, r_max: float) -> Complex128NDArray:
    """Validate arguments and return them as a complex array."""
    values = np.asarray(z, dtype=np.complex128)
    if not np.all(np.isfinite(values)):
        msg = "Airy arguments must be finite."
        raise DomainError(msg)
    largest = float(np.max(np.abs(values), initial=0.0))
    if largest > r_max:
        msg = f"Airy argument modulus {largest:.6g} exceeds the supported {r_max:.6g}."
        raise DomainError(msg)
    return values


def scaled_airy(z: npt.ArrayLike, *, r_max: float = DEFAULT_R_MAX) -> ScaledAiry:
    """
    Evaluate `Ai` and `Ai'` in scaled form on an array of arguments.

    Args:
        z: Arguments, any shape.
        r_max: Largest admissible `|z|`.

    Returns:
        Scaled values with the shape of `z`.

    Raises:
        DomainError: If an argument is not finite or exceeds `r_max`.

    Examples:
        >>> import numpy as np
        >>> from starkres.airy import scaled_airy
        >>> scaled = scaled_airy([0.0, 5.0, 400.0])
        >>> [scaled.regime(i).value for i in range(3)]
        ['series', 'taylor', 'asymptotic']
        >>> bool(scaled.log_scale[2] < -5000.0)
        True
    """
    values = _as_complex_array(z, r_max)
    shape = values.shape
    flat = values.ravel()
    modulus = np.abs(flat)
    angle = np.abs(np.angle(flat))
    mantissa = np.empty_like(flat)
    prime_mantissa = np.empty_like(flat)
    log_scale = np.zeros(flat.shape, dtype=np.float64)
    err = np.empty(flat.shape, dtype=np.float64)
    codes = np.empty(flat.shape, dtype=np.int8)

    series = modulus <= _SERIES_RADIUS
    taylor = (modulus > _SERIES_RADIUS) & (modulus < _ASYMPTOTIC_RADIUS)
    large = modulus >= _ASYMPTOTIC_RADIUS
    asymptotic = large & (angle <= _CONNECTION_ANGLE)
    connection = large & (angle > _CONNECTION_ANGLE)

    if series.any():
        ai, ai_prime, series_err = _maclaurin(flat[series])
        mantissa[series] = ai
        prime_mantissa[series] = ai_prime
        err[series] = series_err
        codes[series] = _REGIMES.index(AiryRegime.SERIES)
    for mask, path in ((taylor, _taylor), (asymptotic, _asymptotic)):
        if mask.any():
            part = path(flat[mask])
            mantissa[mask] = part.mantissa
            prime_mantissa[mask] = part.prime_mantissa
            log_scale[mask] = part.log_scale
            err[mask] = part.err_mantissa
            codes[mask] = part.regime_codes
    if connection.any():
        part = _connection(flat[connection])
        mantissa[connection] = part.mantissa
        prime_mantissa[connection] = part.prime_mantissa
        log_scale[connection] = part.log_scale
        err[connection] = part.err_mantissa
        codes[connection] = part.regime_codes

    real = flat.imag == 0.0
    mantissa[real] = mantissa[real].real
    prime_mantissa[real] = prime_mantissa[real].real
    return ScaledAiry(
        mantissa.reshape(shape),
        prime_mantissa.reshape(shape),
        log_scale.reshape(shape),
        err.reshape(shape),
        codes.reshape(shape),
    )


def airy_ai(z: complex, *, r_max: float = DEFAULT_R_MAX) -> AiryValue:
    """
    Evaluate `Ai(z)` and `Ai'(z)`.

    Args:
        z: The argument.
        r_max: Largest admissible `|z|`.

    Returns:
        The value, derivative, evaluation path and error estimate. Real
        arguments give values with exactly zero imaginary part.

    Raises:
        AiryOverflowError: If `Ai(z)` leaves the double precision range; use
            `airy_ai_log` instead.

    Examples:
        >>> from starkres.airy import airy_ai
        >>> value = airy_ai(-2.338107410459767)
        >>> abs(value.ai) < 1e-12
        True
        >>> airy_ai(400.0)
        Traceback (most recent call last):
            ...
        starkres.exceptions._numerical_errors.AiryOverflowError: Airy value with log-scale 5333.3 exceeds the double precision range, use the log-scaled evaluation instead.
    """  # noqa: E501
    scaled = scaled_airy(z, r_max=r_max)
    ai, ai_prime = scaled.values()
    return AiryValue(
        ai=complex(ai),
        ai_prime=complex(ai_prime),
        regime=scaled.regime(()),
        est_abs_err=float(scaled.err_mantissa * np.exp(scaled.log_scale)),
    )


def airy_ai_log(
    z: complex,
    *,
    force_asymptotic: bool = False,
    branch_eps: float = 1.0e-8,
    r_max: float = DEFAULT_R_MAX,
) -> tuple[complex, complex]:
    """
    Logarithms of `Ai(z)` and `Ai'(z)`, safe from overflow.

    The imaginary parts are determined up to multiples of `2 pi`.

    Args:
        z: The argument.
        force_asymptotic: Use the asymptotic expansion regardless of `|z|`,
            which gives a logarithm continuous in `z` off the negative axis.
        branch_eps: Angular distance from `arg z = pi` within which the forced
            asymptotic path is refused.
        r_max: Largest admissible `|z|`.

    Returns:
        The pair `(log Ai(z), log Ai'(z))`.

    Raises:
        BranchCutError: If the asymptotic path is forced next to the negative
            real axis.

    Examples:
        >>> import math
        >>> from starkres.airy import airy_ai_log
        >>> log_ai, _ = airy_ai_log(400.0)
        >>> expected = -(2 / 3) * 400**1.5 - 0.25 * math.log(400) - math.log(
        ...     2 * math.sqrt(math.pi)
        ... )
        >>> abs(log_ai.real - expected) / abs(expected) < 1e-6
        True
        >>> airy_ai_log(-10.0, force_asymptotic=True)
        Traceback (most recent call last):
            ...
        starkres.exceptions._numerical_errors.BranchCutError: Cannot force the asymptotic Airy path at arg z = 3.14159, too close to the branch cut.
    """  # noqa: E501
    if force_asymptotic:
        value = _as_complex_array(z, r_max).reshape(1)
        angle = float(np.angle(value[0]))
        if abs(angle) > math.pi - branch_eps:
            msg = (
                f"Cannot force the asymptotic Airy path at arg z = {angle:.5f}, "
                "too close to the branch cut."
            )
            raise BranchCutError(msg)
        root = np.sqrt(value)
        zeta = (2.0 / 3.0) * value * root
        sum_u, sum_v, _ = _asymptotic_sums(zeta)
        base = -zeta - math.log(_TWO_SQRT_PI)
        quarter_log = 0.25 * np.log(value)
        log_ai = base - quarter_log + np.log(sum_u)
        log_ai_prime = base + quarter_log + np.log(-sum_v)
        return complex(log_ai[0]), complex(log_ai_prime[0])
    scaled = scaled_airy(z, r_max=r_max)
    with np.errstate(divide="ignore"):
        log_ai = np.log(scaled.mantissa) + scaled.log_scale
        log_ai_prime = np.log(scaled.prime_mantissa) + scaled.log_scale
    return complex(log_ai), complex(log_ai_prime)


def airy_rotated(
    z: complex, *, conjugate: bool = False, r_max: float = DEFAULT_R_MAX
) -> AiryValue:
    """
    Evaluate the rotated solution `Ai(w z)` of the Airy equation, `w = exp(2 pi i/3)`.

    Args:
        z: The argument before rotation.
        conjugate: Rotate by `exp(-2 pi i/3)` instead.
        r_max: Largest admissible `|z|`.

    Returns:
        `Ai(w z)` in `ai` and the `z`-derivative `w Ai'(w z)` in `ai_prime`.

    Examples:
        >>> from starkres.airy import airy_ai, airy_rotated
        >>> airy_rotated(0.0).ai == airy_ai(0.0).ai
        True
    """
    rotation = _OMEGA_SQ if conjugate else _OMEGA
    scaled = scaled_airy(rotation * complex(z), r_max=r_max)
    ai, ai_prime = scaled.values()
    return AiryValue(
        ai=complex(ai),
        ai_prime=complex(rotation * ai_prime),
        regime=scaled.regime(()),
        est_abs_err=float(scaled.err_mantissa * np.exp(scaled.log_scale)),
    )
