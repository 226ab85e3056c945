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
Continued determinants, resonance search and counting.

Resonances are the zeros of the entire extension of `D_plus` in the lower
half-plane. Since `conj D_plus(lambda) = D_minus(conj lambda)`, they are found
as the conjugates of the zeros of `D_minus` in the upper half-plane, where

    D_minus(lambda) = D_plus(lambda) (1 - 2 pi i psi^T V_S (I + Y0)^(-1) psi)

only involves quantities that are analytic there. The search certifies its
result with the argument principle on a rectangle covering the upper half-disc
and subdivides that rectangle until every cell holding zeros is resolved.
"""

__all__ = [
    "Resonance",
    "ResonanceSet",
    "count_zeros_contour",
    "counting_exponent",
    "counting_function",
    "d_minus_upper",
    "d_plus_lower",
    "find_resonances",
    "log_d_minus_upper",
    "log_d_plus_lower",
]

import cmath
import logging
import math
from collections.abc import Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Final

import numpy as np

from starkres.contour import LogFunction, Rectangle, cauchy_derivative, winding_number
from starkres.exceptions import (
    CompletenessError,
    DomainError,
    ZeroOnContourError,
)
from starkres.fredholm import QuadratureRule, det_side, logdet_prime
from starkres.potential import Potential
from starkres.scattering import reduced_amplitude
from starkres.typing import Side

logger = logging.getLogger(__name__)

DEFAULT_GUARD: Final = 1.0e-3
_TWO_PI_I: Final = 2j * math.pi
_LINEAR_LIMIT: Final = 600.0
_CONTOUR_ATTEMPTS: Final = 5
_SPLIT_FRACTIONS: Final = (0.5, 0.43, 0.57, 0.36, 0.64, 0.29)
_MIN_DIAMETER: Final = 1.0e-6
_MAX_DEPTH: Final = 40
_NEWTON_STEPS: Final = 50
_NEWTON_TOL: Final = 1.0e-12
_CAUCHY_RADIUS: Final = 1.0e-3
_RESIDUAL_RATIO: Final = 1.0e-8


@dataclass(frozen=True, slots=True)
class Resonance:
    """
    A zero of `D_plus` in the lower half-plane.

    Attributes:
        lam: The location, `Im lam < 0`.
        multiplicity: Number of zeros merged at this location.
        refine_residual: `|D_minus|` at the conjugate point after refinement.
        newton_converged: Whether Newton's method converged; clusters that
            were only resolved by subdivision carry `False`.
    """

    lam: complex
    multiplicity: int = 1
    refine_residual: float = 0.0
    newton_converged: bool = True

    def __post_init__(self) -> None:
        """Check the location and multiplicity."""
        if not self.lam.imag < 0.0 or self.multiplicity < 1:
            msg = (
                f"Invalid resonance {self.lam!r} "
                f"with multiplicity {self.multiplicity}."
            )
            raise ValueError(msg)


@dataclass(frozen=True, slots=True)
class ResonanceSet:
    """
    Resonances certified complete within a radius, with the Hadamard data.

    Attributes:
        items: Resonances sorted by modulus, ties by argument.
        search_radius: Every resonance with `|lam| <= search_radius` is listed.
        p_const: `D_plus'(0) / D_plus(0)`.
        d_plus_at_zero: `D_plus(0)`.
        certified: Whether the argument-principle count matched.
        rule_size: Number of quadrature nodes used.
    """

    items: tuple[Resonance, ...]
    search_radius: float
    p_const: complex
    d_plus_at_zero: complex
    certified: bool = True
    rule_size: int = 0

    def __len__(self) -> int:
        """Number of distinct locations."""
        return len(self.items)

    def __iter__(self) -> Iterator[Resonance]:
        """Iterate over the resonances in order."""
        return iter(self.items)

    def within(self, radius: float) -> tuple[Resonance, ...]:
        """The resonances with `|lam| <= radius`."""
        return tuple(item for item in self.items if abs(item.lam) <= radius)

    def total_multiplicity(self, radius: float | None = None) -> int:
        """Number of resonances, counted with multiplicity."""
        items = self.items if radius is None else self.within(radius)
        return sum(item.multiplicity for item in items)


def _log_one_minus(mantissa: complex, log_scale: float) -> complex:
    """`log(1 - 2 pi i q)` for `q = mantissa * exp(log_scale)`."""
    if mantissa == 0:
        return 0j
    t = -_TWO_PI_I * mantissa
    if log_scale + math.log(abs(t)) < _LINEAR_LIMIT:
        return cmath.log(1.0 + t * math.exp(log_scale))
    return cmath.log(t) + log_scale


def _check_upper(lam: complex) -> complex:
    lam = complex(lam)
    if lam.imag < 0.0:
        msg = f"Expected Im lambda >= 0, got {lam!r}."
        raise DomainError(msg)
    return lam


def log_d_minus_upper(
    potential: Potential, lam: complex, rule: QuadratureRule
) -> complex:
    """
    A logarithm of the extension of `D_minus` to the closed upper half-plane.

    Sums logarithms so that the exponential growth along `arg lambda = pi/3`
    never materialises in linear scale.

    Args:
        potential: The potential.
        lam: A spectral parameter with `Im lambda >= 0`.
        rule: The quadrature rule.

    Returns:
        A logarithm of `D_minus(lambda)`.
    """
    lam = _check_upper(lam)
    if potential.vanishes:
        return 0j
    log_plus = det_side(potential, lam, rule, Side.PLUS).log_d
    mantissa, scale = reduced_amplitude(potential, lam, rule)
    return log_plus + _log_one_minus(mantissa, scale)


def d_minus_upper(potential: Potential, lam: complex, rule: QuadratureRule) -> complex:
    """
    The extension of `D_minus` to the closed upper half-plane, `S D_plus`.

    Args:
        potential: The potential.
        lam: A spectral parameter with `Im lambda >= 0`.
        rule: The quadrature rule.

    Returns:
        The value `D_minus(lambda)`.

    Examples:
        >>> from starkres.fredholm import build_rule
        >>> from starkres.potential import make_potential
        >>> from starkres.resonance import d_minus_upper
        >>> zero = make_potential({"gamma": 1.0, "form": "zero"})
        >>> d_minus_upper(zero, 2 + 3j, build_rule(16, 1.0))
        (1+0j)
    """
    return cmath.exp(log_d_minus_upper(potential, lam, rule))


def log_d_plus_lower(
    potential: Potential, lam: complex, rule: QuadratureRule
) -> complex:
    """
    A logarithm of the entire extension of `D_plus` below the real axis.

    Args:
        potential: The potential.
        lam: A spectral parameter with `Im lambda < 0`.
        rule: The quadrature rule.

    Returns:
        `conj(log D_minus(conj lambda))`.
    """
    lam = complex(lam)
    if lam.imag >= 0.0:
        msg = f"Expected Im lambda < 0, got {lam!r}."
        raise DomainError(msg)
    return log_d_minus_upper(potential, lam.conjugate(), rule).conjugate()


def d_plus_lower(potential: Potential, lam: complex, rule: QuadratureRule) -> complex:
    """
    The entire extension of `D_plus` below the real axis.

    Args:
        potential: The potential.
        lam: A spectral parameter with `Im lambda < 0`.
        rule: The quadrature rule.

    Returns:
        The value `D_plus(lambda)`; its zeros are the resonances.
    """
    return cmath.exp(log_d_plus_lower(potential, lam, rule))


def count_zeros_contour(
    potential: Potential, contour: Rectangle, rule: QuadratureRule
) -> int:
    """
    Number of zeros of `D_minus` inside a rectangle in the upper half-plane.

    These are the conjugates of the resonances. When the boundary runs into a
    zero the rectangle is grown slightly and the count retried.

    Args:
        potential: The potential.
        contour: A rectangle with `im_min >= 0`.
        rule: The quadrature rule.

    Returns:
        The winding number of `D_minus` around the rectangle.

    Raises:
        DomainError: If the rectangle reaches below the real axis.
        ZeroOnContourError: If every perturbed contour fails.
    """
    if contour.im_min < 0.0:
        msg = f"Contour {contour!r} reaches into the lower half-plane."
        raise DomainError(msg)
    if potential.vanishes:
        return 0
    log_f = partial(log_d_minus_upper, potential, rule=rule)
    return _count_perturbed(log_f, contour)[1]


def _count_perturbed(log_f: LogFunction, contour: Rectangle) -> tuple[Rectangle, int]:
    error: ZeroOnContourError | None = None
    for attempt in range(_CONTOUR_ATTEMPTS):
        rectangle = contour.inflated(0.01 * attempt * contour.diameter)
        try:
            return rectangle, winding_number(log_f, rectangle)
        except ZeroOnContourError as exc:
            logger.info("Contour attempt %d failed: %s", attempt + 1, exc)
            error = exc
    assert error is not None  # noqa: S101
    raise error


@dataclass(frozen=True, slots=True)
class _Cell:
    rectangle: Rectangle
    count: int
    depth: int


def _newton(
    potential: Potential, rule: QuadratureRule, cell: Rectangle
) -> tuple[complex, float, bool]:
    """Newton's method on `D_minus` started at the cell center."""

    def f(z: complex) -> complex:
        return d_minus_upper(potential, z, rule)

    radius = min(_CAUCHY_RADIUS, 0.125 * cell.diameter)
    margin = 0.1 * cell.diameter
    z = cell.center
    scale = 1.0
    for _ in range(_NEWTON_STEPS):
        derivative, scale = cauchy_derivative(f, z, radius)
        value = f(z)
        if derivative == 0:
            return z, abs(value), False
        step = value / derivative
        z -= step
        if z.imag <= radius or not (
            cell.re_min - margin <= z.real <= cell.re_max + margin
            and cell.im_min - margin <= z.imag <= cell.im_max + margin
        ):
            return z, math.inf, False
        if abs(step) <= _NEWTON_TOL * max(1.0, abs(z)):
            residual = abs(f(z))
            if residual > _RESIDUAL_RATIO * scale:
                logger.warning(
                    "Zero at %s refined to residual %.3g on a local scale %.3g.",
                    z,
                    residual,
                    scale,
                )
            return z, residual, cell.contains(z)
    return z, abs(f(z)), False


def _resolve(
    potential: Potential, rule: QuadratureRule, cell: _Cell
) -> tuple[list[Resonance], list[_Cell]]:
    """Refine a cell's zero or split it into counted children."""
    rectangle = cell.rectangle
    if cell.count == 1:
        z, residual, converged = _newton(potential, rule, rectangle)
        if converged:
            return [Resonance(z.conjugate(), 1, residual, newton_converged=True)], []
    if rectangle.diameter < _MIN_DIAMETER:
        z = rectangle.center
        residual = abs(d_minus_upper(potential, z, rule))
        logger.info("Cluster of %d zero(s) at %s after subdivision.", cell.count, z)
        merged = Resonance(
            z.conjugate(), cell.count, residual, newton_converged=False
        )
        return [merged], []
    if cell.depth >= _MAX_DEPTH:
        msg = f"Subdivision depth cap reached at {rectangle!r}."
        raise CompletenessError(msg, expected=cell.count, found=0)
    log_f = partial(log_d_minus_upper, potential, rule=rule)
    found = -1
    for fraction in _SPLIT_FRACTIONS:
        quarters = rectangle.quarters(fraction)
        try:
            counts = [winding_number(log_f, quarter) for quarter in quarters]
        except ZeroOnContourError:
            continue
        found = sum(counts)
        if found == cell.count:
            children = [
                _Cell(quarter, count, cell.depth + 1)
                for quarter, count in zip(quarters, counts, strict=True)
                if count
            ]
            return [], children
    msg = f"Subcells of {rectangle!r} do not account for its {cell.count} zero(s)."
    raise CompletenessError(msg, expected=cell.count, found=max(found, 0))


def find_resonances(
    potential: Potential,
    radius: float,
    rule: QuadratureRule,
    *,
    guard: float = DEFAULT_GUARD,
    threads: int = 1,
) -> ResonanceSet:
    """
    All resonances with `|lambda| <= radius`, certified by the argument principle.

    The rectangle `[-radius, radius] x [guard, radius]` is wound once; cells
    are then split into quarters level by level, each level's cells handled in
    a thread pool, until every cell holding one zero has been refined by
    Newton's method or has shrunk below `1e-6`.

    Args:
        potential: The potential.
        radius: The search radius.
        rule: The quadrature rule.
        guard: Height of the strip above the real axis left out of the search.
        threads: Worker threads.

    Returns:
        The resonance set.

    Raises:
        CompletenessError: If the located zeros do not match the count.
    """
    if not radius > guard:
        msg = f"Search radius must exceed the guard strip, got {radius}."
        raise DomainError(msg)
    if potential.vanishes:
        return ResonanceSet(
            items=(),
            search_radius=radius,
            p_const=0j,
            d_plus_at_zero=1 + 0j,
            rule_size=rule.size,
        )
    log_f = partial(log_d_minus_upper, potential, rule=rule)
    root, expected = _count_perturbed(log_f, Rectangle(-radius, radius, guard, radius))
    logger.info("Argument principle: %d zero(s) in %s.", expected, root)
    pending = [_Cell(root, expected, 0)] if expected else []
    located: list[Resonance] = []
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        while pending:
            outcomes = list(pool.map(partial(_resolve, potential, rule), pending))
            pending = []
            for zeros, children in outcomes:
                located.extend(zeros)
                pending.extend(children)
            logger.debug(
                "%d cell(s) left, %d zero(s) located.", len(pending), len(located)
            )
    found = sum(item.multiplicity for item in located)
    if found != expected:
        msg = f"Located {found} zero(s) where the contour counts {expected}."
        raise CompletenessError(msg, expected=expected, found=found)
    items = sorted(
        (item for item in located if abs(item.lam) <= radius),
        key=lambda item: (abs(item.lam), cmath.phase(item.lam)),
    )
    return ResonanceSet(
        items=tuple(items),
        search_radius=radius,
        p_const=logdet_prime(potential, 0.0, rule, Side.PLUS),
        d_plus_at_zero=det_side(potential, 0.0, rule, Side.PLUS).d_value,
        rule_size=rule.size,
    )


def counting_function(resonances: ResonanceSet, r: float) -> int:
    """
    `N(r)`, the number of resonances with `|lambda| <= r`, with multiplicity.

    Args:
        resonances: A certified resonance set.
        r: The radius.

    Returns:
        The count.

    Raises:
        DomainError: If `r` exceeds the certified radius.

    Examples:
        >>> from starkres.resonance import Resonance, ResonanceSet, counting_function
        >>> items = (Resonance(3 - 1j), Resonance(5 - 2j, 2))
        >>> rs = ResonanceSet(items, 10.0, 0j, 1 + 0j)
        >>> [counting_function(rs, r) for r in (1.0, 4.0, 6.0)]
        [0, 1, 3]
    """
    if r > resonances.search_radius:
        msg = f"Radius {r} exceeds the certified radius {resonances.search_radius}."
        raise DomainError(msg)
    return resonances.total_multiplicity(r)


def counting_exponent(resonances: ResonanceSet, r_min: float = 0.0) -> float:
    """
    Least-squares slope of `log N(r)` against `log r`.

    The fit uses the staircase corners `r = |lambda_n|`, `N = n` with
    `|lambda_n| >= r_min`.

    Args:
        resonances: A certified resonance set.
        r_min: Smallest modulus included in the fit.

    Returns:
        The fitted growth exponent.

    Raises:
        DomainError: If fewer than three resonances are available.
    """
    moduli = np.repeat(
        [abs(item.lam) for item in resonances],
        [item.multiplicity for item in resonances],
    )
    counts = np.arange(1, moduli.size + 1, dtype=np.float64)
    keep = moduli >= r_min
    if np.count_nonzero(keep) < 3:  # noqa: PLR2004
        msg = "At least three resonances are needed to fit a growth exponent."
        raise DomainError(msg)
    slope, _ = np.polyfit(np.log(moduli[keep]), np.log(counts[keep]), 1)
    return float(slope)
