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
Compactly supported potentials on `[0, gamma]`.

A `Potential` is built from a `PotentialDescriptor`, the YAML/JSON document read
by the CLI, by `make_potential`. Construction validates the descriptor as a
whole and reports every problem at once through `StarkresValidationError`.

Descriptor forms:

- `zero`: `V = 0`.
- `box`: `coeffs = [h]`, `V = h` on `[0, gamma]`.
- `linear`: `coeffs = [a, b]`, `V = a + b x`.
- `sine`: `coeffs = [A, k]`, `V = A sin(k x)`.
- `poly`: ascending coefficients, either one list or one list per piece with
  interior `breaks`.
- `samples`: values `v` on a grid `x` covering `[0, gamma]`, interpolated by a
  cubic spline.

Examples:
    >>> from starkres.potential import make_potential, v0_integral
    >>> linear = {"gamma": 1.0, "form": "linear", "coeffs": [1.0, 0.5]}
    >>> potential = make_potential(linear)
    >>> potential.kind
    <PotentialKind.CLOSED_FORM: 'closed_form'>
    >>> round(v0_integral(potential), 12)
    1.25
    >>> float(potential(2.0))
    0.0
"""  # noqa: E501

__all__ = [
    "Potential",
    "PotentialDescriptor",
    "PotentialKind",
    "SampleData",
    "SignSplit",
    "fourier_hat",
    "load_potential",
    "make_potential",
    "split_sign",
    "v0_integral",
]

import logging
import math
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field, replace
from enum import StrEnum
from pathlib import Path
from typing import Any, Final, Literal

import numpy as np
import numpy.typing as npt
from numpy.polynomial import Polynomial
from pydantic import BaseModel, ConfigDict
from pydantic import ValidationError as PydanticValidationError
from scipy.integrate import quad
from scipy.interpolate import CubicSpline

from starkres.exceptions import StarkresValidationError, ValidationIssue
from starkres.typing import Float64NDArray
from starkres.yaml import YamlSerializableBaseModel

logger = logging.getLogger(__name__)

_QUAD_TOL: Final = 1.0e-13
_QUAD_LIMIT: Final = 400
_SUPPORT_TOL: Final = 1.0e-9
_CONTINUITY_TOL: Final = 1.0e-10
_L2_NODES: Final = 64
_SQRT_TWO_PI: Final = math.sqrt(2.0 * math.pi)
_COEFF_COUNTS: Final = {"box": 1, "linear": 2, "sine": 2}

Profile = Callable[[Float64NDArray], Float64NDArray]


class PotentialKind(StrEnum):
    """How the values of a potential are represented."""

    GRID_SAMPLES = "grid_samples"
    PIECEWISE_POLYNOMIAL = "piecewise_polynomial"
    CLOSED_FORM = "closed_form"


class SampleData(BaseModel):
    """Sampled values `v` of a potential on the grid `x`."""

    model_config = ConfigDict(extra="forbid")

    x: list[float]
    v: list[float]


class PotentialDescriptor(YamlSerializableBaseModel):
    """
    Document describing a potential, as read from YAML or JSON.

    Only the shape of the document is checked here; the mathematical checks
    happen in `make_potential` so that all of them are reported together.

    Attributes:
        gamma: Right endpoint of the support `[0, gamma]`.
        form: Which family the potential belongs to.
        coeffs: Parameters of the family, see the module documentation.
        breaks: Interior breakpoints of a piecewise polynomial.
        samples: Sampled values for the `samples` form.
    """

    model_config = ConfigDict(extra="forbid")

    gamma: float
    form: Literal["zero", "box", "linear", "sine", "poly", "samples"]
    coeffs: list[float] | list[list[float]] | None = None
    breaks: list[float] | None = None
    samples: SampleData | None = None


@dataclass(frozen=True, eq=False)
class Potential:
    """
    A real potential supported on `[0, gamma]`.

    Calling the potential evaluates it, returning exactly zero outside the
    support. Instances are immutable and safe to share between threads.

    Attributes:
        gamma: Right endpoint of the support.
        kind: The value representation.
        condition_c: Whether `V` is absolutely continuous on `(0, gamma)`.
        v_at_zero: The limit `V(0+)`.
        v_at_gamma: The limit `V(gamma-)`.
        breakpoints: Interior points where `V` is not smooth.
        vanishes: Whether `V` is identically zero.
        exact_integral: The integral of `V` when the representation gives it
            exactly, as for spline samples.
        profile: Evaluator of `V` on points inside the support.
    """

    gamma: float
    kind: PotentialKind
    condition_c: bool
    v_at_zero: float
    v_at_gamma: float
    breakpoints: tuple[float, ...] = ()
    vanishes: bool = False
    exact_integral: float | None = None
    profile: Profile = field(repr=False, default=np.zeros_like)

    def __call__(self, x: npt.ArrayLike) -> Float64NDArray:
        """
        Evaluate the potential, zero outside `[0, gamma]`.

        Args:
            x: Points at which to evaluate.

        Returns:
            The values `V(x)` with the shape of `x`.
        """
        points = np.asarray(x, dtype=np.float64)
        values = np.zeros(points.shape, dtype=np.float64)
        inside = (points >= 0.0) & (points <= self.gamma)
        if inside.any() and not self.vanishes:
            values[inside] = self.profile(points[inside])
        return values

    @property
    def pieces(self) -> tuple[tuple[float, float], ...]:
        """The maximal subintervals of `[0, gamma]` on which `V` is smooth."""
        edges = (0.0, *self.breakpoints, self.gamma)
        return tuple(zip(edges[:-1], edges[1:], strict=True))

    def scaled(self, factor: float) -> "Potential":
        """
        The potential multiplied by a real constant.

        Args:
            factor: The multiplier.

        Returns:
            A new potential equal to `factor * V`.
        """
        profile = self.profile
        return replace(
            self,
            v_at_zero=factor * self.v_at_zero,
            v_at_gamma=factor * self.v_at_gamma,
            vanishes=self.vanishes or factor == 0.0,
            exact_integral=None
            if self.exact_integral is None
            else factor * self.exact_integral,
            profile=lambda x: factor * profile(x),
        )


@dataclass(frozen=True, eq=False)
class SignSplit:
    """
    The factorisation `V = |V|^(1/2) * (|V|^(1/2) sign V)`.

    Each attribute is a vectorised map of `x`; `sign(0) = 0`, so both factors
    vanish wherever `V` does.
    """

    sqrt_abs: Profile
    signed_sqrt: Profile
    sign: Profile


def _quad(func: Callable[[float], float], a: float, b: float, **kwargs: Any) -> float:
    """Adaptive Gauss-Kronrod integral with the package tolerances."""
    value, _ = quad(
        func, a, b, epsabs=_QUAD_TOL, epsrel=_QUAD_TOL, limit=_QUAD_LIMIT, **kwargs
    )
    return float(value)


def _closed_form(
    descriptor: PotentialDescriptor, issues: list[ValidationIssue]
) -> tuple[Profile, bool]:
    """Evaluator for the `box`, `linear` and `sine` forms."""
    coeffs = descriptor.coeffs or []
    expected = _COEFF_COUNTS[descriptor.form]
    if len(coeffs) != expected or not all(isinstance(c, float) for c in coeffs):
        issues.append(
            ValidationIssue(
                msg=f"Form '{descriptor.form}' takes {expected} number(s) in coeffs.",
                kind="invalid_coeffs",
                ctx={"coeffs": coeffs},
            )
        )
        return np.zeros_like, True
    values = [float(c) for c in coeffs]  # type: ignore[arg-type]
    if not all(math.isfinite(c) for c in values):
        issues.append(
            ValidationIssue(
                msg="Coefficients must be finite.", kind="non_finite_coeffs"
            )
        )
        return np.zeros_like, True
    if descriptor.form == "box":
        height = values[0]
        return (lambda x: np.full_like(x, height)), height == 0.0
    if descriptor.form == "linear":
        a, b = values
        return (lambda x: a + b * x), a == 0.0 and b == 0.0
    amplitude, frequency = values
    return (
        lambda x: amplitude * np.sin(frequency * x)
    ), amplitude == 0.0 or frequency == 0.0


def _piecewise_polynomial(
    descriptor: PotentialDescriptor, issues: list[ValidationIssue]
) -> tuple[Profile, tuple[float, ...], bool, bool]:
    """Evaluator, breakpoints, continuity and vanishing for the `poly` form."""
    coeffs = descriptor.coeffs or []
    breaks = tuple(descriptor.breaks or ())
    nested = [list(c) for c in coeffs] if coeffs and isinstance(coeffs[0], list) else []
    pieces = nested or ([list(coeffs)] if coeffs else [])  # type: ignore[list-item]
    count = len(issues)
    if not pieces or any(len(piece) == 0 for piece in pieces):
        issues.append(
            ValidationIssue(
                msg="Form 'poly' needs at least one coefficient per piece.",
                kind="invalid_coeffs",
            )
        )
    elif len(pieces) != len(breaks) + 1:
        issues.append(
            ValidationIssue(
                msg="A piecewise polynomial needs one coefficient list per piece.",
                kind="invalid_breaks",
                ctx={"pieces": len(pieces), "breaks": len(breaks)},
            )
        )
    if any(not math.isfinite(c) for piece in pieces for c in piece):
        issues.append(
            ValidationIssue(
                msg="Coefficients must be finite.", kind="non_finite_coeffs"
            )
        )
    edges = (0.0, *breaks, descriptor.gamma)
    if breaks and not all(a < b for a, b in zip(edges[:-1], edges[1:], strict=True)):
        issues.append(
            ValidationIssue(
                msg="Breakpoints must be increasing and inside (0, gamma).",
                kind="invalid_breaks",
                ctx={"breaks": list(breaks), "gamma": descriptor.gamma},
            )
        )
    if len(issues) > count:
        return np.zeros_like, breaks, True, True
    polys = [Polynomial(piece) for piece in pieces]
    breaks_array = np.asarray(breaks, dtype=np.float64)

    def profile(x: Float64NDArray) -> Float64NDArray:
        index = np.searchsorted(breaks_array, x, side="right")
        values = np.empty_like(x)
        for k, poly in enumerate(polys):
            mask = index == k
            values[mask] = poly(x[mask])
        return values

    continuous = all(
        abs(left(b) - right(b)) <= _CONTINUITY_TOL * (1.0 + abs(left(b)))
        for left, right, b in zip(polys[:-1], polys[1:], breaks, strict=True)
    )
    vanishes = all(not np.any(poly.coef) for poly in polys)
    return profile, breaks, continuous, vanishes


def _grid_samples(
    descriptor: PotentialDescriptor, issues: list[ValidationIssue]
) -> tuple[Profile, bool, float | None]:
    """Spline evaluator, vanishing flag and exact integral for the `samples` form."""
    samples = descriptor.samples
    if samples is None:
        issues.append(
            ValidationIssue(
                msg="Form 'samples' needs a samples block with x and v.",
                kind="missing_samples",
            )
        )
        return np.zeros_like, True, None
    x = np.asarray(samples.x, dtype=np.float64)
    v = np.asarray(samples.v, dtype=np.float64)
    count = len(issues)
    if x.shape != v.shape or x.size < 4:  # noqa: PLR2004
        issues.append(
            ValidationIssue(
                msg="Samples need matching x and v arrays of at least 4 points.",
                kind="invalid_samples",
                ctx={"x": x.size, "v": v.size},
            )
        )
        return np.zeros_like, True, None
    bad = int(np.count_nonzero(~np.isfinite(x)) + np.count_nonzero(~np.isfinite(v)))
    if bad:
        issues.append(
            ValidationIssue(
                msg="Samples contain non-finite values.",
                kind="non_finite_samples",
                ctx={"count": bad},
            )
        )
    elif np.any(np.diff(x) <= 0.0):
        issues.append(
            ValidationIssue(
                msg="Sample grid must be strictly increasing.",
                kind="invalid_samples",
            )
        )
    else:
        slack = _SUPPORT_TOL * max(1.0, abs(descriptor.gamma))
        if abs(x[0]) > slack or abs(x[-1] - descriptor.gamma) > slack:
            issues.append(
                ValidationIssue(
                    msg="Sample grid must start at 0 and end at gamma.",
                    kind="support_mismatch",
                    ctx={
                        "gamma": descriptor.gamma,
                        "x_min": float(x[0]),
                        "x_max": float(x[-1]),
                    },
                )
            )
    if len(issues) > count:
        return np.zeros_like, True, None
    spline = CubicSpline(x, v)
    integral = float(spline.integrate(0.0, descriptor.gamma))
    return (
        (lambda points: np.asarray(spline(points), dtype=np.float64)),
        not np.any(v),
        integral,
    )


def _as_descriptor(
    raw: PotentialDescriptor | Mapping[str, Any],
) -> PotentialDescriptor:
    """Validate a mapping into a descriptor, reporting problems as issues."""
    if isinstance(raw, PotentialDescriptor):
        return raw
    try:
        return PotentialDescriptor.model_validate(raw)
    except PydanticValidationError as exc:
        raise StarkresValidationError.from_pydantic(exc) from exc


def make_potential(raw: PotentialDescriptor | Mapping[str, Any]) -> Potential:
    """
    Build a validated `Potential` from a descriptor.

    Args:
        raw: A descriptor or a mapping with the descriptor fields.

    Returns:
        The potential.

    Raises:
        StarkresValidationError: Listing every problem found with `raw`.

    Examples:
        >>> from starkres.potential import make_potential
        >>> make_potential({"gamma": -1.0, "form": "box", "coeffs": [1.0, 2.0]})
        Traceback (most recent call last):
            ...
        starkres.exceptions._starkres_validation_error.StarkresValidationError: 2 validation issues encountered:
        - [invalid_gamma] Support endpoint gamma must be positive and finite. (gamma=-1.0)
        - [invalid_coeffs] Form 'box' takes 1 number(s) in coeffs. (coeffs=[1.0, 2.0])
    """  # noqa: E501
    descriptor = _as_descriptor(raw)
    issues: list[ValidationIssue] = []
    gamma = descriptor.gamma
    if not (math.isfinite(gamma) and gamma > 0.0):
        issues.append(
            ValidationIssue(
                msg="Support endpoint gamma must be positive and finite.",
                kind="invalid_gamma",
                ctx={"gamma": gamma},
            )
        )
    breaks: tuple[float, ...] = ()
    condition_c = True
    exact_integral: float | None = None
    if descriptor.form == "zero":
        profile: Profile = np.zeros_like
        kind, vanishes = PotentialKind.CLOSED_FORM, True
    elif descriptor.form in _COEFF_COUNTS:
        profile, vanishes = _closed_form(descriptor, issues)
        kind = PotentialKind.CLOSED_FORM
    elif descriptor.form == "poly":
        profile, breaks, condition_c, vanishes = _piecewise_polynomial(
            descriptor, issues
        )
        kind = PotentialKind.PIECEWISE_POLYNOMIAL
    else:
        profile, vanishes, exact_integral = _grid_samples(descriptor, issues)
        kind = PotentialKind.GRID_SAMPLES
    if issues:
        raise StarkresValidationError(issues)

    edges = np.asarray([0.0, gamma])
    potential = Potential(
        gamma=gamma,
        kind=kind,
        condition_c=condition_c,
        v_at_zero=0.0 if vanishes else float(profile(edges)[0]),
        v_at_gamma=0.0 if vanishes else float(profile(edges)[1]),
        breakpoints=breaks,
        vanishes=vanishes,
        exact_integral=exact_integral,
        profile=profile,
    )
    nodes, weights = np.polynomial.legendre.leggauss(_L2_NODES)
    l2 = 0.0
    for a, b in potential.pieces:
        points = 0.5 * (b - a) * (nodes + 1.0) + a
        l2 += 0.5 * (b - a) * float(np.sum(weights * potential(points) ** 2))
    if not math.isfinite(l2):
        raise StarkresValidationError([
            ValidationIssue(
                msg="The square integral of V over its support is not finite.",
                kind="divergent_l2",
                ctx={"value": l2},
            )
        ])
    logger.debug(
        "Built %s potential on [0, %g] with |V|_2^2 = %.6g.", kind.value, gamma, l2
    )
    return potential


def load_potential(path: Path) -> Potential:
    """
    Read a YAML or JSON descriptor file and build the potential.

    Args:
        path: The descriptor file.

    Returns:
        The potential.
    """
    data = PotentialDescriptor.from_yaml(path)
    return make_potential(data)


def split_sign(potential: Potential) -> SignSplit:
    """
    Factor a potential as `|V|^(1/2) * V^(1/2)`.

    Args:
        potential: The potential.

    Returns:
        The vectorised factors.

    Examples:
        >>> import numpy as np
        >>> from starkres.potential import make_potential, split_sign
        >>> box = {"gamma": 1.0, "form": "box", "coeffs": [-4.0]}
        >>> split = split_sign(make_potential(box))
        >>> split.sqrt_abs(np.array([0.5])), split.signed_sqrt(np.array([0.5]))
        (array([2.]), array([-2.]))
    """  # noqa: E501

    def sqrt_abs(x: Float64NDArray) -> Float64NDArray:
        return np.sqrt(np.abs(potential(x)))

    def sign(x: Float64NDArray) -> Float64NDArray:
        return np.sign(potential(x))

    def signed_sqrt(x: Float64NDArray) -> Float64NDArray:
        values = potential(x)
        return np.sqrt(np.abs(values)) * np.sign(values)

    return SignSplit(sqrt_abs=sqrt_abs, signed_sqrt=signed_sqrt, sign=sign)


def v0_integral(potential: Potential) -> float:
    """
    The integral of the potential over its support.

    Args:
        potential: The potential.

    Returns:
        The integral `V0` of `V` over `[0, gamma]`.
    """
    if potential.vanishes:
        return 0.0
    if potential.exact_integral is not None:
        return potential.exact_integral
    return sum(
        _quad(lambda x: float(potential(x)), a, b) for a, b in potential.pieces
    )


def fourier_hat(potential: Potential, t: float) -> complex:
    """
    The Fourier transform `(2 pi)^(-1/2) * integral of V(x) exp(-i x t)`.

    Oscillatory weights are handled by QUADPACK's QAWO routine piece by piece.

    Args:
        potential: The potential.
        t: The frequency.

    Returns:
        The transform at `t`.

    Examples:
        >>> import math
        >>> from starkres.potential import fourier_hat, make_potential
        >>> box = make_potential({"gamma": 1.0, "form": "box", "coeffs": [1.0]})
        >>> abs(fourier_hat(box, 2 * math.pi)) < 1e-12
        True
        >>> round(fourier_hat(box, 0.0).real * math.sqrt(2 * math.pi), 12)
        1.0
    """
    if potential.vanishes:
        return 0j
    if t == 0.0:
        return complex(v0_integral(potential) / _SQRT_TWO_PI)
    total = 0j
    for a, b in potential.pieces:
        re = _quad(lambda x: float(potential(x)), a, b, weight="cos", wvar=t)
        im = _quad(lambda x: float(potential(x)), a, b, weight="sin", wvar=t)
        total += complex(re, -im)
    return total / _SQRT_TWO_PI
