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
Parameterised studies of the high-energy and growth-ray asymptotics.

Each claim compares an observed quantity from the production modules with its
leading asymptotic term over a parameter grid and fits the structural constant
the claim is about:

| claim             | parameter | observed                        | fitted constant |
|-------------------|-----------|---------------------------------|-----------------|
| `logdet`          | `|lam|`   | `log D_plus` on a ray           | `i V0 / 2`      |
| `phase`           | `lam > 0` | scattering phase                | `V0 / (2 pi)`   |
| `trace`           | `|lam|`   | `Tr Y0` on a ray                | `i V0 / 2`      |
| `born_expansion`  | `|lam|`   | `log A0` on a ray               | ratio 1         |
| `born_bound`      | `|lam|`   | `log |A0|` near the real axis   | ratio <= 1      |
| `born_ray`        | `t`       | `log A0(t^2 e^{i pi/3})`        | ratio 1         |
| `determinant_ray` | `t`       | `log |D_minus(t^2 e^{i pi/3})|` | `4/3`           |

Tolerances come from a `StudyTolerances` manifest.
"""

__all__ = [
    "AsymptoticStudy",
    "StudyFit",
    "StudySample",
    "StudyTolerances",
    "run_study",
]

import cmath
import logging
import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import partial
from pathlib import Path
from typing import Final

import numpy as np
from pydantic import ConfigDict, Field

from starkres.exceptions import DomainError
from starkres.fredholm import QuadratureRule, det_side
from starkres.green import trace_y0_oscillatory
from starkres.potential import Potential, v0_integral
from starkres.resonance import log_d_minus_upper
from starkres.scattering import log_born_a0
from starkres.typing import ClaimId, Side
from starkres.yaml import YamlSerializableBaseModel

logger = logging.getLogger(__name__)

_GROWTH_RAY: Final = cmath.exp(1j * math.pi / 3.0)
_DEFAULT_ANGLES: Final = {
    ClaimId.LOGDET: 0.5 * math.pi,
    ClaimId.TRACE: 0.5 * math.pi,
    ClaimId.BORN_EXPANSION: 0.5 * math.pi,
    ClaimId.BORN_BOUND: math.pi / 6.0,
}
_QUANTITIES: Final = {
    ClaimId.LOGDET: "log D_plus",
    ClaimId.PHASE: "phi_sc",
    ClaimId.TRACE: "Tr Y0",
    ClaimId.BORN_EXPANSION: "log A0",
    ClaimId.BORN_BOUND: "log |A0|",
    ClaimId.BORN_RAY: "log A0",
    ClaimId.DETERMINANT_RAY: "log |D_minus|",
}


class StudyTolerances(YamlSerializableBaseModel):
    """
    Relative tolerances of the asymptotic claims.

    Examples:
        >>> from starkres.asymptotics import StudyTolerances
        >>> from starkres.typing import ClaimId
        >>> tolerances = StudyTolerances.safe_load("phase: 0.2")
        >>> tolerances.for_claim(ClaimId.PHASE), tolerances.for_claim(ClaimId.TRACE)
        (0.2, 0.02)
    """

    model_config = ConfigDict(extra="forbid")

    logdet: float = Field(default=0.02, gt=0.0)
    phase: float = Field(default=0.10, gt=0.0)
    trace: float = Field(default=0.02, gt=0.0)
    born_expansion: float = Field(default=0.05, gt=0.0)
    born_bound: float = Field(default=0.05, gt=0.0)
    born_ray: float = Field(default=0.20, gt=0.0)
    determinant_ray: float = Field(default=0.05, gt=0.0)

    def for_claim(self, claim_id: ClaimId) -> float:
        """The tolerance of one claim."""
        return float(getattr(self, claim_id.value))

    @classmethod
    def load(cls, path: Path | None) -> "StudyTolerances":
        """The manifest at `path`, or the defaults when `path` is `None`."""
        return cls() if path is None else cls.from_yaml(path)


@dataclass(frozen=True, slots=True)
class StudySample:
    """One observation with its predicted leading term."""

    parameter: float
    observed: complex
    predicted: complex


@dataclass(frozen=True, slots=True)
class StudyFit:
    """
    Outcome of a least-squares fit.

    Attributes:
        exponent: Fitted power law exponent, `None` where it is undefined.
        coefficient: The fitted structural constant.
        residual: Root mean square misfit of the model.
    """

    exponent: float | None
    coefficient: complex
    residual: float


@dataclass(frozen=True, slots=True)
class AsymptoticStudy:
    """
    A finished study.

    Attributes:
        claim_id: The claim.
        quantity: What `observed` holds.
        samples: Observations sorted by parameter.
        fit: The fit.
        target: The constant the claim predicts.
        tolerance: Relative tolerance of the comparison.
        passed: Whether the fitted constant matched the target.
    """

    claim_id: ClaimId
    quantity: str
    samples: tuple[StudySample, ...]
    fit: StudyFit
    target: complex
    tolerance: float
    passed: bool


def _power_exponent(parameters: np.ndarray, values: np.ndarray) -> float | None:
    """Slope of `log |values|` against `log parameters`."""
    magnitudes = np.abs(values)
    if magnitudes.size < 2 or np.any(magnitudes == 0.0):  # noqa: PLR2004
        return None
    slope, _ = np.polyfit(np.log(parameters), np.log(magnitudes), 1)
    return float(slope)


def _lstsq(columns: list[np.ndarray], values: np.ndarray) -> tuple[np.ndarray, float]:
    matrix = np.column_stack(columns).astype(np.complex128)
    coefficients, *_ = np.linalg.lstsq(matrix, values.astype(np.complex128), rcond=None)
    misfit = values - matrix @ coefficients
    return coefficients, float(np.sqrt(np.mean(np.abs(misfit) ** 2)))


def _relative_match(value: complex, target: complex, tolerance: float) -> bool:
    if target == 0:
        return abs(value) <= tolerance * 1.0e-12
    return abs(value - target) <= tolerance * abs(target)


def _born_leading_log(
    potential: Potential, lam: complex, rule: QuadratureRule
) -> complex:
    """
    Log of `exp(-4/3 w^(3/2)) / (4 pi sqrt w) * integral V exp(-2 x sqrt w)`.

    Here `w = -lam`.
    """
    root = cmath.sqrt(-lam)
    integral = rule.integrate(potential(rule.nodes) * np.exp(-2.0 * rule.nodes * root))
    leading = -(4.0 / 3.0) * root**3 - cmath.log(4.0 * math.pi * root)
    return leading + cmath.log(integral)


def _observe(
    potential: Potential,
    claim_id: ClaimId,
    parameter: float,
    rule: QuadratureRule,
    angle: float,
) -> StudySample:
    """Evaluate one sample of a claim."""
    v0 = v0_integral(potential)
    observed: complex
    predicted: complex
    match claim_id:
        case ClaimId.LOGDET:
            lam = parameter * cmath.exp(1j * angle)
            observed = det_side(potential, lam, rule, Side.PLUS).log_d
            predicted = 0.5j * v0 / cmath.sqrt(lam)
        case ClaimId.PHASE:
            sample = det_side(potential, parameter, rule, Side.PLUS)
            observed = cmath.phase(sample.d_value) / math.pi
            predicted = v0 / (2.0 * math.pi * math.sqrt(parameter))
        case ClaimId.TRACE:
            lam = parameter * cmath.exp(1j * angle)
            observed = trace_y0_oscillatory(potential, lam)
            predicted = 0.5j * v0 / cmath.sqrt(lam)
        case ClaimId.BORN_EXPANSION:
            lam = parameter * cmath.exp(1j * angle)
            observed = log_born_a0(potential, lam, rule)
            predicted = _born_leading_log(potential, lam, rule)
        case ClaimId.BORN_BOUND:
            lam = parameter * cmath.exp(1j * angle)
            observed = log_born_a0(potential, lam, rule).real
            abs_integral = rule.integrate(np.abs(potential(rule.nodes))).real
            predicted = (
                (4.0 / 3.0) * abs((lam**1.5).imag)
                - math.log(math.pi * math.sqrt(parameter))
                + math.log(abs_integral)
            )
        case ClaimId.BORN_RAY:
            t = parameter
            observed = log_born_a0(potential, t * t * _GROWTH_RAY, rule)
            predicted = (
                2j * math.pi / 3.0
                + (4.0 / 3.0) * t**3
                + cmath.log(potential.v_at_zero / (8.0 * math.pi * t * t))
            )
        case ClaimId.DETERMINANT_RAY:
            t = parameter
            observed = log_d_minus_upper(potential, t * t * _GROWTH_RAY, rule).real
            predicted = (4.0 / 3.0) * t**3 + math.log(
                abs(potential.v_at_zero) / (4.0 * t * t)
            )
    return StudySample(
        parameter=parameter, observed=complex(observed), predicted=complex(predicted)
    )


def _fit(
    claim_id: ClaimId,
    samples: Sequence[StudySample],
    potential: Potential,
    angle: float,
) -> tuple[StudyFit, complex]:
    """Fit the claim's model and return it with the target constant."""
    parameters = np.array([sample.parameter for sample in samples])
    observed = np.array([sample.observed for sample in samples])
    predicted = np.array([sample.predicted for sample in samples])
    v0 = v0_integral(potential)
    match claim_id:
        case ClaimId.LOGDET | ClaimId.TRACE:
            lam = parameters * np.exp(1j * angle)
            roots = np.sqrt(lam.astype(np.complex128))
            coefficients, residual = _lstsq([1.0 / roots, 1.0 / lam], observed)
            exponent = _power_exponent(parameters, observed)
            return StudyFit(exponent, complex(coefficients[0]), residual), 0.5j * v0
        case ClaimId.PHASE:
            coefficients, residual = _lstsq(
                [parameters**-0.5, 1.0 / parameters], observed.real
            )
            exponent = _power_exponent(parameters, observed.real)
            return StudyFit(exponent, complex(coefficients[0]), residual), complex(
                v0 / (2.0 * math.pi)
            )
        case ClaimId.BORN_EXPANSION | ClaimId.BORN_RAY:
            ratios = np.exp(observed - predicted)
            deviation = np.abs(ratios - 1.0)
            exponent = _power_exponent(parameters, deviation)
            residual = float(deviation[-1])
            return StudyFit(exponent, complex(ratios[-1]), residual), 1 + 0j
        case ClaimId.BORN_BOUND:
            ratios = np.exp(observed.real - predicted.real)
            return StudyFit(None, complex(ratios.max()), float(ratios[-1])), 1 + 0j
        case ClaimId.DETERMINANT_RAY:
            coefficients, residual = _lstsq(
                [parameters**3, np.log(parameters), np.ones_like(parameters)],
                observed.real,
            )
            fit = StudyFit(3.0, complex(coefficients[0].real), residual)
            return fit, complex(4.0 / 3.0)


def _passed(
    claim_id: ClaimId, fit: StudyFit, target: complex, tolerance: float
) -> bool:
    if claim_id is ClaimId.BORN_BOUND:
        return fit.coefficient.real <= 1.0 + tolerance
    return _relative_match(fit.coefficient, target, tolerance)


def run_study(
    potential: Potential,
    claim_id: ClaimId,
    parameter_grid: Sequence[float],
    rule: QuadratureRule,
    *,
    angle: float | None = None,
    tolerances: StudyTolerances | None = None,
    threads: int = 1,
) -> AsymptoticStudy:
    """
    Run one asymptotic study.

    Args:
        potential: The potential.
        claim_id: The claim.
        parameter_grid: Positive parameters; `|lambda|`, `lambda` or `t`
            depending on the claim.
        rule: The quadrature rule.
        angle: Direction of the ray for the ray-based claims.
        tolerances: The tolerance manifest, the defaults when omitted.
        threads: Worker threads over the samples.

    Returns:
        The study.

    Raises:
        DomainError: If the grid has fewer than three points or a
            non-positive parameter.
    """
    grid = sorted(float(value) for value in parameter_grid)
    if len(grid) < 3 or grid[0] <= 0.0:  # noqa: PLR2004
        msg = "A study needs at least three positive parameters."
        raise DomainError(msg)
    tolerance = (tolerances or StudyTolerances()).for_claim(claim_id)
    if (
        claim_id in {ClaimId.BORN_RAY, ClaimId.DETERMINANT_RAY}
        and potential.v_at_zero == 0.0
        and not potential.vanishes
    ):
        msg = f"The {claim_id} claim needs V(0) != 0."
        raise DomainError(msg)
    direction = _DEFAULT_ANGLES.get(claim_id, 0.0) if angle is None else angle
    if potential.vanishes:
        samples = tuple(StudySample(value, 0j, 0j) for value in grid)
        fit = StudyFit(exponent=None, coefficient=0j, residual=0.0)
        return AsymptoticStudy(
            claim_id, _QUANTITIES[claim_id], samples, fit, 0j, tolerance, passed=True
        )
    observe = partial(_observe, potential, claim_id, rule=rule, angle=direction)
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        samples = tuple(pool.map(observe, grid))
    fit, target = _fit(claim_id, samples, potential, direction)
    passed = _passed(claim_id, fit, target, tolerance)
    logger.info(
        "Study %s: coefficient %s against %s, %s.",
        claim_id,
        fit.coefficient,
        target,
        "passed" if passed else "failed",
    )
    return AsymptoticStudy(
        claim_id=claim_id,
        quantity=_QUANTITIES[claim_id],
        samples=samples,
        fit=fit,
        target=target,
        tolerance=tolerance,
        passed=passed,
    )
