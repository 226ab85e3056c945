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
Nystrom discretisation of the sandwiched free resolvent and its determinants.

On a quadrature rule with nodes `x_i` and weights `w_i` the operator
`Y0(lambda) = |V|^(1/2) R0(lambda) V^(1/2)` becomes the matrix

    Y0_ij = sqrt(w_i / w_j) |V|^(1/2)(x_i) K_ij V^(1/2)(x_j),

where `K_ij` integrates `R0(x_i, y)` against the interpolant through node `j`
separately over `y < x_i` and `y > x_i`. The kernel has a kink on the diagonal,
and splitting the integral there keeps the convergence in the number of nodes
spectral. Rules are built from Gauss-Legendre panels of at most 16 nodes, on
which the partial integrals come from the Legendre expansion of the Lagrange
basis. The similarity by `sqrt(w)` leaves determinants and traces unchanged.

`D(lambda) = det(I + Y0)` is evaluated through a pivoted LU factorisation. The
plus determinant uses the upper half-plane kernel and the minus determinant the
lower one; both formulas may also be continued across the real axis.
"""

__all__ = [
    "DeterminantSample",
    "QuadratureRule",
    "SandwichMatrix",
    "anchor_radius",
    "build_composite_rule",
    "build_rule",
    "build_y0",
    "continued_det",
    "converged_det",
    "det_side",
    "log_det",
    "log_det_tracked",
    "logdet_prime",
    "neumann_log_det",
    "rule_for",
    "unwrap_arguments",
    "y_full",
]

import cmath
import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Final

import numpy as np
import numpy.typing as npt
import scipy.linalg

from starkres.exceptions import (
    BranchJumpError,
    DomainError,
    NonConvergenceError,
    SingularOperatorError,
    UnderResolutionError,
)
from starkres.green import (
    free_solutions,
    kernel_derivative_matrix,
    kernel_matrix,
    resolve_half_plane,
)
from starkres.potential import Potential, split_sign
from starkres.typing import Complex128NDArray, Float64NDArray, HalfPlane, Side

logger = logging.getLogger(__name__)

MIN_RULE_SIZE: Final = 8
MAX_PANEL_SIZE: Final = 16
DEFAULT_RULE_SIZE: Final = 128
MAX_RULE_SIZE: Final = 2048
NEUMANN_THRESHOLD: Final = 0.5
_BRANCH_GUARD: Final = 0.5 * math.pi
_CONDITION_LIMIT: Final = 1.0e13
_ANCHOR_TOLERANCE: Final = 1.0e-8


@dataclass(frozen=True, slots=True)
class QuadratureRule:
    """
    A positive quadrature rule on `[0, gamma]`.

    Attributes:
        nodes: Strictly increasing nodes.
        weights: Positive weights summing to `gamma`.
        order: Degree of polynomials integrated exactly on every panel.
        lower: Partial integration weights; `lower[i, j]` integrates the
            interpolant through node `j` over `[0, x_i]`. Rules without panel
            data count nodes below `x_i` fully and `x_i` itself by half.
    """

    nodes: Float64NDArray
    weights: Float64NDArray
    order: int
    lower: Float64NDArray | None = None

    @property
    def size(self) -> int:
        """Number of nodes."""
        return int(self.nodes.size)

    def integrate(self, values: npt.ArrayLike) -> complex:
        """
        Apply the rule to samples at the nodes.

        Args:
            values: Function values at `nodes`.

        Returns:
            The weighted sum.
        """
        return complex(np.dot(self.weights, np.asarray(values)))

    def split_weights(self) -> tuple[Float64NDArray, Float64NDArray]:
        """
        Weights of the integrals over `[0, x_i]` and `[x_i, gamma]`, row by row.

        Returns:
            The two weight matrices; every row of their sum is `weights`.
        """
        if self.lower is None:
            x = self.nodes
            share = (x[:, None] > x[None, :]) + 0.5 * (x[:, None] == x[None, :])
            lower = self.weights[None, :] * share
        else:
            lower = self.lower
        return lower, self.weights[None, :] - lower


def _legendre_panel(
    n: int, a: float, b: float
) -> tuple[Float64NDArray, Float64NDArray]:
    base, base_weights = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (b - a)
    return half * (base + 1.0) + a, half * base_weights


def _panel_integration(n: int) -> Float64NDArray:
    """
    Integrals over `[-1, t_i]` of the Lagrange basis on the Gauss nodes `t_i`.

    The basis polynomial of node `j` is `sum_k (k + 1/2) w_j P_k(t_j) P_k(t)`
    by the discrete orthogonality of the Gauss rule.
    """
    legendre = np.polynomial.legendre
    base, base_weights = legendre.leggauss(n)
    values = legendre.legvander(base, n - 1)
    coefficients = (np.arange(n) + 0.5)[:, None] * values.T * base_weights[None, :]
    primitives = legendre.legval(base, legendre.legint(np.eye(n), lbnd=-1.0)).T
    return primitives @ coefficients


def _panel_sizes(count: int) -> list[int]:
    """Split `count` nodes into the fewest panels of at most 16, evenly."""
    panels = -(-count // MAX_PANEL_SIZE)
    share, extra = divmod(count, panels)
    return [share + (k < extra) for k in range(panels)]


def _panel_rule(
    pieces: Sequence[tuple[float, float]], counts: Sequence[int]
) -> QuadratureRule:
    """Gauss-Legendre panels over consecutive pieces with their branch weights."""
    nodes: list[Float64NDArray] = []
    weights: list[Float64NDArray] = []
    blocks: list[Float64NDArray] = []
    for (a, b), count in zip(pieces, counts, strict=True):
        sizes = _panel_sizes(count)
        edges = np.linspace(a, b, len(sizes) + 1)
        for size, lo, hi in zip(sizes, edges[:-1], edges[1:], strict=True):
            panel_nodes, panel_weights = _legendre_panel(size, lo, hi)
            nodes.append(panel_nodes)
            weights.append(panel_weights)
            blocks.append(0.5 * (hi - lo) * _panel_integration(size))
    all_weights = np.concatenate(weights)
    lower = np.zeros((all_weights.size, all_weights.size))
    offset = 0
    for block in blocks:
        rows = slice(offset, offset + block.shape[0])
        lower[rows, :offset] = all_weights[:offset]
        lower[rows, rows] = block
        offset += block.shape[0]
    return QuadratureRule(
        nodes=np.concatenate(nodes),
        weights=all_weights,
        order=2 * min(block.shape[0] for block in blocks) - 1,
        lower=lower,
    )


def build_rule(n: int, gamma: float) -> QuadratureRule:
    """
    Composite Gauss-Legendre rule with `n` nodes on `[0, gamma]`.

    The interval is cut into the fewest equal panels of at most 16 nodes.

    Args:
        n: Number of nodes, at least 8.
        gamma: Right endpoint.

    Returns:
        The rule, exact on every panel for polynomials of degree
        `2m - 1`, `m` the smallest panel size.

    Raises:
        DomainError: If `n < 8` or `gamma <= 0`.

    Examples:
        >>> from starkres.fredholm import build_rule
        >>> rule = build_rule(8, 1.0)
        >>> round(float(rule.weights @ rule.nodes**7), 15)
        0.125
        >>> rule.order, build_rule(64, 1.0).order
        (15, 31)
        >>> bool(abs(rule.split_weights()[0].sum(axis=1) - rule.nodes).max() < 1e-14)
        True
    """
    if n < MIN_RULE_SIZE or not gamma > 0.0:
        msg = (
            f"A rule needs n >= {MIN_RULE_SIZE} and gamma > 0, "
            f"got n = {n}, gamma = {gamma}."
        )
        raise DomainError(msg)
    return _panel_rule([(0.0, gamma)], [n])


def build_composite_rule(
    n: int, pieces: Sequence[tuple[float, float]]
) -> QuadratureRule:
    """
    Composite Gauss-Legendre rule whose panels respect the smooth pieces.

    The `n` nodes are shared out in proportion to piece length, with at least
    8 per piece, so the node count may differ slightly from `n`. Each piece is
    then cut into panels as in `build_rule`.

    Args:
        n: Target total number of nodes.
        pieces: Consecutive intervals covering `[0, gamma]`.

    Returns:
        The composite rule.

    Examples:
        >>> from starkres.fredholm import build_composite_rule
        >>> rule = build_composite_rule(64, [(0.0, 0.25), (0.25, 1.0)])
        >>> rule.size, round(float(rule.weights.sum()), 14)
        (64, 1.0)
    """
    if not pieces or n < MIN_RULE_SIZE:
        msg = f"A composite rule needs pieces and n >= {MIN_RULE_SIZE}."
        raise DomainError(msg)
    total = pieces[-1][1] - pieces[0][0]
    counts = [max(MIN_RULE_SIZE, round(n * (b - a) / total)) for a, b in pieces]
    return _panel_rule(pieces, counts)


def rule_for(potential: Potential, n: int = DEFAULT_RULE_SIZE) -> QuadratureRule:
    """
    The rule suited to a potential: composite when it has breakpoints.

    Args:
        potential: The potential.
        n: Target number of nodes.

    Returns:
        A rule on the potential's support.
    """
    if potential.breakpoints:
        return build_composite_rule(n, potential.pieces)
    return build_rule(n, potential.gamma)


@dataclass(frozen=True, slots=True)
class SandwichMatrix:
    """
    A discretised sandwiched operator such as `Y0(lambda)` or `Y(lambda)`.

    Attributes:
        entries: The `N x N` matrix on weighted samples.
        lam: The spectral parameter.
        rule: The quadrature rule.
        half_plane: The half-plane whose kernel formula was used.
    """

    entries: Complex128NDArray
    lam: complex
    rule: QuadratureRule
    half_plane: HalfPlane

    def trace(self) -> complex:
        """The matrix trace."""
        return complex(np.trace(self.entries))

    def nuclear_norm(self) -> float:
        """The sum of singular values, a surrogate of the trace norm."""
        return float(np.linalg.norm(self.entries, "nuc"))

    def identity_plus(self) -> Complex128NDArray:
        """The matrix `I + entries`."""
        return np.eye(self.rule.size, dtype=np.complex128) + self.entries


@dataclass(frozen=True, slots=True)
class DeterminantSample:
    """
    One value of a perturbation determinant.

    Attributes:
        lam: The spectral parameter.
        d_value: The determinant.
        log_d: A logarithm of `d_value`, principal unless branch tracked.
        side: Which determinant.
        rule_size: Number of quadrature nodes used.
    """

    lam: complex
    d_value: complex
    log_d: complex
    side: Side
    rule_size: int


def _sandwich_factors(
    potential: Potential, rule: QuadratureRule
) -> tuple[Float64NDArray, Float64NDArray]:
    """The node factors `sqrt(w) |V|^(1/2)` and `V^(1/2) / sqrt(w)`."""
    split = split_sign(potential)
    root_w = np.sqrt(rule.weights)
    return root_w * split.sqrt_abs(rule.nodes), split.signed_sqrt(rule.nodes) / root_w


def build_y0(
    potential: Potential,
    lam: complex,
    rule: QuadratureRule,
    half_plane: HalfPlane | None = None,
    *,
    continued: bool = False,
) -> SandwichMatrix:
    """
    Assemble the matrix of `Y0(lambda)`.

    Args:
        potential: The potential.
        lam: The spectral parameter.
        rule: The quadrature rule on the potential's support.
        half_plane: Kernel formula to use, required for real `lam`.
        continued: Allow the formula of `half_plane` outside that half-plane.

    Returns:
        The sandwich matrix.

    Examples:
        >>> from starkres.fredholm import build_rule, build_y0
        >>> from starkres.potential import make_potential
        >>> zero = make_potential({"gamma": 1.0, "form": "zero"})
        >>> float(abs(build_y0(zero, 2 + 1j, build_rule(16, 1.0)).entries).max())
        0.0
    """
    side = resolve_half_plane(lam, half_plane, continued=continued)
    n = rule.size
    if potential.vanishes:
        entries = np.zeros((n, n), dtype=np.complex128)
    else:
        left, right = _sandwich_factors(potential, rule)
        kernel = kernel_matrix(
            free_solutions(rule.nodes, lam, side), *rule.split_weights()
        )
        entries = left[:, None] * kernel * right[None, :]
    return SandwichMatrix(entries=entries, lam=complex(lam), rule=rule, half_plane=side)


def log_det(matrix: Complex128NDArray) -> complex:
    """
    A logarithm of `det(matrix)` from a pivoted LU factorisation.

    The real part is exact in the sense of `slogdet`; the imaginary part is
    reduced to `(-pi, pi]`.

    Args:
        matrix: A square matrix.

    Returns:
        The principal logarithm of the determinant.

    Raises:
        SingularOperatorError: If a pivot vanishes.

    Examples:
        >>> import numpy as np
        >>> from starkres.fredholm import log_det
        >>> log_det(np.array([[0.0, 2.0], [1.0, 0.0]], dtype=complex))
        (0.6931471805599453+3.141592653589793j)
    """
    lu, piv = scipy.linalg.lu_factor(matrix, check_finite=False)
    diag = np.diagonal(lu)
    if not np.all(np.isfinite(diag)) or np.any(diag == 0):
        msg = "The matrix is singular to working precision."
        raise SingularOperatorError(msg)
    swaps = int(np.count_nonzero(piv != np.arange(piv.size)))
    angle = float(np.sum(np.angle(diag))) + math.pi * (swaps % 2)
    reduced = math.remainder(angle, 2.0 * math.pi)
    if reduced == -math.pi:
        reduced = math.pi
    return complex(float(np.sum(np.log(np.abs(diag)))), reduced)


def _sample(y0: SandwichMatrix, side: Side) -> DeterminantSample:
    logd = log_det(y0.identity_plus())
    return DeterminantSample(
        lam=y0.lam,
        d_value=cmath.exp(logd),
        log_d=logd,
        side=side,
        rule_size=y0.rule.size,
    )


def det_side(
    potential: Potential, lam: complex, rule: QuadratureRule, side: Side
) -> DeterminantSample:
    """
    The determinant `D_plus` or `D_minus` in its own closed half-plane.

    Args:
        potential: The potential.
        lam: The spectral parameter; real values give boundary values.
        rule: The quadrature rule.
        side: Which determinant.

    Returns:
        The determinant sample.

    Raises:
        UnderResolutionError: If the determinant vanishes, which cannot happen
            for the exact operator and so signals a too coarse rule.

    Examples:
        >>> from starkres.fredholm import build_rule, det_side
        >>> from starkres.potential import make_potential
        >>> from starkres.typing import Side
        >>> zero = make_potential({"gamma": 1.0, "form": "zero"})
        >>> det_side(zero, 3.0, build_rule(16, 1.0), Side.PLUS).d_value
        (1+0j)
    """
    y0 = build_y0(potential, lam, rule, side.half_plane)
    try:
        return _sample(y0, side)
    except SingularOperatorError as exc:
        msg = (
            f"The {side} determinant vanishes at lambda = {lam!r} with "
            f"{rule.size} nodes; refine the quadrature rule."
        )
        raise UnderResolutionError(msg) from exc


def continued_det(
    potential: Potential, lam: complex, rule: QuadratureRule, side: Side
) -> DeterminantSample:
    """
    A determinant formula continued across the real axis.

    The kernel of either half-plane is entire in `lambda`, so the plus formula
    evaluated below the axis is the analytic extension of `D_plus` there.

    Args:
        potential: The potential.
        lam: Any spectral parameter.
        rule: The quadrature rule.
        side: Which determinant formula.

    Returns:
        The determinant sample, which may vanish.
    """
    y0 = build_y0(potential, lam, rule, side.half_plane, continued=True)
    try:
        return _sample(y0, side)
    except SingularOperatorError:
        return DeterminantSample(
            lam=complex(lam),
            d_value=0j,
            log_d=complex(-math.inf, 0.0),
            side=side,
            rule_size=rule.size,
        )


def converged_det(
    potential: Potential,
    lam: complex,
    side: Side,
    *,
    tol: float = 1.0e-8,
    n_start: int = DEFAULT_RULE_SIZE,
    n_max: int = MAX_RULE_SIZE,
) -> DeterminantSample:
    """
    Double the rule size until consecutive determinants agree.

    Args:
        potential: The potential.
        lam: The spectral parameter.
        side: Which determinant.
        tol: Required agreement of consecutive values.
        n_start: Initial number of nodes.
        n_max: Largest admissible number of nodes.

    Returns:
        The sample at the finer of the two agreeing rules.

    Raises:
        UnderResolutionError: If `n_max` is reached without agreement.
    """
    n = n_start
    previous = det_side(potential, lam, rule_for(potential, n), side)
    difference = math.inf
    while 2 * n <= n_max:
        n *= 2
        current = det_side(potential, lam, rule_for(potential, n), side)
        difference = abs(current.d_value - previous.d_value)
        logger.debug(
            "Determinant at lambda = %s: |D(%d) - D(%d)| = %.3g.",
            lam,
            n,
            n // 2,
            difference,
        )
        if difference <= tol:
            return current
        previous = current
    msg = (
        f"Determinant at lambda = {lam!r} did not settle to {tol:g} "
        f"by {n} nodes (last change {difference:.3g})."
    )
    raise UnderResolutionError(msg, achieved_error=difference)


def anchor_radius(
    potential: Potential,
    rule: QuadratureRule,
    *,
    angle: float = 0.5 * math.pi,
    start: float = 1.0,
    max_radius: float = 1.0e5,
) -> float:
    """
    Smallest radius, by doubling, where `Y0` is small enough to anchor a branch.

    Along the ray `arg lambda = angle` the radius is doubled until the nuclear
    norm of the discretised `Y0` drops below 1/2, where the logarithmic series
    converges.

    Args:
        potential: The potential.
        rule: The quadrature rule.
        angle: Direction of the ray, in `[0, pi]`.
        start: First radius tried.
        max_radius: Largest radius tried.

    Returns:
        The anchor radius.

    Raises:
        NonConvergenceError: If no radius up to `max_radius` qualifies.
    """
    radius = start
    direction = cmath.exp(1j * angle)
    while radius <= max_radius:
        norm = build_y0(
            potential, radius * direction, rule, HalfPlane.UPPER
        ).nuclear_norm()
        if norm < NEUMANN_THRESHOLD:
            logger.info(
                "Branch anchor at |lambda| = %g (nuclear norm %.3g).", radius, norm
            )
            return radius
        radius *= 2.0
    msg = f"No anchor radius up to {max_radius:g} with nuclear norm below 1/2."
    raise NonConvergenceError(msg)


def neumann_log_det(
    entries: Complex128NDArray, *, tol: float = 1.0e-15, max_terms: int = 500
) -> complex:
    """
    `log det(I + Y)` from the series `-sum_n Tr((-Y)^n) / n`.

    The series is summed until the geometric tail bound in the nuclear norm
    falls below `tol`.

    Args:
        entries: The matrix `Y`, with nuclear norm below 1.
        tol: Tail tolerance.
        max_terms: Largest number of terms.

    Returns:
        The logarithm on the branch vanishing with `Y`.

    Raises:
        DomainError: If the nuclear norm is not below 1.
        NonConvergenceError: If `max_terms` terms do not reach `tol`.

    Examples:
        >>> import numpy as np
        >>> from starkres.fredholm import neumann_log_det
        >>> y = np.diag([0.1, -0.2]).astype(complex)
        >>> value = neumann_log_det(y)
        >>> abs(value - np.log(1.1 * 0.8)) < 1e-14
        True
    """
    norm = float(np.linalg.norm(entries, "nuc"))
    if norm >= 1.0:
        msg = f"The log series needs a nuclear norm below 1, got {norm:.3g}."
        raise DomainError(msg)
    total = 0j
    power = np.eye(entries.shape[0], dtype=np.complex128)
    for n in range(1, max_terms + 1):
        power = -power @ entries
        total -= np.trace(power) / n
        if norm ** (n + 1) / ((n + 1) * (1.0 - norm)) < tol:
            return complex(total)
    msg = f"Log series did not reach {tol:g} in {max_terms} terms."
    raise NonConvergenceError(msg)


def unwrap_arguments(
    values: Iterable[complex], *, start: float | None = None
) -> Float64NDArray:
    """
    Continuous arguments of a sequence of non-zero complex numbers.

    Args:
        values: The sequence.
        start: Argument of the first value, its principal argument by default.

    Returns:
        The tracked arguments.

    Raises:
        BranchJumpError: If consecutive arguments differ by `pi/2` or more.

    Examples:
        >>> import numpy as np
        >>> from starkres.fredholm import unwrap_arguments
        >>> turns = np.exp(1j * np.linspace(0.0, 3 * np.pi, 13))
        >>> round(float(unwrap_arguments(turns)[-1] / np.pi), 12)
        3.0
        >>> unwrap_arguments([1.0, 1j, -1.0])
        Traceback (most recent call last):
            ...
        starkres.exceptions._numerical_errors.BranchJumpError: Argument jumps by 1.5708 rad at sample 1; refine the path.
    """  # noqa: E501
    array = np.asarray(list(values), dtype=np.complex128)
    if array.size == 0:
        return np.zeros(0)
    steps = np.angle(array[1:] / array[:-1])
    bad = np.flatnonzero(np.abs(steps) >= _BRANCH_GUARD)
    if bad.size:
        index = int(bad[0])
        jump = float(steps[index])
        msg = (
            f"Argument jumps by {abs(jump):.4f} rad at sample {index + 1}; "
            "refine the path."
        )
        raise BranchJumpError(msg, index=index + 1, jump=jump)
    first = float(np.angle(array[0])) if start is None else start
    return first + np.concatenate(([0.0], np.cumsum(steps)))


def log_det_tracked(
    potential: Potential,
    path: Sequence[complex],
    rule: QuadratureRule,
    side: Side,
) -> list[DeterminantSample]:
    """
    The branch of `log D` that vanishes at infinity, tracked along a path.

    The path starts at an anchor where the nuclear norm of `Y0` is below 1/2
    (see `anchor_radius`); there the logarithm is the convergent series value
    and every later sample continues it. The series value must reproduce the
    LU determinant at the anchor.

    Args:
        potential: The potential.
        path: Spectral parameters, starting at the anchor.
        rule: The quadrature rule.
        side: Which determinant.

    Returns:
        One sample per path point with continuous `log_d`.

    Raises:
        DomainError: If the path does not start at a valid anchor.
        BranchJumpError: If the path is too coarse to follow the argument.
        UnderResolutionError: If the series and the LU factorisation disagree
            at the anchor.
    """
    if not path:
        return []
    half_plane = side.half_plane
    anchor = build_y0(potential, path[0], rule, half_plane)
    if anchor.nuclear_norm() >= NEUMANN_THRESHOLD:
        msg = (
            f"Path start {path[0]!r} is not an anchor: nuclear norm "
            f"{anchor.nuclear_norm():.3g} is not below 1/2."
        )
        raise DomainError(msg)
    anchor_log = neumann_log_det(anchor.entries)
    samples = [det_side(potential, lam, rule, side) for lam in path]
    mismatch = abs(cmath.exp(anchor_log) - samples[0].d_value)
    if mismatch > _ANCHOR_TOLERANCE * abs(samples[0].d_value):
        msg = (
            f"Log series and LU determinant disagree by {mismatch:.3g} at the "
            f"anchor {path[0]!r}; refine the quadrature rule."
        )
        raise UnderResolutionError(msg, achieved_error=mismatch)
    arguments = unwrap_arguments(
        (sample.d_value for sample in samples), start=anchor_log.imag
    )
    return [
        DeterminantSample(
            lam=sample.lam,
            d_value=sample.d_value,
            log_d=complex(sample.log_d.real, float(arg)),
            side=side,
            rule_size=sample.rule_size,
        )
        for sample, arg in zip(samples, arguments, strict=True)
    ]


def _checked_factor(
    y0: SandwichMatrix,
) -> tuple[Complex128NDArray, npt.NDArray[np.int32]]:
    """LU factors of `I + Y0`, refusing numerically singular matrices."""
    j0 = y0.identity_plus()
    condition = float(np.linalg.cond(j0, 1))
    if not condition < _CONDITION_LIMIT:
        msg = (
            f"I + Y0 is numerically singular at lambda = {y0.lam!r} "
            f"(condition number {condition:.3g})."
        )
        raise SingularOperatorError(msg)
    return scipy.linalg.lu_factor(j0, check_finite=False)


def y_full(
    potential: Potential,
    lam: complex,
    rule: QuadratureRule,
    half_plane: HalfPlane | None = None,
) -> SandwichMatrix:
    """
    The matrix of `Y = Y0 (I + Y0)^(-1)`, so that `(I - Y)(I + Y0) = I`.

    Args:
        potential: The potential.
        lam: The spectral parameter.
        rule: The quadrature rule.
        half_plane: Kernel formula to use, required for real `lam`.

    Returns:
        The sandwich matrix of `Y`.

    Raises:
        SingularOperatorError: If `I + Y0` is numerically singular.
    """
    y0 = build_y0(potential, lam, rule, half_plane)
    if potential.vanishes:
        return y0
    factors = _checked_factor(y0)
    # Y = Y0 J0^-1, so Y^T = J0^-T Y0^T
    entries = scipy.linalg.lu_solve(factors, y0.entries.T, trans=1).T
    return SandwichMatrix(
        entries=entries, lam=y0.lam, rule=rule, half_plane=y0.half_plane
    )


def logdet_prime(
    potential: Potential, lam: complex, rule: QuadratureRule, side: Side
) -> complex:
    """
    The logarithmic derivative `D'(lambda) / D(lambda)`.

    Computed as `Tr[(I + Y0)^(-1) dY0/dlambda]` with the analytic derivative of
    the kernel; this equals `Tr(R0(lambda) - R(lambda))`.

    Args:
        potential: The potential.
        lam: The spectral parameter.
        rule: The quadrature rule.
        side: Which determinant.

    Returns:
        The logarithmic derivative.

    Raises:
        SingularOperatorError: If `I + Y0` is numerically singular.
    """
    if potential.vanishes:
        return 0j
    y0 = build_y0(potential, lam, rule, side.half_plane)
    left, right = _sandwich_factors(potential, rule)
    solutions = free_solutions(rule.nodes, lam, y0.half_plane)
    weighted = kernel_derivative_matrix(solutions, *rule.split_weights())
    derivative = left[:, None] * weighted * right[None, :]
    factors = _checked_factor(y0)
    return complex(np.trace(scipy.linalg.lu_solve(factors, derivative)))
