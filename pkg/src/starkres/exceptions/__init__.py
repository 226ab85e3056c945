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
"""Custom exceptions provided by the `starkres` package."""

__all__ = [
    "AiryOverflowError",
    "BranchCutError",
    "BranchJumpError",
    "CompletenessError",
    "DomainError",
    "NonConvergenceError",
    "SingularOperatorError",
    "StarkresError",
    "StarkresValidationError",
    "UnderResolutionError",
    "ValidationIssue",
    "ZeroOnContourError",
]

from starkres.exceptions._numerical_errors import (
    AiryOverflowError,
    BranchCutError,
    BranchJumpError,
    CompletenessError,
    DomainError,
    NonConvergenceError,
    SingularOperatorError,
    UnderResolutionError,
    ZeroOnContourError,
)
from starkres.exceptions._starkres_error import StarkresError
from starkres.exceptions._starkres_validation_error import (
    StarkresValidationError,
    ValidationIssue,
)
