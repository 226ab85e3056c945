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
"""Tests for the exception hierarchy in `starkres.exceptions`."""

import pytest

from starkres.exceptions import (
    AiryOverflowError,
    BranchCutError,
    BranchJumpError,
    CompletenessError,
    DomainError,
    NonConvergenceError,
    SingularOperatorError,
    StarkresError,
    StarkresValidationError,
    UnderResolutionError,
    ValidationIssue,
    ZeroOnContourError,
)
from starkres.potential import make_potential


@pytest.mark.parametrize(
    ("error", "bases"),
    [
        (AiryOverflowError("big", log_scale=800.0), (OverflowError,)),
        (BranchCutError("cut"), (ValueError,)),
        (DomainError("outside"), (ValueError,)),
        (UnderResolutionError("coarse"), (NonConvergenceError,)),
        (ZeroOnContourError("on contour"), (NonConvergenceError,)),
        (SingularOperatorError("singular"), ()),
        (BranchJumpError("jump", index=3, jump=2.0), ()),
        (CompletenessError("short", expected=4, found=3), ()),
        (StarkresValidationError([ValidationIssue("bad", "kind")]), ()),
    ],
)
def test_every_error_is_a_starkres_error(
    error: StarkresError, bases: tuple[type[Exception], ...]
) -> None:
    """All package errors share the root class and their builtin bases."""
    assert isinstance(error, StarkresError)
    for base in bases:
        assert isinstance(error, base)


def test_errors_carry_their_context() -> None:
    """Numerical errors keep the numbers needed to report them."""
    assert AiryOverflowError("big", log_scale=812.5).log_scale == 812.5
    assert NonConvergenceError("slow").achieved_error is None
    assert UnderResolutionError("coarse", achieved_error=1e-3).achieved_error == 1e-3
    jump = BranchJumpError("jump", index=7, jump=-1.9)
    assert (jump.index, jump.jump) == (7, -1.9)
    completeness = CompletenessError("short", expected=5, found=4)
    assert (completeness.expected, completeness.found) == (5, 4)


def test_validation_error_lists_all_issues() -> None:
    """Every collected issue appears in the message with its context."""
    error = StarkresValidationError(
        [
            ValidationIssue(
                "Support endpoint must be positive.", "invalid_gamma", {"gamma": 0.0}
            ),
            ValidationIssue("Unknown form 'cubic'.", "unknown_form"),
        ]
    )
    assert str(error).splitlines() == [
        "2 validation issues encountered:",
        "- [invalid_gamma] Support endpoint must be positive. (gamma=0.0)",
        "- [unknown_form] Unknown form 'cubic'.",
    ]
    assert len(error.issues) == 2


def test_pydantic_errors_become_issues() -> None:
    """Schema failures of a descriptor are reported as tagged issues."""
    with pytest.raises(StarkresValidationError) as info:
        make_potential({"gamma": "wide", "form": "box", "coeffs": [1.0]})
    assert info.value.kinds == ("float_parsing",)
    assert info.value.issues[0].ctx == {"loc": "gamma"}
    assert str(info.value.issues[0]).startswith("[float_parsing] ")
