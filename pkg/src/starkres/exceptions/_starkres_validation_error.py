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
Validation errors for potential descriptors and command options.

Problems with an input are collected into `ValidationIssue` records and raised
together, one `StarkresValidationError` per descriptor, so the CLI can report a
malformed potential file in full and exit with the malformed-input code.
"""

__all__ = ["StarkresValidationError", "ValidationIssue"]

from collections.abc import Iterable
from dataclasses import dataclass
from typing import Any

from pydantic import ValidationError as PydanticValidationError

from starkres.exceptions._starkres_error import StarkresError


@dataclass(frozen=True)
class ValidationIssue:
    """
    One problem found in a potential descriptor or an option.

    Attributes:
        msg: What is wrong, as a sentence.
        kind: A stable snake case tag such as `invalid_gamma` or
            `support_mismatch`; tests and callers match on it.
        ctx: The offending values, printed after the message.

    Examples:
        >>> from starkres.exceptions import ValidationIssue
        >>> print(ValidationIssue("Support endpoint must be positive.", "invalid_gamma"))
        [invalid_gamma] Support endpoint must be positive.
        >>> issue = ValidationIssue(
        ...     "Sample grid must start at 0 and end at gamma.",
        ...     "support_mismatch",
        ...     {"gamma": 2.0, "x_max": 1.5},
        ... )
        >>> print(issue)
        [support_mismatch] Sample grid must start at 0 and end at gamma. (gamma=2.0, x_max=1.5)
    """  # noqa: E501

    msg: str
    kind: str
    ctx: dict[str, Any] | None = None

    def __str__(self) -> str:
        """The issue on one line, context last."""
        line = f"[{self.kind}] {self.msg}"
        if self.ctx:
            line += " (" + ", ".join(f"{k}={v}" for k, v in self.ctx.items()) + ")"
        return line


class StarkresValidationError(StarkresError):
    """
    A potential descriptor or run option failed validation.

    Attributes:
        issues: Every issue found, in the order they were detected.

    Examples:
        >>> from starkres.exceptions import (
        ...     StarkresValidationError,
        ...     ValidationIssue,
        ... )
        >>> error = StarkresValidationError([
        ...     ValidationIssue("Samples contain non-finite values.",
        ...                     "non_finite_samples", {"count": 2}),
        ...     ValidationIssue("Unknown form 'cubic'.", "unknown_form"),
        ... ])
        >>> print(error)
        2 validation issues encountered:
        - [non_finite_samples] Samples contain non-finite values. (count=2)
        - [unknown_form] Unknown form 'cubic'.
        >>> error.kinds
        ('non_finite_samples', 'unknown_form')
    """

    def __init__(self, issues: Iterable[ValidationIssue]) -> None:
        """
        Initialize the error from the collected issues.

        Args:
            issues: The issues, at least one.
        """
        self.issues = list(issues)
        count = len(self.issues)
        noun = "issue" if count == 1 else "issues"
        header = f"{count} validation {noun} encountered:"
        super().__init__("\n".join([header, *(f"- {i}" for i in self.issues)]))

    @property
    def kinds(self) -> tuple[str, ...]:
        """The `kind` tags of the issues."""
        return tuple(issue.kind for issue in self.issues)

    @classmethod
    def from_pydantic(cls, exc: PydanticValidationError) -> "StarkresValidationError":
        """
        Translate a pydantic schema failure, one issue per error location.

        Args:
            exc: The pydantic error raised while parsing a descriptor.

        Returns:
            The equivalent validation error, tagged with pydantic's error types.
        """
        return cls(
            ValidationIssue(
                msg=error["msg"],
                kind=error["type"],
                ctx={"loc": ".".join(str(part) for part in error["loc"])},
            )
            for error in exc.errors()
        )
