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
"""Tests for `CliCommand.__call__` and the exit code mapping."""

from unittest.mock import Mock

import pytest
from pydantic import BaseModel, ValidationError

from starkres.cli import CliCommand
from starkres.cli._cli_command import exit_code_for
from starkres.exceptions import (
    AiryOverflowError,
    BranchCutError,
    BranchJumpError,
    CompletenessError,
    DomainError,
    NonConvergenceError,
    SingularOperatorError,
    StarkresError,
    UnderResolutionError,
    ZeroOnContourError,
)
from starkres.typing import ExitCode


class _Strict(BaseModel):
    value: int


def _pydantic_error() -> ValidationError:
    try:
        _Strict.model_validate({"value": "not a number"})
    except ValidationError as exc:
        return exc
    raise AssertionError


@pytest.mark.parametrize(
    ("exc", "expected"),
    [
        (CompletenessError("short", expected=3, found=2), ExitCode.CERTIFICATION),
        (DomainError("Im lambda < 0"), ExitCode.MALFORMED_INPUT),
        (BranchCutError("on the cut"), ExitCode.MALFORMED_INPUT),
        (_pydantic_error(), ExitCode.MALFORMED_INPUT),
        (NonConvergenceError("stalled"), ExitCode.NON_CONVERGENCE),
        (UnderResolutionError("coarse"), ExitCode.NON_CONVERGENCE),
        (ZeroOnContourError("zero on edge"), ExitCode.NON_CONVERGENCE),
        (SingularOperatorError("pivot"), ExitCode.NON_CONVERGENCE),
        (BranchJumpError("jump", index=3, jump=4.0), ExitCode.NON_CONVERGENCE),
        (AiryOverflowError("huge", log_scale=800.0), ExitCode.NON_CONVERGENCE),
        (StarkresError("other"), ExitCode.GENERAL),
        (KeyError("bug"), None),
        (ValueError("bug"), None),
    ],
)
def test_exit_code_for(exc: BaseException, expected: ExitCode | None) -> None:
    """Library errors map onto their documented exit statuses."""
    assert exit_code_for(exc) == expected


@pytest.mark.parametrize(
    "exit_code",
    [ExitCode.OKAY, ExitCode.GENERAL, ExitCode.CERTIFICATION],
)
def test_exits_with_run_return_value(
    monkeypatch: pytest.MonkeyPatch,
    exit_code: ExitCode,
) -> None:
    """__call__ should forward run()'s return value to sys.exit()."""

    class _FixedExitCommand(CliCommand):
        """Command that returns a configured exit code."""

        def run(self, *, radius: float) -> ExitCode:  # type: ignore[override]
            """Execute the command.

            Returns:
                The configured exit code.
            """
            del radius
            return exit_code

    exit_mock = Mock()
    monkeypatch.setattr("starkres.cli._cli_command.sys.exit", exit_mock)
    _FixedExitCommand(radius=5.0, verbosity=0)()
    exit_mock.assert_called_once_with(exit_code)


@pytest.mark.parametrize(
    ("exc", "expected"),
    [
        (CompletenessError("short", expected=2, found=1), ExitCode.CERTIFICATION),
        (NonConvergenceError("stalled"), ExitCode.NON_CONVERGENCE),
        (DomainError("bad check point"), ExitCode.MALFORMED_INPUT),
    ],
)
def test_exits_with_code_of_raised_error(
    monkeypatch: pytest.MonkeyPatch, exc: Exception, expected: ExitCode
) -> None:
    """Errors raised by run() become exit statuses instead of tracebacks."""

    class _FailingCommand(CliCommand):
        def run(self) -> ExitCode:  # type: ignore[override]
            raise exc

    exit_mock = Mock()
    monkeypatch.setattr("starkres.cli._cli_command.sys.exit", exit_mock)
    _FailingCommand()()
    exit_mock.assert_called_once_with(expected)


def test_unexpected_errors_propagate(monkeypatch: pytest.MonkeyPatch) -> None:
    """Errors without an exit status are bugs and are not swallowed."""

    class _BuggyCommand(CliCommand):
        def run(self) -> ExitCode:  # type: ignore[override]
            msg = "missing"
            raise KeyError(msg)

    exit_mock = Mock()
    monkeypatch.setattr("starkres.cli._cli_command.sys.exit", exit_mock)
    with pytest.raises(KeyError, match="missing"):
        _BuggyCommand()()
    exit_mock.assert_not_called()


def test_verbosity_is_forwarded_when_requested(
    monkeypatch: pytest.MonkeyPatch,
) -> None:
    """A run() that names `verbosity` receives it."""
    seen: list[int] = []

    class _VerboseCommand(CliCommand):
        def run(self, *, verbosity: int) -> ExitCode:  # type: ignore[override]
            seen.append(verbosity)
            return ExitCode.OKAY

    monkeypatch.setattr("starkres.cli._cli_command.sys.exit", Mock())
    _VerboseCommand(verbosity=2)()
    assert seen == [2]
