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
"""Tests for `LoggingLevel`, the mapping from `-v` counts to logging levels."""

import logging

import pytest

from starkres.cli._logging import PACKAGE_LOGGER_NAME, LoggingLevel, get_script_logger


@pytest.mark.parametrize(
    ("count", "expected"),
    [
        (0, LoggingLevel.ERROR),
        (1, LoggingLevel.WARNING),
        (2, LoggingLevel.INFO),
        (3, LoggingLevel.DEBUG),
        (12, LoggingLevel.DEBUG),
    ],
)
def test_flag_count_selects_level(count: int, expected: LoggingLevel) -> None:
    """Each extra `-v` lowers the threshold until debug output is reached."""
    assert LoggingLevel.from_verbosity(count) is expected


@pytest.mark.parametrize("level", list(LoggingLevel))
def test_explicit_levels_pass_through(level: LoggingLevel) -> None:
    """Standard level numbers and members are returned unchanged."""
    assert LoggingLevel.from_verbosity(level) is level
    assert LoggingLevel.from_verbosity(int(level)) is level


def test_negative_count_is_rejected() -> None:
    """A negative count cannot come from click and signals a bug."""
    with pytest.raises(ValueError, match=r"must be non-negative, was given '-2'"):
        LoggingLevel.from_verbosity(-2)


@pytest.mark.parametrize(("count", "level"), [(0, logging.ERROR), (2, logging.INFO)])
def test_package_logger_follows_count(count: int, level: int) -> None:
    """Library modules under `starkres` inherit the level chosen on the CLI."""
    get_script_logger("starkres.cli.test", count)
    library = logging.getLogger("starkres.resonance")
    assert logging.getLogger(PACKAGE_LOGGER_NAME).level == level
    assert library.getEffectiveLevel() == level
