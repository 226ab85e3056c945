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
"""Unit tests for `get_script_logger` in `starkres.cli._logging`."""

import io
import logging

import pytest

from starkres.cli._logging import (
    DEFAULT_LOG_FORMAT,
    PACKAGE_LOGGER_NAME,
    ClickHandler,
    LoggingLevel,
    get_script_logger,
)


@pytest.mark.parametrize("name", ["resonance_script", "starkres.cli.demo"])
@pytest.mark.parametrize("verbosity", [0, 1, 2, 3, logging.WARNING])
@pytest.mark.parametrize("log_format", [None, "%(message)s"])
def test_levels_follow_verbosity(
    name: str,
    verbosity: int,
    log_format: str | None,
) -> None:
    """Records below the verbosity derived level are dropped, others kept."""
    buffer = io.StringIO()
    logger = get_script_logger(
        name,
        verbosity,
        handler=logging.StreamHandler(buffer),
        log_format=log_format or DEFAULT_LOG_FORMAT,
    )
    assert logger.name == name
    assert logger.level == LoggingLevel.from_verbosity(verbosity)
    package_logger = logging.getLogger(PACKAGE_LOGGER_NAME)
    assert package_logger.level == LoggingLevel.from_verbosity(verbosity)
    assert len(package_logger.handlers) == 1
    formatter = package_logger.handlers[0].formatter
    assert formatter is not None
    assert formatter._fmt == (log_format or DEFAULT_LOG_FORMAT)
    for level in (logging.DEBUG, logging.INFO, logging.WARNING, logging.ERROR):
        logger.log(level, "message at %d", level)
    expected = [
        level
        for level in (logging.DEBUG, logging.INFO, logging.WARNING, logging.ERROR)
        if level >= LoggingLevel.from_verbosity(verbosity)
    ]
    assert len(buffer.getvalue().splitlines()) == len(expected)


def test_repeated_calls_do_not_stack_handlers() -> None:
    """Calling twice leaves exactly one handler on the package logger."""
    get_script_logger("starkres.cli.first", 1)
    get_script_logger("starkres.cli.second", 2)
    handlers = logging.getLogger(PACKAGE_LOGGER_NAME).handlers
    assert len(handlers) == 1
    assert isinstance(handlers[0], ClickHandler)


def test_library_loggers_inherit_the_cli_level() -> None:
    """A module logger under `starkres` sees the level the command chose."""
    get_script_logger("starkres.cli.demo", 2)
    assert logging.getLogger("starkres.resonance").getEffectiveLevel() == logging.INFO
    get_script_logger("starkres.cli.demo", 0)
    assert logging.getLogger("starkres.resonance").getEffectiveLevel() == logging.ERROR
