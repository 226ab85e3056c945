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
Terminal logging for the `starkres` commands.

The numerical modules log through `logging.getLogger(__name__)` and never
configure handlers. A command calls `get_script_logger` once; that routes the
whole `starkres` logger tree (anchor radii, contour subdivisions, Airy cache
hits, study verdicts) to stderr at the level picked by repeated `-v` flags,
leaving stdout free for artifacts written to `-`.
"""

__all__ = [
    "DEFAULT_LOG_FORMAT",
    "PACKAGE_LOGGER_NAME",
    "ClickHandler",
    "LoggingLevel",
    "get_script_logger",
]


import logging
import sys
from enum import IntEnum
from pathlib import Path
from typing import IO, Any, Final

import click

_PUNCTUATION: Final = (".", ",", "?", "!", ":")
_FLAG_LEVELS: Final = (logging.ERROR, logging.WARNING, logging.INFO)
_LEVEL_COLOURS: Final = {logging.WARNING: "yellow", logging.ERROR: "red"}
DEFAULT_LOG_FORMAT: Final = "%(asctime)s:%(levelname)s> %(message)s"
PACKAGE_LOGGER_NAME: Final = "starkres"


class ClickHandler(logging.Handler):
    """
    Echo records through click, on stderr unless told otherwise.

    Warnings and errors are coloured when click decides the stream is a
    terminal, so a failed certification stands out from progress messages.
    """

    def __init__(
        self,
        level: int | str = 0,
        file: IO[Any] | None = None,
        *,
        err: bool = True,
        punctuate: bool = True,
    ) -> None:
        """
        Initialize the handler.

        Args:
            level: Threshold of the handler itself.
            file: Stream to write to; `None` lets click choose from `err`.
            err: Use stderr rather than stdout.
            punctuate: End messages that lack punctuation with a period.
        """
        super().__init__(level)
        self._file = file
        self._err = err
        self._punctuate = punctuate

    def emit(self, record: logging.LogRecord) -> None:
        """
        Format `record` and echo it.

        Args:
            record: The record.
        """
        msg = self.format(record)
        if self._punctuate and not msg.endswith(_PUNCTUATION):
            msg += "."
        colour = _LEVEL_COLOURS.get(record.levelno)
        if colour is not None:
            msg = click.style(msg, fg=colour)
        click.echo(msg, file=self._file, err=self._err)


def _replace_handlers(logger: logging.Logger, handler: logging.Handler) -> None:
    for old in list(logger.handlers):
        logger.removeHandler(old)
    logger.addHandler(handler)


def get_script_logger(
    name: str,
    verbosity: int,
    handler: logging.Handler | None = None,
    log_format: str = DEFAULT_LOG_FORMAT,
) -> logging.Logger:
    """
    Configure terminal logging for one command and return its logger.

    The package logger gets the level of `verbosity` and exactly one handler,
    so running several commands in one process, as the CLI tests do, never
    duplicates lines. A logger outside the package gets the same handler.

    Args:
        name: Logger name, normally the command module's `__name__`.
        verbosity: Number of `-v` flags, or a `LoggingLevel`.
        handler: Handler to install, a `ClickHandler` by default.
        log_format: Format string for `logging.Formatter`.

    Returns:
        The logger called `name`.

    Examples:
        >>> from starkres.cli._logging import get_script_logger
        >>> logger = get_script_logger("starkres.cli.demo", 2)
        >>> logger.getEffectiveLevel()
        20
        >>> logger.info("Located 3 resonances")  # doctest: +SKIP
        2026-03-02 10:11:12,131:INFO> Located 3 resonances.
    """
    level = LoggingLevel.from_verbosity(verbosity)
    handler = ClickHandler() if handler is None else handler
    handler.setFormatter(logging.Formatter(log_format))
    # pytest-dev/pytest#3697
    propagate = Path(sys.argv[0]).name == "pytest" if sys.argv else False
    package_logger = logging.getLogger(PACKAGE_LOGGER_NAME)
    package_logger.setLevel(level)
    _replace_handlers(package_logger, handler)
    package_logger.propagate = propagate
    logger = logging.getLogger(name)
    logger.setLevel(level)
    if name != PACKAGE_LOGGER_NAME and not name.startswith(f"{PACKAGE_LOGGER_NAME}."):
        _replace_handlers(logger, handler)
        logger.propagate = propagate
    return logger


class LoggingLevel(IntEnum):
    """
    Logging levels, with the mapping from counted `-v` flags.

    No flag shows errors only, `-v` adds warnings such as a failed study, `-vv`
    progress of searches and sweeps, and `-vvv` or more the per-sample debug
    lines.

    Examples:
        >>> from starkres.cli._logging import LoggingLevel
        >>> LoggingLevel.from_verbosity(0)
        <LoggingLevel.ERROR: 40>
        >>> LoggingLevel.from_verbosity(2)
        <LoggingLevel.INFO: 20>
        >>> LoggingLevel.from_verbosity(7)
        <LoggingLevel.DEBUG: 10>
        >>> LoggingLevel.from_verbosity(-1)
        Traceback (most recent call last):
            ...
        ValueError: `verbosity` must be non-negative, was given '-1'.
    """

    DEBUG = logging.DEBUG
    INFO = logging.INFO
    WARNING = logging.WARNING
    ERROR = logging.ERROR
    CRITICAL = logging.CRITICAL

    @classmethod
    def from_verbosity(cls, verbosity: "int | LoggingLevel") -> "LoggingLevel":
        """
        The level for a flag count; logging levels map to themselves.

        Args:
            verbosity: A `-v` count or a logging level.

        Returns:
            The level.

        Raises:
            ValueError: If `verbosity` is negative.
        """
        if isinstance(verbosity, cls):
            return verbosity
        if verbosity < 0:
            msg = f"`verbosity` must be non-negative, was given '{verbosity}'."
            raise ValueError(msg)
        if verbosity in set(cls):
            return cls(verbosity)
        if verbosity < len(_FLAG_LEVELS):
            return cls(_FLAG_LEVELS[verbosity])
        return cls.DEBUG
