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
"""Abstract base class for CLI commands."""

__all__ = []

import inspect
import logging
import re
import sys
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any

from pydantic import ValidationError
from yaml import YAMLError

from starkres._utils._click import _click_param_for_option, _render_param
from starkres.cli._logging import get_script_logger
from starkres.cli._options import COMMON_OPTIONS
from starkres.cli._run_config import ParameterValue, RunConfig
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
)
from starkres.fredholm import QuadratureRule, det_side, rule_for
from starkres.potential import Potential, PotentialDescriptor, make_potential
from starkres.typing import ExitCode, Side

_COMMAND_NAME_REGEX = re.compile(r"(?<!^)(?=[A-Z])")
_EXIT_CODES: tuple[tuple[tuple[type[BaseException], ...], ExitCode], ...] = (
    ((CompletenessError,), ExitCode.CERTIFICATION),
    (
        (
            StarkresValidationError,
            ValidationError,
            YAMLError,
            DomainError,
            BranchCutError,
        ),
        ExitCode.MALFORMED_INPUT,
    ),
    (
        (
            NonConvergenceError,
            BranchJumpError,
            SingularOperatorError,
            AiryOverflowError,
        ),
        ExitCode.NON_CONVERGENCE,
    ),
    ((StarkresError,), ExitCode.GENERAL),
)


def exit_code_for(exc: BaseException) -> ExitCode | None:
    """
    The exit status a command reports for an exception.

    Args:
        exc: The exception raised by a command.

    Returns:
        The exit code, or `None` for exceptions that are bugs rather than
        outcomes and should propagate.

    Examples:
        >>> from starkres.cli._cli_command import exit_code_for
        >>> from starkres.exceptions import CompletenessError, DomainError
        >>> exit_code_for(CompletenessError("short", expected=3, found=2))
        <ExitCode.CERTIFICATION: 4>
        >>> exit_code_for(DomainError("Im lambda < 0"))
        <ExitCode.MALFORMED_INPUT: 2>
        >>> exit_code_for(KeyError("x")) is None
        True
    """
    for types, code in _EXIT_CODES:
        if isinstance(exc, types):
            return code
    return None


class CliCommand(ABC):
    """
    Abstract base class for CLI commands.

    All CLI commands inherit from this class and implement the `run` method,
    whose keyword-only parameters name the `COMMON_OPTIONS` the command takes.
    Exceptions raised by `run` are logged and turned into exit codes.
    """

    auto_append_verbosity: bool = True
    logger: logging.Logger | None = None
    bound_kwargs: dict[str, Any]

    def __init__(self, **kwargs: Any) -> None:
        """
        Bind CLI kwargs to this command instance.

        Args:
            **kwargs: Keyword arguments corresponding to the options declared
                by this command's `options()` classmethod.
        """
        self.bound_kwargs = dict(kwargs)

    def __call__(self) -> None:
        """
        Execute this command using the kwargs bound at construction time.

        Consumes 'verbosity' for logger setup, runs the command and exits with
        its return value, or with the code `exit_code_for` assigns to the
        exception it raised.

        Raises:
            Exception: Any exception without an assigned exit code.
        """
        kwargs = dict(self.bound_kwargs)
        verbosity = kwargs.pop("verbosity", 0)
        self.logger = get_script_logger(__name__, verbosity)
        longest_key = max((len(str(k)) for k in kwargs), default=0)
        self.debug("Given %u options/arguments:", len(kwargs))
        for key, value in kwargs.items():
            self.debug("%s = %s", key.ljust(longest_key, " "), self.format(value))
        self.info("Replay with: %s", self)
        if "verbosity" in self._literal_options():
            kwargs |= {"verbosity": verbosity}
        try:
            code = self.run(**kwargs)
        except Exception as exc:
            if (code := exit_code_for(exc)) is None:
                raise
            self.error("%s: %s", type(exc).__name__, exc)
        sys.exit(code)

    @abstractmethod
    def run(self, **kwargs: Any) -> ExitCode:
        """
        Execute the command.

        Args:
            **kwargs: Command-specific arguments passed from Click options/arguments.
        """
        raise NotImplementedError

    def prepare(
        self,
        potential_path: Path,
        *,
        n: int,
        tol: float = 1.0e-6,
        threads: int = 1,
        out: Path | None = None,
        **parameters: ParameterValue,
    ) -> tuple[RunConfig, Potential, QuadratureRule]:
        """
        Read the potential and validate the run configuration.

        Args:
            potential_path: The potential descriptor file.
            n: Number of quadrature nodes.
            tol: Tolerance of the quadrature resolution check.
            threads: Worker threads.
            out: The artifact path.
            **parameters: Command specific parameters.

        Returns:
            The configuration, the potential and its quadrature rule.
        """
        descriptor = PotentialDescriptor.from_yaml(potential_path)
        config = RunConfig(
            command=self.command_name(),
            potential=descriptor,
            n=n,
            tol=tol,
            threads=threads,
            out=out,
            parameters=parameters,
        )
        potential = make_potential(descriptor)
        self.info(
            "Potential %s on [0, %g], %d nodes, config %s.",
            descriptor.form,
            potential.gamma,
            n,
            config.config_hash()[:12],
        )
        return config, potential, rule_for(potential, n)

    def check_resolution(
        self, potential: Potential, config: RunConfig, lam: complex
    ) -> float:
        """
        Compare `D_plus` at `n` and `2n` nodes and warn above the tolerance.

        Args:
            potential: The potential.
            config: The run configuration.
            lam: The most demanding spectral parameter of the run, in the
                closed upper half-plane.

        Returns:
            The difference of the two determinants.
        """
        coarse = det_side(potential, lam, rule_for(potential, config.n), Side.PLUS)
        fine = det_side(potential, lam, rule_for(potential, 2 * config.n), Side.PLUS)
        difference = abs(fine.d_value - coarse.d_value)
        if difference > config.tol:
            self.warning(
                "D_plus(%s) moves by %.3g from %d to %d nodes; consider a larger --n.",
                lam,
                difference,
                config.n,
                2 * config.n,
            )
        return difference

    @staticmethod
    def artifact_path(out: Path | None, default: str) -> Path:
        """The artifact path, `default` in the working directory if unset."""
        return Path(default) if out is None else out

    @classmethod
    def _literal_options(cls) -> list[str]:
        """
        Get the literal options from the run method signature.

        Returns:
            List of keyword-only parameter names of `run`, in order.
        """
        return [
            param_name
            for param_name, param in inspect.signature(cls.run).parameters.items()
            if param.kind == inspect.Parameter.KEYWORD_ONLY
        ]

    @classmethod
    def options(cls) -> list[str]:
        """
        Get the list of common CLI options/arguments this command uses.

        By default these are the keyword-only parameters of `run`, with
        `verbosity` appended when `auto_append_verbosity` is set.

        Returns:
            List of option names to request from `COMMON_OPTIONS`.

        Examples:
            >>> from pathlib import Path
            >>> from starkres.cli import CliCommand
            >>> from starkres.typing import ExitCode
            >>> class MyCommand(CliCommand):
            ...     def run(self, *, potential: Path, n: int) -> ExitCode:
            ...         return ExitCode.OKAY
            >>> MyCommand.options()
            ['potential', 'n', 'verbosity']
        """
        options = cls._literal_options()
        if cls.auto_append_verbosity and "verbosity" not in options:
            options.append("verbosity")
        return options

    @classmethod
    def command_name(cls) -> str:
        """
        Get the command name for CLI registration.

        Converts the class name from CamelCase to kebab-case without the
        `Command` suffix, so `TraceCheckCommand` becomes `trace-check`.

        Returns:
            The command name to use in the CLI.
        """
        return _COMMAND_NAME_REGEX.sub(
            "-", cls.__name__.removesuffix("Command")
        ).lower()

    def __str__(self) -> str:
        """Render this command as a CLI invocation string.

        Returns:
            The command rendered as a CLI invocation.
        """
        return " ".join(("starkres", self.command_name(), *self.to_argv()))

    def to_argv(self) -> list[str]:
        """Render this instance's bound kwargs back into argv tokens.

        Returns:
            A list of string tokens that replays this invocation.
        """
        tokens: list[str] = []
        for name in type(self).options():
            entry = COMMON_OPTIONS.get(name)
            if entry is None:
                continue
            param = _click_param_for_option(entry[0])
            if param is None:
                continue
            tokens.extend(_render_param(param, self.bound_kwargs.get(name)))
        return tokens

    @classmethod
    def help_text(cls) -> str:
        """
        Get the help text for this command from the class docstring.

        Returns:
            The help text for the command.
        """
        return inspect.cleandoc(cls.__doc__ or "No description available.")

    def debug(self, *args: Any, **kwargs: Any) -> None:
        """Log a debug message."""
        if self.logger is None:
            return
        self.logger.debug(*args, **kwargs)

    def info(self, *args: Any, **kwargs: Any) -> None:
        """Log an info message."""
        if self.logger is None:
            return
        self.logger.info(*args, **kwargs)

    def warning(self, *args: Any, **kwargs: Any) -> None:
        """Log a warning."""
        if self.logger is None:
            return
        self.logger.warning(*args, **kwargs)

    def error(self, *args: Any, **kwargs: Any) -> None:
        """Log an error."""
        if self.logger is None:
            return
        self.logger.error(*args, **kwargs)

    @staticmethod
    def format(value: object) -> str:
        """
        Format a value for logging output.

        Args:
            value: The value to format.

        Returns:
            A string representation of the value.

        Examples:
            >>> from pathlib import Path
            >>> from starkres.cli import CliCommand
            >>> CliCommand.format(Path("/data/box.yaml"))
            '/data/box.yaml'
            >>> CliCommand.format(1000000)
            '1,000,000'
            >>> CliCommand.format(2 + 2j)
            '(2+2j)'
        """
        if isinstance(value, Path):
            return str(value.absolute())
        if isinstance(value, int | float) and not isinstance(value, bool):
            return f"{value:,}"
        return str(value)
