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
"""Turn `CliCommand` subclasses into Click commands."""

__all__ = []

from typing import Any

import click

from starkres.cli._cli_command import CliCommand
from starkres.cli._options import _argument_help_records, get_option


class _ArgumentHelpCommand(click.Command):
    """Click command that lists its positional arguments in the help."""

    def format_options(
        self,
        ctx: click.Context,
        formatter: click.HelpFormatter,
    ) -> None:
        """Write shared argument help before the normal options section."""
        argument_help = _argument_help_records(self.get_params(ctx))
        if argument_help:
            with formatter.section("Arguments"):
                formatter.write_dl(argument_help)
        super().format_options(ctx, formatter)


def register_command(command_cls: type[CliCommand], group: click.Group) -> None:
    """
    Register a `CliCommand` subclass with a Click group.

    The options the command asks for are looked up in `COMMON_OPTIONS` and
    applied in order, and the class docstring becomes the help text.

    Args:
        command_cls: A `CliCommand` subclass to register.
        group: The click `Group` to register the command with.

    Examples:
        >>> import click
        >>> from pathlib import Path
        >>> from starkres.cli import CliCommand
        >>> from starkres.cli._register_command import register_command
        >>> from starkres.typing import ExitCode
        >>> @click.group()
        ... def demo() -> None:
        ...     pass
        >>> class EchoRadiusCommand(CliCommand):
        ...     '''Print the radius.'''
        ...     def run(self, *, radius: float) -> ExitCode:
        ...         click.echo(radius)
        ...         return ExitCode.OKAY
        >>> register_command(EchoRadiusCommand, demo)
        >>> sorted(demo.commands)
        ['echo-radius']
        >>> [param.name for param in demo.commands["echo-radius"].params]
        ['radius', 'verbosity']
    """

    def command_wrapper(**kwargs: Any) -> None:
        command_cls(**kwargs)()

    command_name = command_cls.command_name()
    command_wrapper.__name__ = command_name
    command_wrapper.__doc__ = command_cls.help_text()

    for option_name in reversed(command_cls.options()):
        command_wrapper = get_option(option_name)(command_wrapper)

    group.command(name=command_name, cls=_ArgumentHelpCommand)(command_wrapper)
