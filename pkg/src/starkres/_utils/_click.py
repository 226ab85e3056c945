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
"""Helpers for inspecting and rendering Click parameters."""

__all__ = ()

import cmath
from pathlib import Path
from typing import TYPE_CHECKING

import click
from click import Argument as ClickArgument
from click import Option as ClickOption
from click import Parameter as ClickParameter

if TYPE_CHECKING:
    from collections.abc import Callable


def _click_param_for_option(
    decorator: "Callable[..., object]",
) -> ClickParameter | None:
    """Extract the Click parameter object produced by a `COMMON_OPTIONS` decorator.

    Applies the decorator to a dummy function and returns the last parameter
    it attached.

    Args:
        decorator: A Click decorator (e.g. `click.option(...)` or
            `click.argument(...)`).

    Returns:
        The `ClickParameter` instance attached by the decorator, or `None`
        if the decorator produced none.

    Examples:
        >>> import click
        >>> from starkres._utils._click import _click_param_for_option
        >>> param = _click_param_for_option(click.option("--no-cache", is_flag=True))
        >>> isinstance(param, click.Option), param.name
        (True, 'no_cache')
        >>> _click_param_for_option(lambda f: f) is None
        True
    """

    def dummy() -> None:
        """Placeholder the decorator attaches its parameter to."""

    decorated = decorator(dummy)
    params: list[ClickParameter] = getattr(decorated, "__click_params__", [])
    return params[-1] if params else None


def _str_value(value: object) -> str:
    """Render a single option value as a string, resolving `Path` objects.

    Args:
        value: Any bound option value.

    Returns:
        The string representation of the value, with `Path` objects rendered
        as their absolute path.

    Examples:
        >>> from pathlib import Path
        >>> from starkres._utils._click import _str_value
        >>> _str_value(128)
        '128'
        >>> _str_value(Path("/abs/box.yaml"))
        '/abs/box.yaml'
        >>> _str_value(2 + 2j)
        '(2+2j)'
    """
    if isinstance(value, Path):
        return str(value.absolute())
    return str(value)


def _render_param(param: ClickParameter, value: object) -> list[str]:
    """Render a single Click parameter and its bound value into argv tokens.

    - `click.Argument`: bare positional string, or `[]` if `value` is `None`.
    - `click.Option(is_flag=True)`: the first option string when truthy.
    - `click.Option(count=True)`: repeated short flag, e.g. `["-vv"]`.
    - `click.Option` otherwise: `["--name", str(value)]`, or `[]` for `None`.

    Args:
        param: The Click parameter descriptor.
        value: The bound value for that parameter.

    Returns:
        A (possibly empty) list of string tokens.

    Examples:
        >>> import click
        >>> from starkres._utils._click import _render_param
        >>> _render_param(click.Argument(["claim_id"]), "born_ray")
        ['born_ray']
        >>> flag = click.Option(["--no-cache"], is_flag=True, default=False)
        >>> _render_param(flag, True), _render_param(flag, False)
        (['--no-cache'], [])
        >>> verbosity = click.Option(["-v", "--verbosity"], count=True, default=0)
        >>> _render_param(verbosity, 3)
        ['-vvv']
        >>> _render_param(click.Option(["--range", "lam_range"]), "-5:5")
        ['--range', '-5:5']
    """
    if isinstance(param, ClickArgument):
        return [_str_value(value)] if value is not None else []
    if not isinstance(param, ClickOption):
        return []
    if getattr(param, "is_flag", False):
        return [param.opts[0]] if value else []
    if getattr(param, "count", False):
        count = int(value) if isinstance(value, (int, str)) and value else 0
        short = next(
            (o for o in param.opts if o.startswith("-") and not o.startswith("--")),
            param.opts[0],
        )
        return ["-" + short.lstrip("-") * count] if count else []
    long_opt = next(
        (o for o in param.opts if o.startswith("--")),
        param.opts[0],
    )
    return [long_opt, _str_value(value)] if value is not None else []


def _complex_callback(
    ctx: click.Context, param: click.Parameter, value: str | None
) -> complex | None:
    """
    Parse a complex number option such as `2+2j`.

    Args:
        ctx: The active Click context.
        param: The Click parameter being processed.
        value: The raw option value.

    Returns:
        The parsed number, `None` when the option was omitted.

    Raises:
        click.BadParameter: If the value is not a finite complex number.

    Examples:
        >>> from starkres._utils._click import _complex_callback
        >>> _complex_callback(None, None, " 2+2j ")
        (2+2j)
        >>> _complex_callback(None, None, "two")
        Traceback (most recent call last):
            ...
        click.exceptions.BadParameter: 'two' is not a complex number such as 2+2j.
    """
    del ctx
    if value is None:
        return None
    try:
        parsed = complex(value.strip().replace(" ", ""))
    except ValueError as exc:
        msg = f"{value!r} is not a complex number such as 2+2j."
        raise click.BadParameter(msg, param=param) from exc
    if not cmath.isfinite(parsed):
        msg = f"{value!r} is not finite."
        raise click.BadParameter(msg, param=param)
    return parsed
