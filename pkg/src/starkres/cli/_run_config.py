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
"""The validated configuration of one command line run."""

__all__ = ["RunConfig"]

import hashlib
import json
from pathlib import Path
from typing import Self

from pydantic import BaseModel, ConfigDict, Field, FiniteFloat, model_validator

from starkres._utils._pydantic import RangeSpec, _range_bounds
from starkres.fredholm import MIN_RULE_SIZE
from starkres.potential import PotentialDescriptor
from starkres.typing import ClaimId, Side

ParameterValue = FiniteFloat | RangeSpec | ClaimId | Side | None


class RunConfig(BaseModel):
    """
    Everything a command was asked to do.

    Attributes:
        command: The command name.
        potential: The potential descriptor.
        n: Number of quadrature nodes.
        tol: Tolerance of the quadrature resolution check.
        threads: Worker threads.
        out: The artifact path.
        parameters: Command specific parameters; numbers must be finite and
            range specifications increasing.

    Examples:
        >>> from starkres.cli._run_config import RunConfig
        >>> box = {"gamma": 1.0, "form": "box", "coeffs": [1.0]}
        >>> one = RunConfig(command="count", potential=box, n=64, threads=1)
        >>> eight = RunConfig(command="count", potential=box, n=64, threads=8)
        >>> one.config_hash() == eight.config_hash()
        True
        >>> len(one.config_hash())
        64
        >>> RunConfig(command="count", potential=box, n=64).with_parameters(
        ...     radius=float("inf")
        ... )  # doctest: +ELLIPSIS
        Traceback (most recent call last):
            ...
        pydantic_core._pydantic_core.ValidationError: ...
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    command: str = Field(min_length=1)
    potential: PotentialDescriptor
    n: int = Field(ge=MIN_RULE_SIZE)
    tol: FiniteFloat = Field(default=1.0e-6, gt=0.0)
    threads: int = Field(default=1, ge=1)
    out: Path | None = None
    parameters: dict[str, ParameterValue] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_ranges(self) -> Self:
        """Range specifications must be finite and increasing."""
        for value in self.parameters.values():
            if isinstance(value, str) and not isinstance(value, ClaimId | Side):
                _range_bounds(value)
        return self

    def with_parameters(self, **parameters: ParameterValue) -> "RunConfig":
        """
        A copy with further command parameters, validated again.

        Args:
            **parameters: The parameters to add.

        Returns:
            The extended configuration.
        """
        data = self.model_dump()
        data["parameters"] = {**self.parameters, **parameters}
        return RunConfig.model_validate(data)

    def config_hash(self) -> str:
        """
        SHA-256 of the canonical JSON of everything that affects the results.

        The thread count and the artifact path are left out, so artifacts are
        byte identical across thread counts and output locations.

        Returns:
            The hexadecimal digest.
        """
        payload = self.model_dump(mode="json", exclude={"threads", "out"})
        text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode("utf-8")).hexdigest()
