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
"""YAML serialization helpers for potential descriptors and tolerance manifests."""

__all__ = ["StarkresYamlDumper", "YamlSerializableBaseModel"]

from pathlib import Path
from typing import Any, Self

from pydantic import BaseModel
from typing_extensions import override
from yaml import SafeDumper
from yaml import dump as yaml_dump
from yaml import safe_load as yaml_safe_load


class StarkresYamlDumper(SafeDumper):
    """YAML dumper that indents nested sequences and writes short float lists inline."""

    @override
    def increase_indent(self, flow: bool = False, indentless: bool = False) -> None:
        """
        Indent nested block sequences under their mapping keys.

        PyYAML writes sequences under mapping keys without indentation by
        default, which is hard to scan for the piecewise coefficient lists of a
        potential descriptor.
        """
        super().increase_indent(flow=flow, indentless=False)

    @override
    def represent_sequence(
        self, tag: str, sequence: Any, flow_style: bool | None = None
    ) -> Any:
        """Write sequences of plain numbers in flow style, e.g. `[1.0, 0.5]`."""
        if flow_style is None and all(
            isinstance(item, int | float) and not isinstance(item, bool)
            for item in sequence
        ):
            flow_style = True
        return super().represent_sequence(tag, sequence, flow_style=flow_style)


class YamlSerializableBaseModel(BaseModel):
    """
    Base model with YAML serialization support.

    JSON is a subset of YAML, so JSON documents are accepted by `safe_load` and
    `from_yaml` as well.

    Example:
        >>> class DemoModel(YamlSerializableBaseModel):
        ...     gamma: float
        ...     coeffs: list[float]
        >>> payload = DemoModel(gamma=1.0, coeffs=[1.0, 0.5]).safe_dump()
        >>> print(payload, end="")
        gamma: 1.0
        coeffs: [1.0, 0.5]
        >>> DemoModel.safe_load('{"gamma": 2, "coeffs": [0.0]}')
        DemoModel(gamma=2.0, coeffs=[0.0])
    """

    @classmethod
    def safe_load(cls, contents: str) -> Self:
        """
        Deserialize YAML (or JSON) text to an instance of the model.

        Args:
            contents: The document to deserialize.

        Returns:
            An instance of the model.
        """
        return cls.model_validate(yaml_safe_load(contents))

    @classmethod
    def from_yaml(cls, file: Path, encoding: str = "utf-8", **kwargs: Any) -> Self:
        """
        Deserialize a YAML or JSON file to an instance of the model.

        Args:
            file: Path to the file to read.
            encoding: Encoding of the file.
            **kwargs: Additional keyword arguments to pass to `Path.read_text`.

        Returns:
            An instance of the model.
        """
        return cls.safe_load(file.read_text(encoding=encoding, **kwargs))

    def safe_dump(self) -> str:
        """
        Serialize the model to a YAML document, keeping field order.

        Returns:
            The serialized YAML document.
        """
        return yaml_dump(
            self.model_dump(mode="json", exclude_none=True),
            Dumper=StarkresYamlDumper,
            default_flow_style=False,
            sort_keys=False,
        )

    def to_yaml(self, file: Path, encoding: str = "utf-8", **kwargs: Any) -> None:
        """
        Serialize the model to a YAML file.

        Args:
            file: Path to the YAML file to write.
            encoding: Encoding of the YAML file.
            **kwargs: Additional keyword arguments to pass to `Path.write_text`.
        """
        file.write_text(self.safe_dump(), encoding=encoding, **kwargs)
