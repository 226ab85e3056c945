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
"""Pytest test configuration."""

# ruff: noqa: DOC201

import logging
import re
import sys
from collections.abc import Callable, Generator
from importlib.util import module_from_spec, spec_from_file_location
from pathlib import Path
from typing import Any

import pytest
import yaml
from _pytest.doctest import DoctestModule

from starkres.fredholm import QuadratureRule, rule_for
from starkres.potential import Potential, make_potential


def _find_repo_root(start: Path) -> Path:
    """
    Find the repository root by searching for a parent with `pyproject.toml`.

    Args:
        start: The starting directory to search from.

    Returns:
        The path to the repository root directory.

    Raises:
        FileNotFoundError: If no repository root is found.

    """
    for candidate in (start, *start.parents):
        if (candidate / "pyproject.toml").is_file():
            return candidate
    msg = f"Could not find repository root from {start} (missing `pyproject.toml`)."
    raise FileNotFoundError(msg)


@pytest.fixture(scope="session")
def repo_root() -> Path:
    """Get the repository root directory containing `pyproject.toml`."""
    return _find_repo_root(Path(__file__).resolve())


REPO_ROOT = _find_repo_root(Path(__file__).resolve())
SOURCE_ROOT = REPO_ROOT / "src" / "starkres"


def _doctest_module_name(file_path: Path) -> str:
    """
    Build a synthetic module name for path-based doctest imports.

    This avoids collisions between `starkres.typing`, `starkres.yaml` and the
    standard library or third party modules of the same name.
    """
    relative_path = file_path.relative_to(SOURCE_ROOT)
    sanitized = re.sub(r"[^0-9A-Za-z_]", "_", relative_path.as_posix())
    return f"_starkres_doctest_{sanitized}"


class SourceDoctestModule(DoctestModule):
    """Doctest collector that imports source files by file path."""

    def _getobj(self) -> object:
        module_name = _doctest_module_name(self.path)
        spec = spec_from_file_location(module_name, self.path)
        if spec is None or spec.loader is None:
            msg = f"Could not create an import spec for {self.path!r}."
            raise ImportError(msg)

        module = module_from_spec(spec)
        sys.modules[module_name] = module
        try:
            spec.loader.exec_module(module)
        except Exception:
            sys.modules.pop(module_name, None)
            raise
        return module


@pytest.fixture(autouse=True)
def doctest_tmpdir(request: pytest.FixtureRequest) -> Generator[None]:
    """
    Create and change to a temporary directory for doctests.

    Args:
        request: The pytest fixture request object.

    Notes:
        [See this StackOverflow answer for details.](https://stackoverflow.com/q/46962007)

    """
    doctest_plugin = request.config.pluginmanager.getplugin("doctest")
    if isinstance(
        request.node,
        doctest_plugin.DoctestItem,
    ):
        tmpdir = request.getfixturevalue("tmpdir")
        with tmpdir.as_cwd():
            yield
    else:
        yield


@pytest.fixture(autouse=True)
def isolated_cache(
    monkeypatch: pytest.MonkeyPatch, tmp_path_factory: pytest.TempPathFactory
) -> Path:
    """Point the resonance cache at a fresh directory for every test."""
    cache_dir = tmp_path_factory.mktemp("stark_cache")
    monkeypatch.setenv("STARK_CACHE_DIR", str(cache_dir))
    return cache_dir


@pytest.fixture(autouse=True)
def reset_package_logger() -> Generator[None]:
    """Undo the handlers and level a CLI command installs on `starkres`."""
    yield
    package_logger = logging.getLogger("starkres")
    for handler in list(package_logger.handlers):
        package_logger.removeHandler(handler)
    package_logger.setLevel(logging.NOTSET)
    package_logger.propagate = True


def pytest_collect_file(
    file_path: Path, parent: pytest.Collector
) -> pytest.Collector | None:
    """Collect doctests from source modules by file path."""
    if file_path.suffix == ".py" and file_path.is_relative_to(SOURCE_ROOT):
        return SourceDoctestModule.from_parent(parent, path=file_path)
    return None


def pytest_collection_modifyitems(items: list[pytest.Item]) -> None:
    """
    Automatically mark tests in tests/integration as integration tests.

    Args:
        items: The list of collected pytest items to modify.

    """
    integration_prefix = "tests/integration/"
    marker = pytest.mark.integration
    for item in items:
        if item.nodeid.startswith(integration_prefix):
            item.add_marker(marker)


ZERO_DESCRIPTOR: dict[str, Any] = {"gamma": 1.0, "form": "zero"}
BOX_DESCRIPTOR: dict[str, Any] = {"gamma": 1.0, "form": "box", "coeffs": [1.0]}
CANONICAL_DESCRIPTOR: dict[str, Any] = {
    "gamma": 1.0,
    "form": "linear",
    "coeffs": [1.0, 0.5],
}


@pytest.fixture
def zero_potential() -> Potential:
    """The zero potential on `[0, 1]`."""
    return make_potential(ZERO_DESCRIPTOR)


@pytest.fixture
def box_potential() -> Potential:
    """The unit box potential on `[0, 1]`."""
    return make_potential(BOX_DESCRIPTOR)


@pytest.fixture
def canonical_potential() -> Potential:
    """The linear potential `1 + x / 2` on `[0, 1]`, with `V0 = 5 / 4`."""
    return make_potential(CANONICAL_DESCRIPTOR)


@pytest.fixture
def canonical_rule(canonical_potential: Potential) -> QuadratureRule:
    """A 64 node rule on the support of the canonical potential."""
    return rule_for(canonical_potential, 64)


@pytest.fixture
def write_descriptor(tmp_path: Path) -> Callable[..., Path]:
    """Factory writing a potential descriptor to a YAML file in `tmp_path`."""

    def _write(descriptor: dict[str, Any], name: str = "potential.yaml") -> Path:
        path = tmp_path / name
        path.write_text(yaml.safe_dump(descriptor), encoding="utf-8")
        return path

    return _write
