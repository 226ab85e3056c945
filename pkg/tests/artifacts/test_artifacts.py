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
"""Tests for the artifact models and writers in `starkres.artifacts`."""

import json
from pathlib import Path

import numpy as np
import pytest
from numpy.testing import assert_allclose
from pydantic import ValidationError

from starkres.artifacts import (
    ComplexValue,
    ResonanceEntry,
    ResonanceReport,
    write_csv,
    write_json,
)
from starkres.resonance import Resonance, ResonanceSet


def _resonance_set() -> ResonanceSet:
    return ResonanceSet(
        items=(
            Resonance(lam=3.0 - 0.5j, refine_residual=1e-12),
            Resonance(lam=-4.0 - 2.0j, multiplicity=2, refine_residual=3e-10),
        ),
        search_radius=10.0,
        p_const=0.25 + 0.75j,
        d_plus_at_zero=0.9 - 0.1j,
        certified=True,
        rule_size=128,
    )


@pytest.mark.parametrize("value", [0j, 1.5 - 2j, complex(-1e-300, 7e200)])
def test_complex_value_wraps_number(value: complex) -> None:
    """`ComplexValue` keeps both parts of the wrapped number."""
    assert ComplexValue.of(value).value == value


def test_resonance_entry_rejects_upper_half_plane() -> None:
    """Resonances must lie strictly in the lower half-plane."""
    with pytest.raises(ValidationError):
        ResonanceEntry(re=1.0, im=0.0, multiplicity=1, residual=0.0)
    with pytest.raises(ValidationError):
        ResonanceEntry(re=1.0, im=-1.0, multiplicity=0, residual=0.0)


def test_resonance_report_describes_set() -> None:
    """The report lists every resonance with its Hadamard data."""
    report = ResonanceReport.from_set(_resonance_set(), "ab" * 8)
    assert [(e.re, e.im, e.multiplicity) for e in report.resonances] == [
        (3.0, -0.5, 1),
        (-4.0, -2.0, 2),
    ]
    assert report.p.value == 0.25 + 0.75j
    assert report.radius == 10.0
    assert report.n == 128
    assert report.certified


def test_resonance_report_rebuilds_set() -> None:
    """A report read back from JSON rebuilds the resonance set it describes."""
    original = _resonance_set()
    text = ResonanceReport.from_set(original, "ab" * 8).model_dump_json()
    rebuilt = ResonanceReport.model_validate_json(text).to_set()

    assert [item.lam for item in rebuilt] == [item.lam for item in original]
    assert [item.multiplicity for item in rebuilt] == [1, 2]
    assert [item.refine_residual for item in rebuilt] == [1e-12, 3e-10]
    assert rebuilt.p_const == original.p_const
    assert rebuilt.d_plus_at_zero == original.d_plus_at_zero
    assert rebuilt.search_radius == original.search_radius
    assert rebuilt.rule_size == original.rule_size
    assert rebuilt.total_multiplicity() == 3


def test_write_json_is_indented(tmp_path: Path) -> None:
    """JSON artifacts are indented and end with a newline."""
    path = tmp_path / "nested" / "resonances.json"
    write_json(path, ResonanceReport.from_set(_resonance_set(), "ab" * 8))

    text = path.read_text(encoding="utf-8")
    assert text.endswith("}\n")
    assert '\n  "resonances": [' in text
    assert json.loads(text)["config_hash"] == "ab" * 8


def test_write_csv_header_and_precision(tmp_path: Path) -> None:
    """CSV artifacts carry the metadata line and round-trip 17 digits."""
    path = tmp_path / "counting.csv"
    r = np.array([1.0, 2.0, 3.0])
    count = np.array([0.1, 1.0 / 3.0, np.pi])
    write_csv(
        path,
        {"r": r, "count": count},
        config_hash="cafe",
        n=32,
        extra={"exponent": 1.5},
    )

    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "# config_hash=cafe, n=32, exponent=1.5"
    assert lines[1] == "# r,count"
    assert len(lines) == 5
    table = np.loadtxt(path, delimiter=",")
    assert_allclose(table[:, 0], r, rtol=0.0, atol=0.0)
    assert_allclose(table[:, 1], count, rtol=0.0, atol=0.0)


def test_write_csv_rejects_ragged_columns(tmp_path: Path) -> None:
    """Columns of different lengths cannot form a table."""
    path = tmp_path / "ragged.csv"
    with pytest.raises(ValueError, match=r"^CSV columns must have equal lengths\.$"):
        write_csv(path, {"a": [1.0, 2.0], "b": [1.0]}, config_hash="00", n=1)
    assert not path.exists()


def test_failed_write_leaves_target_untouched(tmp_path: Path) -> None:
    """A writer error neither replaces the target nor leaves temporary files."""
    path = tmp_path / "value.json"
    path.write_text("previous\n", encoding="utf-8")

    class _Broken(ComplexValue):
        def model_dump_json(self, **kwargs: object) -> str:  # noqa: ARG002
            msg = "boom"
            raise RuntimeError(msg)

    with pytest.raises(RuntimeError, match="boom"):
        write_json(path, _Broken(re=0.0, im=0.0))
    assert path.read_text(encoding="utf-8") == "previous\n"
    assert sorted(p.name for p in tmp_path.iterdir()) == ["value.json"]


def test_csv_write_error_cleans_temporary_file(
    tmp_path: Path, monkeypatch: pytest.MonkeyPatch
) -> None:
    """An error raised while streaming rows removes the temporary file."""

    def _fail(*args: object, **kwargs: object) -> None:
        msg = "disk full"
        raise OSError(msg)

    monkeypatch.setattr("starkres.artifacts.np.savetxt", _fail)
    with pytest.raises(OSError, match="disk full"):
        write_csv(tmp_path / "t.csv", {"x": [1.0]}, config_hash="00", n=1)
    assert list(tmp_path.iterdir()) == []
