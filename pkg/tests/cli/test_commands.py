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
"""Tests for the `starkres` subcommands, run through the CLI."""

import json
from collections.abc import Callable
from pathlib import Path
from typing import Any

import numpy as np
import pytest
from click.testing import CliRunner

from starkres.asymptotics import AsymptoticStudy, StudyFit, StudySample
from starkres.cli._cli import cli
from starkres.typing import ClaimId, ExitCode

ZERO: dict[str, Any] = {"gamma": 1.0, "form": "zero"}
BOX: dict[str, Any] = {"gamma": 1.0, "form": "box", "coeffs": [1.0]}

WriteDescriptor = Callable[..., Path]


def _invoke(args: list[str]) -> Any:
    return CliRunner().invoke(cli, args, catch_exceptions=False)


def _rows(path: Path) -> np.ndarray:
    return np.loadtxt(path, delimiter=",", ndmin=2)


def test_resonances_of_zero_potential(
    tmp_path: Path, write_descriptor: WriteDescriptor, isolated_cache: Path
) -> None:
    """Without a potential there is nothing to find and the search is certified."""
    out = tmp_path / "resonances.json"
    result = _invoke(
        ["resonances", "-p", str(write_descriptor(ZERO)), "--n", "16", "-o", str(out)]
    )

    assert result.exit_code == ExitCode.OKAY
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["resonances"] == []
    assert report["certified"] is True
    assert report["radius"] == 25.0
    assert report["n"] == 16
    assert len(report["config_hash"]) == 64
    assert len(list((isolated_cache / "resonances").iterdir())) == 1


def test_resonances_no_cache_leaves_cache_empty(
    tmp_path: Path, write_descriptor: WriteDescriptor, isolated_cache: Path
) -> None:
    """`--no-cache` neither reads nor writes cache entries."""
    result = _invoke([
        "resonances",
        "-p",
        str(write_descriptor(ZERO)),
        "--n",
        "16",
        "--no-cache",
        "-o",
        str(tmp_path / "r.json"),
    ])
    assert result.exit_code == ExitCode.OKAY
    assert not (isolated_cache / "resonances").exists()


def test_artifact_defaults_to_working_directory(
    write_descriptor: WriteDescriptor,
) -> None:
    """Without `--out` the artifact is named after the command."""
    descriptor = write_descriptor(ZERO)
    runner = CliRunner()
    with runner.isolated_filesystem():
        result = runner.invoke(
            cli,
            ["phase", "-p", str(descriptor), "--n", "16", "--points", "5"],
            catch_exceptions=False,
        )
        assert result.exit_code == ExitCode.OKAY
        assert Path("phase.csv").is_file()


@pytest.mark.parametrize(
    "descriptor",
    [
        {"gamma": 1.0, "form": "triangle"},
        {"gamma": -1.0, "form": "box", "coeffs": [1.0]},
        {"gamma": 1.0, "form": "box", "coeffs": [1.0], "unexpected": True},
    ],
)
def test_malformed_descriptor_exits_2(
    tmp_path: Path, write_descriptor: WriteDescriptor, descriptor: dict[str, Any]
) -> None:
    """Descriptors that fail validation are reported with status 2."""
    out = tmp_path / "resonances.json"
    result = _invoke(
        ["resonances", "-p", str(write_descriptor(descriptor)), "-o", str(out)]
    )
    assert result.exit_code == ExitCode.MALFORMED_INPUT
    assert not out.exists()


def test_unparsable_yaml_exits_2(tmp_path: Path) -> None:
    """A descriptor that is not YAML is malformed input."""
    path = tmp_path / "broken.yaml"
    path.write_text("gamma: [1.0\nform: box\n", encoding="utf-8")
    result = _invoke(["phase", "-p", str(path), "-o", str(tmp_path / "p.csv")])
    assert result.exit_code == ExitCode.MALFORMED_INPUT


def test_decreasing_range_exits_2(
    tmp_path: Path, write_descriptor: WriteDescriptor
) -> None:
    """Ranges must increase."""
    result = _invoke([
        "smatrix",
        "-p",
        str(write_descriptor(ZERO)),
        "--range",
        "5:1",
        "-o",
        str(tmp_path / "s.csv"),
    ])
    assert result.exit_code == ExitCode.MALFORMED_INPUT


def test_check_point_in_lower_half_plane_exits_2(
    tmp_path: Path, write_descriptor: WriteDescriptor
) -> None:
    """The trace formula is checked from the upper half-plane."""
    result = _invoke([
        "trace-check",
        "-p",
        str(write_descriptor(ZERO)),
        "--n",
        "16",
        "--at",
        "2-2j",
        "-o",
        str(tmp_path / "t.json"),
    ])
    assert result.exit_code == ExitCode.MALFORMED_INPUT


def test_count_of_zero_potential(
    tmp_path: Path, write_descriptor: WriteDescriptor
) -> None:
    """The counting function of the free operator vanishes."""
    out = tmp_path / "count.csv"
    result = _invoke([
        "count",
        "-p",
        str(write_descriptor(ZERO)),
        "--n",
        "16",
        "--radius",
        "10",
        "--points",
        "6",
        "-o",
        str(out),
    ])

    assert result.exit_code == ExitCode.OKAY
    header = out.read_text(encoding="utf-8").splitlines()[:2]
    assert header[0].startswith("# config_hash=")
    assert header[0].endswith(", n=16")
    assert header[1] == "# r,count"
    table = _rows(out)
    np.testing.assert_allclose(table[:, 0], np.linspace(0.0, 10.0, 6))
    assert not table[:, 1].any()


def test_smatrix_of_zero_potential(
    tmp_path: Path, write_descriptor: WriteDescriptor
) -> None:
    """Without a potential S is identically one."""
    out = tmp_path / "smatrix.csv"
    result = _invoke([
        "smatrix",
        "-p",
        str(write_descriptor(ZERO)),
        "--n",
        "16",
        "--range",
        "-3:3",
        "--points",
        "4",
        "-o",
        str(out),
    ])

    assert result.exit_code == ExitCode.OKAY
    table = _rows(out)
    assert table.shape == (4, 8)
    np.testing.assert_array_equal(table[:, 1], 1.0)
    np.testing.assert_array_equal(table[:, 3], 1.0)


def test_reconstruct_of_zero_potential(
    tmp_path: Path, write_descriptor: WriteDescriptor
) -> None:
    """With no resonances the rebuilt and direct S agree exactly."""
    out = tmp_path / "reconstruct.csv"
    result = _invoke([
        "reconstruct",
        "-p",
        str(write_descriptor(ZERO)),
        "--n",
        "16",
        "--radius",
        "5",
        "--range",
        "-2:2",
        "--points",
        "3",
        "-o",
        str(out),
    ])

    assert result.exit_code == ExitCode.OKAY
    assert "radius=5.0, resonances=0" in out.read_text(encoding="utf-8")
    np.testing.assert_allclose(_rows(out)[:, -1], 0.0, atol=1e-15)


def test_study_of_zero_potential_passes(
    tmp_path: Path, write_descriptor: WriteDescriptor
) -> None:
    """Every claim holds trivially for the free operator."""
    out = tmp_path / "study.json"
    result = _invoke([
        "study",
        "trace",
        "-p",
        str(write_descriptor(ZERO)),
        "--n",
        "16",
        "--grid",
        "10:10:30",
        "-o",
        str(out),
    ])

    assert result.exit_code == ExitCode.OKAY
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["claim_id"] == "trace"
    assert report["passed"] is True
    assert [s["parameter"] for s in report["samples"]] == [10.0, 20.0, 30.0]


def test_failed_study_exits_1(
    tmp_path: Path,
    write_descriptor: WriteDescriptor,
    monkeypatch: pytest.MonkeyPatch,
) -> None:
    """A claim outside its tolerance is reported and exits with status 1."""
    failed = AsymptoticStudy(
        ClaimId.LOGDET,
        "log D_plus",
        (StudySample(100.0, 0.1j, 0.12j),),
        StudyFit(exponent=-0.5, coefficient=0.4j, residual=1e-3),
        0.5j,
        0.02,
        passed=False,
    )
    monkeypatch.setattr(
        "starkres.cli._study_command.run_study", lambda *_, **__: failed
    )
    out = tmp_path / "study.json"
    result = _invoke(
        ["study", "logdet", "-p", str(write_descriptor(BOX)), "-o", str(out)]
    )

    assert result.exit_code == ExitCode.GENERAL
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["passed"] is False
    assert report["target"] == {"re": 0.0, "im": 0.5}


def test_study_rejects_unknown_tolerance(
    tmp_path: Path, write_descriptor: WriteDescriptor
) -> None:
    """The tolerance manifest only accepts known claims."""
    manifest = tmp_path / "tolerances.yaml"
    manifest.write_text("trace: 0.1\nnot_a_claim: 0.5\n", encoding="utf-8")
    result = _invoke([
        "study",
        "trace",
        "-p",
        str(write_descriptor(ZERO)),
        "--tolerances",
        str(manifest),
        "-o",
        str(tmp_path / "study.json"),
    ])
    assert result.exit_code == ExitCode.MALFORMED_INPUT


@pytest.mark.parametrize(
    "args",
    [
        ["detmap", "--re", "-2:2", "--im", "-1:1", "--points", "3"],
        ["smatrix", "--range", "0.5:2", "--points", "3"],
    ],
)
def test_artifacts_do_not_depend_on_threads(
    tmp_path: Path, write_descriptor: WriteDescriptor, args: list[str]
) -> None:
    """Artifacts are byte identical for one and for several workers."""
    descriptor = str(write_descriptor(BOX))
    single, multi = tmp_path / "single.csv", tmp_path / "multi.csv"
    for out, threads in ((single, "1"), (multi, "2")):
        result = _invoke([
            *args,
            "-p",
            descriptor,
            "--n",
            "16",
            "--threads",
            threads,
            "-o",
            str(out),
        ])
        assert result.exit_code == ExitCode.OKAY

    assert single.read_bytes() == multi.read_bytes()


def test_detmap_grid_layout(tmp_path: Path, write_descriptor: WriteDescriptor) -> None:
    """Rows run over the imaginary axis and, within a row, over the real axis."""
    out = tmp_path / "detmap.csv"
    result = _invoke([
        "detmap",
        "-p",
        str(write_descriptor(BOX)),
        "--n",
        "16",
        "--re",
        "-1:1",
        "--im",
        "0.5:1.5",
        "--points",
        "2",
        "--side",
        "plus",
        "-o",
        str(out),
    ])

    assert result.exit_code == ExitCode.OKAY
    assert out.read_text(encoding="utf-8").splitlines()[0].endswith("side=plus")
    table = _rows(out)
    np.testing.assert_array_equal(table[:, 0], [-1.0, 1.0, -1.0, 1.0])
    np.testing.assert_array_equal(table[:, 1], [0.5, 0.5, 1.5, 1.5])
    assert np.isfinite(table[:, 2:]).all()
    assert (np.abs(table[:, 3]) <= np.pi).all()
