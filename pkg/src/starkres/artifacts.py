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
Artifacts written by the command line interface.

Every artifact carries the hash of the run configuration that produced it and
the number of quadrature nodes used. JSON artifacts are pydantic models, CSV
artifacts are plain comma separated columns with 17 significant digits, and
both are written to a temporary file in the target directory first and then
renamed over the target, so a reader never sees a partial file.
"""

__all__ = [
    "ComplexValue",
    "ResonanceEntry",
    "ResonanceReport",
    "StudyFitEntry",
    "StudyReport",
    "StudySampleEntry",
    "TraceCheckReport",
    "TraceRadiusEntry",
    "write_csv",
    "write_json",
]

import os
import tempfile
from collections.abc import Callable, Mapping
from pathlib import Path
from typing import IO, Any, Final, Self

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field

from starkres.asymptotics import AsymptoticStudy
from starkres.resonance import Resonance, ResonanceSet

_CSV_FORMAT: Final = "%.17g"


class ComplexValue(BaseModel):
    """
    A complex number as a `{"re": ..., "im": ...}` object.

    Examples:
        >>> from starkres.artifacts import ComplexValue
        >>> ComplexValue.of(1.5 - 2j).model_dump_json()
        '{"re":1.5,"im":-2.0}'
        >>> ComplexValue(re=0.0, im=1.0).value
        1j
    """

    model_config = ConfigDict(frozen=True)

    re: float
    im: float

    @classmethod
    def of(cls, value: complex) -> Self:
        """Wrap a Python complex number."""
        value = complex(value)
        return cls(re=value.real, im=value.imag)

    @property
    def value(self) -> complex:
        """The wrapped number."""
        return complex(self.re, self.im)


class ResonanceEntry(BaseModel):
    """One located resonance."""

    re: float
    im: float = Field(lt=0.0)
    multiplicity: int = Field(ge=1)
    residual: float = Field(ge=0.0)


class ResonanceReport(BaseModel):
    """
    The resonance artifact, which doubles as the cache entry.

    Attributes:
        resonances: Resonances sorted by modulus, ties by argument.
        p: The Hadamard constant `D_plus'(0) / D_plus(0)`.
        d_plus_at_zero: `D_plus(0)`, the Hadamard prefactor.
        radius: The certified search radius.
        certified: Whether the contour count matched the located zeros.
        config_hash: Hash of the run configuration.
        n: Number of quadrature nodes.
    """

    resonances: list[ResonanceEntry]
    p: ComplexValue
    d_plus_at_zero: ComplexValue
    radius: float = Field(gt=0.0)
    certified: bool
    config_hash: str
    n: int = Field(ge=0)

    @classmethod
    def from_set(cls, resonances: ResonanceSet, config_hash: str) -> Self:
        """
        Describe a resonance set.

        Args:
            resonances: The resonance set.
            config_hash: Hash of the run configuration.

        Returns:
            The report.
        """
        return cls(
            resonances=[
                ResonanceEntry(
                    re=item.lam.real,
                    im=item.lam.imag,
                    multiplicity=item.multiplicity,
                    residual=item.refine_residual,
                )
                for item in resonances
            ],
            p=ComplexValue.of(resonances.p_const),
            d_plus_at_zero=ComplexValue.of(resonances.d_plus_at_zero),
            radius=resonances.search_radius,
            certified=resonances.certified,
            config_hash=config_hash,
            n=resonances.rule_size,
        )

    def to_set(self) -> ResonanceSet:
        """
        Rebuild the resonance set the report describes.

        Returns:
            The resonance set.

        Examples:
            >>> from starkres.artifacts import ComplexValue, ResonanceReport
            >>> report = ResonanceReport(
            ...     resonances=[{"re": 2.0, "im": -1.0, "multiplicity": 1, "residual": 0.0}],
            ...     p=ComplexValue.of(0.5j),
            ...     d_plus_at_zero=ComplexValue.of(1.0),
            ...     radius=5.0,
            ...     certified=True,
            ...     config_hash="abc",
            ...     n=64,
            ... )
            >>> rs = report.to_set()
            >>> [item.lam for item in rs], rs.p_const, rs.rule_size
            ([(2-1j)], 0.5j, 64)
        """  # noqa: E501
        return ResonanceSet(
            items=tuple(
                Resonance(
                    lam=complex(entry.re, entry.im),
                    multiplicity=entry.multiplicity,
                    refine_residual=entry.residual,
                )
                for entry in self.resonances
            ),
            search_radius=self.radius,
            p_const=self.p.value,
            d_plus_at_zero=self.d_plus_at_zero.value,
            certified=self.certified,
            rule_size=self.n,
        )


class StudySampleEntry(BaseModel):
    """One observation of a study."""

    parameter: float
    observed: ComplexValue
    predicted: ComplexValue


class StudyFitEntry(BaseModel):
    """The least-squares fit of a study."""

    exponent: float | None
    coefficient: ComplexValue
    residual: float


class StudyReport(BaseModel):
    """The artifact of the `study` command."""

    claim_id: str
    quantity: str
    samples: list[StudySampleEntry]
    fit: StudyFitEntry
    target: ComplexValue
    tolerance: float
    passed: bool
    config_hash: str
    n: int

    @classmethod
    def from_study(cls, study: AsymptoticStudy, config_hash: str, n: int) -> Self:
        """
        Describe a finished study.

        Args:
            study: The study.
            config_hash: Hash of the run configuration.
            n: Number of quadrature nodes.

        Returns:
            The report.
        """
        return cls(
            claim_id=study.claim_id.value,
            quantity=study.quantity,
            samples=[
                StudySampleEntry(
                    parameter=sample.parameter,
                    observed=ComplexValue.of(sample.observed),
                    predicted=ComplexValue.of(sample.predicted),
                )
                for sample in study.samples
            ],
            fit=StudyFitEntry(
                exponent=study.fit.exponent,
                coefficient=ComplexValue.of(study.fit.coefficient),
                residual=study.fit.residual,
            ),
            target=ComplexValue.of(study.target),
            tolerance=study.tolerance,
            passed=study.passed,
            config_hash=config_hash,
            n=n,
        )


class TraceRadiusEntry(BaseModel):
    """The trace formula residual for one truncation radius."""

    radius: float
    residual: float
    relative_residual: float


class TraceCheckReport(BaseModel):
    """
    The artifact of the `trace-check` command.

    Attributes:
        at: Spectral parameter at which the trace formula is checked.
        residuals: Trace formula residuals by truncation radius, increasing.
        monotone: Whether the residuals decrease with the radius.
        breit_wigner: Pairs of phase derivatives, direct and from resonances.
        p: The Hadamard constant from the resonance set.
        p_recovered: `p` recovered from the trace formula at three points.
        p_spread: Spread of those estimates.
        phase_slope: `phi_sc'(0)` from the phase.
        phase_slope_from_p: `Im p / pi`.
        trace_re_integral: Integral of the real part in the trace identity.
        trace_im_integral: Integral of the imaginary part in the trace identity.
        recovered_v0: `V0` recovered from the real part integral.
        v0: `V0` from the potential directly.
        config_hash: Hash of the run configuration.
        n: Number of quadrature nodes.
    """

    at: ComplexValue
    residuals: list[TraceRadiusEntry]
    monotone: bool
    breit_wigner: list[tuple[float, float, float]]
    p: ComplexValue
    p_recovered: ComplexValue
    p_spread: float
    phase_slope: float
    phase_slope_from_p: float
    trace_re_integral: float
    trace_im_integral: float
    recovered_v0: float
    v0: float
    config_hash: str
    n: int


def _atomic_write(path: Path, writer: Callable[[IO[str]], None]) -> None:
    """
    Write a file through a temporary sibling that is renamed over `path`.

    Args:
        path: The target file.
        writer: Callback writing the contents to an open text stream.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    with tempfile.NamedTemporaryFile(
        "w",
        encoding="utf-8",
        dir=path.parent,
        prefix=f".{path.name}.",
        suffix=".tmp",
        delete=False,
        newline="\n",
    ) as stream:
        tmp_path = Path(stream.name)
        try:
            writer(stream)
        except BaseException:
            stream.close()
            tmp_path.unlink(missing_ok=True)
            raise
    os.replace(tmp_path, path)


def write_json(path: Path, model: BaseModel) -> None:
    """
    Atomically write a pydantic model as indented JSON.

    Args:
        path: The target file.
        model: The model to serialize.

    Examples:
        >>> from pathlib import Path
        >>> from starkres.artifacts import ComplexValue, write_json
        >>> write_json(Path("value.json"), ComplexValue.of(1j))
        >>> print(Path("value.json").read_text(), end="")
        {
          "re": 0.0,
          "im": 1.0
        }
    """
    text = model.model_dump_json(indent=2) + "\n"
    _atomic_write(path, lambda stream: stream.write(text))


def write_csv(
    path: Path,
    columns: Mapping[str, npt.ArrayLike],
    *,
    config_hash: str,
    n: int,
    extra: Mapping[str, Any] | None = None,
) -> None:
    """
    Atomically write equally long columns as CSV.

    The first comment line holds the configuration hash, the node count and
    any `extra` metadata; the second names the columns.

    Args:
        path: The target file.
        columns: Column names mapped to one dimensional real arrays.
        config_hash: Hash of the run configuration.
        n: Number of quadrature nodes.
        extra: Further `key=value` metadata for the first line.

    Raises:
        ValueError: If the columns differ in length.

    Examples:
        >>> from pathlib import Path
        >>> from starkres.artifacts import write_csv
        >>> write_csv(Path("t.csv"), {"r": [1.0, 2.5], "count": [0, 3]}, config_hash="ab12", n=64)
        >>> print(Path("t.csv").read_text(), end="")
        # config_hash=ab12, n=64
        # r,count
        1,0
        2.5,3
    """  # noqa: E501
    arrays = [
        np.asarray(values, dtype=np.float64).ravel() for values in columns.values()
    ]
    if len({array.size for array in arrays}) > 1:
        msg = "CSV columns must have equal lengths."
        raise ValueError(msg)
    metadata = {"config_hash": config_hash, "n": n, **(extra or {})}
    header = "\n".join(
        (
            ", ".join(f"{key}={value}" for key, value in metadata.items()),
            ",".join(columns),
        )
    )
    table = np.column_stack(arrays) if arrays else np.empty((0, 0))

    def writer(stream: IO[str]) -> None:
        np.savetxt(stream, table, fmt=_CSV_FORMAT, delimiter=",", header=header)

    _atomic_write(path, writer)
