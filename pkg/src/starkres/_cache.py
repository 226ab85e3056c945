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
"""Persistent on-disk cache of certified resonance sets.

Resonance searches are the expensive step of several commands, so their result
is memoised under the hash of the run configuration that produced it. The
cache root is `$STARK_CACHE_DIR` when that variable is set and
`.starkres_cache/` in the current working directory otherwise; the layout is::

    <cache root>/
      resonances/
        <config hash>.json   # one `ResonanceReport` per file

Entries are written atomically and validated by `pydantic` when read back, and
an entry that fails validation is treated as a miss.
"""

__all__ = ["cache_path", "load_resonances", "save_resonances"]

import logging
import os
import re
from pathlib import Path
from typing import Final

from pydantic import ValidationError

from starkres.artifacts import ResonanceReport, write_json
from starkres.resonance import ResonanceSet

logger = logging.getLogger(__name__)

CACHE_DIR_ENV: Final = "STARK_CACHE_DIR"
_CACHE_DIRNAME: Final = ".starkres_cache"
_RESONANCE_NAMESPACE: Final = "resonances"
_HASH: Final = re.compile(r"^[0-9a-f]{16,64}$")


def _cache_root(start: Path | None = None) -> Path:
    """Return the cache root directory.

    Args:
        start: The directory to root the cache in when `STARK_CACHE_DIR` is
            unset. Defaults to the current working directory.

    Returns:
        The path to the cache root (not necessarily created yet).

    Examples:
        >>> import os
        >>> from pathlib import Path
        >>> from starkres._cache import _cache_root
        >>> _ = os.environ.pop("STARK_CACHE_DIR", None)
        >>> _cache_root(Path("/tmp/project"))
        PosixPath('/tmp/project/.starkres_cache')
    """
    if configured := os.environ.get(CACHE_DIR_ENV):
        return Path(configured)
    base = Path.cwd() if start is None else start
    return base / _CACHE_DIRNAME


def cache_path(config_hash: str, start: Path | None = None) -> Path:
    """Return the file holding the resonance set of a configuration.

    Args:
        config_hash: The hexadecimal configuration hash.
        start: The directory to root the cache in. Defaults to the current
            working directory.

    Returns:
        The path to `resonances/<config hash>.json` (not necessarily created).

    Raises:
        ValueError: If `config_hash` is not a lower case hexadecimal digest.

    Examples:
        >>> import os
        >>> from pathlib import Path
        >>> from starkres._cache import cache_path
        >>> _ = os.environ.pop("STARK_CACHE_DIR", None)
        >>> cache_path("0123abcd" * 8, Path("/tmp/project")).parent
        PosixPath('/tmp/project/.starkres_cache/resonances')
        >>> cache_path("../escape")
        Traceback (most recent call last):
            ...
        ValueError: Malformed configuration hash '../escape'.
    """
    if not _HASH.match(config_hash):
        msg = f"Malformed configuration hash {config_hash!r}."
        raise ValueError(msg)
    return _cache_root(start) / _RESONANCE_NAMESPACE / f"{config_hash}.json"


def save_resonances(
    resonances: ResonanceSet, config_hash: str, *, start: Path | None = None
) -> Path:
    """Persist a resonance set under its configuration hash.

    Args:
        resonances: The certified resonance set.
        config_hash: Hash of the configuration that produced it.
        start: The directory to root the cache in. Defaults to the current
            working directory.

    Returns:
        The file that was written.
    """
    path = cache_path(config_hash, start)
    write_json(path, ResonanceReport.from_set(resonances, config_hash))
    logger.debug("Cached %d resonance(s) at %s.", len(resonances), path)
    return path


def load_resonances(
    config_hash: str, *, start: Path | None = None
) -> ResonanceSet | None:
    """Load the cached resonance set of a configuration.

    Args:
        config_hash: The configuration hash.
        start: The directory to root the cache in. Defaults to the current
            working directory.

    Returns:
        The resonance set, or `None` when there is no valid entry.
    """
    path = cache_path(config_hash, start)
    if not path.is_file():
        return None
    try:
        report = ResonanceReport.model_validate_json(path.read_text(encoding="utf-8"))
    except ValidationError:
        logger.warning("Ignoring the malformed cache entry %s.", path)
        return None
    if report.config_hash != config_hash:
        logger.warning("Cache entry %s belongs to another configuration.", path)
        return None
    logger.debug("Loaded %d resonance(s) from %s.", len(report.resonances), path)
    return report.to_set()
