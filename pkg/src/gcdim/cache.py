"""Disk cache for generating-function evaluations.

One file per (flavor, window, coefficient ring, code version), holding a
header line plus the series debug dump.  Files written by a different
package version are ignored.
"""

from __future__ import annotations

import hashlib
import os
from pathlib import Path

from . import __version__
from .flavors import Flavor
from .genfun import GenFunResult
from .series import BiSeries, Truncation


def default_cache_dir() -> Path:
    env = os.environ.get("GCDIM_CACHE_DIR")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME", os.path.join(os.path.expanduser("~"), ".cache"))
    return Path(base) / "gcdim"


def _key(flavor: Flavor, trunc: Truncation, ring) -> str:
    raw = f"{flavor.name}|{trunc.v_max}x{trunc.e_max}|{ring.fingerprint()}|{__version__}"
    return hashlib.sha256(raw.encode()).hexdigest()[:24]


def _path(cache_dir: Path, flavor: Flavor, trunc: Truncation, ring) -> Path:
    safe = flavor.name.replace("*", "star")
    return cache_dir / f"genfun-{safe}-{trunc.v_max}x{trunc.e_max}-{_key(flavor, trunc, ring)}.txt"


def load(flavor: Flavor, trunc: Truncation, ring, cache_dir: Path | None = None) -> GenFunResult | None:
    path = _path(cache_dir or default_cache_dir(), flavor, trunc, ring)
    if not path.exists():
        return None
    text = path.read_text()
    header, _, body = text.partition("\n")
    if header != f"gcdim {__version__} {flavor.name} {trunc.v_max} {trunc.e_max} {ring.fingerprint()}":
        return None
    series = BiSeries.from_dump(ring, trunc, body)
    return GenFunResult(flavor, series)


def store(result: GenFunResult, ring, cache_dir: Path | None = None) -> Path:
    cache_dir = cache_dir or default_cache_dir()
    cache_dir.mkdir(parents=True, exist_ok=True)
    trunc = result.series.trunc
    path = _path(cache_dir, result.flavor, trunc, ring)
    header = f"gcdim {__version__} {result.flavor.name} {trunc.v_max} {trunc.e_max} {ring.fingerprint()}"
    path.write_text(header + "\n" + result.series.dump())
    return path


def evaluate_cached(flavor: Flavor, trunc: Truncation, ring, cache_dir: Path | None = None,
                    threads: int = 1) -> GenFunResult:
    """Evaluate through the disk cache."""
    from .genfun import evaluate

    hit = load(flavor, trunc, ring, cache_dir)
    if hit is not None:
        return hit
    result = evaluate(flavor, trunc, ring, threads=threads)
    store(result, ring, cache_dir)
    return result
