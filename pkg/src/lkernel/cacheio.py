"""On-disk cache of exact eigenform coefficients.

Plain JSON, versioned; coefficients travel as decimal numerator/denominator
string pairs so the round trip is exact regardless of platform or integer
size.  The loader refuses unknown versions and zero denominators outright.
"""

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .qexp import Eigenform, eigenform

__all__ = [
    "FORMAT_VERSION",
    "CACHE_DIR_ENV",
    "CacheFile",
    "cache_store",
    "cache_load",
    "default_cache_dir",
    "cached_eigenform",
]

FORMAT_VERSION = 1
CACHE_DIR_ENV = "LKERNEL_CACHE_DIR"


@dataclass(frozen=True)
class CacheFile:
    """In-memory image of one cache file."""

    format_version: int
    weight: int
    count: int
    coefficients: tuple  # of (numerator string, denominator string)

    def __post_init__(self):
        if self.count != len(self.coefficients):
            raise ValueError("count does not match the coefficient list")
        for num, den in self.coefficients:
            if not isinstance(num, str) or not isinstance(den, str):
                raise ValueError("coefficients must be decimal string pairs")
            if int(den) == 0:
                raise ValueError("zero denominator")

    def to_eigenform(self) -> Eigenform:
        return Eigenform(
            self.weight,
            tuple(Fraction(int(n), int(d)) for n, d in self.coefficients),
        )

    @classmethod
    def from_eigenform(cls, f: Eigenform) -> "CacheFile":
        coeffs = tuple((str(c.numerator), str(c.denominator)) for c in f.coeffs)
        return cls(FORMAT_VERSION, f.weight, len(coeffs), coeffs)


def cache_store(path, f: Eigenform) -> CacheFile:
    record = CacheFile.from_eigenform(f)
    payload = {
        "format_version": record.format_version,
        "weight": record.weight,
        "count": record.count,
        "coefficients": [list(pair) for pair in record.coefficients],
    }
    Path(path).write_text(json.dumps(payload, indent=1))
    return record


def cache_load(path) -> Eigenform:
    raw = json.loads(Path(path).read_text())
    if not isinstance(raw, dict):
        raise ValueError("malformed cache file")
    version = raw.get("format_version")
    if version != FORMAT_VERSION:
        raise ValueError(f"unsupported cache format_version {version!r}")
    try:
        record = CacheFile(
            format_version=version,
            weight=int(raw["weight"]),
            count=int(raw["count"]),
            coefficients=tuple((str(n), str(d)) for n, d in raw["coefficients"]),
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed cache file: {exc}") from exc
    return record.to_eigenform()


def default_cache_dir() -> Optional[Path]:
    env = os.environ.get(CACHE_DIR_ENV)
    return Path(env) if env else None


def cached_eigenform(weight: int, n_terms: int = 80, cache_dir=None) -> Eigenform:
    """eigenform(weight, n_terms) with a read-through disk cache (optional:
    only when a directory is supplied or set via the environment)."""
    directory = Path(cache_dir) if cache_dir else default_cache_dir()
    if directory is None:
        return eigenform(weight, n_terms)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"eigenform-{weight}.json"
    if path.exists():
        cached = cache_load(path)
        if cached.weight == weight and cached.n_terms >= n_terms:
            return cached
    f = eigenform(weight, n_terms)
    cache_store(path, f)
    return f
