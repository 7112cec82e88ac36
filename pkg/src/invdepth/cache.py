"""On-disk cache of invariant bases.

One JSON file per key ``(p, n, generator digest, degree)`` holding every
graded piece up to ``degree``.  The digest is over the generator list exactly
as given, so reordering the generators of the same group is a cache miss.
Files carry a format version; entries written under another version are never
read.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import warnings
from dataclasses import dataclass
from pathlib import Path

from .groups import MatrixGroup
from .invariants import InvariantBasis
from .polynomial import Polynomial

CACHE_FORMAT = "invdepth-basis"
CACHE_VERSION = 1


def generator_digest(G: MatrixGroup) -> str:
    payload = json.dumps([[list(r) for r in g] for g in G.generators], separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


@dataclass(frozen=True)
class CacheKey:
    p: int
    n: int
    digest: str
    degree: int

    @classmethod
    def for_group(cls, G: MatrixGroup, degree: int) -> "CacheKey":
        return cls(G.p, G.n, generator_digest(G), degree)

    def filename(self, version: int = CACHE_VERSION) -> str:
        return f"v{version}-p{self.p}-n{self.n}-{self.digest[:24]}-d{self.degree}.json"


def _encode(B: InvariantBasis, degree: int) -> dict:
    return {
        "format": CACHE_FORMAT,
        "version": CACHE_VERSION,
        "p": B.p,
        "n": B.n,
        "digest": generator_digest(B.group),
        "degree": degree,
        "pieces": [
            [[[list(m), c] for m, c in f.sorted_terms()] for f in B.basis(d)]
            for d in range(degree + 1)
        ],
    }


def cache_store(cache_dir: str | Path, B: InvariantBasis, degree: int) -> Path:
    """Write ``B`` up to ``degree``; the file appears atomically or not at all."""
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    key = CacheKey.for_group(B.group, degree)
    target = cache_dir / key.filename()
    payload = json.dumps(_encode(B, degree), sort_keys=True, separators=(",", ":"))
    fd, tmp = tempfile.mkstemp(dir=cache_dir, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(payload)
        os.replace(tmp, target)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    return target


def cache_load(cache_dir: str | Path, G: MatrixGroup, degree: int) -> InvariantBasis | None:
    """The cached basis for ``G`` up to ``degree``, or ``None`` on a miss or an unreadable entry."""
    key = CacheKey.for_group(G, degree)
    path = Path(cache_dir) / key.filename()
    if not path.exists():
        return None
    try:
        data = json.loads(path.read_text())
        if data.get("format") != CACHE_FORMAT or data.get("version") != CACHE_VERSION:
            return None
        if (data["p"], data["n"], data["digest"], data["degree"]) != (key.p, key.n, key.digest, key.degree):
            raise ValueError("key fields do not match the file name")
        pieces = data["pieces"]
        if len(pieces) != degree + 1:
            raise ValueError("wrong number of graded pieces")
        per_degree = {
            d: [Polynomial({tuple(m): c for m, c in terms}, G.n, G.p) for terms in piece]
            for d, piece in enumerate(pieces)
        }
    except (OSError, ValueError, KeyError, TypeError) as exc:
        warnings.warn(f"ignoring corrupt cache entry {path.name}: {exc}", RuntimeWarning, stacklevel=2)
        return None
    return InvariantBasis.from_polynomials(G, per_degree)


def cached_basis(cache_dir: str | Path | None, G: MatrixGroup, degree: int) -> InvariantBasis:
    """Load from the cache when possible, otherwise compute and store."""
    if cache_dir is not None:
        B = cache_load(cache_dir, G, degree)
        if B is not None:
            return B
    B = InvariantBasis(G).extend(degree)
    if cache_dir is not None:
        cache_store(cache_dir, B, degree)
    return B
