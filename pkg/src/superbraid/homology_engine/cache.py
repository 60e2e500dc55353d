"""On-disk JSON cache of computed homology rows.

One file per (family, n, d, coefficient) holding the groups for all degrees,
written atomically.  A row is only reused when the stored convention
fingerprint matches; a fingerprint mismatch is an error rather than a silent
recompute so that stale caches get noticed.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from ..exact_linalg import AbelianGroup

CACHE_VERSION = 1


class CacheConflictError(RuntimeError):
    """A cache file exists with a different convention fingerprint."""


def cache_root(explicit=None) -> Path | None:
    """The cache directory: explicit argument, else SUPERBRAID_CACHE, else none."""
    if explicit is not None:
        return Path(explicit)
    env = os.environ.get("SUPERBRAID_CACHE")
    return Path(env) if env else None


def coeff_tag(coeff: str) -> str:
    """Canonical short tag: 'z' for integers, 'f<p>' for a prime field."""
    if coeff == "z":
        return "z"
    if coeff.startswith("f:"):
        p = int(coeff[2:])
        return f"f{p}"
    raise ValueError(f"bad coefficient spec {coeff!r}; use 'z' or 'f:p'")


def cache_path(root: Path, family: str, n: int, d: int, coeff: str) -> Path:
    return Path(root) / f"h_{family}_{n}_{d}_{coeff_tag(coeff)}.json"


def encode_groups(groups) -> list[dict]:
    return [{"i": i, "rank": g.rank, "torsion": list(g.primary())}
            for i, g in enumerate(groups)]


def decode_groups(payload) -> list[AbelianGroup]:
    out = [None] * len(payload)
    for item in payload:
        i = item["i"]
        if not 0 <= i < len(out) or out[i] is not None:
            raise ValueError("cache payload has missing or duplicate degrees")
        out[i] = AbelianGroup.from_divisors(item["rank"], item["torsion"])
    return out


def _canonical(fingerprint: dict) -> str:
    return json.dumps(fingerprint, sort_keys=True)


def load(root, family: str, n: int, d: int, coeff: str,
         fingerprint: dict) -> list[AbelianGroup] | None:
    path = cache_path(root, family, n, d, coeff)
    if not path.exists():
        return None
    blob = json.loads(path.read_text())
    if _canonical(blob["fingerprint"]) != _canonical(fingerprint):
        raise CacheConflictError(
            f"{path} was computed under fingerprint {blob['fingerprint']}, "
            f"not {fingerprint}")
    return decode_groups(blob["groups"])


def store(root, family: str, n: int, d: int, coeff: str,
          fingerprint: dict, groups) -> Path:
    path = cache_path(root, family, n, d, coeff)
    path.parent.mkdir(parents=True, exist_ok=True)
    if path.exists():
        blob = json.loads(path.read_text())
        if _canonical(blob["fingerprint"]) != _canonical(fingerprint):
            raise CacheConflictError(
                f"refusing to overwrite {path}: fingerprint "
                f"{blob['fingerprint']} differs from {fingerprint}")
    payload = {
        "n": n,
        "d": d,
        "coeff": coeff_tag(coeff),
        "fingerprint": fingerprint,
        "groups": encode_groups(groups),
        "version": CACHE_VERSION,
    }
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh, sort_keys=True)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path
