"""Disk memoization for hour-scale computations (k(v) scans, test runs).

Results are keyed by a canonical JSON digest of the computation kind, its
parameters, and a version tag that is bumped whenever observable behavior
changes.  The directory defaults to .mtkit-cache under the working
directory; MTKIT_CACHE overrides it.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

CACHE_VERSION = 1


def cache_dir() -> Path:
    return Path(os.environ.get("MTKIT_CACHE", ".mtkit-cache"))


def _path(kind: str, key: dict) -> Path:
    blob = json.dumps({"kind": kind, "key": key, "v": CACHE_VERSION},
                      sort_keys=True, separators=(",", ":"))
    digest = hashlib.sha256(blob.encode()).hexdigest()[:24]
    return cache_dir() / f"{kind}-{digest}.json"


def get(kind: str, key: dict):
    path = _path(kind, key)
    try:
        with open(path) as fh:
            entry = json.load(fh)
    except (OSError, ValueError):
        return None
    if entry.get("key") != key:
        return None
    return entry.get("payload")


def put(kind: str, key: dict, payload: dict) -> None:
    path = _path(kind, key)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump({"key": key, "payload": payload}, fh)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
