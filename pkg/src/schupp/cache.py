"""Persistent ground-energy cache keyed by canonical lattice key and tolerance.

One JSON record per file; writes are atomic (temp file + rename) so
concurrent producers sharing a directory cannot corrupt each other.  Records
carry a checksum: a damaged file is treated as a miss and recomputed.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile

ENV_VAR = "SCHUPP_CACHE"


def _checksum(payload: dict) -> str:
    body = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(body.encode()).hexdigest()


class EnergyCache:
    def __init__(self, directory=None):
        self.directory = directory
        self._mem = {}
        if directory is not None:
            os.makedirs(directory, exist_ok=True)

    def _path(self, key: str, tol: float) -> str:
        name = hashlib.sha256(f"{key}|{tol:.6e}".encode()).hexdigest()[:32]
        return os.path.join(self.directory, name + ".json")

    def get(self, key: str, tol: float):
        hit = self._mem.get((key, tol))
        if hit is not None:
            return hit
        if self.directory is None:
            return None
        path = self._path(key, tol)
        try:
            with open(path) as fh:
                record = json.loads(fh.readline())
        except (OSError, ValueError):
            return None
        stored = record.pop("checksum", None)
        if stored != _checksum(record) or record.get("key") != key:
            return None
        if max(record["residuals"], default=0.0) > tol:
            return None
        self._mem[(key, tol)] = record
        return record

    def put(self, key: str, tol: float, record: dict):
        record = dict(record, key=key, tol=tol)
        record["checksum"] = _checksum(
            {k: v for k, v in record.items() if k != "checksum"})
        self._mem[(key, tol)] = record
        if self.directory is None:
            return
        path = self._path(key, tol)
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(json.dumps(record, sort_keys=True) + "\n")
            os.replace(tmp, path)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise


def default_cache(directory=None) -> EnergyCache:
    """Cache in ``directory``, else $SCHUPP_CACHE, else memory-only."""
    if directory is None:
        directory = os.environ.get(ENV_VAR) or None
    return EnergyCache(directory)
