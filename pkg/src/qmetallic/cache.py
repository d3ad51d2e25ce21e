"""Persistent coefficient-table cache and run manifests.

Cache files are the series exchange JSON plus bookkeeping: a format
version (bumping it invalidates every cache) and a sha256 integrity
hash over the canonical payload.  Writes are create-then-rename so
concurrent writers never interleave partial files.  Loads re-verify the
hash and the structural prefix invariant before trusting disk data.

A RunManifest records enough to reproduce a CLI experiment: command,
parameters (precision bits included), package version, UTC timestamp,
and the sha256 of every output file.  Outputs themselves contain only
decimal strings, so reruns with equal parameters are byte-identical.
"""

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .errors import CacheCorrupt
from .metallic import (ENGINE_TAGS, CoeffTable, _check_n, _p_extend,
                       canonical_engine_tag, table_engine)

FORMAT_VERSION = 2
ENV_CACHE_DIR = "QMETALLIC_CACHE_DIR"
ARTIFACT_VERSION = "0.1.0"


def cache_directory(explicit=None) -> str:
    """Resolve the cache directory: argument, environment, then default."""
    if explicit:
        return str(explicit)
    env = os.environ.get(ENV_CACHE_DIR)
    if env:
        return env
    return os.path.join(os.path.expanduser("~"), ".cache", "qmetallic")


def _cache_path(key, cache_dir) -> str:
    n, engine = key
    assert engine in ENGINE_TAGS
    return os.path.join(cache_directory(cache_dir), f"coeffs-n{n}-{engine}.json")


def _payload_hash(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("ascii")).hexdigest()


def atomic_write_text(path: str, text: str) -> None:
    """Write via a same-directory temp file and atomic rename."""
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def cache_store(key, table: CoeffTable, cache_dir=None) -> str:
    """Persist a coefficient table under (n, engine); returns the path."""
    n, engine = key
    assert table.n == n and len(table.values) == table.upto
    payload = {
        "format_version": FORMAT_VERSION,
        "n": n,
        "engine": engine,
        "upto": table.upto,
        "values": [str(v) for v in table.values],
    }
    payload["sha256"] = _payload_hash(
        {k: v for k, v in payload.items() if k != "sha256"})
    path = _cache_path(key, cache_dir)
    atomic_write_text(path, json.dumps(payload, indent=1) + "\n")
    return path


def cache_load(key, cache_dir=None) -> CoeffTable:
    """Strict load: FileNotFoundError if absent, CacheCorrupt if untrustworthy."""
    n, engine = key
    path = _cache_path(key, cache_dir)
    with open(path) as fh:
        try:
            payload = json.load(fh)
        except ValueError as exc:
            raise CacheCorrupt(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(payload, dict):
        raise CacheCorrupt(f"{path}: not a JSON object")
    if payload.get("format_version") != FORMAT_VERSION:
        raise CacheCorrupt(
            f"{path}: format_version {payload.get('format_version')!r}, "
            f"expected {FORMAT_VERSION}")
    want = payload.get("sha256")
    got = _payload_hash({k: v for k, v in payload.items() if k != "sha256"})
    if want != got:
        raise CacheCorrupt(f"{path}: sha256 mismatch")
    if payload.get("n") != n or payload.get("engine") != engine:
        raise CacheCorrupt(f"{path}: key mismatch")
    try:
        values = [int(t) for t in payload["values"]]
        table = CoeffTable(n=n, upto=int(payload["upto"]), values=tuple(values),
                           engine=engine)
    except (KeyError, ValueError, AssertionError) as exc:
        raise CacheCorrupt(f"{path}: structural invariant violated ({exc})") from exc
    return table


def cached_table(n: int, L: int, engine: str = "precurrence",
                 cache_dir=None) -> CoeffTable:
    """Cache-backed table: load, extend in place if short, recompute if bad.

    Extension past a cached prefix reuses the cached values as the
    linear-recurrence seed (it only ever needs the last 2n+2 of them),
    so a longer request is incremental, not a recompute.
    """
    n = _check_n(n)
    tag = canonical_engine_tag(engine)
    key = (n, tag)
    try:
        table = cache_load(key, cache_dir)
    except FileNotFoundError:
        table = None
    except CacheCorrupt:
        table = None  # fall back to recompute, then overwrite the bad file
    if table is not None and table.upto >= L:
        if table.upto == L:
            return table
        return CoeffTable(n=n, upto=L, values=table.values[:L], engine=tag)
    if table is not None and table.upto >= 2 * n + 2:
        vals = list(table.values)
        _p_extend(n, vals, L)
        out = CoeffTable(n=n, upto=L, values=tuple(vals), engine=tag)
    else:
        out = table_engine(tag)(n, L)
    cache_store(key, out, cache_dir)
    return out


def file_sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


@dataclass
class RunManifest:
    """Reproducibility record written next to every experiment output."""

    command: str
    parameters: dict
    artifact_version: str = ARTIFACT_VERSION
    timestamp: str = field(
        default_factory=lambda: datetime.now(timezone.utc)
        .isoformat(timespec="seconds"))
    outputs: list = field(default_factory=list)

    def add_output(self, path: str) -> None:
        self.outputs.append({"path": os.path.basename(path),
                             "sha256": file_sha256(path)})

    def write(self, out_path: str) -> str:
        """Persist as <out_path>.manifest.json; returns the manifest path."""
        doc = {
            "command": self.command,
            "parameters": self.parameters,
            "artifact_version": self.artifact_version,
            "timestamp": self.timestamp,
            "outputs": self.outputs,
        }
        mpath = out_path + ".manifest.json"
        atomic_write_text(mpath, json.dumps(doc, indent=1, sort_keys=True) + "\n")
        return mpath
