"""Unit tests for the on-disk coefficient cache and run manifests."""

import hashlib
import json
import os

import pytest

from qmetallic.cache import (
    ARTIFACT_VERSION,
    ENV_CACHE_DIR,
    FORMAT_VERSION,
    RunManifest,
    atomic_write_text,
    cache_directory,
    cache_load,
    cache_store,
    cached_table,
    file_sha256,
)
from qmetallic.errors import CacheCorrupt
from qmetallic.metallic import coeffs_p_recurrence, kappa_values


def _entry_path(tmp, n=1, engine="precurrence"):
    return os.path.join(tmp, f"coeffs-n{n}-{engine}.json")


def test_store_load_round_trip(tmp_path):
    d = str(tmp_path)
    table = coeffs_p_recurrence(2, 30)
    cache_store((2, "precurrence"), table, d)
    back = cache_load((2, "precurrence"), d)
    assert back.n == 2 and back.upto == 30
    assert tuple(back.values) == tuple(table.values)
    assert back.engine == "precurrence"


def test_load_missing(tmp_path):
    with pytest.raises(FileNotFoundError):
        cache_load((1, "conv"), str(tmp_path))


def test_tampered_value_detected(tmp_path):
    d = str(tmp_path)
    cache_store((1, "precurrence"), coeffs_p_recurrence(1, 20), d)
    p = _entry_path(d)
    doc = json.load(open(p))
    doc["values"][5] = "12345"
    open(p, "w").write(json.dumps(doc))
    with pytest.raises(CacheCorrupt):
        cache_load((1, "precurrence"), d)


def test_version_gate(tmp_path):
    d = str(tmp_path)
    cache_store((1, "precurrence"), coeffs_p_recurrence(1, 20), d)
    p = _entry_path(d)
    doc = json.load(open(p))
    doc["format_version"] = FORMAT_VERSION + 1
    open(p, "w").write(json.dumps(doc))
    with pytest.raises(CacheCorrupt):
        cache_load((1, "precurrence"), d)


def test_truncated_json_detected(tmp_path):
    d = str(tmp_path)
    cache_store((1, "precurrence"), coeffs_p_recurrence(1, 20), d)
    p = _entry_path(d)
    open(p, "w").write(open(p).read()[:40])
    with pytest.raises(CacheCorrupt):
        cache_load((1, "precurrence"), d)


def test_missing_key_detected(tmp_path):
    d = str(tmp_path)
    cache_store((1, "precurrence"), coeffs_p_recurrence(1, 20), d)
    p = _entry_path(d)
    doc = json.load(open(p))
    del doc["upto"]
    open(p, "w").write(json.dumps(doc))
    with pytest.raises(CacheCorrupt):
        cache_load((1, "precurrence"), d)


def test_cached_table_cold_then_warm(tmp_path):
    d = str(tmp_path)
    t1 = cached_table(3, 40, "precurrence", d)
    assert os.path.exists(_entry_path(d, 3))
    t2 = cached_table(3, 40, "precurrence", d)
    assert tuple(t1.values) == tuple(t2.values) == tuple(kappa_values(3, 40))


def test_cached_table_extends_and_persists(tmp_path):
    d = str(tmp_path)
    cached_table(1, 30, "precurrence", d)
    t = cached_table(1, 120, "precurrence", d)
    assert len(t.values) == 120
    assert list(t.values) == kappa_values(1, 120)
    doc = json.load(open(_entry_path(d)))
    assert doc["upto"] == 120


def test_cached_table_truncates_without_losing_cache(tmp_path):
    d = str(tmp_path)
    cached_table(1, 100, "precurrence", d)
    t = cached_table(1, 25, "precurrence", d)
    assert len(t.values) == 25
    doc = json.load(open(_entry_path(d)))
    assert doc["upto"] == 100          # longer table kept on disk


def test_cached_table_heals_corruption(tmp_path):
    d = str(tmp_path)
    cached_table(2, 30, "precurrence", d)
    p = _entry_path(d, 2)
    doc = json.load(open(p))
    doc["values"][3] = "999"
    open(p, "w").write(json.dumps(doc))
    t = cached_table(2, 30, "precurrence", d)
    assert list(t.values) == kappa_values(2, 30)
    # and the on-disk copy is valid again
    assert tuple(cache_load((2, "precurrence"), d).values) == tuple(t.values)


def test_cached_table_accepts_engine_aliases(tmp_path):
    d = str(tmp_path)
    t = cached_table(1, 15, "prec", d)
    assert t.engine == "precurrence"
    assert os.path.exists(_entry_path(d, 1, "precurrence"))


def test_cache_directory_precedence(tmp_path, monkeypatch):
    explicit = str(tmp_path / "explicit")
    env = str(tmp_path / "env")
    monkeypatch.setenv(ENV_CACHE_DIR, env)
    assert cache_directory(explicit) == explicit
    assert cache_directory(None) == env
    monkeypatch.delenv(ENV_CACHE_DIR)
    assert cache_directory(None).endswith("qmetallic")


def test_atomic_write_leaves_no_droppings(tmp_path):
    p = str(tmp_path / "out.txt")
    atomic_write_text(p, "payload")
    assert open(p).read() == "payload"
    assert os.listdir(str(tmp_path)) == ["out.txt"]


def test_file_sha256(tmp_path):
    p = str(tmp_path / "blob")
    open(p, "wb").write(b"abc")
    assert file_sha256(p) == hashlib.sha256(b"abc").hexdigest()


def test_run_manifest(tmp_path):
    out = str(tmp_path / "result.csv")
    open(out, "w").write("l,ratio\n100,1.0\n")
    m = RunManifest(command="tables", parameters={"n": 1})
    m.add_output(out)
    written = m.write(out)
    assert written == out + ".manifest.json"
    doc = json.load(open(written))
    assert doc["command"] == "tables"
    assert doc["parameters"] == {"n": 1}
    assert doc["artifact_version"] == ARTIFACT_VERSION
    assert doc["outputs"][0]["path"] == "result.csv"
    assert doc["outputs"][0]["sha256"] == file_sha256(out)
    assert "timestamp" in doc
