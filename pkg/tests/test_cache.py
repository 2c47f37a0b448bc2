import json

import pytest

from clusterverify.cache import CacheError, graphs_equal, read_cache, write_cache
from clusterverify.seeds import explore

from conftest import A2, D4, KRONECKER


def test_a2_roundtrip(tmp_path):
    path = tmp_path / "a2.ndjson"
    g = explore(A2)
    write_cache(g, path)
    lines = path.read_text().splitlines()
    assert len(lines) == 5
    assert all(set(json.loads(ln)) == {"cluster", "matrix", "depth", "expanded", "neighbors"} for ln in lines)
    h = read_cache(path)
    assert graphs_equal(g, h)
    assert h.counts() == g.counts() and h.closed


@pytest.mark.parametrize("b,depth", [(D4, 8), (KRONECKER, 5)], ids=["D4", "kronecker"])
def test_roundtrip_keeps_truncation(tmp_path, b, depth):
    path = tmp_path / "g.ndjson"
    g = explore(b, max_depth=depth)
    write_cache(g, path)
    h = read_cache(path)
    assert graphs_equal(g, h)
    assert h.truncated == g.truncated


def test_empty_file(tmp_path):
    path = tmp_path / "empty.ndjson"
    path.write_text("")
    g = read_cache(path)
    assert len(g.records) == 0 and not g.truncated


def test_tampered_variable_is_rejected(tmp_path):
    path = tmp_path / "a2.ndjson"
    write_cache(explore(A2), path)
    lines = path.read_text().splitlines()
    rec = json.loads(lines[2])
    rec["cluster"][0] = rec["cluster"][0] + " + x1"
    lines[2] = json.dumps(rec)
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(CacheError) as info:
        read_cache(path)
    assert info.value.line in (1, 2, 3, 4, 5)


def test_malformed_line_number(tmp_path):
    path = tmp_path / "bad.ndjson"
    write_cache(explore(A2), path)
    lines = path.read_text().splitlines()
    lines[3] = "{not json"
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(CacheError) as info:
        read_cache(path)
    assert info.value.line == 4
    assert "cache line 4" in str(info.value)
