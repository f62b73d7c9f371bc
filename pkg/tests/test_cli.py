import io
import json

import pytest

from propus.cli import main
from propus.corpus import table_text

V7 = "(7;3,3,3,1;3), H={1,2,4}\n[3],[3],[0]\n"


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


@pytest.fixture
def tables(tmp_path):
    paths = {}
    for n in (1, 2, 3):
        p = tmp_path / f"table{n}.txt"
        p.write_text(table_text(n))
        paths[n] = str(p)
    return paths


@pytest.fixture
def v7file(tmp_path):
    p = tmp_path / "v7.txt"
    p.write_text(V7)
    return str(p)


def test_params():
    code, out = run("params", "--v", "67", "--h-gen", "29")
    lines = out.strip().split("\n")
    assert code == 0
    assert "(67;33,28,28,31;53)" in out and "(67;30,30,30,28;51)" in out
    assert len(lines) == 4
    # H-feasible, but no symmetric union of orbits has 33 or 27 elements
    assert [ln for ln in lines if "no symmetric" in ln] == [
        "(67;33,30,30,27;53)  (no symmetric H-invariant X1 or X4)"
    ]


def test_orbits():
    code, out = run("orbits", "--v", "7", "--h-gen", "2")
    assert code == 0
    assert out.splitlines() == ["v=7 H={1,2,4} orbits=3", "0: 0", "1: 1,2,4", "3: 3,5,6"]


def test_search_writes_records(tmp_path):
    dest = tmp_path / "found.txt"
    code, _ = run("search", "--v", "7", "--h-gen", "2", "--k", "3,3,3,1", "--sym-block", "last", "--out", str(dest))
    assert code == 0
    assert "[3],[3],[0]" in dest.read_text()
    code, out = run("search", "--v", "7", "--h-gen", "2", "--k", "3,3,3,1", "--threads", "1")
    assert code == 0 and out.startswith("(7;3,3,3,1;3), H={1,2,4}")


def test_search_usage_errors():
    assert run("search", "--v", "7", "--h-gen", "2", "--k", "3,3,3")[0] == 2
    assert run("search", "--v", "7", "--h-gen", "2", "--k", "3,3,3,2")[0] == 2


def test_verify(tables, tmp_path):
    for n in (1, 2, 3):
        code, out = run("verify", tables[n])
        assert code == 0 and "FAIL" not in out
    bad = tmp_path / "bad.txt"
    bad.write_text(table_text(1).replace("[0,2,4,6,16,17,25,27,30,41]", "[0,1,2,4,6,16,17,25,27,30]", 1))
    code, out = run("verify", str(bad))
    assert code == 1 and "#1: FAIL N(1) = 57" in out


def test_verify_json(v7file):
    code, out = run("verify", v7file, "--json")
    doc = json.loads(out)
    assert code == 0 and doc["records"][0]["families"][0]["verdict"]["is_propus"]


def test_expand(v7file):
    code, out = run("expand", v7file)
    assert code == 0
    assert "X1: 3,5,6" in out and "X4: 0" in out
    code, out = run("expand", v7file, "--json")
    assert json.loads(out)["records"][0]["families"][0]["blocks"][3] == [0]


def test_hadamard(v7file, tmp_path):
    code, out = run("hadamard", v7file)
    assert code == 0 and out.startswith("28\n")
    dest = tmp_path / "h.txt"
    code, out = run("hadamard", v7file, "--out", str(dest), "--check")
    assert code == 0 and "order 28" in out
    assert dest.read_text().count("\n") == 29


def test_hadamard_v109(tables):
    code, out = run("hadamard", tables[1], "--index", "10", "--check", "--out", "/dev/null")
    assert code == 0 and "order 436: symmetric=True hadamard=True" in out


def test_hadamard_index_out_of_range(v7file):
    assert run("hadamard", v7file, "--index", "2")[0] == 2


def test_classify_table2(tables):
    code, out = run("classify", "--family", tables[2], "--block", "2")
    assert code == 0
    assert out.strip().endswith("optimal, balanced, three-level")
    assert "levels: 49,1,-3" in out


def test_classify_set():
    code, out = run("classify", "--set", "3,5,6", "--v", "7")
    assert code == 0 and "levels: 7,-1" in out and "optimal" not in out
    assert run("classify", "--set", "3,5,6")[0] == 2


def test_equivalent(tables):
    code, out = run("equivalent", tables[1], tables[1], "--index-a", "1", "--index-b", "1")
    assert code == 0 and out.strip() == "equivalent"
    code, out = run("equivalent", tables[1], tables[1], "--index-a", "1", "--index-b", "2")
    assert code == 1 and out.strip() == "not equivalent"


def test_corpus_check():
    code, out = run("corpus-check")
    assert code == 0
    assert "all families verified; all Hadamard matrices symmetric" in out


def test_missing_file_is_usage_error(tmp_path):
    assert run("verify", str(tmp_path / "none.txt"))[0] == 2


def test_bad_subgroup_is_usage_error(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("(7;3,3,3,1;3), H={1,2,5}\n[3],[3],[0]\n")
    assert run("verify", str(p))[0] == 2


def test_threads_env(monkeypatch):
    monkeypatch.setenv("PROPUS_THREADS", "two")
    assert run("search", "--v", "7", "--h-gen", "2", "--k", "3,3,3,1")[0] == 2
    monkeypatch.setenv("PROPUS_THREADS", "2")
    assert run("search", "--v", "7", "--h-gen", "2", "--k", "3,3,3,1")[0] == 0
