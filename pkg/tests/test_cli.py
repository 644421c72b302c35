import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from focal_lab import __version__
from focal_lab.cli import main
from focal_lab.io import loads
from focal_lab.schemas import BY_KIND


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, kind, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, BY_KIND[kind])
    return code, doc


def test_bounds_json(capsys):
    code, doc = run_json(capsys, "bounds", "bounds", "hypergraph", "--r", "3", "--n", "7", "--k", "3")
    assert code == 0
    assert doc["values"]["thm22Upper"]["value"] == "7" and doc["values"]["thm22Upper"]["valid"]
    assert doc["values"]["limitDensity"]["value"] == "1/3"


def test_bounds_code_text(capsys):
    code, out, _ = run(capsys, "bounds", "code", "--r", "3", "--n", "5", "--q", "4")
    assert code == 0
    assert "thm16Exact" in out and "64" in out


def test_bounds_json_key_order_is_stable(capsys):
    _, a, _ = run(capsys, "bounds", "code", "--r", "3", "--n", "4", "--q", "5", "--json")
    _, b, _ = run(capsys, "bounds", "code", "--r", "3", "--n", "4", "--q", "5", "--json")
    assert a == b
    keys = list(json.loads(a))
    assert keys == sorted(keys)


def test_bounds_invalid_params(capsys):
    code, _, err = run(capsys, "bounds", "hypergraph", "--r", "3", "--n", "2", "--k", "3")
    assert code == 2 and "n >= k" in err


def test_mnum(capsys):
    code, doc = run_json(capsys, "mnum", "mnum", "--n", "6", "--s", "2", "--lambda", "3", "--exact")
    assert code == 0 and doc["value"] == 10 and doc["regime"] == "BruteForced"
    code, doc = run_json(capsys, "mnum", "mnum", "--n", "40", "--s", "10", "--lambda", "5")
    assert doc["regime"] == "FormulaOnly" and doc["conjectural"] and not doc["hypothesisHolds"]
    code, out, _ = run(capsys, "mnum", "--n", "7", "--s", "2", "--lambda", "1")
    assert code == 0 and out.startswith("m(7,2,1) = 0")


def test_construct_code_writes_manifest(capsys, tmp_path):
    out = tmp_path / "c345.txt"
    code, _, _ = run(capsys, "construct", "code", "--r", "3", "--n", "5", "--q", "4", "--out", str(out))
    assert code == 0
    c = loads(out.read_text())
    assert len(c) == 64
    man = json.loads((tmp_path / "c345.txt.manifest.json").read_text())
    jsonschema.validate(man, BY_KIND["manifest"])
    assert man["version"] == __version__ and man["artifacts"] == ["c345.txt"]
    assert man["verification"]["focalFree"]


def test_construct_code_preconditions(capsys):
    code, _, err = run(capsys, "construct", "code", "--r", "3", "--n", "5", "--q", "12")
    assert code == 1 and "n <= p1^e1 + 1" in err


@pytest.mark.parametrize("argv,size", [
    (["construct", "oa", "--t", "2", "--n", "3", "--q", "6"], 36),
    (["construct", "design", "--n", "7", "--k", "3", "--t", "2"], 7),
    (["construct", "packing", "--n", "9", "--k", "3", "--t", "2", "--seed", "1"], None),
    (["construct", "family", "--r", "3", "--n", "9", "--k", "4"], None),
    (["construct", "code-packing", "--r", "3", "--n", "4", "--q", "3"], None),
])
def test_construct_json(capsys, argv, size):
    code, doc = run_json(capsys, "construct", *argv)
    assert code == 0
    if size is not None:
        assert doc["size"] == size
    assert doc["size"] == len(doc["items"])


def test_construct_missing_design(capsys):
    code, _, _ = run(capsys, "construct", "design", "--n", "8", "--k", "3", "--t", "2")
    assert code == 1


def test_construct_deterministic_output(capsys):
    _, a, _ = run(capsys, "construct", "packing", "--n", "10", "--k", "4", "--t", "3", "--seed", "7")
    _, b, _ = run(capsys, "construct", "packing", "--n", "10", "--k", "4", "--t", "3", "--seed", "7")
    assert a == b and a.startswith("#family n=10 k=4\n")


def test_verify_exit_codes(capsys, tmp_path):
    free = tmp_path / "fano.txt"
    free.write_text("#family n=7 k=3\n1 2 4\n2 3 5\n3 4 6\n4 5 7\n1 5 6\n2 6 7\n1 3 7\n")
    assert run(capsys, "verify", str(free), "--r", "3")[0] == 0
    bad = tmp_path / "tri.txt"
    bad.write_text("#family n=3 k=2\n1 2\n1 3\n2 3\n")
    code, doc = run_json(capsys, "verify", "verify", str(bad), "--r", "3")
    assert code == 1 and not doc["focalFree"] and doc["witness"]["focus"] == [1, 2]
    code, out, _ = run(capsys, "verify", str(bad), "--r", "3")
    assert code == 1 and json.loads(out)["members"] == [[1, 3], [2, 3]]
    junk = tmp_path / "junk.txt"
    junk.write_text("#family n=3 k=2\n1 2 3\n")
    code, _, err = run(capsys, "verify", str(junk), "--r", "3")
    assert code == 2 and "line 2" in err
    assert run(capsys, "verify", str(tmp_path / "missing.txt"), "--r", "3")[0] == 2


def test_verify_code_file(capsys, tmp_path):
    p = tmp_path / "c.txt"
    p.write_text("#code n=2 q=2\n1 1\n1 2\n2 1\n")
    code, doc = run_json(capsys, "verify", "verify", str(p), "--r", "3")
    assert code == 1 and doc["kind"] == "code"


def test_search_json(capsys):
    code, doc = run_json(capsys, "search", "search", "hypergraph", "--r", "3", "--n", "6", "--k", "3")
    assert code == 0 and doc["optimum"] == 4 and doc["complete"]
    code, doc = run_json(capsys, "search", "search", "code", "--r", "3", "--n", "2", "--q", "2",
                         "--no-seed-construction", "--exhaustive")
    assert doc["optimum"] == 2 and doc["proofOfMaximality"] == "Exhaustive"


def test_search_budget_timeout(capsys):
    code, doc = run_json(capsys, "search", "search", "hypergraph", "--r", "3", "--n", "8", "--k", "3",
                         "--cap", "56", "--budget", "3", "--no-seed-construction")
    assert code == 0 and doc["proofOfMaximality"].startswith("Timeout(")


def test_search_over_cap(capsys):
    code, _, err = run(capsys, "search", "hypergraph", "--r", "3", "--n", "10", "--k", "4")
    assert code == 2 and "cap" in err


def test_table_hypergraph(capsys):
    code, out, _ = run(capsys, "table", "hypergraph", "--r", "3", "--k", "3", "--n-min", "5", "--n-max", "7")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["n"]) for r in rows] == [5, 6, 7]
    assert [r["exact"] for r in rows] == ["3", "4", "7"]
    assert rows[2]["thm22UpperValid"] == "1" and rows[1]["thm22UpperValid"] == "0"
    for r in rows:
        assert int(r["constructionSize"]) <= int(r["exact"]) <= int(r["bestUpper"])


def test_table_code_no_exact(capsys):
    code, out, _ = run(capsys, "table", "code", "--r", "3", "--n", "3", "--q-min", "2", "--q-max", "4", "--no-exact")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 3 and all(r["exact"] == "" for r in rows)
    assert [r["constructionSize"] for r in rows] == ["4", "9", "16"]


def test_table_empty_range_prints_header_only(capsys):
    code, out, _ = run(capsys, "table", "hypergraph", "--r", "3", "--k", "3", "--n-min", "6", "--n-max", "5")
    assert code == 0 and len(out.strip().splitlines()) == 1 and out.startswith("side,r,n,k,")


def test_repro_unknown_suite(capsys):
    code, _, err = run(capsys, "repro", "nosuch")
    assert code == 2 and "quick" in err


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "bounds")[0] == 2
    assert run(capsys, "mnum", "--n", "x", "--s", "1", "--lambda", "1")[0] == 2


def test_threads_env(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("FOCAL_LAB_THREADS", "3")
    out = tmp_path / "d.txt"
    run(capsys, "construct", "design", "--n", "9", "--k", "3", "--t", "2", "--out", str(out))
    man = json.loads((tmp_path / "d.txt.manifest.json").read_text())
    assert man["threads"] == 3
    monkeypatch.setenv("FOCAL_LAB_THREADS", "many")
    code, _, err = run(capsys, "construct", "design", "--n", "9", "--k", "3", "--t", "2", "--out", str(out))
    assert code == 2 and "FOCAL_LAB_THREADS" in err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "focal_lab", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and __version__ in res.stdout


@pytest.mark.slow
def test_repro_quick(capsys, tmp_path):
    code, out, _ = run(capsys, "repro", "quick", "--out", str(tmp_path))
    assert code == 0, out
    assert out.count("[PASS]") == 5
    man = json.loads((tmp_path / "repro-quick.manifest.json").read_text())
    jsonschema.validate(man, BY_KIND["manifest"])
