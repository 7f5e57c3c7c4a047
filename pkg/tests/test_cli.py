import json
import subprocess
import sys

import pytest

from triangle_pc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 14
    assert any(line.startswith("S12") and "(3, 4, 5)" in line for line in lines)
    assert any(line.startswith("U12") and "exceptions=4" in line for line in lines)
    code, doc = run_json(capsys, "list")
    assert len(doc) == 14
    assert {r["symbol"]: r for r in doc}["S12"]["triplet"] == [3, 4, 5]


def test_show_and_subgraphs(capsys):
    code, doc = run_json(capsys, "show", "W13")
    assert code == 0 and doc["dual"] == "S11" and doc["signature"] == {"plus": 1, "minus": 10, "zero": 0}
    code, out, _ = run(capsys, "subgraphs", "W13")
    assert code == 0 and "E8+A2\t" in out
    code, doc = run_json(capsys, "subgraphs", "W13", "--include-empty")
    assert doc[-1]["graph"] == "" and doc[-1]["vertices"] == []


def test_pc(capsys):
    code, out, _ = run(capsys, "pc", "W13")
    assert code == 0 and "D5+A6" in out.splitlines()
    code, out, _ = run(capsys, "pc", "Z13", "--bar-only")
    assert "A7+A4" not in out.split()
    code, out, _ = run(capsys, "pc", "Z13")
    assert "A7+A4 [B-2]" in out.splitlines()
    code, out, _ = run(capsys, "pc", "E12")
    assert "[B-2]" not in out


def test_pc_json_matches_text(capsys):
    _, text, _ = run(capsys, "pc", "S11", "--witness")
    _, doc = run_json(capsys, "pc", "S11", "--witness")
    graphs = [line.split("\t")[0].replace(" [B-2]", "") for line in text.strip().splitlines()]
    assert graphs == [g["graph"] for g in doc["graphs"]]
    tagged = [g for g in doc["graphs"] if g["tag"] == "exception"]
    assert [g["graph"] for g in tagged] == ["2A4+A1"] and "witness" not in tagged[0]
    assert all("witness" in g for g in doc["graphs"] if g["tag"] == "pc-bar")


def test_pc_uses_cache(capsys, isolated_cache):
    run(capsys, "pc", "Q10")
    assert (isolated_cache / "pc_bar.json").exists()
    code, out, _ = run(capsys, "pc", "Q11", "--no-cache")
    assert code == 0
    assert "Q11" not in json.loads((isolated_cache / "pc_bar.json").read_text())


def test_check(capsys):
    code, out, _ = run(capsys, "check", "W13", "E6+2A2")
    assert code == 0 and out.startswith("in-pc-bar")
    code, doc = run_json(capsys, "check", "S11", "2A4+A1")
    assert code == 0 and doc["verdict"] == "exception"
    code, out, _ = run(capsys, "check", "E12", "E8+E8")
    assert code == 1 and out.strip() == "not-in-pc"
    code, out, err = run(capsys, "check", "E12", "D3")
    assert code == 2 and "D3" in err
    code, _, err = run(capsys, "check", "X9", "A1")
    assert code == 2


def test_transform_all(capsys):
    code, out, _ = run(capsys, "transform", "elementary", "E8+A2", "--all")
    assert code == 0 and "E6+2A2" in out.split()
    _, out, _ = run(capsys, "transform", "tie", "E8+A2", "--all")
    assert "D5+A6" in out.split()
    _, out, _ = run(capsys, "transform", "tie", "A1", "--all")
    assert set(out.split()) == {"A2", "2A1", "A1"}
    _, doc = run_json(capsys, "transform", "elementary", "A1", "--all", "--include-empty")
    assert {r["result"] for r in doc["results"]} == {"A1", ""}


def test_transform_explicit(capsys):
    code, out, _ = run(capsys, "transform", "elementary", "E8+A2", "--remove", "c1:v6,c2:v1")
    assert code == 0 and out.strip() == "E6+2A2"
    code, out, _ = run(capsys, "transform", "tie", "A1", "--A", "c1:v1", "--B", "c1:v2")
    assert code == 0 and out.strip() == "A2"
    code, _, err = run(capsys, "transform", "tie", "A2+A1", "--A", "c1:v1")
    assert code == 2 and "component 2" in err
    code, _, err = run(capsys, "transform", "elementary", "A2", "--remove", "c2:v1")
    assert code == 2
    # both vertices of affine A3 opposite each other tied: the cycle closes through the new vertex
    code, out, _ = run(capsys, "transform", "tie", "A3", "--A", "c1:v1", "--B", "c1:v2,c1:v4")
    assert code == 1 and out.startswith("reject")


def test_gram(capsys):
    code, doc = run_json(capsys, "gram", "--gabrielov", "E12")
    assert code == 0 and doc["signature"] == {"plus": 1, "minus": 9, "zero": 0}
    assert len(doc["matrix"]) == 10
    code, doc = run_json(capsys, "gram", "A1")
    assert doc["matrix"] == [[-2]]
    _, out, _ = run(capsys, "gram", "--gabrielov", "S12")
    assert out.strip().splitlines()[-1] == "signature: (1, 9, 0)"
    code, _, _ = run(capsys, "gram")
    assert code == 2
    code, _, _ = run(capsys, "gram", "A0")
    assert code == 2


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "--only", "1", "--only", "5")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0].startswith("PASS  1.") and lines[1].startswith("PASS  5.")
    code, doc = run_json(capsys, "verify", "--only", "9")
    assert doc["passed"] and doc["criteria"][0]["number"] == 9


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["nonsense"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["transform", "twist", "A1"])
    assert e.value.code == 2


def test_module_entry_point(isolated_cache):
    proc = subprocess.run(
        [sys.executable, "-m", "triangle_pc", "list", "--json"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert len(json.loads(proc.stdout)) == 14
