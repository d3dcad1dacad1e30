import json
import re
from pathlib import Path

import pytest

from twwtop import io
from twwtop.cli import main
from twwtop.complexes import Complex

DATA = Path(__file__).parent / "data"
FAN = [(0, 1, 2), (0, 1, 3), (0, 1, 4), (0, 1, 5), (1, 2, 6), (5, 7, 8)]


def run(*argv):
    return main([str(a) for a in argv])


def test_pipeline_report_matches_golden(tmp_path):
    out = tmp_path / "r.json"
    assert run("pipeline", "--dim", 1, "--size", 4, "--report", out) == 0
    assert out.read_bytes() == (DATA / "pipeline_d1_n4.json").read_bytes()
    manifest = json.loads((tmp_path / "r.json.manifest.json").read_text())
    assert manifest["command"] == "pipeline"
    assert manifest["parameters"]["size"] == 4
    assert "epoch1" in manifest["extra"]["timings"]


def test_pipeline_emits_sequence_and_dot(tmp_path):
    rc = run("--manifest", tmp_path / "m.json", "pipeline", "--dim", 1, "--size", 2,
             "--report", tmp_path / "r.json", "--emit-sequence", tmp_path / "s.json",
             "--emit-dot", tmp_path / "dots", "--timings")
    assert rc == 0
    assert "timings" in json.loads((tmp_path / "r.json").read_text())
    assert (tmp_path / "dots" / "G_star.dot").read_text().startswith("graph G_star {")
    assert json.loads((tmp_path / "s.json").read_text())["steps"]


def test_pipeline_strict_flags_unmet_estimate(tmp_path):
    rc = run("pipeline", "--dim", 1, "--size", 3, "--report", tmp_path / "r.json", "--strict")
    assert rc == 1


def test_complex_commands_chain(tmp_path, capsys):
    h, s, d = tmp_path / "h.json", tmp_path / "s.json", tmp_path / "d.json"
    assert run("build-honeycomb", "--dim", 2, "--size", 3, "--out", h) == 0
    assert run("subdivide", "--in", h, "--iterations", 2, "--max-dim", 1, "--out", s) == 0
    assert run("dual", "--in", s, "--skeleton", 1, "--out", d) == 0
    g = io.read_trigraph(d)
    assert len(g) == len(io.read_complex(s).cells_of_dim(1))
    manifest = json.loads((tmp_path / "s.json.manifest.json").read_text())
    assert manifest["inputs"][str(h)] == io.sha256_file(h)


def test_export_dot_on_fan_dual(tmp_path):
    c, d, dot = tmp_path / "fan.json", tmp_path / "dual.json", tmp_path / "fan.dot"
    io.write_json(c, io.complex_to_dict(Complex.from_simplices(FAN)))
    assert run("dual", "--in", c, "--skeleton", 2, "--out", d) == 0
    assert run("export-dot", "--in", d, "--out", dot) == 0
    text = dot.read_text()
    nodes = set(re.findall(r"^  (\d+);$", text, re.M))
    used = set(re.findall(r"(\d+) -- ", text)) | set(re.findall(r"-- (\d+)", text))
    assert len(nodes) == 6
    assert len(nodes - used) == 1


def test_contract_grid(tmp_path, capsys):
    out = tmp_path / "seq.json"
    assert run("contract-grid", "--dim", 2, "--size", 5, "--out", out) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["width"] <= summary["bound"] == 6
    assert run("contract-grid", "--dim", 2, "--size", 4, "--diagonals", "--red",
               "--out", out) == 0


def test_verify_sequence(tmp_path, capsys):
    graph, seq = tmp_path / "g.json", tmp_path / "s.json"
    io.write_json(graph, {"vertices": [0, 1, 2], "black": [[0, 1], [1, 2]], "red": []})
    io.write_json(seq, {"steps": [{"left": 0, "right": 2, "merged": 3},
                                  {"left": 1, "right": 3, "merged": 4}]})
    assert run("verify-sequence", "--graph", graph, "--sequence", seq) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["width"] == 0 and report["full"]
    # tamper: contract a vertex that is already gone
    io.write_json(seq, {"steps": [{"left": 0, "right": 2, "merged": 3},
                                  {"left": 0, "right": 3, "merged": 4}]})
    assert run("verify-sequence", "--graph", graph, "--sequence", seq) == 1
    io.write_json(seq, {"steps": [{"left": 0, "right": 2, "merged": 3}]})
    assert run("verify-sequence", "--graph", graph, "--sequence", seq) == 1


def test_exact(tmp_path, capsys):
    graph = tmp_path / "p4.json"
    io.write_json(graph, {"vertices": [0, 1, 2, 3], "black": [[0, 1], [1, 2], [2, 3]], "red": []})
    assert run("exact", "--in", graph) == 0
    out = capsys.readouterr()
    assert json.loads(out.out)["value"] == 1
    assert '"command":"exact"' in out.err  # manifest falls back to stderr
    assert run("exact", "--in", graph, "--upper", 0) == 2


def test_lowerbound(tmp_path, capsys):
    out = tmp_path / "t.json"
    assert run("lowerbound", "--dim", 3, "--nodes", 5, "--seed", 0, "--out", out) == 0
    verdict = json.loads(capsys.readouterr().out)
    assert verdict["verified"] and verdict["top_simplices"] == 35
    dual = io.read_trigraph(f"{out}.dual.json")
    assert len(dual) == 35 and len(dual.black) == 40


def test_exit_codes(tmp_path, monkeypatch, capsys):
    assert run("build-honeycomb", "--dim", 2) == 1
    assert run("exact", "--in", tmp_path / "missing.json") == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run("export-dot", "--in", bad, "--out", tmp_path / "x.dot") == 1
    assert run("lowerbound", "--dim", 4, "--nodes", 5, "--out", tmp_path / "t.json") == 1
    monkeypatch.setenv("TWWTOP_CELL_BUDGET", "10")
    assert run("build-honeycomb", "--dim", 2, "--size", 4, "--out", tmp_path / "h.json") == 2


def test_version(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
