import json

from wedgeprobe.cli import main
from wedgeprobe.fileio import (
    load_polygon,
    load_transcript,
    polygon_from_dict,
    polygon_to_dict,
    save_polygon,
    save_transcript,
)
from wedgeprobe.geometry import Point
from wedgeprobe.harness import ExperimentConfig, gen_polygon
from wedgeprobe.oracle import new_session
from wedgeprobe.geometry import DirectedLine


def test_polygon_roundtrip_full_precision(tmp_path):
    poly = gen_polygon(ExperimentConfig(omega=1.0, n_range=(7, 7), trials=1, seed=2), 0)
    path = tmp_path / "poly.json"
    save_polygon(poly, str(path))
    doc = json.loads(path.read_text())
    assert doc["ccw"] is True
    back = load_polygon(str(path))
    assert back.vertices == poly.vertices  # bit-exact round trip


def test_polygon_dict_cw_input_normalized():
    doc = {"vertices": [[0, 0], [0, 1], [1, 1], [1, 0]], "ccw": False}
    poly = polygon_from_dict(doc)
    assert poly.n == 4
    assert polygon_to_dict(poly)["ccw"] is True


def test_transcript_roundtrip(tmp_path):
    poly = gen_polygon(ExperimentConfig(omega=1.0, n_range=(6, 6), trials=1, seed=3), 0)
    s = new_session(poly, 1.0)
    s.probe(DirectedLine(s.p, Point(1.0, 0.0)))
    s.probe(DirectedLine(Point(50.0, 50.0), Point(0.0, 1.0)))
    path = tmp_path / "transcript.jsonl"
    save_transcript(s.transcript, str(path))
    back = load_transcript(str(path))
    assert len(back) == 2
    assert back[0].result.q == s.transcript[0].result.q
    from wedgeprobe.oracle import MISS

    assert back[1].result is MISS


def test_cli_generate_probe_cloud_reconstruct(tmp_path, capsys):
    poly_path = str(tmp_path / "p.json")
    assert main(["generate", "--omega", "1.0471975511965976", "--n-min", "6", "--n-max", "6",
                 "--seed", "3", "--out", poly_path]) == 0
    assert main(["probe", "--polygon", poly_path, "--omega", "1.0471975511965976",
                 "--line", "0,3,0,-1"]) == 0
    csv_path = str(tmp_path / "cloud.csv")
    svg_path = str(tmp_path / "cloud.svg")
    assert main(["cloud", "--polygon", poly_path, "--omega", "1.0471975511965976",
                 "--csv", csv_path, "--svg", svg_path]) == 0
    assert "support_a" in open(csv_path).read()
    assert "<svg" in open(svg_path).read()
    out_path = str(tmp_path / "out.json")
    assert main(["reconstruct", "--polygon", poly_path, "--omega", "1.0471975511965976",
                 "--algorithm", "input1", "--out", out_path]) == 0
    captured = capsys.readouterr().out
    assert "PASS" in captured
    assert load_polygon(out_path).n == 6


def test_cli_duel_and_suite(tmp_path, capsys):
    tr_path = str(tmp_path / "t.jsonl")
    assert main(["duel", "--omega", "1.0471975511965976", "--n", "6",
                 "--algorithm", "greedy", "--seed", "1", "--transcript", tr_path]) == 0
    assert len(load_transcript(tr_path)) >= 10
    csv_path = str(tmp_path / "suite.csv")
    assert main(["suite", "--omega", "1.0471975511965976", "--n-min", "5", "--n-max", "8",
                 "--trials", "4", "--seed", "2", "--csv", csv_path]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out
    assert "trials=4" in out
