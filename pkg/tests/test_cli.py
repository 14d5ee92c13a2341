from __future__ import annotations

import json

import pytest

from wythoffian.cli import main
from wythoffian.embed import EmbeddingCertificate
from wythoffian.graphs import MetricGraph


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_build_graph_json(capsys, tmp_path):
    code, out = run(capsys, "build", "b3", "--v", "0,1")
    G = MetricGraph.from_json(json.loads(out.out))
    assert code == 0 and G.n == 24 and G.m == 36
    out_file = tmp_path / "g.json"
    assert main(["build", "a3", "--v", "1", "--dual", "--out", str(out_file)]) == 0
    assert MetricGraph.from_json(json.loads(out_file.read_text())).n == 8  # cube


def test_embed_lines(capsys):
    assert run(capsys, "embed", "ico", "--v", "1", "--dual")[1].out.strip() == "H 6, equicut"
    code, out = run(capsys, "embed", "b3", "--v", "0,2", "--json")
    data = json.loads(out.out)
    assert code == 0 and data["verdict"] == "scale2"
    assert [e["text"] for e in data["embeddings"]] == ["johnson 10 5, equicut"]
    code, out = run(capsys, "embed", "ico", "--v", "0,1")
    assert code == 0 and out.out.startswith("non-5-gonal witness")


def test_embed_l1_scale(capsys):
    code, out = run(capsys, "embed", "b5", "--v", "0,4", "--l1")
    assert code == 0
    assert out.out.splitlines() == ["none: no scale 1 or 2 embedding (6 factors)",
                                    "l1_with_min_scale(4) factors=[10, 2, 2, 2, 2, 2]"]


def test_cert_roundtrip(capsys, tmp_path):
    cert = tmp_path / "c.json"
    assert main(["embed", "ico", "--v", "1", "--dual", "--cert-out", str(cert)]) == 0
    assert EmbeddingCertificate.load(cert).m == 6
    capsys.readouterr()
    code, out = run(capsys, "check-cert", "ico", str(cert), "--v", "1", "--dual")
    assert code == 0 and out.out.startswith("OK: scale 1 into H6")
    # a wrong graph is an error, a tampered label a failure
    assert run(capsys, "check-cert", "ico", str(cert))[0] == 2
    data = json.loads(cert.read_text())
    first = data["labels"]["0"]
    data["labels"]["0"] = ("1" if first[0] == "0" else "0") + first[1:]
    cert.write_text(json.dumps(data))
    code, out = run(capsys, "check-cert", "ico", str(cert), "--v", "1", "--dual", "--json")
    assert code == 1 and json.loads(out.out)["ok"] is False


def test_coxeter_command(capsys, tmp_path):
    code, out = run(capsys, "coxeter", "--type", "H3", "--emit", str(tmp_path / "cay.json"))
    assert code == 0 and "|T|=15 (closed form 15)" in out.out and "OK (exhaustive" in out.out
    assert MetricGraph.from_json(json.loads((tmp_path / "cay.json").read_text())).n == 120
    code, out = run(capsys, "coxeter", "--type", "I2(7)", "--json")
    assert code == 0 and json.loads(out.out)["reflections"] == 7


@pytest.mark.parametrize("argv", [["build", "nope"], ["coxeter", "--type", "Q3"], ["coxeter", "--type", "E6"],
                                  ["embed", "/nonexistent.json"]])
def test_errors_exit_2(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 2 and out.err.startswith("error:")


def test_table_coxeter(capsys, tmp_path):
    code, out = run(capsys, "table", "coxeter", "--max-rank", "4", "--cert-dir", str(tmp_path))
    assert code == 0 and "F4" in out.out and "H4" in out.out and "A5" not in out.out
    assert any((tmp_path / "coxeter").iterdir())
