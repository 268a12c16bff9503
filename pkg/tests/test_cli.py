from __future__ import annotations

import json

import pytest

from conftest import CUBE, DUAL, FIVE
from grex.cli import main


@pytest.fixture()
def spec_file(tmp_path):
    def write(d, name="a.json"):
        p = tmp_path / name
        p.write_text(json.dumps(d) if not isinstance(d, str) else d)
        return str(p)
    return write


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_koszul_holds(capsys, spec_file):
    code, out, _ = run(capsys, ["check", spec_file(DUAL), "-p", "koszul", "--degree", "6"])
    rep = json.loads(out)
    assert code == 0 and rep["schema"] == 1 and rep["verdict"] == "holds-to-bound" and rep["bound"] == 6


def test_check_quadratic_refuted(capsys, spec_file):
    code, out, _ = run(capsys, ["check", spec_file(CUBE), "-p", "quadratic"])
    rep = json.loads(out)
    assert code == 1 and rep["witnesses"][0]["grade"] == 3


@pytest.mark.parametrize("prop", ["standard-qkoszul", "qkoszul", "tight", "qha", "filtrations", "product-formula"])
def test_check_properties_on_five(capsys, spec_file, prop):
    code, out, _ = run(capsys, ["check", spec_file(FIVE), "-p", prop, "--degree", "4"])
    assert code == 0, out
    assert json.loads(out)["verdict"] == "holds-to-bound"


def test_text_format_and_out_file(capsys, spec_file, tmp_path):
    target = tmp_path / "r.txt"
    code, out, _ = run(capsys, ["check", spec_file(FIVE), "-p", "qha", "--format", "text", "--out", str(target)])
    assert code == 0 and out == ""
    assert "verdict: holds-to-bound" in target.read_text()


@pytest.mark.parametrize("content", ["{not json", json.dumps({"vertices": ["1"]}),
                                     json.dumps({"field": 4, "vertices": ["1"]})])
def test_malformed_input(capsys, spec_file, content):
    code, _, err = run(capsys, ["check", spec_file(content), "-p", "koszul"])
    assert code == 2 and "error" in err


def test_missing_file_and_bad_arguments(capsys):
    assert run(capsys, ["check", "/nonexistent.json", "-p", "koszul"])[0] == 2
    assert run(capsys, ["check"])[0] == 2
    assert run(capsys, ["nosuch"])[0] == 2
    assert run(capsys, ["kl", "a", "3", "2", "2x"])[0] == 2


def test_degree_bound_from_environment(capsys, spec_file, monkeypatch):
    monkeypatch.setenv("GREX_DEGREE_BOUND", "3")
    code, out, _ = run(capsys, ["check", spec_file(DUAL), "-p", "koszul"])
    assert code == 0 and json.loads(out)["bound"] == 3
    monkeypatch.setenv("GREX_DEGREE_BOUND", "zero")
    assert run(capsys, ["check", spec_file(DUAL), "-p", "koszul"])[0] == 2


def test_kl_polynomial(capsys):
    code, out, _ = run(capsys, ["kl", "a", "3", "2", "2132"])
    rep = json.loads(out)
    assert code == 0 and rep["P"]["text"] == "1 + q"


def test_kl_poincare(capsys):
    code, out, _ = run(capsys, ["kl", "poincare", "5", "3,2"])
    assert code == 0
    assert json.loads(out)["r_lambda"]["terms"] == [[0, 1], [1, 1], [2, 2], [3, 2], [4, 2], [5, 1], [6, 1]]


def test_kl_psing_and_ciii(capsys):
    code, out, _ = run(capsys, ["kl", "psing", "a", "3", "e", "2132", "-"])
    assert code == 0 and json.loads(out)["P_sing"]["text"] == "1 + q"
    code, out, _ = run(capsys, ["kl", "ciii", "5", "5", "2"])
    assert code == 0 and json.loads(out)["series"]["text"] == "1"
    assert run(capsys, ["kl", "ciii", "3", "3", "2"])[0] == 2


def test_kl_length_bound(capsys):
    code, _, err = run(capsys, ["kl", "a", "1", "e", "0101010", "--affine", "--ball", "4"])
    assert code == 3 and "bound" in err


def test_casestudy(capsys, tmp_path):
    code, out, _ = run(capsys, ["casestudy", "run"])
    rep = json.loads(out)
    assert code == 0 and rep["ok"] and rep["schema"] == 1
    target = tmp_path / "data.json"
    assert run(capsys, ["casestudy", "export-data", "--out", str(target)])[0] == 0
    code, out, _ = run(capsys, ["check", str(target), "-p", "qha"])
    assert code in (0, 1)


def test_corpus_commands(capsys):
    code, out, _ = run(capsys, ["corpus", "generate", "--limit", "5", "--seed", "2"])
    assert code == 0 and json.loads(out)["size"] == 5
    code, out, _ = run(capsys, ["corpus", "test", "--limit", "6", "--jobs", "1", "--degree", "3"])
    rep = json.loads(out)
    assert code == 0 and rep["ok"] and rep["size"] == 6
