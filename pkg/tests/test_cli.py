import io
import json
import subprocess
import sys

import pytest

from subdivlab.cli import dumps_json, format_number, main
from subdivlab.corpus import load_example
from subdivlab.maskio import dumps_mask

from cli_cases import GOLDEN, INPUTS, cases, run

CASES = cases()


@pytest.mark.parametrize("fname, argv", CASES, ids=[c[0] for c in CASES])
def test_golden(fname, argv):
    code, text = run(argv)
    assert code == 0
    assert text == (GOLDEN / fname).read_text()


def test_byte_identical_across_processes():
    argv = ["analyze", str(INPUTS / "ex3.json")]
    outs = [subprocess.run([sys.executable, "-m", "subdivlab", *argv], capture_output=True, check=True).stdout
            for _ in range(2)]
    assert outs[0] == outs[1] == (GOLDEN / "analyze_ex3.json").read_bytes()


def test_analyze_report_fields():
    doc = json.loads((GOLDEN / "analyze_ex3.json").read_text())
    assert doc["sr"] == 5
    assert doc["classification"]["label"] == "Hermite(2)"
    assert doc["smoothness"]["sm2"] == pytest.approx(4.5335, abs=1e-4)
    assert "tolerance" in doc["spectral"] and "tolerance" in doc["transition"]


def test_analyze_haar(tmp_path):
    p = tmp_path / "haar.json"
    p.write_text('{"r": 1, "support": [0, 1], "coeff": [[["1/2"]], [["1/2"]]]}')
    code, text = run(["analyze", str(p)])
    doc = json.loads(text)
    assert code == 0 and doc["sr"] == 1 and doc["classification"]["tag"] == "Lagrange"


def test_analyze_condition_failure(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"r": 2, "support": [0, 0], "coeff": [[["1", "0"], ["0", "2"]]]}')
    code, text = run(["analyze", str(p)])
    assert code == 2
    assert json.loads(text)["spectral"]["cond_a0"] is False
    assert "cond_a0" in capsys.readouterr().err


@pytest.mark.parametrize("content", ["{", '{"r": 1}', '{"r": 1, "support": [0, 0], "coeff": [[[0.5]]]}'])
def test_parse_errors_exit_1(tmp_path, content):
    p = tmp_path / "m.json"
    p.write_text(content)
    assert run(["analyze", str(p)])[0] == 1


def test_missing_file_exit_1(tmp_path):
    assert run(["analyze", str(tmp_path / "nope.json")])[0] == 1


def test_subdivide_hat_sums():
    code, text = run(["subdivide", str(INPUTS / "ex1.json"), "--level", "3"])
    lines = text.splitlines()
    assert code == 0 and lines[0] == "x,value_1,value_2" and len(lines) == 18
    for line in lines[1:]:
        x, y1, y2 = map(float, line.split(","))
        assert y1 + y2 == pytest.approx(max(0.0, 1 - abs(x)), abs=1e-14)


def test_subdivide_refuses_unjustified_derivative(capsys):
    code, _ = run(["subdivide", str(INPUTS / "ex1.json"), "--level", "3", "--deriv", "2"])
    assert code == 2
    assert "exceeds" in capsys.readouterr().err


def test_subdivide_delta_row_matches_first_component(tmp_path):
    w0 = tmp_path / "w0.json"
    w0.write_text('{"start": 0, "values": [["1", "0"]]}')
    code, text = run(["subdivide", str(INPUTS / "ex1.json"), "--level", "3", "--initial", str(w0)])
    full = (GOLDEN / "subdivide_ex1_n3.csv").read_text().splitlines()[1:]
    rows = text.splitlines()[1:]
    assert code == 0 and [r.split(",") for r in rows] == [f.split(",")[:2] for f in full]


def test_subdivide_level_guard(monkeypatch):
    monkeypatch.setenv("SUBDIVLAB_MAX_LEVEL", "2")
    assert run(["subdivide", str(INPUTS / "ex1.json"), "--level", "3"])[0] == 2


def test_rates_exact_reproduction(tmp_path):
    u = tmp_path / "u.json"
    u.write_text('{"start": 0, "values": [["1/3", "2/3"]]}')
    code, text = run(["rates", str(INPUTS / "ex1.json"), "--u", str(u), "--levels", "6"])
    rows = text.splitlines()
    assert code == 0
    assert all(r.split(",")[1] == "0" for r in rows[1:-1])
    assert rows[-1].startswith("# slope=inf (exact reproduction)")


def test_rates_figure_column():
    text = (GOLDEN / "rates_ex2a2_u3.csv").read_text().splitlines()
    assert float(text[10].split(",")[2]) == pytest.approx(46.1290, abs=0.05)


def test_rates_ex3_u3_slope():
    last = (GOLDEN / "rates_ex3_u3.csv").read_text().splitlines()[-1]
    slope = float(last.split()[1].split("=")[1])
    assert slope == pytest.approx(3.1, abs=0.15)


def _write_filter(tmp_path, entries):
    p = tmp_path / "filter.json"
    p.write_text(json.dumps({"entries": entries}))
    return str(p)


def test_design_haar(tmp_path):
    f = _write_filter(tmp_path, [["1"]])
    code, text = run(["design", "--support=0,1", "--r", "1", "--order", "1", "--filter", f])
    doc = json.loads(text)
    assert code == 0 and doc["num_params"] == 0 and doc["particular"] == [[["1/2"]], [["1/2"]]]


def test_design_hermite_family(tmp_path):
    f = _write_filter(tmp_path, [["1", "0", "0", "0"], ["0", "i", "0", "0"]])
    code, text = run(["design", "--support=-2,2", "--r", "2", "--order", "4", "--filter", f,
                      "--symmetry", "0:1,-1"])
    assert code == 0 and json.loads(text)["num_params"] == 2


def test_design_infeasible(tmp_path):
    f = _write_filter(tmp_path, [["1", "0", "0"]])
    assert run(["design", "--support=0,1", "--r", "1", "--order", "3", "--filter", f])[0] == 2


def test_corpus_export_round_trip():
    code, text = run(["corpus", "export", "ex3"])
    case = load_example("ex3")
    assert code == 0 and text == dumps_mask(case.mask, case.filter)


@pytest.mark.parametrize("eid, params, check", [
    ("ex1", None, "transition_spectrum"),
    ("ex2a2", "t1=1,t2=-1", "figure_u3"),
    ("ex4", None, "classification"),
])
def test_corpus_run(eid, params, check):
    argv = ["corpus", "run", eid] + (["--params", params] if params else [])
    code, text = run(argv)
    doc = json.loads(text)
    status = {c["name"]: c["status"] for c in doc["checks"]}
    assert code == 0 and status[check] == "pass" and doc["failed"] == 0


def test_corpus_run_writes_files(tmp_path):
    code, _ = run(["corpus", "run", "ex3", "--out", str(tmp_path)])
    assert code == 0
    assert (tmp_path / "ex3_report.json").exists() and (tmp_path / "ex3_u1.csv").exists()


def test_corpus_bad_params():
    assert run(["corpus", "run", "ex1", "--params", "t2=0"])[0] == 1
    assert run(["corpus", "run", "ex1", "--params", "t9=1"])[0] == 1
    assert run(["corpus", "run", "ex9"])[0] == 1


def test_corpus_list():
    code, text = run(["corpus", "list"])
    assert code == 0 and [l.split("\t")[0] for l in text.splitlines()] == ["ex1", "ex2a1", "ex2a2", "ex3", "ex4"]


def test_formatting_helpers():
    assert format_number(1 / 3) == "0.333333333333333"
    assert format_number(float("inf")) == "inf"
    assert format_number(None) == ""
    assert dumps_json({"a": [1, [2, 3]], "b": {}}) == '{\n  "a": [1, [2, 3]],\n  "b": {}\n}'
