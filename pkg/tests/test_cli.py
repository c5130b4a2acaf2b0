import json

import pytest

from drinfeld.cli import main
from drinfeld.exactfield import parse_kummer


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_expand_h_product(capsys):
    code, out, _ = run(capsys, "expand", "--form", "h-product", "--q", "3", "--order", "20")
    assert code == 0
    rep = json.loads(out)
    assert rep["schema"] == 1
    assert rep["series"]["coefficients"][0] == [1, "2"]
    assert rep["series"]["truncation"] == 20


def test_expand_eisenstein_constant(capsys):
    code, out, _ = run(capsys, "expand", "--form", "E", "--v", "0,1", "--q", "3", "--order", "20")
    assert code == 0
    rep = json.loads(out)
    e, c = rep["series"]["coefficients"][0]
    assert e == 0 and parse_kummer(c, 3) == parse_kummer("l", 3).inverse()
    assert rep["series"]["variable"] == "t_a"


@pytest.mark.parametrize("form", ["h-aexp", "delta", "g", "jtilde", "g-level"])
def test_expand_other_forms(capsys, form):
    code, out, _ = run(capsys, "expand", "--form", form, "--q", "2", "--order", "10", "--format", "text")
    assert code == 0 and out.startswith(form)


@pytest.mark.parametrize("args", [
    ["expand", "--form", "h-product", "--q", "1"],
    ["expand", "--form", "h-product", "--q", "3", "--order", "1"],
    ["expand", "--form", "E", "--q", "3"],
    ["expand", "--form", "E", "--q", "3", "--v", "0,0"],
    ["expand", "--form", "E", "--q", "3", "--v", "1,0", "--a", "T^2"],
    ["expand", "--form", "bogus", "--q", "3"],
    ["verify", "--suite", "bogus", "--q", "3"],
    ["lab", "weil", "--q", "3", "--n", "1", "--gammaT", "0", "--a", "T", "--seed", "1"],
    ["lab", "weil", "--q", "3"],
    [],
])
def test_usage_errors_exit_2(capsys, args):
    code, _, _ = run(capsys, *args)
    assert code == 2


def test_verify_pass_and_fail(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "theorem1", "--q", "2", "--order", "16")
    assert code == 0
    assert json.loads(out)["fitted"]["varsigma"] == "1"
    code, out, _ = run(capsys, "verify", "--suite", "serre", "--q", "3", "--order", "18", "--format", "text")
    assert code == 1
    assert "serre-printed first failing exponent 1" in out


def test_verify_weil_series_other_level(capsys):
    code, _, _ = run(capsys, "verify", "--suite", "weil-series", "--q", "2", "--order", "12", "--a", "T+1")
    assert code == 0


def test_lab_weil(capsys):
    code, out, _ = run(capsys, "lab", "weil", "--q", "3", "--n", "1", "--a", "T", "--trials", "2",
                       "--seed", "7", "--samples", "30")
    assert code == 0
    assert json.loads(out)["status"] == "pass"


def test_lab_moduli(capsys):
    code, out, _ = run(capsys, "lab", "moduli", "--q", "2", "--n", "2")
    assert code == 0
    code, out, _ = run(capsys, "lab", "moduli", "--q", "3", "--n", "1", "--format", "text")
    assert code == 1
    assert "class table" in out


def test_out_file_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert main(["lab", "weil", "--q", "3", "--n", "1", "--trials", "2", "--seed", "3",
                     "--samples", "20", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert capsys.readouterr().out == ""
