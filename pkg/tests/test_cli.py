import json

import pytest

from mopz import relations
from mopz.cli import main
from mopz.relations import StructureCoeffs


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_aj(capsys):
    code, out, _ = run(
        capsys, "build", "--family", "aj", "--n", "1", "--alpha", "0", "--beta", "0", "--gamma", "0", "--a", "-1"
    )
    assert code == 0
    data = json.loads(out)
    c = data["coeffs"]
    assert c[0].startswith("-0.33333333333333333333") and c[1:] == ["0", "1"]
    assert data["constant_term_check"]["passed"] and data["manifest"]["precision_bits"] == 192


def test_build_lh(capsys):
    code, out, _ = run(capsys, "build", "--family", "lh", "--n", "1", "--gamma", "0")
    assert code == 0 and json.loads(out)["coeffs"] == ["-0.5", "0", "1"]


@pytest.mark.parametrize(
    "argv",
    [
        ["build", "--family", "aj", "--n", "1", "--alpha", "0", "--beta", "0", "--gamma", "-1.5", "--a", "-1"],
        ["sweep", "--n", "2", "--wrt", "gamma", "--range", "1:0:1", "--alpha", "0", "--beta", "0", "--a", "-1"],
        ["bogus"],
        ["build", "--family", "aj", "--n", "1", "--alpha", "x", "--beta", "0", "--gamma", "0", "--a", "-1"],
        ["--prec", "16", "build", "--family", "lh", "--n", "1", "--gamma", "0"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_global_flags_either_side(capsys):
    a = run(capsys, "--prec", "256", "build", "--family", "lh", "--n", "1", "--gamma", "1")
    b = run(capsys, "build", "--family", "lh", "--n", "1", "--gamma", "1", "--prec", "256")
    assert json.loads(a[1])["precision_bits"] == json.loads(b[1])["precision_bits"] == 256


def _strip_stamp(text):
    return "\n".join(line for line in text.splitlines() if "timestamp" not in line)


def test_deterministic_apart_from_timestamp(capsys):
    argv = ["verify", "--suite", "means", "--trials", "4", "--seed", "9", "--n-max", "3"]
    a, b = run(capsys, *argv), run(capsys, *argv)
    assert a[0] == b[0] == 0
    assert _strip_stamp(a[1]) == _strip_stamp(b[1])


def test_injected_sign_flip_is_caught(capsys, monkeypatch):
    real = relations.structure_coeffs

    def flipped(n, p):
        c = real(n, p)
        return StructureCoeffs(c.A, -c.B)

    monkeypatch.setattr(relations, "structure_coeffs", flipped)
    code, _, err = run(capsys, "verify", "--suite", "structure", "--trials", "6", "--n-max", "3")
    assert code == 1
    assert "FAIL structure/structure_aj_" in err


def test_zeros_jl(capsys):
    code, out, _ = run(capsys, "zeros", "--family", "jl", "--n", "1", "--beta", "0", "--gamma", "0", "--a", "-1")
    data = json.loads(out)
    assert code == 0 and data["negative"][0].startswith("-0.6180339887")


def test_sweep_csv(capsys, tmp_path):
    path = tmp_path / "s.csv"
    code, _, _ = run(
        capsys,
        "sweep",
        "--n",
        "2",
        "--wrt",
        "a",
        "--range",
        "-3:-0.1:0.7",
        "--shift-beta",
        "--alpha",
        "0.5",
        "--beta",
        "0",
        "--gamma",
        "0",
        "--out",
        str(path),
    )
    assert code == 0
    rows = [line for line in path.read_text().splitlines() if not line.startswith("#")]
    assert rows[0].startswith("family,n,alpha,beta")
    body = [r.split(",") for r in rows[1:]]
    assert len(body) == 5 and all(r[13] == "true" for r in body)
    assert body[0][5] == "-3" and body[0][3] == "1"


def test_limits(capsys):
    code, out, _ = run(capsys, "limits", "--family", "lh", "--n", "1", "--gamma", "0", "--alpha-grid", "100,1000,10000")
    data = json.loads(out)
    assert code == 0 and float(data["empirical_order"]) >= 0.9


def test_energy(capsys):
    code, _out, _ = run(capsys, "energy", "--n", "4", "--alpha", "0.5", "--beta", "-0.3", "--trials", "20", "--hessian")
    assert code == 0


def test_plot_fig1(capsys, tmp_path):
    code, _, _ = run(capsys, "plot-fig1", "--points", "201", "--out", str(tmp_path))
    assert code == 0
    data = json.loads((tmp_path / "fig1.json").read_text())
    assert len(data["big"]["negative"]) == 5 and len(data["small"]["positive"]) == 4
    assert data["interlacing"]["(a,0)"]["pattern"] == "count_minus_one"
    csv_rows = [r for r in (tmp_path / "fig1.csv").read_text().splitlines() if r.startswith("0,")]
    assert len(csv_rows) == 1
    assert (tmp_path / "fig1.gp").exists()
