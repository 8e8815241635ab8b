import csv
import io
import json
import math
import shutil
import subprocess
import sys

import pytest

from sixvertex import cli
from sixvertex.determinant import z_det
from sixvertex.model import random_params


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def value(out):
    d = json.loads(out)
    return complex(d["value_re"], d["value_im"])


def test_z_single_site(capsys):
    code, out, _ = run(capsys, "z", "--n", "1", "--eta", "0.3")
    assert code == 0
    assert abs(value(out) - math.sinh(0.6)) < 1e-15


def test_g_last_row(capsys):
    code, out, _ = run(capsys, "g", "--n", "3", "--m", "3", "--method", "det", "--seed", "7")
    assert code == 0
    assert abs(value(out) - 1) < 1e-10


def test_output_fields(capsys):
    _, out, _ = run(capsys, "h", "--n", "3", "--m", "2")
    d = json.loads(out)
    assert list(d) == ["quantity", "n", "m", "method", "value_re", "value_im", "precision_bits"]
    assert (d["quantity"], d["n"], d["m"], d["method"], d["precision_bits"]) == ("H", 3, 2, "det", 53)


def test_seeded_params_match_library(capsys):
    _, out, _ = run(capsys, "z", "--n", "4", "--seed", "5")
    assert value(out) == complex(z_det(random_params(4, seed=5)).value)


@pytest.mark.parametrize("quantity, methods", [
    ("z", ["det", "perm", "qism", "enum"]),
    ("g", ["det", "reduction", "qism", "enum"]),
    ("h", ["det", "reduction", "qism", "enum"]),
])
def test_methods_agree(capsys, quantity, methods):
    extra = [] if quantity == "z" else ["--m", "2"]
    values = []
    for method in methods:
        code, out, _ = run(capsys, quantity, "--n", "4", "--method", method, "--seed", "2", *extra)
        assert code == 0
        values.append(value(out))
    assert max(abs(v - values[0]) for v in values) < 1e-9 * abs(values[0])


def test_params_file(tmp_path, capsys):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"lambdas": [[0.1, 0.2], [-0.3, 0.1]],
                                "nus": [[0.0, 0.4], [0.2, -0.1]], "eta": [0.5, 0.1]}))
    code, out, _ = run(capsys, "z", "--params", str(path), "--method", "qism")
    assert code == 0
    _, out2, _ = run(capsys, "z", "--params", str(path))
    assert abs(value(out) - value(out2)) < 1e-14


def test_bad_params_file(tmp_path, capsys):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"lambdas": [[0.1, 0.2]], "nus": [[0.0, 0.4]]}))
    code, _, err = run(capsys, "z", "--params", str(path))
    assert code == 2 and "eta" in err
    code, _, _ = run(capsys, "z", "--params", str(tmp_path / "missing.json"))
    assert code == 2


def test_extended_precision(capsys):
    _, out, _ = run(capsys, "z", "--n", "3", "--bits", "128")
    d = json.loads(out)
    assert d["precision_bits"] == 128


@pytest.mark.parametrize("argv", [
    ["z", "--n", "3", "--m", "1"],
    ["g", "--n", "3"],
    ["g", "--n", "3", "--m", "5"],
    ["z", "--n", "3", "--method", "reduction"],
    ["g", "--n", "3", "--m", "1", "--method", "perm"],
    ["z", "--n", "8", "--method", "enum"],
    ["z", "--n", "13", "--method", "qism"],
    ["z", "--n", "2", "--seed", "1", "--params", "x.json"],
    ["z", "--n", "2", "--bits", "20"],
    ["ff", "--n", "3", "--lambda", "0.3"],
    ["hom", "g", "--n", "3", "--lambda", "0.3", "--eta", "0.5"],
    ["sweep", "hom", "--n", "3", "--lambda", "0.3"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_argparse_usage_error_exits_two():
    with pytest.raises(SystemExit) as exc:
        cli.main(["z", "--method", "magic"])
    assert exc.value.code == 2


def test_bad_complex_flag():
    with pytest.raises(SystemExit) as exc:
        cli.main(["z", "--n", "1", "--eta", "pi/4"])
    assert exc.value.code == 2


def test_singularity_exit_code(capsys, tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"lambdas": [[0.1, 0], [0.1, 0]], "nus": [[0, 0], [0.5, 0]], "eta": [0.3, 0]}))
    code, _, err = run(capsys, "z", "--params", str(path))
    assert code == 3 and "singular" in err


def test_parse_complex_grammar():
    assert cli.parse_complex("0.5") == 0.5
    assert cli.parse_complex("0.5+0.25j") == 0.5 + 0.25j
    assert cli.parse_complex("1e-3-2j") == 1e-3 - 2j
    assert cli.parse_complex("0.7853981633974483j") == 0.7853981633974483j


def test_seventeen_digits():
    assert cli.fmt(1 / 3) == "0.33333333333333331"
    assert cli.fmt_complex(0.5 - 0.25j) == "0.5-0.25j"
    assert cli.to_json({"x": [0.1]}) == '{"x": [0.10000000000000001]}'


def test_ff_rows(capsys):
    code, out, _ = run(capsys, "ff", "--n", "3", "--lambda", str(math.pi / 4), "--sweep-m")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["M", "H", "G"]
    assert [int(r[0]) for r in rows[1:]] == [1, 2, 3]
    assert abs(float(rows[2][1]) - 0.5) < 1e-15
    assert abs(float(rows[3][2]) - 1) < 1e-15
    code, out, _ = run(capsys, "ff", "--n", "3", "--lambda", "0.4", "--m", "2")
    assert code == 0 and len(out.splitlines()) == 2


def test_hom(capsys):
    code, out, _ = run(capsys, "hom", "h", "--n", "6", "--m", "2",
                       "--lambda", "1.5707963267948966j", "--eta", "0.52359877559829882j")
    assert code == 0
    assert abs(value(out) * 7436 - 1287) < 1e-6
    code, out, _ = run(capsys, "hom", "z", "--n", "1", "--lambda", "0.3", "--eta", "0.2", "--bits", "100")
    assert abs(value(out) - math.sinh(0.4)) < 1e-15
    assert json.loads(out)["precision_bits"] == 100


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "--n", "3", "--seed", "4")
    d = json.loads(out)
    assert code == 0 and d["count"] == 7 and len(d["H"]) == 3
    assert abs(complex(*d["G"][-1]) - 1) < 1e-12


def test_sweep_ff_crosses_half_near_three_quarters(capsys):
    code, out, _ = run(capsys, "sweep", "ff", "--n", "200", "--lambda", str(math.pi / 3))
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 200 and list(rows[0]) == ["n", "m", "lambda_re", "lambda_im", "G", "H"]
    crossing = next(int(r["m"]) for r in rows if float(r["G"]) >= 0.5)
    assert abs(crossing - 150) <= 2


def test_sweep_ordering_by_grid_index(capsys):
    _, out, _ = run(capsys, "sweep", "ff", "--n", "4", "--lambda-grid", "0.2", "0.6", "3", "--m-start", "2")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [(float(r["lambda_re"]), int(r["m"])) for r in rows] == [
        (lam, m) for lam in (0.2, 0.4, 0.6) for m in (2, 3, 4)]


def test_sweep_hom_ice_point_refined_counts(capsys):
    code, out, _ = run(capsys, "sweep", "hom", "--n", "6", "--lambda", "1.5707963267948966j",
                       "--eta", "0.52359877559829882j")
    rows = list(csv.DictReader(io.StringIO(out)))
    h = [complex(r["H"]).real * 7436 for r in rows]
    assert [round(x) for x in h] == [429, 1287, 2002, 2002, 1287, 429]


def test_sweep_empty_grid(capsys):
    code, out, _ = run(capsys, "sweep", "ff", "--n", "5", "--lambda-grid", "0.1", "0.2", "0")
    assert code == 0 and out == "n,m,lambda_re,lambda_im,G,H\n"
    code, out, _ = run(capsys, "sweep", "ff", "--n", "5", "--lambda", "0.1", "--m-start", "4", "--m-stop", "3")
    assert code == 0 and out == "n,m,lambda_re,lambda_im,G,H\n"


def test_selftest_passes_and_is_deterministic(capsys):
    code, out, _ = run(capsys, "selftest", "--seed", "3")
    assert code == 0
    assert out.splitlines()[-1] == "all checks passed"
    assert all(line.startswith("PASS") for line in out.splitlines()[:-1])
    _, again, _ = run(capsys, "selftest", "--seed", "3")
    assert again == out


@pytest.mark.skipif(shutil.which("sixv") is None, reason="console script not installed")
def test_console_script():
    a = subprocess.run(["sixv", "z", "--n", "2", "--seed", "1"], capture_output=True, text=True)
    b = subprocess.run([sys.executable, "-m", "sixvertex.cli", "z", "--n", "2", "--seed", "1"],
                       capture_output=True, text=True)
    assert a.returncode == 0 and a.stdout == b.stdout
