import json
import math

import pytest

from hyperlab.errors import UsageError
from hyperlab.main import (
    EXIT_DEGENERATE,
    EXIT_FAILED,
    EXIT_OK,
    EXIT_USAGE,
    case_file_name,
    main,
    parse_parameters,
)

SMALL_CONFIG = """
[sampling]
chart_samples = 100
separation_samples = 10
classify_seeds = 5

[contraction]
r_values = [100.0, 1000.0, 10000.0]
flat_points = 5
workers = 2
"""


@pytest.fixture(autouse=True)
def config_home(tmp_path, monkeypatch):
    "No user configuration is picked up"
    monkeypatch.setenv("XDG_CONFIG_HOME", str(tmp_path))
    return tmp_path


@pytest.fixture
def small_config(tmp_path):
    path = tmp_path / "small.toml"
    path.write_text(SMALL_CONFIG)
    return str(path)


def run_json(capsys, argv):
    code = main(argv)
    return code, json.loads(capsys.readouterr().out)


def test_classify_second_order(capsys):
    code, document = run_json(capsys, ["classify", "--second", "0", "0", "0", "0", "0", "1"])
    assert code == EXIT_OK
    assert document["class"] == "SPH"
    assert document["word"]


def test_classify_first_order(capsys):
    code, document = run_json(capsys, ["classify", "--first", "1", "0", "1"])
    assert code == EXIT_OK
    assert document["class"] == "HO-type"
    assert document["invariants"]["a2+b2-c2"] == 0


def test_classify_close_roots(capsys):
    "Two roots 1e-5 apart are still distinct"
    argv = ["classify", "--second", "0", "0", "1", "0", "0", "-0.00001"]
    code, document = run_json(capsys, argv)
    assert code == EXIT_OK
    assert document["class"] == "H"
    assert document["params"]["k2"] == pytest.approx(1e-5)


def test_casimir_is_degenerate():
    assert main(["classify", "--second", "1", "0", "1", "0", "0", "-1"]) == EXIT_DEGENERATE


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["classify", "--second", "0", "0", "x", "0", "0", "1"],
        ["classify", "--first", "1", "0", "1", "--gamma", "2"],
        ["elliptic", "0.5", "2"],
        ["contract", "H2/XYZ->E2/polar"],
        ["grid", "H2/XYZ", "10", "10", "unused.csv"],
        ["verify", "charts", "--chart", "H2/SPH", "--tol", "0"],
    ],
)
def test_usage_errors(argv):
    assert main(argv) == EXIT_USAGE


def test_elliptic(capsys):
    code, document = run_json(capsys, ["elliptic", "0.5", "0"])
    assert code == EXIT_OK
    assert document["sn"] == pytest.approx(math.sin(0.5))
    assert document["dn"] == pytest.approx(1)
    assert document["K"] == pytest.approx(math.pi / 2)
    assert document["Kprime"] is None


def test_grid(tmp_path):
    output = tmp_path / "ho.csv"
    assert main(["grid", "H2/HO", "20", "20", str(output)]) == EXIT_OK
    lines = output.read_text().splitlines()
    assert lines[0] == "xi1,xi2,u0,u1,u2,covered"
    assert len(lines) == 401


def test_grid_with_parameters(tmp_path):
    output = tmp_path / "ep.csv"
    assert main(["grid", "H2/EP", "4", "5", str(output), "--param", "gamma=2"]) == EXIT_OK
    assert len(output.read_text().splitlines()) == 21


def test_negative_contraction(capsys, small_config):
    code, document = run_json(capsys, ["-c", small_config, "contract", "H~2/EQ-IIa", "--json"])
    assert code == EXIT_OK
    [case] = document["cases"]
    assert case["status"] == "no-contraction"
    assert document["pass"] is True


def test_contraction_report_directory(tmp_path, small_config):
    out = tmp_path / "report"
    argv = ["-c", small_config, "contract", "H2/SPH->E2/polar", "--out", str(out)]
    assert main(argv) == EXIT_OK
    report = json.loads((out / "report.json").read_text())
    assert report["pass"] is True
    assert (out / case_file_name("H2/SPH->E2/polar")).is_file()


def test_verify(capsys, small_config):
    argv = ["-c", small_config, "verify", "algebra", "--class", "SH", "--c", "1", "--json"]
    code, document = run_json(capsys, argv)
    assert code == EXIT_OK
    names = {check["name"] for check in document["checks"]}
    assert "classify:SH[c=1]:params" in names


def test_verify_writes_report(tmp_path, small_config):
    out = tmp_path / "separation.json"
    argv = ["-c", small_config, "verify", "separation", "--chart", "H2/SH", "--out", str(out)]
    assert main(argv) == EXIT_OK
    assert json.loads(out.read_text())["suite"] == "separation"


def test_validate_config(capsys, small_config, tmp_path):
    assert main(["-v", "-c", small_config]) == EXIT_OK
    assert "valid" in capsys.readouterr().out
    broken = tmp_path / "broken.toml"
    broken.write_text("[sampling]\nsamples = 3\n")
    assert main(["-v", "-c", str(broken)]) == EXIT_FAILED


def test_default_config_file(config_home, capsys):
    (config_home / "hyperlab.toml").write_text("[tolerances]\nreplay = 0\n")
    assert main(["-v"]) == EXIT_FAILED


def test_catalog(capsys):
    code, document = run_json(capsys, ["catalog", "cases", "--json"])
    assert code == EXIT_OK
    assert set(document) == {"cases"}
    assert any(not case["positive"] for case in document["cases"])


def test_parse_parameters():
    params = parse_parameters(["gamma=2"], ["--k2", "1/2", "--c=0.5"])
    assert params["gamma"] == 2
    assert {name: float(value) for name, value in params.items()} == {
        "gamma": 2.0,
        "k2": 0.5,
        "c": 0.5,
    }
    with pytest.raises(UsageError):
        parse_parameters(["gamma"], [])
    with pytest.raises(UsageError):
        parse_parameters([], ["--gamma"])
