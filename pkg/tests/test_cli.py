import json
import math

import pytest

from infophys import cli
from infophys.commands import DEFAULTS, SUBCOMMANDS

BSC_DELTA_SIGMA = 0.080644209690961443756


def run(tmp_path, *argv, config=None):
    args = list(argv) + ["--out", str(tmp_path)]
    if config is not None:
        path = tmp_path / "config.json"
        path.write_text(json.dumps(config))
        args += ["--config", str(path)]
    return cli.main(args)


def read(tmp_path, name):
    return json.loads((tmp_path / name).read_text())


@pytest.mark.parametrize("sub", [s for s in SUBCOMMANDS if s != "verify-all"])
def test_every_subcommand_passes_on_defaults(tmp_path, sub):
    assert run(tmp_path, sub) == 0
    report = read(tmp_path, sub.replace("-", "_") + ".json")
    assert report["passed"]
    assert report["config"]["params"] == json.loads(json.dumps(DEFAULTS[sub]))
    assert "identity" in report["config"]["tolerances"]
    for name in report.get("curve_files", {}).values():
        header = (tmp_path / name).read_text().splitlines()[0]
        assert header.split(",")[0] in ("lambda", "t", "k")


def test_broadcast_bsc_example(tmp_path):
    assert run(tmp_path, "broadcast-bsc", config={
        "params": {"energy_e0": 1.0, "beta0": 1.0, "beta1": 0.5}}) == 0
    out = read(tmp_path, "broadcast_bsc.json")["outputs"]
    assert out["delta_sigma"] == pytest.approx(BSC_DELTA_SIGMA, abs=1e-14)
    assert out["quadrature_residual"] < 1e-8


def test_exponents_example(tmp_path):
    assert run(tmp_path, "exponents", config={"params": {"grid": 101}}) == 0
    lines = (tmp_path / "exponents_exponents.csv").read_text().splitlines()
    assert lines[0] == "lambda,e0,e1,lnZ"
    assert len(lines) == 102
    out = read(tmp_path, "exponents.json")["outputs"]
    assert {"area0", "area1", "chernoff_lambda"} <= set(out)


def test_bits_rescales_entropic_outputs_only(tmp_path):
    assert run(tmp_path / "n", "exponents") == 0
    assert run(tmp_path / "b", "exponents", "--units", "bits") == 0
    n = read(tmp_path / "n", "exponents.json")
    b = read(tmp_path / "b", "exponents.json")
    assert b["units"] == "bits"
    assert b["outputs"]["d01"] == pytest.approx(n["outputs"]["d01"] / math.log(2), rel=1e-15)
    assert b["outputs"]["chernoff_lambda"] == n["outputs"]["chernoff_lambda"]
    assert b["checks"] == n["checks"]
    row_n = (tmp_path / "n" / "exponents_exponents.csv").read_text().splitlines()[-1].split(",")
    row_b = (tmp_path / "b" / "exponents_exponents.csv").read_text().splitlines()[-1].split(",")
    assert row_b[0] == row_n[0]
    assert float(row_b[1]) == pytest.approx(float(row_n[1]) / math.log(2), rel=1e-15)


def test_csv_format(tmp_path):
    assert run(tmp_path, "ensemble", "--format", "csv") == 0
    header, row = (tmp_path / "ensemble.csv").read_text().splitlines()
    assert len(header.split(",")) == len(row.split(","))
    assert "outputs_entropy" in header.split(",")
    assert not (tmp_path / "ensemble.json").exists()


def test_flags_override_config(tmp_path):
    assert run(tmp_path, "ensemble", "--units", "bits",
               config={"units": "nats", "format": "json"}) == 0
    assert read(tmp_path, "ensemble.json")["units"] == "bits"


@pytest.mark.parametrize("config", [
    {"unknown": 1},
    {"params": {"betaa": 1.0}},
    {"tolerances": {"identity": -1.0}},
    {"tolerances": {"nope": 1.0}},
    {"subcommand": "gibbs"},
    {"units": "furlongs"},
    [1, 2],
])
def test_invalid_config_exit_1(tmp_path, config, capsys):
    assert run(tmp_path, "ensemble", config=config) == 1
    assert "invalid" in capsys.readouterr().err


def test_unreadable_config_exit_1(tmp_path):
    assert cli.main(["ensemble", "--config", str(tmp_path / "missing.json")]) == 1


def test_bad_argument_exit_1(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["nope"])
    assert info.value.code == 1


def test_domain_error_exit_2(tmp_path, capsys):
    assert run(tmp_path, "ensemble", config={"params": {"beta": -1.0}}) == 2
    assert "domain error" in capsys.readouterr().err
    assert run(tmp_path, "broadcast-bsc", config={"params": {"beta1": 2.0}}) == 2


def test_verify_all_violation_exit_3(tmp_path, capsys):
    # an impossible tolerance turns a passing check into a violation
    code = run(tmp_path, "verify-all", config={"tolerances": {"oracle_slope": 1e-9}})
    assert code == 3
    assert "exponents:oracle_slope_gap_largest_n" in capsys.readouterr().err
    summary = read(tmp_path, "verify_all.json")
    assert not summary["passed"]
    assert any(name.startswith("exponents:") for name in summary["failed_checks"])


def test_verify_all_is_deterministic(tmp_path):
    assert run(tmp_path / "a", "verify-all") == 0
    assert run(tmp_path / "b", "verify-all") == 0
    files = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert "verify_all.json" in files
    for name in files:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_seed_changes_only_sweeps(tmp_path):
    assert run(tmp_path / "a", "verify-all", "--seed", "1") == 0
    assert run(tmp_path / "b", "verify-all", "--seed", "2") == 0
    a = read(tmp_path / "a", "verify_sweeps.json")
    b = read(tmp_path / "b", "verify_sweeps.json")
    assert a["config"]["seed"] == 1 and b["config"]["seed"] == 2
    assert a["checks"] != b["checks"]
    assert read(tmp_path / "a", "verify_gibbs.json")["outputs"] == \
        read(tmp_path / "b", "verify_gibbs.json")["outputs"]


def test_bundled_config_matches_defaults():
    from infophys.commands import TOLERANCES

    cfg = cli.default_config()
    assert cfg["params"] == json.loads(json.dumps(DEFAULTS))
    assert cfg["tolerances"] == TOLERANCES
