import json

import numpy as np
import pytest

from steklov.cli import main
from steklov.measures import CircleMeasure


@pytest.fixture(scope="module")
def construct_dirs(tmp_path_factory):
    """One plotted run plus two plotless reruns of the same construction."""
    base = tmp_path_factory.mktemp("construct")
    dirs = [base / name for name in ("a", "b", "c")]
    assert main(["construct", "--n", "128", "--out", str(dirs[0])]) == 0
    for d in dirs[1:]:
        assert main(["construct", "--n", "128", "--no-plot", "--out", str(d)]) == 0
    return dirs


def test_construct_writes_report_files(construct_dirs):
    plotted = construct_dirs[0]
    for name in ("construction.json", "sigma_density.csv", "sigma_measure.json"):
        assert (plotted / name).exists()
    assert (plotted / "construction.png").stat().st_size > 1000
    doc = json.loads((plotted / "construction.json").read_text())
    assert doc["config"]["command"] == "construct"
    assert doc["conditions"]["all_pass"] is True
    assert doc["value_at_one"] == pytest.approx(doc["value_per_sqrt_n"] * np.sqrt(128))
    assert doc["steklov_margin"] >= 0.0
    header = (plotted / "sigma_density.csv").read_text().splitlines()[0]
    assert header == "theta,density"
    sigma = CircleMeasure.from_json((plotted / "sigma_measure.json").read_text())
    assert sigma.total_mass() == pytest.approx(1.0, rel=1e-3)


def test_no_plot_skips_the_figure(construct_dirs):
    assert not (construct_dirs[1] / "construction.png").exists()
    assert (construct_dirs[1] / "construction.json").exists()


def test_reruns_are_byte_identical(construct_dirs):
    _, b, c = construct_dirs
    for name in ("construction.json", "sigma_density.csv", "sigma_measure.json"):
        assert (b / name).read_bytes() == (c / name).read_bytes()


def test_construct_exit_codes(tmp_path, capsys):
    assert main(["construct", "--out", str(tmp_path / "x")]) == 2  # missing --n
    assert main(["construct", "--n", "128", "--delta", "abc", "--out", str(tmp_path / "x")]) == 2
    assert main(["construct", "--n", "3", "--out", str(tmp_path / "x")]) == 2  # n too small
    capsys.readouterr()
    # an unreachable floor still writes the outputs, then reports failure
    out = tmp_path / "failed"
    assert main(["construct", "--n", "128", "--delta", "0.9", "--no-plot", "--out", str(out)]) == 3
    assert "verification failed" in capsys.readouterr().err
    assert (out / "construction.json").exists()
    doc = json.loads((out / "construction.json").read_text())
    assert doc["conditions"]["cond4_pass"] is False


def test_config_file_merging(tmp_path):
    config = tmp_path / "bounds.json"
    config.write_text(json.dumps({"n": 8, "delta": 1e-3, "mass": "1,10"}))
    out = tmp_path / "merged"
    assert main(["bounds", "--config", str(config), "--mass", "100", "--no-plot", "--out", str(out)]) == 0
    rows = (out / "bounds.csv").read_text().splitlines()
    assert len(rows) == 2  # header + the flag-supplied mass, which wins
    assert rows[1].split(",")[2] == "100"

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 8, "bogus": 1}))
    assert main(["bounds", "--config", str(bad), "--out", str(out)]) == 2
    bad.write_text(json.dumps([1, 2]))
    assert main(["bounds", "--config", str(bad), "--out", str(out)]) == 2
    assert main(["bounds", "--config", str(tmp_path / "missing.json"), "--out", str(out)]) == 2


def test_bounds_family_saturates(tmp_path):
    out = tmp_path / "bounds"
    assert main(["bounds", "--n", "8", "--delta", "1e-3", "--out", str(out)]) == 0
    rows = [line.split(",") for line in (out / "bounds.csv").read_text().splitlines()[1:]]
    ratios = [float(r[5]) for r in rows]
    assert ratios == sorted(ratios)
    assert ratios[-1] >= 0.999
    assert (out / "bounds.png").exists()


def test_sweep_single_degree(tmp_path):
    out = tmp_path / "sweep"
    assert main(["sweep", "--n", "128", "--no-plot", "--out", str(out)]) == 0
    rows = (out / "sweep.csv").read_text().splitlines()
    assert rows[0] == "n,value,value_per_sqrt_n,c_n,certified_delta,all_pass"
    assert len(rows) == 2
    assert rows[1].endswith("true")  # booleans export JSON-style


def test_search_reports_trace_and_measure(tmp_path):
    out = tmp_path / "search"
    argv = ["search", "--n", "4", "--delta", "0.5", "--atoms", "2",
            "--iterations", "5", "--seed", "3", "--out", str(out)]
    assert main(argv) == 0
    doc = json.loads((out / "search.json").read_text())
    assert 0.0 < doc["ratio"] <= 1.0
    assert doc["value"] <= doc["bound"]
    assert len(doc["atoms"]) == 2
    mu = CircleMeasure.from_json((out / "search_measure.json").read_text())
    assert mu.total_mass() == pytest.approx(1.0, rel=1e-9)
    trace_rows = (out / "search.csv").read_text().splitlines()[1:]
    assert len(trace_rows) >= 1
    assert (out / "search.png").exists()
    assert main(["search", "--n", "4", "--out", str(out)]) == 2  # missing delta


def test_entropy_subcommand(tmp_path):
    out = tmp_path / "entropy"
    assert main(["entropy", "--n", "128,256", "--out", str(out)]) == 0
    doc = json.loads((out / "entropy.json").read_text())
    assert doc["config"]["rho"] == 1.0  # the documented default for this command
    assert doc["envelope_constant"] <= 0.0
    rows = (out / "entropy.csv").read_text().splitlines()
    assert rows[0] == "n,entropy,log_n,sup_norm"
    assert len(rows) == 3
    assert (out / "entropy.png").exists()
    assert main(["entropy", "--out", str(out)]) == 2  # missing --n


def test_appendix_subcommand(tmp_path):
    out = tmp_path / "appendix"
    argv = ["appendix", "--n", "64", "--beta", "0.3", "--degrees", "32", "--out", str(out)]
    assert main(argv) == 0
    rows = (out / "appendix_bounds.csv").read_text().splitlines()
    assert rows[0] == "lemma,n,beta,ratio_min,ratio_max"
    assert len(rows) > 4
    phase = (out / "phase_bound.csv").read_text().splitlines()
    assert phase[0] == "m,max_phase_ratio"
    m, ratio = phase[1].split(",")
    assert int(m) == 32 and float(ratio) < 0.30
    assert json.loads((out / "appendix.json").read_text())["phase_rows"]
    assert (out / "appendix.png").exists()
    assert (out / "phase_bound.png").exists()
