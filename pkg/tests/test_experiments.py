import json
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from fewlab.core.errors import ConfigError
from fewlab.core.experiment_event import ExperimentEvent
from fewlab.core.experiment_listener import ExperimentListener
from fewlab.geometry import Support
from fewlab.counting import CountOptions, count_zeros
from fewlab.fewnomial import sample_gaussian
from fewlab.defaults import (
    CATALOG,
    CSV_COLUMNS,
    EXPERIMENT_NAMES,
    ExperimentConfig,
    ExperimentRunner,
    ReportWriter,
    SupportSpec,
    count_samples,
    invariance_verdict,
    main,
    segment_supports,
)
from fewlab.defaults.experiment_controller_cli import ExperimentControllerCLI


class Recorder(ExperimentListener):
    def __init__(self):
        super().__init__()
        self.events = []

    def on_event(self, e, args=None):
        self.events.append(e)


def run(config: ExperimentConfig) -> tuple:
    runner = ExperimentRunner()
    recorder = Recorder()
    writer = ReportWriter(plots=config.plots)
    runner.add_listener([recorder, writer])
    return runner.run(config), recorder, writer


def cli(argv) -> int:
    return ExperimentControllerCLI(ExperimentRunner()).run(argv)


def test_catalog_lists_every_experiment():
    assert set(CATALOG) == set(EXPERIMENT_NAMES)
    assert len(ExperimentRunner().describe()) == len(EXPERIMENT_NAMES)


def test_config_parsing():
    config = ExperimentConfig.from_json({
        "experiment": "mixed-bound-sweep", "samples": 10, "seed": 3,
        "supports": {"kind": "random-integer", "n": 2, "sizes": [3, 4]},
        "count": {"max_radius": 30.0}, "quadrature": {"order": 6},
    })
    assert config.supports.sizes == (3, 4)
    assert config.count.max_radius == 30.0
    assert config.quadrature.order == 6
    assert "workers" not in config.echo()


@pytest.mark.parametrize("obj", [
    {"samples": 10},
    {"experiment": "no-such-experiment"},
    {"experiment": "example-2n", "samples": 0},
    {"experiment": "example-2n", "color": "red"},
    {"experiment": "example-2n", "count": {"depth": 3}},
    {"experiment": "example-2n", "supports": {"kind": "hexagons"}},
    {"experiment": "example-2n", "seed": 2 ** 64},
])
def test_invalid_configs(obj):
    with pytest.raises(ConfigError):
        ExperimentConfig.from_json(obj)


def test_support_spec_builds_general_position_supports():
    spec = SupportSpec(n=2, min_size=3, max_size=4, box=5)
    supports = spec.build(np.random.default_rng(0))
    assert len(supports) == 2
    assert all(3 <= len(s) <= 4 for s in supports)
    explicit = SupportSpec.from_json({"kind": "explicit", "points": [[[0], [2]]]})
    assert explicit.n == 1
    assert explicit.build(None) == (Support.of([(0,), (2,)]),)


def test_counts_do_not_depend_on_workers():
    supports = segment_supports(2)
    one = count_samples(supports, 40, 5, "s", CountOptions(), workers=1)
    two = count_samples(supports, 40, 5, "s", CountOptions(), workers=2)
    assert one == two
    assert one.kept + round(one.degenerate_fraction * one.samples) == 40


def test_example_run_writes_reports(tmp_path):
    config = ExperimentConfig("example-2n", samples=3000, seed=7, output_dir=str(tmp_path),
                              params={"n_values": [1, 2], "kinematic_n": [1]})
    report, recorder, writer = run(config)
    assert recorder.events[0] is ExperimentEvent.BEGIN
    assert recorder.events[-1] is ExperimentEvent.END
    assert [row["section"] for row in report.rows] == ["n=1", "n=2", "kinematic n=1"]
    assert report.passed
    assert (tmp_path / "report.json").exists()
    assert (tmp_path / "timing.json").exists()
    assert (tmp_path / "example-2n.svg").exists()

    with open(tmp_path / "report.csv", encoding="utf-8") as f:
        assert f.readline().strip() == "# fewnomial-lab report schema v1"
    df = pd.read_csv(tmp_path / "report.csv", skiprows=1)
    assert list(df.columns) == list(CSV_COLUMNS)
    assert len(df) == 3

    saved = json.loads((tmp_path / "report.json").read_text(encoding="utf-8"))
    assert saved["seed"] == 7
    assert saved["config"]["samples"] == 3000
    assert all("wall_time" not in row for row in saved["rows"])


def test_report_json_is_reproducible(tmp_path):
    params = {"n_values": [2], "kinematic_n": []}
    first = ExperimentConfig("example-2n", samples=300, seed=11, workers=1,
                             output_dir=str(tmp_path / "a"), plots=False, params=params)
    second = ExperimentConfig("example-2n", samples=300, seed=11, workers=2,
                              output_dir=str(tmp_path / "b"), plots=False, params=params)
    run(first)
    run(second)
    assert (tmp_path / "a" / "report.json").read_bytes() == \
        (tmp_path / "b" / "report.json").read_bytes()


def test_unmixed_comparison_trend(tmp_path):
    report, _, _ = run(ExperimentConfig("unmixed-compare", output_dir=str(tmp_path), plots=False))
    assert report.passed
    assert report.rows[-1]["section"] == "trend"


def test_list_experiments(capsys):
    assert cli(["list-experiments"]) == 0
    out = capsys.readouterr().out
    for name in EXPERIMENT_NAMES:
        assert name in out


def test_cli_run_passes(tmp_path, monkeypatch):
    monkeypatch.delenv("FEWNOMIAL_LAB_SEED", raising=False)
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"experiment": "unmixed-compare", "plots": False}))
    out = tmp_path / "out"
    assert cli(["run", "--config", str(path), "--out", str(out), "--quiet"]) == 0
    assert json.loads((out / "report.json").read_text())["seed"] == 0


def test_cli_run_reports_failed_verdicts(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"experiment": "unmixed-compare", "plots": False,
                                "params": {"pairs": [[3, 5], [1, 3]]}}))
    assert cli(["run", "--config", str(path), "--out", str(tmp_path / "out")]) == 1


def test_cli_seed_precedence(tmp_path, monkeypatch):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"experiment": "unmixed-compare", "plots": False}))
    monkeypatch.setenv("FEWNOMIAL_LAB_SEED", "42")
    assert cli(["run", "--config", str(path), "--out", str(tmp_path / "env")]) == 0
    assert json.loads((tmp_path / "env" / "report.json").read_text())["seed"] == 42
    assert cli(["run", "--config", str(path), "--seed", "5", "--out", str(tmp_path / "flag")]) == 0
    assert json.loads((tmp_path / "flag" / "report.json").read_text())["seed"] == 5
    path.write_text(json.dumps({"experiment": "unmixed-compare", "plots": False, "seed": 9}))
    assert cli(["run", "--config", str(path), "--out", str(tmp_path / "cfg")]) == 0
    assert json.loads((tmp_path / "cfg" / "report.json").read_text())["seed"] == 9


def test_cli_rejects_bad_input(tmp_path, monkeypatch, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"experiment": "example-2n", "samples": 0}))
    assert cli(["run", "--config", str(bad)]) == 2
    assert cli(["run", "--config", str(tmp_path / "missing.json")]) == 2
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert cli(["run", "--config", str(broken)]) == 2
    monkeypatch.setenv("FEWNOMIAL_LAB_SEED", "abc")
    assert cli(["run", "--experiment", "unmixed-compare", "--out", str(tmp_path / "o")]) == 2
    assert "fewnomial-lab:" in capsys.readouterr().err


def test_cli_replay(tmp_path, capsys):
    system = sample_gaussian(segment_supports(2), seed=3)
    path = tmp_path / "sys.json"
    path.write_text(json.dumps(system.to_json()))
    assert cli(["replay", "--system", str(path)]) == 0
    printed = json.loads(capsys.readouterr().out)
    assert printed["result"]["count"] == count_zeros(system).count

    path.write_text(json.dumps({"system": system.to_json(), "count": {"max_radius": 20.0}}))
    assert cli(["replay", "--system", str(path)]) == 0
    assert json.loads(capsys.readouterr().out)["count_options"]["max_radius"] == 20.0

    path.write_text(json.dumps({"coeffs": [[1.0]]}))
    assert cli(["replay", "--system", str(path)]) == 2


def test_main_exits_with_the_status():
    with pytest.raises(SystemExit) as exit_info:
        main(["list-experiments"])
    assert exit_info.value.code == 0


def test_invariance_verdict_needs_comparable_samples():
    untrusted = [((1, False), (1, True))] * 4
    assert not invariance_verdict(untrusted)["passed"]
    assert not invariance_verdict([])["passed"]
    agreeing = [((2, True), (2, True))] * 3 + [((0, True), (1, False))]
    verdict = invariance_verdict(agreeing)
    assert verdict["passed"]
    assert verdict["certified_fraction"] == 0.75
    assert not invariance_verdict([((2, True), (0, True))] * 4)["passed"]


def test_invariance_run(tmp_path):
    config = ExperimentConfig("invariance", seed=3, configurations=8,
                              output_dir=str(tmp_path), plots=False)
    report, _, _ = run(config)
    assert [row["section"] for row in report.rows] == \
        ["translation", "linear", "linear-real", "scaling"]
    assert report.passed


def test_unmixed_rows_check_the_bound_ordering(tmp_path):
    config = ExperimentConfig("unmixed-compare", output_dir=str(tmp_path), plots=False,
                              params={"pairs": [[5, 7]]})
    report, _, _ = run(config)
    row = report.rows[0]
    assert row["prop_unmixed"] > row["betc_unmixed"]
    assert row["passed"]
    config = ExperimentConfig("unmixed-compare", output_dir=str(tmp_path), plots=False,
                              params={"pairs": [[2, 4]], "weaker_from": 1})
    report, _, _ = run(config)
    assert not report.rows[0]["passed"]
    assert not report.passed


CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def test_shipped_configs_load():
    paths = sorted(CONFIGS.glob("*.json"))
    assert len(paths) == 10
    loaded = {p.stem: ExperimentConfig.load(str(p)) for p in paths}
    assert {c.experiment for c in loaded.values()} == set(EXPERIMENT_NAMES)
    assert loaded["acceptance-1-example-2n"].samples == 100_000
    assert loaded["acceptance-2-ek-oracle"].samples == 10_000
    assert loaded["acceptance-2-ek-oracle"].configurations == 20
    assert loaded["acceptance-3-mixed-bound"].configurations == 30
    assert loaded["acceptance-4-cross-validation"].params["kinematic_configurations"] == 10
    assert loaded["acceptance-5-6-cone-identities"].params["det_samples"] == 1_000_000
    assert loaded["acceptance-7-invariance"].configurations == 100
    assert loaded["acceptance-8-concentration"].params["multipliers"] == [1, 2, 4, 8]
    assert all(c.seed is not None for c in loaded.values() if c.experiment != "unmixed-compare")
