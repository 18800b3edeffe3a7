import json

import pytest

from recurlab.lab.cli import main, run_experiment
from recurlab.lab.config import ConfigError, ExperimentConfig, load_config, parse_assignments, parse_config_text
from recurlab.lab.experiments import REGISTRY

from oracles import fibonacci

REGISTERED = (
    "closest-returns three-gap five-distance rec-rate-vs-type golden-cylinder-bound doubling-baseline "
    "manneville-exponent manneville-rbar iet-hitting constructive-iet-logn conjecture-probe kac-check"
).split()


# config


def test_config_parsing():
    cfg = parse_config_text("# comment\n\nexperiment = mos-lemma\nseed = 4\nN = 1000\nC = 2.5\n")
    assert cfg.experiment == "mos-lemma" and cfg.seed == 4 and cfg.precision == 256
    assert cfg.params == {"N": "1000", "C": "2.5"}
    assert cfg.get("C", "1", float) == 2.5


@pytest.mark.parametrize(
    "text",
    [
        "experiment = a\nN = 1\nN = 2\n",
        "experiment = a\nnot an assignment\n",
        "experiment = a\n = 3\n",
        "N = 1\n",
        "experiment = a\nseed = x\n",
    ],
)
def test_config_errors(text):
    with pytest.raises(ConfigError):
        parse_config_text(text)


def test_config_experiment_mismatch():
    with pytest.raises(ConfigError):
        parse_config_text("experiment = a\n", experiment="b")


def test_config_round_trip(tmp_path):
    cfg = ExperimentConfig("kac-check", {"arcs": "3", "range": "0.9;1.1"}, seed=9, out="x")
    (tmp_path / "c.txt").write_text(cfg.to_text())
    assert load_config(tmp_path / "c.txt") == cfg
    assert cfg.floats("range", "") == [0.9, 1.1]


def test_overrides_and_assignments():
    cfg = ExperimentConfig("kac-check", {"arcs": "3"})
    new = cfg.with_overrides(seed=5, params=parse_assignments(["arcs=4", "samples = 10"]))
    assert new.seed == 5 and new.params == {"arcs": "4", "samples": "10"}
    with pytest.raises(ConfigError):
        parse_assignments(["arcs"])


def test_seeded_generators_are_reproducible():
    a = [g.random() for g in ExperimentConfig("x", seed=3).rngs(4, stream=2)]
    b = [g.random() for g in ExperimentConfig("x", seed=3).rngs(4, stream=2)]
    assert a == b and len(set(a)) == 4


# registry


def test_registered_experiments_present():
    assert set(REGISTERED) <= set(REGISTRY)


def test_every_criterion_has_exactly_one_experiment():
    owners = {}
    for name, exp in REGISTRY.items():
        for c in exp.criteria:
            owners.setdefault(c, []).append(name)
    assert sorted(owners) == list(range(1, 17))
    assert all(len(v) == 1 for v in owners.values())


# command line


def test_list(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    assert all(name in out for name in REGISTERED)


def test_unknown_experiment_is_usage_error(capsys, tmp_path):
    assert main(["run", "no-such-experiment", "--out", str(tmp_path)]) == 1
    assert "unknown experiment" in capsys.readouterr().err


def test_unknown_key_is_usage_error(tmp_path):
    assert main(["run", "mos-lemma", "--out", str(tmp_path), "--set", "bogus=1"]) == 1


def test_bad_arguments_exit_one():
    with pytest.raises(SystemExit) as info:
        main(["run"])
    assert info.value.code == 1


def test_closest_returns_run(tmp_path, capsys):
    assert main(["run", "closest-returns", "--out", str(tmp_path)]) == 0
    assert "[closest-returns] criterion 1: PASS" in capsys.readouterr().out
    records = [json.loads(line) for line in (tmp_path / "summary.jsonl").read_text().splitlines()]
    assert [r["criterion"] for r in records] == [1, 2, 3]
    for r in records:
        assert set(r) == {"experiment", "criterion", "measured", "threshold", "pass"} and r["pass"]
    rows = (tmp_path / "closest_returns.csv").read_text().splitlines()
    taus = [int(line.split(",")[1]) for line in rows[1:]]
    assert taus == fibonacci(len(taus)) and len(taus) >= 25


def test_config_file_run(tmp_path):
    cfg = tmp_path / "mos.txt"
    cfg.write_text(f"experiment = mos-lemma\nout = {tmp_path / 'run'}\nN = 10000\n")
    assert main(["run", "mos-lemma", "--config", str(cfg)]) == 0
    assert (tmp_path / "run" / "config.txt").read_text() == load_config(cfg).to_text()


def test_forced_failure_exits_two(tmp_path, capsys):
    assert main(["run", "mos-lemma", "--out", str(tmp_path), "--set", "slack=-1"]) == 2
    out = capsys.readouterr().out
    assert "criterion 16: FAIL" in out
    assert json.loads((tmp_path / "summary.jsonl").read_text())["pass"] is False


def test_outputs_are_byte_identical(tmp_path):
    for d in ("a", "b"):
        assert main(["run", "basic-bound", "--out", str(tmp_path / d), "--seed", "3"]) == 0
    # config.txt records the output directory, so only data files are compared
    files = sorted(p.name for p in (tmp_path / "a").iterdir() if p.suffix in (".csv", ".jsonl"))
    assert any(f.endswith(".csv") for f in files)
    for f in files:
        assert (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()


def test_run_experiment_api(tmp_path):
    results = run_experiment(ExperimentConfig("mos-lemma", out=str(tmp_path)), verbose=False)
    assert len(results) == 1 and results[0].criterion == 16 and results[0].passed


@pytest.mark.slow
def test_manneville_exponent_example(tmp_path):
    out = tmp_path / "m"
    code = main(["run", "manneville-exponent", "--out", str(out), "--seed", "7", "--set", "z=3"])
    record = json.loads((out / "summary.jsonl").read_text())
    beta = record["measured"]["3"]["median_beta"]
    assert 0.35 <= beta <= 0.65 and code == 0
