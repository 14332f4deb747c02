import json
import os

import pytest

import seriate
import seriate.main
from seriate.command import Command
from seriate.config import SeriateConfig


def fixture(*paths):
  """Return a path relative to tests/fixtures.
  """
  return os.path.join(os.path.dirname(__file__), 'fixtures', *paths)


@pytest.fixture(autouse=True)
def isolated_config(monkeypatch, tmp_path):
  """Keep the user's ~/.seriateconfig out of the commands."""
  monkeypatch.setattr(Command, 'config',
                      SeriateConfig(str(tmp_path / 'no.seriateconfig')))


def _lines(path):
  with open(path) as fd:
    return [int(line) for line in fd.read().split()]


def test_help_cmd(capfd):
  with pytest.raises(SystemExit):
    seriate.main._Main(["--help"])
  out, err = capfd.readouterr()
  assert "Usage: seriate" in out
  assert "Available commands" in out
  assert err == ""


def test_help_lists_common_commands(capfd):
  assert seriate.main._Main(["help"]) == 0
  out, _ = capfd.readouterr()
  assert "order" in out
  assert "experiment" in out


def test_unknown_command(capfd):
  assert seriate.main._Main(["sort"]) == 2
  _, err = capfd.readouterr()
  assert "'sort' is not a seriate command" in err


def test_version(capfd):
  assert seriate.main._Main(["version"]) == 0
  out, _ = capfd.readouterr()
  assert "seriate version %s" % seriate.__version__ in out


def test_order_spectral(capfd, tmp_path):
  out = str(tmp_path / "order.txt")
  assert seriate.main._Main(["order", fixture("path4.csv"), "--out", out]) == 0
  assert _lines(out) in ([1, 2, 3, 4], [4, 3, 2, 1])
  with open(out + ".json") as fd:
    report = json.load(fd)
  assert report["objective"] == pytest.approx(3.0)
  assert report["r_violations"] == 0
  assert report["method"] == "spectral"


def test_order_requires_out(capfd):
  with pytest.raises(SystemExit) as e:
    seriate.main._Main(["order", fixture("path4.csv")])
  assert e.value.code == 2


def test_order_missing_matrix(capfd, tmp_path):
  out = str(tmp_path / "order.txt")
  assert seriate.main._Main(
      ["order", fixture("no-such.csv"), "--out", out]) == 2
  _, err = capfd.readouterr()
  assert "error: in `order" in err
  assert not os.path.exists(out)


def test_order_asymmetric_matrix(capfd, tmp_path):
  out = str(tmp_path / "order.txt")
  assert seriate.main._Main(
      ["order", fixture("asymmetric.csv"), "--out", out]) == 2


def test_order_bad_constraints(capfd, tmp_path):
  out = str(tmp_path / "order.txt")
  assert seriate.main._Main(
      ["order", fixture("path4.csv"), "--out", out, "--method", "qp_semi",
       "--constraints", fixture("bad_constraints.txt")]) == 2
  _, err = capfd.readouterr()
  assert "after 2 4" in err


def test_evaluate(capfd):
  assert seriate.main._Main(
      ["evaluate", fixture("path4.csv"), fixture("truth4.txt"),
       "--truth", fixture("truth4.txt")]) == 0
  out, _ = capfd.readouterr()
  report = json.loads(out)
  assert report["objective"] == pytest.approx(3.0)
  assert report["tau"] == pytest.approx(1.0)
  assert report["r_violation_density"] == 0.0


def test_generate_then_order(capfd, tmp_path):
  matrix = str(tmp_path / "m.csv")
  truth = str(tmp_path / "truth.txt")
  constraints = str(tmp_path / "c.txt")
  events = str(tmp_path / "events.json")
  assert seriate.main._Main(
      ["generate", "pre-r", "-n", "7", "--out", matrix, "--truth", truth,
       "--constraints", constraints, "--p-frac", "0.3", "--seed", "3"]) == 0
  assert sorted(_lines(truth)) == list(range(1, 8))

  out = str(tmp_path / "order.txt")
  assert seriate.main._Main(
      ["--event-log=%s" % events, "order", matrix, "--out", out,
       "--method", "qp_semi", "--constraints", constraints,
       "--truth", truth, "--max-iters", "30", "--samples", "10"]) == 0
  assert sorted(_lines(out)) == list(range(1, 8))
  with open(out + ".json") as fd:
    report = json.load(fd)
  assert report["solver"]["config"]["max_iters"] == 30
  assert -1.0 <= report["tau"] <= 1.0
  with open(events) as fd:
    tasks = [json.loads(line)["task_name"] for line in fd]
  assert "command" in tasks
  assert "solve" in tasks


def test_experiment_bad_name(capfd, tmp_path):
  with pytest.raises(SystemExit) as e:
    seriate.main._Main(["experiment", "netflix", "--out", str(tmp_path)])
  assert e.value.code == 2


def test_experiment_ygen(capfd, tmp_path):
  out = tmp_path / "ygen"
  assert seriate.main._Main(
      ["experiment", "ygen", "--out", str(out), "--runs", "2", "-n", "6",
       "--p-ratios", "0.5,1", "--max-iters", "10", "--samples", "3"]) == 0
  for name in ("runs.csv", "aggregates.csv", "run.json"):
    assert (out / name).exists()
  with open(str(out / "run.json")) as fd:
    meta = json.load(fd)
  assert meta["rows"] == 4
  assert len(meta["run_seeds"]) == 2
  stdout, _ = capfd.readouterr()
  assert "ygen: 2 runs, 4 rows" in stdout
