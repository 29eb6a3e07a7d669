import json
import subprocess
import sys

import pytest

from hocohom import cli, workbench
from hocohom.report import Record, Report


def run(argv, capsys=None):
    report, code = cli.run(argv)
    return report, code


def test_dims_table(capsys):
    report, code = run(["dims", "--g", "1", "--s", "1", "--n", "0", "--qmax", "4"])
    assert code == 0
    row = next(r for r in report.tables["dims"] if r["q"] == 2)
    assert row["h1"] == 4
    out = capsys.readouterr().out
    assert "[dims]" in out and "PASS" in out


def test_fuchsian_g1s1():
    report, code = run(["fuchsian", "--fixture", "g1s1", "--qmax", "3"])
    assert code == 0
    row = next(r for r in report.tables["fuchsian"] if r["q"] == 2)
    assert row["J_q/J_q+1"] == 3


def test_finite_command(tmp_path):
    report, code = run(["finite", "--qmax", "3", "--out", str(tmp_path), "--format", "csv"])
    assert code == 0
    assert (tmp_path / "finite.json").exists() and (tmp_path / "finite_finite.csv").exists()


def test_input_error_exit_2(capsys):
    assert run(["dims", "--g", "0", "--s", "1"])[1] == 2
    assert run(["fuchsian", "--fixture", "nope"])[1] == 2
    assert run(["finite", "--fixture", "g1s1"])[1] == 2
    assert "error:" in capsys.readouterr().err


def test_usage_error_exit_2():
    with pytest.raises(SystemExit) as e:
        cli.run(["bogus"])
    assert e.value.code == 2


def test_resource_exit_3():
    assert run(["surface", "--g", "3", "--qmax", "8"])[1] == 3


def test_failing_record_exit_1(monkeypatch):
    def failing(config):
        rep = Report("dims", config)
        rep.records.append(Record.equality("forced", "1 = 2", 1, 2))
        return rep

    monkeypatch.setitem(cli.RUNNERS, "dims", failing)
    assert run(["dims"])[1] == 1


def test_config_file(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"qmax": 2, "g": 2, "s": 1}), encoding="utf-8")
    report, code = run(["dims", "--config", str(cfg), "--n", "2"])
    assert code == 0
    assert {r["q"] for r in report.tables["dims"]} == {1, 2}
    assert {(r["g"], r["s"], r["n"]) for r in report.tables["dims"]} == {(2, 1, 2)}
    bad = tmp_path / "bad.json"
    bad.write_text("[1]", encoding="utf-8")
    assert run(["dims", "--config", str(bad)])[1] == 2


def test_byte_identical_runs(tmp_path):
    for sub in ("a", "b"):
        assert run(["fuchsian", "--qmax", "2", "--threads", "2", "--out", str(tmp_path / sub)])[1] == 0
    assert (tmp_path / "a" / "fuchsian.json").read_bytes() == (tmp_path / "b" / "fuchsian.json").read_bytes()


def test_threads_do_not_change_output():
    one = workbench.run_finite({"qmax": 3, "threads": 1})
    four = workbench.run_finite({"qmax": 3, "threads": 4})
    assert [r.as_dict() for r in one.records] == [r.as_dict() for r in four.records]


def test_all_is_union_of_commands():
    cfg = {"qmax": 2, "threads": 1}
    whole = workbench.run_all(cfg)
    parts = []
    for name in ("dims", "surface", "fuchsian", "finite", "es"):
        parts += workbench.RUNNERS[name](dict(cfg, g=None, s=None, n=None)).records
    assert [r.name for r in whole.records] == [r.name for r in parts]
    assert whole.passed
    assert all(r.anchor for r in whole.records)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hocohom", "dims", "--g", "1", "--s", "1", "--qmax", "2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert "dims:" in proc.stdout
