import json
import re

import pytest

from chx import cli
from chx.report import FAILED, OK, UNDECIDED, Check


def test_run_pi1_json(tmp_path):
    out = tmp_path / "r.json"
    assert cli.main(["run", "--suite", "pi1", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["status"] == "ok" and doc["suite"] == "pi1"
    assert all("wall_s" not in c for c in doc["checks"])
    assert all(c["anchor"] for c in doc["checks"])


def test_report_byte_identical_modulo_timestamp(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        cli.main(["run", "--suite", "gen", "--out", str(p)])
    drop = lambda t: re.sub(r'"timestamp": [0-9.e+-]+', '"timestamp": T', t)
    assert drop(a.read_text()) == drop(b.read_text())


def test_timings_flag(tmp_path):
    out = tmp_path / "t.json"
    cli.main(["run", "--suite", "gen", "--timings", "--out", str(out)])
    assert all("wall_s" in c for c in json.loads(out.read_text())["checks"])


def test_text_format(capsys):
    assert cli.main(["run", "--suite", "gen", "--format", "text"]) == 0
    assert "gen.B4" in capsys.readouterr().out


@pytest.mark.parametrize("statuses,code", [((OK, OK), 0), ((OK, FAILED, UNDECIDED), 1), ((OK, UNDECIDED), 2)])
def test_exit_codes(monkeypatch, statuses, code, capsys):
    fake = lambda cfg: [Check(f"x.{i}", "fake", s) for i, s in enumerate(statuses)]
    monkeypatch.setitem(cli.RUNNERS, "gen", fake)
    assert cli.main(["run", "--suite", "gen"]) == code


def test_bad_config_rejected(capsys):
    assert cli.main(["run", "--suite", "gen", "--depth", "3"]) == 1
    assert cli.main(["run", "--suite", "pi1", "--probes", "Z7"]) == 1


@pytest.mark.parametrize("obj,fmt", [("spinal:I1+", "obj"), ("ruled:EB", "ply"), ("disk:F", "obj")])
def test_mesh_command(tmp_path, obj, fmt):
    out = tmp_path / f"m.{fmt}"
    assert cli.main(["mesh", "--object", obj, "--resolution", "8", "--out", str(out), "--format", fmt]) == 0
    assert out.stat().st_size > 0


def test_mesh_unknown_object(tmp_path):
    assert cli.main(["mesh", "--object", "cube:1", "--out", str(tmp_path / "x.obj")]) == 1
