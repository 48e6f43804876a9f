from __future__ import annotations

import json
import subprocess
import sys

import pytest

from jgroups.cli import SCHEMA, dumps_report, main, parse_budget, run


def _write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def test_verify_exit_codes(tmp_path):
    good = _write(tmp_path / "good.json", {"group": "cyclic:3", "witness": 1, "fmap": [0, 0, 1]})
    code, report = run(["verify", good])
    assert code == 0 and report["payload"]["valid"]
    bad = _write(tmp_path / "bad.json", {"group": "cyclic:2", "witness": 1, "fmap": [0, 0]})
    code, report = run(["verify", bad])
    assert code == 2
    assert len(report["payload"]["results"][0]["violations"]) == 1
    trunc = tmp_path / "trunc.json"
    trunc.write_text('{"group": "cyclic:3", "witness": 1, "fm')
    assert run(["verify", str(trunc)])[0] == 1
    assert run(["verify", str(tmp_path / "missing.json")])[0] == 1


def test_search_exit_codes():
    code, report = run(["search", "cyclic:9"])
    assert code == 0 and len(report["payload"]["structures"]) >= 1
    assert run(["search", "cyclic:4"])[0] == 3
    assert run(["search", "sym:4", "--budget", "1ms"])[0] == 4
    assert run(["search", "nonsense:4"])[0] == 1
    assert run(["search"])[0] == 1


def test_construct_exit_codes():
    code, report = run(["construct", "ring", "--mod", "9"])
    assert code == 0 and report["payload"]["verification"]["valid"]
    code, report = run(["construct", "ring", "--mod", "6"])
    assert code == 2 and "odd" in report["payload"]["error"]
    assert run(["construct", "nilpotent", "--dim", "3"])[0] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["construct", "padic", "--p", "2", "--samples", "200"],
        ["construct", "profinite", "--torsion", "3:2:1,5:1:2"],
        ["construct", "profinite", "--padic", "3:2", "--samples", "50"],
        ["construct", "ztimesh", "--h", "S3", "--window", "5"],
        ["construct", "realsub", "--samples", "50"],
        ["construct", "module", "--ring", "Q", "--rank", "2", "--samples", "50"],
        ["construct", "module", "--ring", "Z/3", "--rank", "1", "--times-ring"],
        ["construct", "ring", "--rational", "--samples", "50"],
        ["demo", "expseq", "--padic", "3:12", "--sequence", "geometric:3:10"],
        ["demo", "expseq", "--mod", "7", "--sequence", "constant:7"],
    ],
)
def test_builders_succeed(argv):
    code, report = run(argv)
    assert code == 0, report["payload"]


def test_builder_rejections():
    assert run(["construct", "profinite", "--torsion", "2:1:1"])[0] == 2
    assert run(["construct", "realsub", "--alpha", "1"])[0] == 2
    assert run(["demo", "expseq", "--padic", "3:12", "--sequence", "geometric:2"])[0] == 2


def test_report_shape_and_reproducibility():
    argv = ["construct", "padic", "--p", "5", "--samples", "50", "--seed", "7"]
    _, a = run(argv)
    _, b = run(argv)
    assert a["schema"] == SCHEMA and a["seed"] == 7 and a["config"]["seed"] == 7
    strip = lambda r: dumps_report({k: v for k, v in r.items() if k != "timing"})
    assert strip(a) == strip(b)
    _, c = run(argv[:-1] + ["8"])
    assert c["payload"] != a["payload"] or c["seed"] != a["seed"]


def test_precision_env(monkeypatch):
    monkeypatch.setenv("JGROUP_PRECISION", "7")
    _, report = run(["construct", "padic", "--p", "2", "--samples", "10"])
    assert report["config"]["precision"] == 7
    assert report["payload"]["output_precision"] == 6
    _, report = run(["construct", "padic", "--p", "2", "--samples", "10", "--precision", "9"])
    assert report["config"]["precision"] == 9


@pytest.mark.parametrize(
    "argv",
    [
        ["search", "cyclic:5"],
        ["search", "product:cyclic:3xcyclic:3", "--max-results", "20"],
        ["construct", "ring", "--mod", "9"],
        ["construct", "profinite", "--torsion", "3:1:2"],
        ["construct", "module", "--ring", "Z/5", "--rank", "1", "--times-ring"],
    ],
)
def test_emitted_structures_reverify(tmp_path, argv, capsys):
    out = tmp_path / "report.json"
    assert main(argv + ["--json", str(out)]) == 0
    assert main(["verify", str(out)]) == 0
    capsys.readouterr()


def test_json_to_stdout(capsys):
    assert main(["search", "cyclic:3", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["exit_code"] == 0 and len(data["payload"]["structures"]) == 6


def test_file_group_spec(tmp_path):
    g = _write(tmp_path / "g.json", {"order": 3, "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]})
    code, report = run(["search", f"file:{g}"])
    assert code == 0 and report["payload"]["structure_count"] == 6


def test_parse_budget():
    assert parse_budget("1ms") == pytest.approx(0.001)
    assert parse_budget("2m") == 120
    assert parse_budget("5") == 5


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "jgroups", "search", "cyclic:4"], capture_output=True, text=True)
    assert proc.returncode == 3
    assert proc.stdout.startswith("exit 3")
