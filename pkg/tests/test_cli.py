import csv
import io
import json
import math

import numpy as np
import pytest

from range_enclosure.boundary import branch_residual
from range_enclosure.cli import fmt, main, to_json
from range_enclosure.core import ProblemParams


def write_cfg(tmp_path, **kw):
    cfg = {"c": 1, "d": 1, "alpha": [0, 1], "beta": [0, 1]}
    cfg.update(kw)
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_fmt_and_json():
    assert fmt(math.inf) == "inf" and fmt(-math.inf) == "-inf"
    assert fmt(0.1) == "0.10000000000000001"
    assert to_json({"a": 1.0, "b": math.inf, "c": [True, None]}) == '{"a": 1.0, "b": "inf", "c": [true, null]}'


def test_bound_worked_example(tmp_path, capsys):
    code, out, _ = run(capsys, "bound", write_cfg(tmp_path), "--omega", "0,1")
    assert code == 0
    res = json.loads(out)
    assert res["epsilon0"] == 1.0 and res["bound"] == 1.0
    assert res["argmin"] == [0.0, 0.0]
    assert '"epsilon0": 1.0, "bound": 1.0' in out


def test_poles(tmp_path, capsys):
    code, out, _ = run(capsys, "poles", write_cfg(tmp_path, c=4, d=4))
    res = json.loads(out)
    assert res["delta_plus"] == [0.0, -2.0] and res["delta_minus"] == [0.0, -2.0]


def test_member_and_axis(tmp_path, capsys):
    cfg = write_cfg(tmp_path, alpha=[-2, -1], beta=[0, 3])
    code, out, _ = run(capsys, "member", cfg, "--omega", "0,1")
    res = json.loads(out)
    assert code == 0 and res["inside"] and res["witness"] == "axis"
    code, out, _ = run(capsys, "axis", cfg)
    assert code == 0 and json.loads(out)["segments"]
    code, out2, _ = run(capsys, "axis", cfg, "--epsilon", "0.5")
    assert json.loads(out2)["epsilon"] == 0.5


def test_infinite_interval_strings(tmp_path, capsys):
    cfg = write_cfg(tmp_path, c=6, d=4, alpha=[1, "inf"], beta=[0, 11])
    code, out, _ = run(capsys, "member", cfg, "--omega", "1,-1")
    assert code == 0


def test_boundary_csv_round_trip(tmp_path, capsys):
    cfg = write_cfg(tmp_path, c=4, d=4, alpha=[-32, 4], beta=[0, 4])
    code, out, _ = run(capsys, "boundary", cfg)
    assert code == 0
    assert "\r" not in out
    rows = list(csv.DictReader(io.StringIO(out)))
    assert set(rows[0]) == {"re", "im", "edge_tag", "branch_tag"}
    p = ProblemParams(4.0, 4.0)
    values = {"beta_lo": 0.0, "beta_hi": 4.0, "alpha_lo": -32.0, "alpha_hi": 4.0}
    n = 0
    for r in rows:
        if r["branch_tag"] in ("point", "segment"):
            continue
        kind = "beta" if r["edge_tag"].startswith("beta") else "alpha"
        x, y = abs(float(r["re"])), float(r["im"])
        assert branch_residual(kind, values[r["edge_tag"]], x, y, p) <= 1e-9 * (1 + x * x + y * y)
        n += 1
    assert n > 1000


def test_deterministic(tmp_path, capsys):
    cfg = write_cfg(tmp_path, c=4, d=4, alpha=[-32, 4], beta=[0, 4], seed=3)
    outs = [run(capsys, "boundary", cfg)[1] for _ in range(2)]
    assert outs[0] == outs[1]
    outs = [run(capsys, "validate", cfg, "--samples", "200")[1] for _ in range(2)]
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["pass"]


def test_strip(tmp_path, capsys):
    cfg = write_cfg(tmp_path, c=1, d=3)
    code, out, _ = run(capsys, "strip", cfg, "--beta", "1")
    res = json.loads(out)
    assert code == 0 and res["exists"]
    assert res["s_high"] == pytest.approx((-3 + math.sqrt(5)) / 4, abs=1e-15)
    code, out, _ = run(capsys, "strip", cfg, "--alpha", "-1")
    assert not json.loads(out)["exists"]
    code, _, err = run(capsys, "strip", cfg)
    assert code == 1 and "ConfigError" in err


def test_pseudo_csv(tmp_path, capsys):
    cfg = write_cfg(tmp_path, c=4, d=4, alpha=[-32, 4], beta=[0, 4], resolution=96)
    code, out, _ = run(capsys, "pseudo", cfg, "--epsilon", "1", "--threads", "2")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["polyline", "re", "im"] and len(rows) > 10


def test_figure_svg(tmp_path, capsys):
    cfg = write_cfg(tmp_path, c=4, d=4, alpha=[-32, 4], beta=[0, 4], epsilon=1)
    dest = tmp_path / "fig.svg"
    code, _, _ = run(capsys, "figure", cfg, "-o", str(dest))
    text = dest.read_text()
    assert code == 0 and text.startswith("<svg") and text.rstrip().endswith("</svg>")
    assert text.count("<polyline") > 10


def test_config_errors(tmp_path, capsys):
    assert run(capsys, "poles", str(tmp_path / "missing.json"))[0] == 1
    assert run(capsys, "poles", write_cfg(tmp_path, d=0))[0] == 1
    assert run(capsys, "poles", write_cfg(tmp_path, alpha=[0]))[0] == 1
    assert run(capsys, "poles", write_cfg(tmp_path, beta=["-inf", 1]))[0] == 1
    assert run(capsys, "member", write_cfg(tmp_path))[0] == 1
    assert run(capsys, "nonsense", write_cfg(tmp_path))[0] == 1


def test_numeric_failure_exit_code(tmp_path, capsys):
    code, _, err = run(capsys, "bound", write_cfg(tmp_path, c=4, d=4), "--omega", "0,-2")
    assert code == 2 and err.startswith("PoleEvaluation")


def test_threads_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("RANGE_ENCLOSURE_THREADS", "x")
    assert run(capsys, "poles", write_cfg(tmp_path))[0] == 1
    monkeypatch.setenv("RANGE_ENCLOSURE_THREADS", "3")
    assert run(capsys, "poles", write_cfg(tmp_path))[0] == 0
