import csv
import io
import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from weightseq.cli import dump_json, main

DEFS = str(Path(__file__).parent / "fixtures" / "defs.json")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def result(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    doc = json.loads(out)
    assert doc["schema"] == "weightseq-report/1"
    return doc["result"]


def test_seq_mg(capsys):
    r = result(capsys, "seq", "gevrey1", "--check", "mg")
    mg = r["checks"]["mg"]
    assert mg["holds"] and mg["witness_constants"]["C"] == 2.0
    assert list(r["checks"]) == ["mg"]


def test_seq_qgevrey_diverges(capsys):
    r = result(capsys, "seq", "qgevrey2", "--check", "mg")
    assert r["checks"]["mg"]["status"] == "diverges_on_horizon"


def test_seq_all_checks(capsys):
    r = result(capsys, "seq", "gevrey:1.5", "--check", "LC,mg", "--check", "om1char")
    assert set(r["checks"]) == {"LC", "mg", "om1char"}


def test_unknown_name(capsys):
    code, out, err = run(capsys, "seq", "nosuchseq")
    assert code == 2 and out == "" and "nosuchseq" in err


def test_unknown_check(capsys):
    assert run(capsys, "seq", "gevrey1", "--check", "bogus")[0] == 2


def test_omega_csv(capsys):
    code, out, _ = run(capsys, "omega", "gevrey1", "--tmin", "0.5", "--tmax", "3", "--points", "11")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["t", "omega"]
    t = [float(a) for a, _ in rows[1:]]
    w = [float(b) for _, b in rows[1:]]
    assert t[-1] == 3.0 and w[-1] == pytest.approx(1.504077, abs=1e-6)
    assert all(b >= a for a, b in zip(w, w[1:]))
    assert all(v == 0.0 for s, v in zip(t, w) if s <= 1.0)


def test_omega_beyond_horizon(capsys):
    code, out, err = run(capsys, "omega", "gevrey1", "--tmin", "1", "--tmax", "1e6")
    assert code == 3 and "horizon" in err


def test_omega_json(capsys):
    r = result(capsys, "omega", "gevrey2", "--format", "json", "--points", "16")
    assert len(r["curve"]) == 16


def test_include(capsys):
    r = result(capsys, "include", "single:gevrey2", "single:gevrey1")
    assert r["verdict"]["holds"] and r["rule"] == "single:strong-domination"
    r = result(capsys, "include", "dilatation-inductive:gevrey1", "dilatation-inductive:gevrey2")
    assert not r["verdict"]["holds"]


def test_include_mixed_systems(capsys):
    code, _, err = run(capsys, "include", "dilatation-inductive:gevrey1", "dilatation-projective:gevrey1")
    assert code == 2 and "IncompatibleSystems" in err


def test_include_unknown_system(capsys):
    assert run(capsys, "include", "sideways:gevrey1", "single:gevrey1")[0] == 2


def test_closure(capsys):
    assert not result(capsys, "closure", "dilatation-inductive", "qgevrey2")["closed"]
    assert result(capsys, "closure", "dilatation-projective:gevrey1")["closed"]


def test_closure_named_space(capsys):
    r = result(capsys, "closure", "exp_g1", "--defs", DEFS)
    assert r["closed"] and r["rule"] == "exponential:always-closed"


def test_convolve(capsys):
    r = result(capsys, "convolve", "gevrey1", "gevrey1", "--horizon", "16")
    assert math.exp(r["sequence"][4]["log_m"]) == pytest.approx(4.0)
    assert r["sequence"][4]["k"] == 2


def test_assoc(capsys):
    r = result(capsys, "assoc", "exppower:1,1", "--upto", "8")
    assert r["sequence"][2]["log_m"] == pytest.approx(math.log(4 / math.e**2))
    code, out, _ = run(capsys, "assoc", "exppower:1,1", "--upto", "4", "--format", "csv")
    assert out.splitlines()[0] == "j,log_m" and len(out.splitlines()) == 6


def test_compare(capsys):
    r = result(capsys, "compare", "gevrey2", "gevrey1", "--kind", "exponential")
    assert r["verdict"]["holds"]


def test_settings_embedded(capsys):
    doc = json.loads(run(capsys, "seq", "gevrey1", "--check", "LC", "--horizon", "64", "--grid", "32")[1])
    assert doc["settings"] == {"grid": 32, "horizon": 64, "trend_threshold": 0.1}


def test_bad_settings(capsys):
    assert run(capsys, "seq", "gevrey1", "--horizon", "3")[0] == 2


def test_bad_defs(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"sequences": {"x": {"family": "nope"}}}')
    assert run(capsys, "seq", "x", "--defs", str(bad))[0] == 2
    dup = tmp_path / "dup.json"
    dup.write_text('{"sequences": {"x": {"family": "gevrey", "s": 1}}, "weights": {"x": {"family": "exppower", "a": 1, "b": 1}}}')
    assert run(capsys, "seq", "x", "--defs", str(dup))[0] == 2
    assert run(capsys, "seq", "x", "--defs", str(tmp_path / "missing.json"))[0] == 2


def test_report_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["report", "--defs", DEFS, "--out", str(a)]) == 0
    assert main(["report", "--defs", DEFS, "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert doc["settings"]["horizon"] == 512
    assert doc["result"]["sequences"]["bumpy"]["checks"]["om1char"]["error"] == "NotLC"
    assert doc["result"]["closures"]["dil_q2"]["holds"] is False


def test_non_finite_floats_are_strings():
    text = dump_json({"a": math.inf, "b": -math.inf, "c": math.nan, "d": 1.5})
    assert json.loads(text) == {"a": "inf", "b": "-inf", "c": "nan", "d": 1.5}


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "weightseq", "seq", "nosuchseq"], capture_output=True, text=True)
    assert proc.returncode == 2
