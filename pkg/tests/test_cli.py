import json
import math

import numpy as np
import pytest

from ohwalk import cli
from ohwalk.dynamics import evolve_field, field_spectral
from ohwalk.krawtchouk import build_spectral
from ohwalk.lattice import n_sites
from ohwalk.snapshot import SCHEMA, SnapshotDocument, fmt, read_csv_field, read_json


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_real():
    assert cli.parse_real("pi/4") == math.pi / 4
    assert cli.parse_real("sqrt(2)") == math.sqrt(2)
    assert cli.parse_real("2*pi/3") == 2 * math.pi / 3
    assert cli.parse_real("-1.5e-3") == -1.5e-3
    for bad in ("__import__('os')", "1/0", "x", "sqrt(2, 3)"):
        with pytest.raises(cli.UsageError):
            cli.parse_real(bad)


def test_fmt_roundtrip():
    for x in (0.0, -0.0, 1.0, 1 / 3, 1e-300, -2.5e17, math.pi):
        s = fmt(x)
        assert float(s) == x and math.copysign(1, float(s)) == math.copysign(1, x)


def test_verify_scheme_passes(capsys):
    code, out, _ = run(capsys, "verify", "--n", "3", "--suite", "scheme")
    assert code == 0 and "ALL PASSED" in out


def test_verify_projection_json(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--n", "4", "--suite", "projection",
                       "--alpha", "1", "--beta", "2", "--format", "json", "--out", str(report))
    assert code == 0
    doc = json.loads(out)
    assert doc == json.loads(report.read_text())
    dev = [c for c in doc["checks"] if "max_deviation" in c["details"]][0]["details"]["max_deviation"]
    assert dev < 1e-12


def test_verify_guard_exit2(capsys):
    code, _, err = run(capsys, "verify", "--n", "9", "--suite", "scheme")
    assert code == 2 and "guard" in err


def test_verify_guard_override_polynomials(capsys):
    code, _, _ = run(capsys, "verify", "--n", "13", "--suite", "polynomials")
    assert code == 2
    code, _, _ = run(capsys, "verify", "--n", "13", "--suite", "polynomials", "--guard-override")
    assert code == 0


def test_verify_all_and_dynamics(capsys):
    code, out, _ = run(capsys, "verify", "--n", "3", "--suite", "all", "--alpha", "sqrt(2)", "--beta", "1")
    assert code == 0
    assert out.count("[PASS]") >= 8


def test_verify_failure_exit1(capsys, monkeypatch):
    from ohwalk.checks import CheckReport

    def broken(*args):
        r = CheckReport("broken")
        r.fail("forced")
        return [r]

    monkeypatch.setitem(cli._SUITE_FUNCS, "dynamics", broken)
    code, out, _ = run(capsys, "verify", "--n", "2", "--suite", "dynamics")
    assert code == 1 and "FAIL" in out


def test_simulate_json_and_csv_agree(capsys, tmp_path):
    args = ["--n", "7", "--alpha", "1", "--beta", "2", "--source", "0,0",
            "--times", "0,pi/6,pi/5,pi/4,pi/3,pi/2"]
    assert run(capsys, "simulate", *args, "--format", "json", "--out", str(tmp_path / "j"))[0] == 0
    assert run(capsys, "simulate", *args, "--format", "csv", "--out", str(tmp_path / "c"))[0] == 0
    js = sorted((tmp_path / "j").glob("*.json"))
    cs = sorted((tmp_path / "c").glob("*.csv"))
    assert len(js) == len(cs) == 6
    sd = build_spectral(7, 1, 2)
    refs = evolve_field(sd, (0, 0), [0, math.pi / 6, math.pi / 5, math.pi / 4, math.pi / 3, math.pi / 2])
    for jp, cp, ref in zip(js, cs, refs):
        doc = read_json(jp.read_text())
        assert doc.N == 7 and len(doc.field.amplitudes) == n_sites(7)
        csv_field = read_csv_field(cp.read_text(), 7, doc.time)
        assert np.array_equal(doc.field.amplitudes, csv_field.amplitudes)
        assert np.array_equal(doc.field.amplitudes, ref.amplitudes)
        assert np.max(np.abs(field_spectral(sd, (0, 0), doc.time).amplitudes - ref.amplitudes)) < 1e-14
        raw = json.loads(jp.read_text())
        assert raw["schema"] == SCHEMA
        for rec in raw["records"]:
            assert abs(rec["abs"] - math.hypot(rec["re"], rec["im"])) < 1e-12
    last = read_json(js[-1].read_text())
    assert abs(last.field.at(7, 0)) == pytest.approx(1, abs=1e-12)


def test_simulate_is_byte_stable(capsys, tmp_path):
    args = ["simulate", "--n", "7", "--alpha", "sqrt(2)", "--beta", "1", "--source", "0,7",
            "--times", "0,pi/4", "--format", "csv"]
    run(capsys, *args, "--out", str(tmp_path / "a"))
    run(capsys, *args, "--out", str(tmp_path / "b"))
    for f in (tmp_path / "a").iterdir():
        assert f.read_bytes() == (tmp_path / "b" / f.name).read_bytes()


def test_simulate_stdout_delta(capsys):
    code, out, _ = run(capsys, "simulate", "--n", "2", "--times", "0")
    assert code == 0
    (doc,) = json.loads(out)
    recs = {(r["i"], r["j"]): r for r in doc["records"]}
    assert abs(recs[(0, 0)]["abs"] - 1.0) < 1e-15
    assert recs[(0, 0)]["re"] == 1.0
    assert all(r["abs"] < 1e-12 for k, r in recs.items() if k != (0, 0))


def test_simulate_errors(capsys, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    code, _, _ = run(capsys, "simulate", "--n", "2", "--times", "0", "--out", str(blocker / "sub"))
    assert code == 2
    assert run(capsys, "simulate", "--n", "2", "--times", "0", "--source", "3,0")[0] == 2
    assert run(capsys, "simulate", "--n", "2", "--times", "0", "--format", "csv")[0] == 2


def test_snapshot_roundtrip_bit_exact():
    sd = build_spectral(5, 1.3, 0.7)
    f = field_spectral(sd, (1, 2), 0.917)
    doc = SnapshotDocument(5, 1.3, 0.7, (1, 2), 0.917, f)
    back = read_json(doc.to_json())
    assert np.array_equal(back.field.amplitudes, f.amplitudes)
    assert back.to_json() == doc.to_json()
    assert np.array_equal(read_csv_field(doc.to_csv(), 5).amplitudes, f.amplitudes)


def test_snapshot_rejects_wrong_schema():
    with pytest.raises(ValueError):
        read_json('{"schema": "other/1"}')


def test_scan_ratio_events(capsys, tmp_path):
    out = tmp_path / "events.json"
    code, _, _ = run(capsys, "scan", "--n", "7", "--ratio", "1/2", "--tmax", "3.2", "--steps", "4000",
                     "--out", str(out))
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["prediction"]["tag"] == "odd/even"
    assert doc["prediction"]["predicted_time"] == pytest.approx(math.pi / 2)
    kinds = {(e["kind"], round(e["time"], 6)) for e in doc["events"]}
    assert ("FR", round(math.pi / 4, 6)) in kinds
    assert ("PST", round(math.pi / 2, 6)) in kinds


def test_scan_ratio_2_1(capsys):
    code, out, _ = run(capsys, "scan", "--n", "7", "--ratio", "2/1", "--tmax", "3.2", "--steps", "4000")
    doc = json.loads(out)
    pst = [e for e in doc["events"] if e["kind"] == "PST"]
    assert code == 0 and any(abs(e["time"] - math.pi / 2) < 1e-6 for e in pst)


def test_scan_negative_control(capsys):
    code, out, _ = run(capsys, "scan", "--n", "5", "--ratio", "1/1", "--tmax", "2*pi", "--steps", "4000")
    doc = json.loads(out)
    assert code == 0
    assert not [e for e in doc["events"] if e["kind"] == "PST"]
    assert doc["prediction"]["pst_predicted"] is False


def test_scan_float_weights(capsys):
    code, out, _ = run(capsys, "scan", "--n", "7", "--alpha", "sqrt(2)", "--beta", "1", "--source", "0,7",
                       "--tmax", "1", "--steps", "2000")
    doc = json.loads(out)
    assert code == 0 and "prediction" not in doc
    assert any(e["kind"] == "FR" and abs(e["time"] - math.pi / 4) < 1e-6 for e in doc["events"])


@pytest.mark.parametrize("ratio", ["1-2", "a/b", "1/0", "1/2/3", "-1/2"])
def test_scan_malformed_ratio(capsys, ratio):
    assert run(capsys, "scan", "--n", "3", "--ratio", ratio)[0] == 2


def test_module_entry_point():
    import subprocess
    import sys

    res = subprocess.run([sys.executable, "-m", "ohwalk", "verify", "--n", "2", "--suite", "scheme"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "ALL PASSED" in res.stdout
