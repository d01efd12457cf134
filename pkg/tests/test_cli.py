import json
import subprocess
import sys


def run_cli(*args, env_extra=None):
    import os
    env = dict(os.environ)
    env.update(env_extra or {})
    return subprocess.run([sys.executable, "-m", "taumod.cli", *args],
                          capture_output=True, text=True, env=env)


def test_eval_theta_zero():
    r = run_cli("eval", "--set", "fn=theta1", "--set", "z=[0,0]", "--set", "tau=[0,2]")
    assert r.returncode == 0
    rep = json.loads(r.stdout)
    assert rep["pass"] is True
    assert rep["outputs"]["value"]["re"] == 0


def test_upsilon_report():
    r = run_cli("upsilon", "--set", "a=0.23", "--set", "nu=1.1", "--set", "m=0.17")
    assert r.returncode == 0
    rep = json.loads(r.stdout)
    assert rep["pass"] is True
    assert set(rep["outputs"]) == {"upsilon", "upsilon_hat", "atil", "nutil"}
    assert rep["residuals"]["dlog_vs_oneforms"] < 1e-6
    assert list(rep) == ["command", "inputs", "outputs", "residuals",
                         "tolerances", "pass", "timing_ms", "warnings"]


def test_usage_errors():
    r = run_cli("flow", "--set", "nu=1.1")
    assert r.returncode == 2
    assert "'a'" in r.stderr
    r = run_cli("eval", "--set", "fn=nosuch")
    assert r.returncode == 2
    r = run_cli("map", "--set", "a=0.23", "--set", "nu=1.1", "--set", "bogus=1")
    assert r.returncode == 2
    assert "bogus" in r.stderr


def test_json_round_trip():
    r = run_cli("map", "--set", "a=0.23", "--set", "nu=1.1", "--set", "m=0.17")
    rep = json.loads(r.stdout)
    assert json.dumps(rep, indent=2) == r.stdout.strip()


def test_config_file_and_override(tmp_path):
    cfgf = tmp_path / "cfg.json"
    cfgf.write_text(json.dumps({"a": 0.23, "nu": 1.1, "m": 0.17}))
    r1 = run_cli("map", "--config", str(cfgf))
    r2 = run_cli("map", "--config", str(cfgf), "--set", "m=0.2")
    assert r1.returncode == 0 and r2.returncode == 0
    assert json.loads(r1.stdout)["inputs"]["m"]["re"] == 0.17
    assert json.loads(r2.stdout)["inputs"]["m"]["re"] == 0.2


def test_kernel_m0():
    r = run_cli("kernel", "--set", "a=0.23", "--set", "atil=0.1", "--set", "m=0")
    assert r.returncode == 0
    rep = json.loads(r.stdout)
    assert rep["residuals"]["m0_closed_form"] < 1e-12
    assert rep["residuals"]["m0_contour_integral"] < 1e-8


def test_verify_only_charvar_deterministic():
    r1 = run_cli("verify", "--only", "charvar")
    r2 = run_cli("verify", "--only", "charvar")
    assert r1.returncode == 0

    def strip_timing(out):
        rep = json.loads(out)
        rep.pop("timing_ms")
        for s in rep["outputs"]["suites"]:
            s.pop("elapsed_s")
        return rep

    assert strip_timing(r1.stdout) == strip_timing(r2.stdout)
    rep = json.loads(r1.stdout)
    suites = [s["suite"] for s in rep["outputs"]["suites"]]
    assert suites == ["charvar"]


def test_table_emission(tmp_path):
    out = tmp_path / "grid.csv"
    r = run_cli("upsilon", "--set", "grid.a=0.1:0.4:4", "--set", "grid.nu=0.5:2.5:5",
                "--set", "m=0.17", "--out", str(out))
    assert r.returncode == 0
    rows = out.read_text().splitlines()
    assert len(rows) == 1 + 4 * 5
    assert rows[0].startswith("a,nu,")
    # determinism: rerun is byte-identical
    out2 = tmp_path / "grid2.csv"
    run_cli("upsilon", "--set", "grid.a=0.1:0.4:4", "--set", "grid.nu=0.5:2.5:5",
            "--set", "m=0.17", "--out", str(out2))
    assert out.read_bytes() == out2.read_bytes()


def test_kernel_grid_m0_modulus(tmp_path):
    out = tmp_path / "k.csv"
    r = run_cli("kernel", "--set", "grid.a=0.1:0.3:3", "--set", "grid.atil=0.1:0.3:3",
                "--set", "m=0", "--out", str(out))
    assert r.returncode == 0
    import math
    rows = out.read_text().splitlines()[1:]
    for row in rows:
        parts = row.split(",")
        assert abs(float(parts[6]) - math.sqrt(2)) < 1e-12


def test_flow_trace_jsonl(tmp_path):
    out = tmp_path / "trace.jsonl"
    r = run_cli("flow", "--set", "a=0.23", "--set", "nu=1.1", "--set", "m=0",
                "--out", str(out))
    assert r.returncode == 0
    lines = out.read_text().splitlines()
    assert len(lines) >= 2
    rec = json.loads(lines[0])
    assert set(rec) == {"tau", "Q", "P", "H", "log_tau"}


def test_tool_precision_env():
    r = run_cli("eval", "--set", "fn=dilog", "--set", "z=[0.3,0.1]",
                env_extra={"TOOL_PRECISION": "extended"})
    assert r.returncode == 0
    bad = run_cli("eval", "--set", "fn=dilog", "--set", "z=[0.3,0.1]",
                  env_extra={"TOOL_PRECISION": "quad"})
    assert bad.returncode == 2


def test_numerical_failure_exit_code():
    # start height too small for the cusp asymptotics: numerical failure
    r = run_cli("flow", "--set", "a=0.15", "--set", "nu=0.8", "--set", "m=0.1",
                "--set", "T_max=4")
    assert r.returncode == 1
    assert "numerical failure" in r.stderr
