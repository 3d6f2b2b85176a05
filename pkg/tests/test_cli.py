"""CLI behavior: formats, exit codes, seeds, file export, parity."""
import hashlib
import json
import subprocess
import sys
import time
from pathlib import Path

import pytest

from nullpost import (
    BetaParams,
    ErrorConfig,
    NullPrior,
    TypeIISpec,
    propagate,
    summarize,
)
from nullpost.cli import main

# Exact transform-oracle endpoints for prior Beta(60,6), alpha=.05, power=.1.
S1_LO = 0.708735316518788244
S1_HI = 0.9330513711012889429


def run_cli(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


class TestCompute:
    def test_json_format(self, capsys):
        code, out, _ = run_cli(
            ["compute", "--prior", "60,6", "--alpha", "0.05", "--type2", "0.9",
             "--n", "100000", "--seed", "1", "--format", "json"],
            capsys,
        )
        assert code == 0
        doc = json.loads(out)
        lo, hi = doc["posterior"]["ci"]
        assert abs(lo - S1_LO) <= 0.01 and abs(hi - S1_HI) <= 0.01
        assert doc["request"]["seed"] == 1
        assert len(doc["posterior"]["histogram"]["counts"]) == 512
        assert len(doc["prior"]["histogram"]["counts"]) == 512

    def test_uninformative_test_returns_prior(self, capsys):
        # alpha equals power (= 1 - type2), so the posterior is the prior
        code, out, _ = run_cli(
            ["compute", "--prior", "60,6", "--alpha", "0.05", "--type2", "0.95",
             "--n", "50000", "--seed", "2", "--format", "json"],
            capsys,
        )
        assert code == 0
        doc = json.loads(out)
        assert abs(doc["posterior"]["mean"] - doc["prior"]["mean"]) <= 0.005
        assert abs(doc["posterior"]["ci"][0] - doc["prior"]["ci"][0]) <= 0.01
        assert abs(doc["posterior"]["ci"][1] - doc["prior"]["ci"][1]) <= 0.01

    def test_beta_type2_high_power_low_alpha(self, capsys):
        code, out, _ = run_cli(
            ["compute", "--prior", "60,6", "--alpha", "0.005", "--type2", "2,20",
             "--n", "100000", "--seed", "3", "--format", "json"],
            capsys,
        )
        assert code == 0
        doc = json.loads(out)
        lo, hi = doc["posterior"]["ci"]
        assert abs(lo - 0.02) <= 0.05 and abs(hi - 0.13) <= 0.05

    def test_table_format(self, capsys):
        code, out, _ = run_cli(
            ["compute", "--prior", "60,6", "--alpha", "0.05", "--type2", "0.9",
             "--n", "2000", "--seed", "9"],
            capsys,
        )
        assert code == 0
        assert "seed: 9" in out
        assert "prior" in out and "posterior" in out

    def test_csv_format(self, capsys):
        code, out, _ = run_cli(
            ["compute", "--prior", "15,15", "--alpha", "0.01", "--type2", "8,8",
             "--n", "2000", "--seed", "4", "--format", "csv"],
            capsys,
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("prior_a,prior_b,type2_form,type2_params,alpha")
        cells = lines[1].split(",")
        assert cells[0] == "15.0" and cells[2] == "beta"

    def test_generated_seed_is_printed(self, capsys, monkeypatch):
        monkeypatch.delenv("NULLPOST_SEED", raising=False)
        code, out, _ = run_cli(
            ["compute", "--prior", "2,2", "--alpha", "0.05", "--type2", "0.5",
             "--n", "100", "--format", "json"],
            capsys,
        )
        assert code == 0
        assert isinstance(json.loads(out)["request"]["seed"], int)

    def test_env_seed_is_used(self, capsys, monkeypatch):
        monkeypatch.setenv("NULLPOST_SEED", "777")
        code, out, _ = run_cli(
            ["compute", "--prior", "2,2", "--alpha", "0.05", "--type2", "0.5",
             "--n", "100", "--format", "json"],
            capsys,
        )
        assert code == 0
        assert json.loads(out)["request"]["seed"] == 777

    def test_parity_with_library(self, capsys):
        code, out, _ = run_cli(
            ["compute", "--prior", "60,6", "--alpha", "0.05", "--type2", "0.9",
             "--n", "20000", "--seed", "123", "--format", "json"],
            capsys,
        )
        assert code == 0
        doc = json.loads(out)
        cfg = ErrorConfig(alpha=0.05, type2=TypeIISpec.from_point(0.9))
        summary = summarize(propagate(NullPrior(BetaParams(60, 6)), cfg, n=20000, seed=123))
        assert doc["posterior"]["mean"] == summary.mean
        assert doc["posterior"]["ci"] == [summary.ci_lower, summary.ci_upper]


class TestComputeValidation:
    @pytest.mark.parametrize("argv", [
        ["compute", "--prior", "sixty,6", "--alpha", "0.05", "--type2", "0.9"],
        ["compute", "--prior", "60", "--alpha", "0.05", "--type2", "0.9"],
        ["compute", "--prior", "60,6", "--alpha", "2.0", "--type2", "0.9"],
        ["compute", "--prior", "60,6", "--alpha", "0", "--type2", "0.9"],
        ["compute", "--prior", "60,6", "--alpha", "0.05", "--type2", "1.0"],
        ["compute", "--prior", "60,6", "--alpha", "0.05", "--type2", "-1,4"],
        ["compute", "--prior", "60,6", "--alpha", "0.05", "--type2", "0.9", "--n", "1"],
        ["compute", "--prior", "60,6", "--alpha", "0.05", "--type2", "0.9",
         "--ci-level", "1.0"],
        ["compute", "--prior", "0,6", "--alpha", "0.05", "--type2", "0.9"],
    ])
    def test_invalid_arguments_exit_2(self, argv, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(argv)
        assert excinfo.value.code == 2
        _, err = capsys.readouterr()
        assert "--" in err  # diagnostic names the offending flag

    def test_unknown_flag_exit_2(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["compute", "--prior", "60,6", "--alpha", "0.05", "--type2", "0.9",
                  "--bogus", "1"])
        assert excinfo.value.code == 2


class TestExport:
    def test_exports_full_file_set(self, tmp_path, capsys):
        code, out, _ = run_cli(
            ["export", "--out", str(tmp_path / "files"), "--n", "500", "--seed", "77"],
            capsys,
        )
        assert code == 0
        out_dir = tmp_path / "files"
        names = sorted(p.name for p in out_dir.iterdir())
        expected = sorted(
            [f"S{i}.json" for i in range(1, 9)]
            + ["grid.json", "grid.csv"]
            + [f"density_type2_{lvl}.json" for lvl in ("low", "medium", "high")]
        )
        assert names == expected

        grid = json.loads((out_dir / "grid.json").read_text())
        assert len(grid["cells"]) == 27
        csv_lines = (out_dir / "grid.csv").read_text().strip().splitlines()
        assert len(csv_lines) == 28

        s1 = json.loads((out_dir / "S1.json").read_text())
        assert s1["spec"]["n"] == 500
        assert s1["spec"]["prior"] == {"a": 60, "b": 6}

        dens = json.loads((out_dir / "density_type2_high.json").read_text())
        assert dens["a"] == 2 and dens["b"] == 20
        assert len(dens["grid"]) == 512 and len(dens["density"]) == 512

    def test_rerun_is_byte_identical(self, tmp_path, capsys):
        def digest(d: Path) -> dict:
            return {
                p.name: hashlib.sha256(p.read_bytes()).hexdigest()
                for p in sorted(d.iterdir())
            }

        for sub in ("one", "two"):
            code, _, _ = run_cli(
                ["export", "--out", str(tmp_path / sub), "--n", "300", "--seed", "5"],
                capsys,
            )
            assert code == 0
        assert digest(tmp_path / "one") == digest(tmp_path / "two")

    def test_unwritable_out_dir_exits_1(self, capsys):
        code, _, err = run_cli(["export", "--out", "/dev/null/sub", "--n", "10"], capsys)
        assert code == 1
        assert "/dev/null/sub" in err


class TestServe:
    def test_out_of_range_port_exits_1(self, capsys):
        code, _, err = run_cli(["serve", "--port", "99999"], capsys)
        assert code == 1
        assert "99999" in err

    def test_occupied_port_exits_1(self, capsys):
        import socket

        sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        sock.bind(("127.0.0.1", 0))
        sock.listen(1)
        port = sock.getsockname()[1]
        try:
            code, _, err = run_cli(["serve", "--port", str(port)], capsys)
            assert code == 1
            assert str(port) in err
        finally:
            sock.close()

    def test_serve_subprocess_responds(self, tmp_path):
        import socket

        import httpx

        sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        sock.bind(("127.0.0.1", 0))
        port = sock.getsockname()[1]
        sock.close()
        proc = subprocess.Popen(
            [sys.executable, "-m", "nullpost.cli", "serve", "--port", str(port)],
            stdout=subprocess.DEVNULL,
            stderr=subprocess.DEVNULL,
        )
        try:
            deadline = time.time() + 15
            last_err = None
            while time.time() < deadline:
                try:
                    r = httpx.get(f"http://127.0.0.1:{port}/healthz", timeout=1.0)
                    assert r.status_code == 200 and r.text == "ok"
                    break
                except (httpx.ConnectError, httpx.ReadError) as exc:
                    last_err = exc
                    time.sleep(0.1)
            else:
                pytest.fail(f"service did not come up: {last_err}")
            body = {
                "prior": {"a": 60, "b": 6},
                "alpha": 0.05,
                "type2": {"point": 0.9},
                "n": 5000,
                "seed": 1,
            }
            r = httpx.post(f"http://127.0.0.1:{port}/v1/posterior", json=body, timeout=10.0)
            assert r.status_code == 200
            assert r.json()["request"]["seed"] == 1
        finally:
            proc.terminate()
            proc.wait(timeout=10)
