import json
import subprocess
import sys

import numpy as np
import pytest

from pa1d.cli import main
from pa1d.observation import load_trace


def run_cli(*argv) -> int:
    return main(list(argv))


@pytest.fixture(scope="module")
def trace_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "trace.csv"
    rc = run_cli(
        "forward", "--profile", "smooth", "--T", "2", "--N", "100",
        "--modes", "200", "--out", str(path),
    )
    assert rc == 0
    return path


class TestForward:
    def test_writes_readable_trace(self, trace_file):
        tr = load_trace(trace_file)
        assert tr.cfg.T == 2
        assert tr.t.size == 301
        assert tr.meta["profile"] == "smooth"

    def test_oracle_source(self, tmp_path):
        out = tmp_path / "t.csv"
        rc = run_cli(
            "forward", "--profile", "smooth", "--T", "2", "--N", "50",
            "--source", "oracle", "--out", str(out),
        )
        assert rc == 0
        assert load_trace(out).meta["source"] == "oracle"

    def test_field_output(self, tmp_path):
        out = tmp_path / "t.csv"
        fld = tmp_path / "field.csv"
        rc = run_cli(
            "forward", "--profile", "smooth", "--T", "2", "--N", "50",
            "--modes", "100", "--out", str(out),
            "--field-out", str(fld), "--field-nx", "13", "--field-nt", "7",
        )
        assert rc == 0
        lines = fld.read_text().splitlines()
        assert lines[0] == "# pa1d field v1"
        assert lines[4] == "x,t,u"
        assert len(lines) == 5 + 13 * 7
        x0, t0, u0 = (float(v) for v in lines[5].split(","))
        assert (x0, t0) == (-3.0, 0.0)
        assert u0 == pytest.approx(0.0, abs=1e-12)

    def test_bad_padding_is_exit_2(self, tmp_path):
        rc = run_cli(
            "forward", "--profile", "smooth", "--T", "-3", "--N", "50",
            "--out", str(tmp_path / "t.csv"),
        )
        assert rc == 2

    def test_unknown_flag_is_systemexit_2(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            run_cli("forward", "--shape", "smooth")
        assert exc.value.code == 2


class TestObserve:
    def test_zero_eps_preserves_values(self, trace_file, tmp_path):
        out = tmp_path / "noisy.csv"
        rc = run_cli(
            "observe", "--in", str(trace_file), "--noise", "0.0",
            "--seed", "7", "--out", str(out),
        )
        assert rc == 0
        clean = load_trace(trace_file)
        observed = load_trace(out)
        np.testing.assert_array_equal(observed.f_plus, clean.f_plus)
        np.testing.assert_array_equal(observed.f_minus, clean.f_minus)

    def test_noise_metadata_recorded(self, trace_file, tmp_path):
        out = tmp_path / "noisy.csv"
        rc = run_cli(
            "observe", "--in", str(trace_file), "--noise", "0.01",
            "--model", "gaussian", "--seed", "3", "--out", str(out),
        )
        assert rc == 0
        tr = load_trace(out)
        assert tr.meta["noise"] == "gaussian eps=0.01"
        assert tr.meta["seed"] == "3"

    def test_missing_input_is_exit_3(self, tmp_path):
        rc = run_cli(
            "observe", "--in", str(tmp_path / "absent.csv"), "--noise", "0.01",
            "--out", str(tmp_path / "o.csv"),
        )
        assert rc == 3

    def test_corrupt_input_is_exit_3(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("# pa1d trace v1\nt,F_plus\n0.0,1.0\n")
        rc = run_cli(
            "observe", "--in", str(bad), "--noise", "0.01",
            "--out", str(tmp_path / "o.csv"),
        )
        assert rc == 3


class TestReconstruct:
    def test_happy_path_with_report(self, trace_file, tmp_path):
        out = tmp_path / "recon.csv"
        rep = tmp_path / "report.json"
        rc = run_cli(
            "reconstruct", "--in", str(trace_file), "--T", "2", "--K", "30",
            "--out", str(out), "--report", str(rep),
        )
        assert rc == 0
        lines = out.read_text().splitlines()
        header = next(ln for ln in lines if not ln.startswith("#"))
        assert header == "x,a_true,a_rec_spectral"
        report = json.loads(rep.read_text())
        assert report["modes"]["correction_factor"] == pytest.approx(1.5)
        assert report["modes"]["skipped"] == list(range(3, 31, 3))
        assert report["metrics"]["spectral"]["rel_l2"] < 0.02

    def test_multiple_methods(self, trace_file, tmp_path):
        out = tmp_path / "recon.csv"
        rc = run_cli(
            "reconstruct", "--in", str(trace_file), "--T", "2", "--K", "30",
            "--method", "spectral,lsq,backward-fd", "--out", str(out),
        )
        assert rc == 0
        header = next(
            ln for ln in out.read_text().splitlines() if not ln.startswith("#")
        )
        assert header == "x,a_true,a_rec_spectral,a_rec_lsq,a_rec_backward_fd"

    def test_fd_flags_forwarded(self, trace_file, tmp_path):
        rep = tmp_path / "report.json"
        rc = run_cli(
            "reconstruct", "--in", str(trace_file), "--T", "2", "--K", "10",
            "--method", "backward-fd", "--fd-h", "0.02", "--fd-tau", "0.02",
            "--fd-tfinal", "3.0", "--report", str(rep),
        )
        assert rc == 0
        report = json.loads(rep.read_text())
        assert report["config"]["fd"] == {"h": 0.02, "tau": 0.02, "t_final": 3.0}

    def test_padding_mismatch_is_exit_2(self, trace_file, tmp_path):
        rc = run_cli(
            "reconstruct", "--in", str(trace_file), "--T", "3", "--K", "10",
            "--out", str(tmp_path / "r.csv"),
        )
        assert rc == 2

    def test_unknown_method_is_exit_2(self, trace_file, tmp_path):
        rc = run_cli(
            "reconstruct", "--in", str(trace_file), "--T", "2", "--K", "10",
            "--method", "magic", "--out", str(tmp_path / "r.csv"),
        )
        assert rc == 2

    def test_unresolvable_mode_count_is_exit_4(self, trace_file, tmp_path):
        rc = run_cli(
            "reconstruct", "--in", str(trace_file), "--T", "2", "--K", "5000",
            "--out", str(tmp_path / "r.csv"),
        )
        assert rc == 4

    def test_unstable_fd_is_exit_4(self, trace_file, tmp_path):
        rc = run_cli(
            "reconstruct", "--in", str(trace_file), "--T", "2", "--K", "10",
            "--method", "backward-fd", "--fd-h", "0.01", "--fd-tau", "0.02",
            "--out", str(tmp_path / "r.csv"),
        )
        assert rc == 4


class TestSweep:
    def _config(self, tmp_path, **overrides) -> str:
        cfg = {"profile": "smooth", "T": 2, "M": 100, "N": 100, "K": 20}
        cfg.update(overrides)
        path = tmp_path / "config.json"
        path.write_text(json.dumps(cfg))
        return str(path)

    def test_mode_sweep(self, tmp_path):
        out = tmp_path / "sweep.csv"
        rc = run_cli(
            "sweep", "--config", self._config(tmp_path), "--param", "K",
            "--values", "10,20,40", "--out", str(out),
        )
        assert rc == 0
        lines = out.read_text().splitlines()
        assert lines[2] == "param_value,rel_l2,l_inf,runtime_ms,status"
        rows = [ln.split(",") for ln in lines[3:]]
        errs = [float(r[1]) for r in rows]
        assert errs[0] > errs[1] > errs[2]

    def test_error_rows_still_exit_0(self, tmp_path):
        out = tmp_path / "sweep.csv"
        rc = run_cli(
            "sweep", "--config", self._config(tmp_path), "--param", "K",
            "--values", "10,5000", "--out", str(out),
        )
        assert rc == 0
        last = out.read_text().splitlines()[-1]
        assert last.endswith("error:ResolutionError")

    def test_missing_config_is_exit_3(self, tmp_path):
        rc = run_cli(
            "sweep", "--config", str(tmp_path / "absent.json"), "--param", "K",
            "--values", "10", "--out", str(tmp_path / "s.csv"),
        )
        assert rc == 3

    def test_unknown_config_key_is_exit_2(self, tmp_path):
        out = tmp_path / "sweep.csv"
        rc = run_cli(
            "sweep", "--config", self._config(tmp_path, clusters=3),
            "--param", "K", "--values", "10", "--out", str(out),
        )
        assert rc == 2

    def test_malformed_json_is_exit_2(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text("{not json")
        rc = run_cli(
            "sweep", "--config", str(path), "--param", "K",
            "--values", "10", "--out", str(tmp_path / "s.csv"),
        )
        assert rc == 2

    def test_bad_value_token_is_exit_2(self, tmp_path):
        rc = run_cli(
            "sweep", "--config", self._config(tmp_path), "--param", "K",
            "--values", "10,many", "--out", str(tmp_path / "s.csv"),
        )
        assert rc == 2

    def test_noise_sweep_with_model(self, tmp_path):
        out = tmp_path / "sweep.csv"
        cfg = self._config(
            tmp_path, K=40, M=400,
            noise={"model": "uniform", "eps": 0.01, "seed": 7},
        )
        rc = run_cli(
            "sweep", "--config", cfg, "--param", "noise",
            "--values", "0.0,0.05", "--out", str(out),
        )
        assert rc == 0
        rows = [ln.split(",") for ln in out.read_text().splitlines()[3:]]
        assert float(rows[0][1]) < float(rows[1][1])


class TestEntrypoint:
    def test_module_invocation(self, tmp_path):
        out = tmp_path / "t.csv"
        proc = subprocess.run(
            [
                sys.executable, "-m", "pa1d.cli", "forward", "--profile", "smooth",
                "--T", "2", "--N", "50", "--modes", "100", "--out", str(out),
            ],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0, proc.stderr
        assert out.exists()

    def test_error_message_goes_to_stderr(self, tmp_path, capsys):
        rc = run_cli(
            "observe", "--in", str(tmp_path / "absent.csv"), "--noise", "0.01",
            "--out", str(tmp_path / "o.csv"),
        )
        assert rc == 3
        captured = capsys.readouterr()
        assert "pa1d: data error" in captured.err
        assert captured.out == ""
