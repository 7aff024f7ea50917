"""Config round-trips, validation delegation, CLI artifacts, determinism."""

import hashlib
import json
from pathlib import Path

import numpy as np
import pytest

from tricomi_lab.cli import EXPONENT_HEADER, main, run_exponents
from tricomi_lab.config import RunConfig, emit_config, parse_config
from tricomi_lab.errors import ParameterError

MINIMAL_EXPONENTS = json.dumps({"scenario": "exponents", "model": {"m": 1, "n": 3, "p": 2.0}})


class TestConfig:
    def test_minimal_parses(self):
        cfg = parse_config(MINIMAL_EXPONENTS)
        assert cfg.scenario == "exponents"
        assert cfg.model_params().m == 1

    def test_round_trip_identity(self):
        cfg = parse_config(MINIMAL_EXPONENTS)
        assert parse_config(emit_config(cfg)) == cfg

    def test_round_trip_randomized(self):
        rng = np.random.default_rng(42)
        scenarios = ["exponents", "solve-linear", "check-geometry", "symbols"]
        for _ in range(100):
            payload = {
                "scenario": str(rng.choice(scenarios)),
                "model": {
                    "m": int(rng.integers(1, 6)),
                    "n": int(rng.integers(3, 8)),
                    "p": float(np.round(rng.uniform(1.1, 3.0), 6)),
                    "eps": float(np.round(rng.uniform(1e-4, 1.0), 8)),
                    "M": float(np.round(rng.uniform(1.2, 4.0), 6)),
                },
                "grid": {"r_max": float(rng.integers(10, 100)), "N": int(2 ** rng.integers(5, 10))},
                "seed": int(rng.integers(0, 1000)),
                "output_dir": "out",
            }
            cfg = parse_config(json.dumps(payload))
            assert parse_config(emit_config(cfg)) == cfg

    def test_parse_error_has_location(self):
        with pytest.raises(ParameterError, match="line"):
            parse_config("{not json}")

    def test_unknown_scenario(self):
        with pytest.raises(ParameterError, match="unknown scenario"):
            parse_config(json.dumps({"scenario": "noodle"}))

    def test_picard_window_delegated(self):
        payload = {
            "scenario": "solve-semilinear",
            "model": {"m": 1, "n": 3, "p": 5.0},
            "semilinear": {"mode": "picard"},
        }
        with pytest.raises(ParameterError, match=r"exponent out of range \(p_crit"):
            parse_config(json.dumps(payload))

    def test_model_validation_delegated(self):
        with pytest.raises(ParameterError, match="n >= 3"):
            parse_config(json.dumps({"scenario": "exponents", "model": {"m": 1, "n": 2, "p": 2.0}}))


class TestExponentsCommand:
    def test_header_exact(self):
        text = run_exponents(1, 3, 2.0)
        assert text.splitlines()[0] == EXPONENT_HEADER

    def test_single_row_values(self):
        row = run_exponents(1, 3, 2.0).splitlines()[1].split(",")
        assert float(row[3]) == pytest.approx(1.7699809884328215, abs=1e-12)
        assert float(row[4]) == pytest.approx(15.0 / 7.0, abs=1e-12)
        assert float(row[10]) == pytest.approx(1.0 / 6.0, abs=1e-12)
        assert float(row[11]) == pytest.approx(5.0 / 18.0, abs=1e-12)

    def test_gamma_cells_empty_without_p(self):
        row = run_exponents(2, 4, None).splitlines()[1].split(",")
        assert row[2] == "" and row[10] == "" and row[11] == ""

    def test_sweep_rows(self):
        text = run_exponents(None, None, None, sweep="m=1..6 n=3..8")
        lines = text.strip().splitlines()
        assert len(lines) == 1 + 6 * 6

    def test_bad_sweep_spec(self):
        with pytest.raises(ParameterError, match="bad sweep"):
            run_exponents(None, None, None, sweep="m=1-6")

    def test_cli_stdout_and_exit(self, capsys):
        assert main(["exponents", "--m", "1", "--n", "3", "--p", "2.0"]) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0] == EXPONENT_HEADER

    def test_cli_validation_exit_2(self, capsys):
        assert main(["exponents", "--m", "1", "--n", "2"]) == 2


class TestGeometrySymbolsCommands:
    def test_check_geometry(self, capsys):
        assert main(["check-geometry", "--m", "1", "--M", "2.0", "--T0", "0.5"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "inequality,holds,margin,delta_max"
        assert len(lines) == 4
        unshifted = lines[1].split(",")
        assert unshifted[0] == "unshifted-cone" and unshifted[1] == "true"
        assert float(unshifted[3]) >= 1e-4

    def test_symbols_dump(self, capsys):
        assert main(["symbols", "--m", "1", "--grid", "50:16"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "t,lambda,re_v1,im_v1,re_v2,im_v2,envelope_bound"
        assert len(lines) == 17
        first = [float(x) for x in lines[1].split(",")]
        assert abs(first[3]) < 1e-9  # im_v1 ~ 0

    def test_symbols_bad_grid(self, capsys):
        assert main(["symbols", "--m", "1", "--grid", "oops"]) == 2


class TestScenarioRuns:
    def _linear_cfg(self, outdir):
        return {
            "scenario": "solve-linear",
            "model": {"m": 1, "n": 3, "p": 2.0, "eps": 1.0, "M": 2.0},
            "grid": {"r_max": 25.0, "N": 256},
            "output_dir": str(outdir),
            "linear": {"t_final": 8.0, "snapshots": 6, "data": {"profile": "bump", "amplitude": 1.0}},
        }

    def test_solve_linear_artifacts_and_determinism(self, tmp_path):
        cfg_path = tmp_path / "cfg.json"
        sums = []
        for run in ("a", "b"):
            outdir = tmp_path / run
            cfg_path.write_text(json.dumps(self._linear_cfg(outdir)))
            assert main(["solve-linear", "--config", str(cfg_path)]) == 0
            field = outdir / "field.csv"
            summary = outdir / "summary.csv"
            manifest = json.loads((outdir / "manifest.json").read_text())
            assert field.exists() and summary.exists()
            assert summary.read_text().splitlines()[0] == "t,sup_norm,l2_norm,support_leak"
            assert set(manifest["outputs"]) == {"field.csv", "summary.csv"}
            sums.append(
                (
                    hashlib.sha256(field.read_bytes()).hexdigest(),
                    hashlib.sha256(summary.read_bytes()).hexdigest(),
                )
            )
        assert sums[0] == sums[1]

    def test_scenario_mismatch_exit_2(self, tmp_path):
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps(self._linear_cfg(tmp_path)))
        assert main(["solve-semilinear", "--config", str(cfg_path)]) == 2

    def test_solve_semilinear_march(self, tmp_path):
        cfg = {
            "scenario": "solve-semilinear",
            "model": {"m": 1, "n": 3, "p": 2.0, "eps": 1e-3, "M": 2.0},
            "grid": {"r_max": 16.0, "N": 256, "transform": "fft"},
            "output_dir": str(tmp_path / "out"),
            "semilinear": {"horizon": 5.0, "dt": 0.05, "snapshots": 4},
        }
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps(cfg))
        assert main(["solve-semilinear", "--config", str(cfg_path)]) == 0
        rec = json.loads((tmp_path / "out" / "outcome.json-lines").read_text())
        assert rec["kind"] == "global-horizon"
        assert "weighted_norm" in rec

    def test_sweep_p_grid_flag(self, tmp_path):
        cfg = {
            "scenario": "sweep-p",
            "model": {"m": 1, "n": 3, "p": 2.0, "eps": 1e-3, "M": 2.0},
            "grid": {"r_max": 16.0, "N": 256, "transform": "fft"},
            "output_dir": str(tmp_path / "out"),
            "sweep": {"horizon": 4.0, "dt": 0.05},
        }
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps(cfg))
        assert main(["sweep-p", "--config", str(cfg_path), "--p-grid", "1.5,2.5"]) == 0
        lines = (tmp_path / "out" / "outcome.json-lines").read_text().strip().splitlines()
        assert len(lines) == 2
        assert json.loads(lines[0])["p"] == 1.5

    def test_sweep_requires_grid(self, tmp_path):
        cfg = {
            "scenario": "sweep-p",
            "model": {"m": 1, "n": 3, "p": 2.0},
            "grid": {"r_max": 16.0, "N": 256},
            "output_dir": str(tmp_path / "out"),
        }
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps(cfg))
        assert main(["sweep-p", "--config", str(cfg_path)]) == 2

    def test_missing_config_exit_2(self):
        assert main(["solve-linear", "--config", "/nonexistent.json"]) == 2
