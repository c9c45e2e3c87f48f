# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

import json
from unittest.mock import patch

import pytest
import torch

from cfasl.cli.main import main
from cfasl.data import load_synthetic
from cfasl.exceptions import NumericalError
from cfasl.training import (
    LossLog,
    RunConfig,
    build_model,
    checkpoint_path,
    save_checkpoint,
)


@pytest.fixture
def mock_sys_exit():
    with patch("sys.exit") as mock_exit:
        yield mock_exit


def run_cli(*args: str) -> None:
    with patch("sys.argv", ["cfasl", *args]):
        main()


@pytest.fixture
def trained_run(tmp_path):
    """Two optimizer steps on a 16 px synthetic grid."""
    run_dir = tmp_path / "run"
    run_cli(
        "train",
        "--output-dir", str(run_dir),
        "--steps", "2",
        "--batch-size", "8",
        "--latent-dim", "3",
        "--elements-per-section", "2",
        "--checkpoint-every", "1",
    )  # fmt: skip
    return run_dir


class TestVersion:
    def test_displays_version_info(self, capsys):
        run_cli("version")

        captured = capsys.readouterr()
        assert "CFASL version:" in captured.out
        assert "Torch version:" in captured.out
        assert "Python version:" in captured.out
        assert "Installed extras:" in captured.out


class TestConfig:
    def test_shows_resolved_config(self, capsys, monkeypatch):
        monkeypatch.setenv("CFASL_OBJECTIVE__KIND", "beta_tcvae")

        run_cli("config", "show")

        captured = capsys.readouterr()
        assert "Run Configuration" in captured.out
        assert "objective.kind" in captured.out
        assert "beta_tcvae" in captured.out

    def test_reads_toml_file(self, capsys, tmp_path):
        path = tmp_path / "run.toml"
        path.write_text("latent_dim = 7\nseed = 4242\n")

        run_cli("config", "show", "--config", str(path))

        assert "4242" in capsys.readouterr().out

    def test_missing_config_file(self, mock_sys_exit, tmp_path, capsys):
        run_cli("config", "show", "--config", str(tmp_path / "absent.toml"))

        mock_sys_exit.assert_called_once_with(4)
        assert "config file not found" in capsys.readouterr().err

    def test_invalid_config_value(self, mock_sys_exit, monkeypatch):
        monkeypatch.setenv("CFASL_BATCH_SIZE", "7")

        run_cli("config", "show")

        mock_sys_exit.assert_called_once_with(2)


class TestGenData:
    def test_writes_dataset(self, capsys, tmp_path):
        output = tmp_path / "shapes"
        run_cli(
            "gen-data", str(output),
            "--positions-x", "4",
            "--positions-y", "4",
            "--scales", "2",
            "--shapes", "2",
        )  # fmt: skip

        assert "Wrote 64 images" in capsys.readouterr().out
        dataset = load_synthetic(output)
        assert dataset.factor_names == ("shape", "scale", "pos_x", "pos_y")
        assert dataset.is_exhaustive

    def test_zero_drops_factor(self, tmp_path):
        run_cli("gen-data", str(tmp_path), "--scales", "0")
        assert load_synthetic(tmp_path).factor_names == ("pos_x", "pos_y")

    def test_invalid_grid(self, mock_sys_exit, tmp_path):
        run_cli("gen-data", str(tmp_path), "--positions-x", "1")
        mock_sys_exit.assert_called_once_with(2)


class TestTrain:
    def test_writes_checkpoints_and_losses(self, trained_run):
        assert (trained_run / "checkpoint-1.pt").is_file()
        assert (trained_run / "checkpoint-2.pt").is_file()
        rows = LossLog.read(trained_run / "losses.csv")
        assert [row["step"] for row in rows] == [1.0, 2.0]

    def test_resume(self, trained_run):
        run_cli(
            "train",
            "--output-dir", str(trained_run),
            "--steps", "3",
            "--batch-size", "8",
            "--latent-dim", "3",
            "--elements-per-section", "2",
            "--resume", str(trained_run / "checkpoint-2.pt"),
        )  # fmt: skip
        rows = LossLog.read(trained_run / "losses.csv")
        assert [row["step"] for row in rows] == [1.0, 2.0, 3.0]

    def test_ablation_row(self, tmp_path):
        run_cli(
            "train",
            "--output-dir", str(tmp_path),
            "--steps", "1",
            "--batch-size", "8",
            "--latent-dim", "3",
            "--ablation-row", "1",
        )  # fmt: skip
        row = LossLog.read(tmp_path / "losses.csv")[0]
        assert row["total"] == pytest.approx(row["vae"])

    def test_ablation_row_out_of_range(self, mock_sys_exit, capsys):
        run_cli("train", "--ablation-row", "9")

        mock_sys_exit.assert_called_once_with(2)
        assert "--ablation-row must be in [1, 8]" in capsys.readouterr().err

    def test_unknown_disabled_term(self, mock_sys_exit):
        run_cli("train", "--disable", "orthogonal", "--steps", "0")
        mock_sys_exit.assert_called_once_with(2)

    def test_odd_batch(self, mock_sys_exit):
        run_cli("train", "--batch-size", "9", "--steps", "0")
        mock_sys_exit.assert_called_once_with(2)

    def test_numerical_failure(self, mock_sys_exit, tmp_path, capsys):
        error = NumericalError(
            "non-finite loss", loss_name="sparsity", step=5, dump_path=tmp_path / "dump.pt"
        )
        with patch("cfasl.training.trainer.Trainer.train", side_effect=error):
            run_cli("train", "--output-dir", str(tmp_path), "--steps", "0")

        mock_sys_exit.assert_called_once_with(3)
        err = capsys.readouterr().err
        assert "sparsity @ step 5" in err
        assert "Diagnostic dump" in err

    def test_keyboard_interrupt(self, mock_sys_exit, tmp_path):
        with patch("cfasl.training.trainer.Trainer.train", side_effect=KeyboardInterrupt):
            run_cli("train", "--output-dir", str(tmp_path), "--steps", "0")
        mock_sys_exit.assert_called_once_with(130)


class TestEval:
    def test_writes_report(self, trained_run, capsys):
        run_cli(
            "eval", str(trained_run / "checkpoint-2.pt"),
            "--trials", "20",
            "--samples-per-vote", "10",
            "--prune-threshold", "0",
        )  # fmt: skip

        report = json.loads((trained_run / "report.json").read_text())
        assert report["name"] == "fvm"
        assert 0.0 <= report["score"] <= 1.0
        assert report["trials"] == 20
        assert report["config"]["latent_dim"] == 3
        assert "Disentanglement Metric" in capsys.readouterr().out

    def test_multi_factor_report(self, trained_run, tmp_path):
        output = tmp_path / "m_fvm.json"
        run_cli(
            "eval", str(trained_run / "checkpoint-2.pt"),
            "--metric", "m_fvm",
            "--k", "2",
            "--trials", "20",
            "--samples-per-vote", "10",
            "--prune-threshold", "0",
            "--output", str(output),
        )  # fmt: skip

        report = json.loads(output.read_text())
        assert report["k"] == 2
        assert report["aggregate"] == "modal_sum_over_trials"

    def test_unknown_metric(self, trained_run, mock_sys_exit):
        run_cli("eval", str(trained_run / "checkpoint-2.pt"), "--metric", "mig")
        mock_sys_exit.assert_called_once_with(2)

    def test_missing_checkpoint(self, mock_sys_exit, tmp_path, capsys):
        run_cli("eval", str(tmp_path / "checkpoint-9.pt"))

        mock_sys_exit.assert_called_once_with(4)
        assert "I/O error" in capsys.readouterr().err

    def test_corrupt_checkpoint(self, mock_sys_exit, tmp_path):
        path = tmp_path / "checkpoint-1.pt"
        path.write_bytes(b"PK\x03\x04 truncated")
        run_cli("eval", str(path))
        mock_sys_exit.assert_called_once_with(4)


class TestAnalyze:
    def test_speedup_without_checkpoint(self, capsys):
        run_cli("analyze", "speedup", "--repeats", "2")
        assert "Speedup: x" in capsys.readouterr().out

    def test_speedup_from_rgb_checkpoint(self, tmp_path, capsys):
        config = RunConfig(latent_dim=3, elements_per_section=2, batch_size=8)
        model = build_model(config, channels=3)
        optimizer = torch.optim.Adam(model.parameters(), lr=1e-3)
        path = save_checkpoint(
            checkpoint_path(tmp_path, 1), model, optimizer, config, 1, torch.Generator()
        )

        run_cli("analyze", "speedup", "--checkpoint", str(path), "--repeats", "2")

        out = capsys.readouterr().out
        assert "Speedup: x" in out
        assert "|G|=6" in out

    def test_scatter(self, trained_run):
        run_cli(
            "analyze", "scatter",
            "--checkpoint", str(trained_run / "checkpoint-2.pt"),
            "--n", "30",
            "--fix", "scale=1",
            "--color-factor", "pos_x",
        )  # fmt: skip

        lines = (trained_run / "analysis" / "scatter.csv").read_text().splitlines()
        assert len(lines) == 31
        assert lines[0].endswith(",pos_x")

    def test_eigen(self, trained_run, tmp_path):
        run_cli(
            "analyze", "eigen",
            "--checkpoint", str(trained_run / "checkpoint-2.pt"),
            "--output-dir", str(tmp_path),
            "--n", "50",
        )  # fmt: skip

        assert (tmp_path / "eigenvectors.csv").is_file()
        sidecar = json.loads((tmp_path / "eigenvectors.json").read_text())
        assert "one_hotness" in sidecar

    def test_swap_frames(self, trained_run, tmp_path):
        pytest.importorskip("PIL")
        run_cli(
            "analyze", "swap",
            "--checkpoint", str(trained_run / "checkpoint-2.pt"),
            "--output-dir", str(tmp_path),
            "--rows", "0", "100",
            "--num-dims", "2",
        )  # fmt: skip

        assert sorted(p.name for p in tmp_path.glob("swap_*.png")) == [
            "swap_00.png",
            "swap_01.png",
            "swap_02.png",
        ]
        assert json.loads((tmp_path / "swap.json").read_text())["edited_dims"]

    def test_requires_checkpoint(self, mock_sys_exit, capsys):
        run_cli("analyze", "swap")

        mock_sys_exit.assert_called_once_with(2)
        assert "requires --checkpoint" in capsys.readouterr().err

    def test_unknown_factor(self, trained_run, mock_sys_exit, capsys):
        run_cli(
            "analyze", "scatter",
            "--checkpoint", str(trained_run / "checkpoint-2.pt"),
            "--fix", "colour=1",
        )  # fmt: skip

        mock_sys_exit.assert_called_once_with(2)
        assert "Unknown factor 'colour'" in capsys.readouterr().err

    def test_replay_needs_two_rows(self, trained_run, mock_sys_exit):
        run_cli(
            "analyze", "replay",
            "--checkpoint", str(trained_run / "checkpoint-2.pt"),
            "--rows", "3",
        )  # fmt: skip
        mock_sys_exit.assert_called_once_with(2)
