import pandas as pd
import pytest

from main import main
from src.services.nn import load_model
from src.states_and_contexts.experiment import PrinterConfig
from src.tools.attack_tools import cmd_attack
from src.tools.dataset_tools import cmd_gen
from src.tools.detection_tools import cmd_roc
from src.tools.layout import resolve_layout
from src.tools.report_tools import cmd_report
from src.tools.training_tools import cmd_train
from src.utils.errors import MissingArtifactError
from src.utils.pnm import read_pgm


def run_pipeline(config, out, printer="ID"):
    cmd_gen(config, out=out, progress=False)
    cmd_train(config, printer, out=out, progress=False)
    cmd_attack(config, printer, out=out)
    cmd_roc(config, printer, out=out)
    return cmd_report(config, out=out)


def test_full_pipeline_artifacts(tiny_config, tmp_path):
    out = tmp_path / "run"
    message = run_pipeline(tiny_config, out)
    layout = resolve_layout(tiny_config, out)

    assert (layout.dataset_dir / "manifest.json").exists()
    assert len(list((layout.dataset_dir / "originals").glob("*.pbm"))) == 8
    assert len(list((layout.dataset_dir / "scans" / "SA").glob("*.pgm"))) == 8

    model, threshold = load_model(layout.model_path("ID", "fc2"))
    assert model.dims == [576, 576, 576, 576]
    assert threshold is not None and 0.0 <= threshold <= 1.0
    assert len(pd.read_csv(layout.loss_path("ID", "fc2"))) == 3

    metrics = pd.read_csv(layout.metrics_path("ID", "fc2"))
    assert len(metrics) == 2 + 1
    assert metrics["image_index"].astype(str).tolist()[-1] == "mean"
    # clean channel: thresholding the scan recovers every code
    assert metrics["hamming_thr"].astype(float).max() == 0.0

    roc_dir = layout.roc_dir("ID", "fc2")
    for measure in ("pearson", "hamming"):
        for method in ("fc2", "thr"):
            table = pd.read_csv(roc_dir / f"roc_{measure}_{method}.csv")
            assert list(table.columns) == ["gamma", "pd", "pfa"]
            scores = pd.read_csv(roc_dir / f"scores_{measure}_{method}.csv")
            assert list(scores.columns) == ["score", "label"]
        assert (roc_dir / "plots" / f"roc_{measure}.svg").exists()
        assert (roc_dir / "plots" / f"roc_{measure}_log.svg").exists()
        assert (roc_dir / "plots" / f"hist_{measure}.svg").exists()

    summary = pd.read_csv(roc_dir / "summary.csv")
    assert {"auc", "pd_at_pfa_0.01", "pfa_at_pd_0.95"} <= set(summary.columns)
    assert ((summary["auc"] >= 0) & (summary["auc"] <= 1)).all()

    assert (layout.report_dir / "regeneration.csv").exists()
    assert (layout.report_dir / "detection.csv").exists()
    assert "Regeneration accuracy" in message


def test_diff_of_exact_estimate_is_black(tiny_config, tmp_path):
    out = tmp_path / "run"
    run_pipeline(tiny_config, out)
    diffs = sorted((resolve_layout(tiny_config, out).roc_dir("ID", "fc2") / "diffs" / "thr").glob("*.pgm"))
    assert len(diffs) == 2
    assert all(not read_pgm(path).values.any() for path in diffs)


def test_reruns_are_byte_identical(tiny_config, tmp_path):
    run_pipeline(tiny_config, tmp_path / "a", printer="SA")
    run_pipeline(tiny_config, tmp_path / "b", printer="SA")
    files_a = sorted(p.relative_to(tmp_path / "a") for p in (tmp_path / "a").rglob("*") if p.is_file())
    files_b = sorted(p.relative_to(tmp_path / "b") for p in (tmp_path / "b").rglob("*") if p.is_file())
    assert files_a == files_b
    for rel in files_a:
        assert (tmp_path / "a" / rel).read_bytes() == (tmp_path / "b" / rel).read_bytes(), rel


def test_train_before_gen(tiny_config, tmp_path):
    with pytest.raises(MissingArtifactError, match="gen"):
        cmd_train(tiny_config, "SA", out=tmp_path / "empty", progress=False)


def test_roc_before_attack(tiny_config, tmp_path):
    out = tmp_path / "run"
    cmd_gen(tiny_config, out=out, progress=False)
    with pytest.raises(MissingArtifactError, match="attack"):
        cmd_roc(tiny_config, "SA", out=out)


def test_report_before_attack(tiny_config, tmp_path):
    with pytest.raises(MissingArtifactError):
        cmd_report(tiny_config, out=tmp_path / "empty")


def test_report_keeps_printer_ids_with_underscores(tiny_config, tmp_path):
    config = tiny_config.model_copy(update={"printers": [PrinterConfig(id="my_printer", base="identity")]})
    out = tmp_path / "run"
    cmd_gen(config, out=out, progress=False)
    cmd_train(config, "my_printer", out=out, progress=False)
    cmd_attack(config, "my_printer", out=out)
    cmd_report(config, out=out)

    table = pd.read_csv(resolve_layout(config, out).report_dir / "regeneration.csv")
    assert table["printer"].tolist() == ["my_printer", "my_printer"]
    assert table["method"].tolist() == ["fc2", "thr"]


class TestMain:
    def _config_file(self, config, tmp_path):
        path = tmp_path / "tiny.json"
        path.write_text(config.model_dump_json(by_alias=True))
        return str(path)

    def test_gen_via_cli(self, tiny_config, tmp_path, capsys):
        path = self._config_file(tiny_config, tmp_path)
        code = main(["gen", "--config", path, "--out", str(tmp_path / "cli")])
        assert code == 0
        assert "Generated 8 codes" in capsys.readouterr().out
        assert (tmp_path / "cli" / "dataset" / "manifest.json").exists()

    def test_seed_flag_changes_codes(self, tiny_config, tmp_path):
        path = self._config_file(tiny_config, tmp_path)
        main(["gen", "--config", path, "--out", str(tmp_path / "s1"), "--seed", "1"])
        main(["gen", "--config", path, "--out", str(tmp_path / "s2"), "--seed", "2"])
        a = (tmp_path / "s1" / "dataset" / "originals" / "code_0000.pbm").read_bytes()
        b = (tmp_path / "s2" / "dataset" / "originals" / "code_0000.pbm").read_bytes()
        assert a != b

    def test_missing_dataset_exit_code(self, tiny_config, tmp_path, capsys):
        path = self._config_file(tiny_config, tmp_path)
        code = main(["train", "--config", path, "--out", str(tmp_path / "none"), "--printer", "SA"])
        assert code == 5
        err = capsys.readouterr().err.strip()
        assert err.startswith("error[missing-artifact]:")
        assert len(err.splitlines()) == 1

    def test_invalid_config_exit_code(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text('{"dataset": {"n_images": 3}}')
        assert main(["gen", "--config", str(path)]) == 4
        assert capsys.readouterr().err.startswith("error[config]:")

    def test_unknown_printer(self, tiny_config, tmp_path, capsys):
        path = self._config_file(tiny_config, tmp_path)
        assert main(["train", "--config", path, "--printer", "HP", "--out", str(tmp_path / "x")]) == 4
        assert "HP" in capsys.readouterr().err

    def test_unknown_verb(self):
        with pytest.raises(SystemExit):
            main(["fly"])
