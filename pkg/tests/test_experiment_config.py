import json

import pytest

from src.config.settings import CONFIG_DIR
from src.services.channel import ChannelParams, preset
from src.states_and_contexts.experiment import ExperimentConfig
from src.utils.errors import ConfigError


def _write(tmp_path, doc) -> str:
    path = tmp_path / "config.json"
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return path


def test_desk_defaults():
    config = ExperimentConfig.desk_scale()
    d = config.dataset
    assert (d.n_images, d.train, d.val, d.test) == (70, 40, 10, 20)
    assert config.training.params.epochs == 150
    assert config.printer_ids == ["SA", "LX", "HP", "CA"]
    assert config.channel_params()["HP"] == preset("HP")


def test_paper_defaults():
    config = ExperimentConfig.paper_scale()
    d = config.dataset
    assert (d.n_images, d.train, d.val, d.test) == (384, 100, 50, 234)
    assert config.training.params.epochs == 1000


@pytest.mark.parametrize("name,scale", [("desk.json", "desk_scale"), ("paper.json", "paper_scale")])
def test_shipped_configs_match_presets(name, scale):
    loaded = ExperimentConfig.load(CONFIG_DIR / name)
    expected = getattr(ExperimentConfig, scale)()
    assert loaded.dataset == expected.dataset
    assert loaded.training == expected.training
    assert loaded.printer_ids == expected.printer_ids


def test_identity_config_loads():
    config = ExperimentConfig.load(CONFIG_DIR / "identity.json")
    assert config.channel_params() == {"ID": ChannelParams.identity()}


def test_split_must_sum(tmp_path):
    path = _write(tmp_path, {"dataset": {"n_images": 10, "train": 5, "val": 2, "test": 2}})
    with pytest.raises(ConfigError, match="dataset"):
        ExperimentConfig.load(path)


def test_duplicate_printers(tmp_path):
    path = _write(tmp_path, {"printers": [{"id": "SA"}, {"id": "SA"}]})
    with pytest.raises(ConfigError, match="unique"):
        ExperimentConfig.load(path)


def test_field_path_in_message(tmp_path):
    path = _write(tmp_path, {"training": {"params": {"epochs": 0}}})
    with pytest.raises(ConfigError, match=r"training\.params\.epochs"):
        ExperimentConfig.load(path)


def test_unknown_field_rejected(tmp_path):
    path = _write(tmp_path, {"geometry": {"modules": 64, "pixels": 3}})
    with pytest.raises(ConfigError, match=r"geometry\.pixels"):
        ExperimentConfig.load(path)


def test_geometry_must_tile(tmp_path):
    path = _write(tmp_path, {"geometry": {"modules": 10, "module_px": 6, "block_px": 24}})
    with pytest.raises(ConfigError, match="geometry"):
        ExperimentConfig.load(path)


def test_json_syntax_error_has_position(tmp_path):
    path = _write(tmp_path, '{\n  "dataset": {,\n}')
    with pytest.raises(ConfigError, match="line 2"):
        ExperimentConfig.load(path)


def test_version_is_checked(tmp_path):
    path = _write(tmp_path, {"config_version": 2})
    with pytest.raises(ConfigError, match="config_version"):
        ExperimentConfig.load(path)


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        ExperimentConfig.load(tmp_path / "nope.json")


def test_printer_overrides(tmp_path):
    path = _write(tmp_path, {"printers": [{"id": "SA", "overrides": {"noise_sigma": 0.0}}]})
    params = ExperimentConfig.load(path).channel_params()["SA"]
    assert params.noise_sigma == 0.0
    assert params.psf_sigma == preset("SA").psf_sigma


def test_unknown_printer_without_base(tmp_path):
    path = _write(tmp_path, {"printers": [{"id": "ZZ"}]})
    with pytest.raises(ConfigError, match="ZZ"):
        ExperimentConfig.load(path)


def test_per_printer_training(tmp_path):
    path = _write(tmp_path, {"training": {"per_printer": {"HP": {"epochs": 5, "lambda": 0.01,
                                                                   "regularizer": "l2_weights"}}}})
    config = ExperimentConfig.load(path)
    cfg = config.training.settings_for("HP").to_train_config()
    assert (cfg.epochs, cfg.lam, cfg.weight_decay) == (5, 0.01, 0.01)
    assert config.training.settings_for("SA").epochs == 150


def test_per_printer_must_reference_known_printer(tmp_path):
    path = _write(tmp_path, {"training": {"per_printer": {"XX": {"epochs": 5}}}})
    with pytest.raises(ConfigError, match="XX"):
        ExperimentConfig.load(path)


def test_seed_override():
    config = ExperimentConfig.desk_scale().with_seed(99)
    assert config.dataset.seed == 99
    assert config.training.params.seed == 99


def test_unknown_printer_lookup():
    with pytest.raises(ConfigError):
        ExperimentConfig.desk_scale().printer("XX")
