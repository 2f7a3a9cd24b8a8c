import numpy as np
import pytest

from src.services.attack import SplitSizes, build_dataset
from src.services.channel import ChannelParams, preset
from src.services.codegen import Geometry
from src.states_and_contexts.experiment import (
    DatasetConfig,
    ExperimentConfig,
    PrinterConfig,
    TrainingConfig,
    TrainSettings,
)

# 8x8 modules of 6 px -> 48 px codes, four 24 px blocks each
TINY = Geometry(modules=8, module_px=6, block_px=24)


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow reference tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def tiny_geometry() -> Geometry:
    return TINY


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def identity_dataset():
    return build_dataset(
        n_images=8,
        geometry=TINY,
        printers={"ID": ChannelParams.identity()},
        seed=11,
        split=SplitSizes(4, 2, 2),
        max_workers=2,
    )


@pytest.fixture
def noisy_dataset():
    return build_dataset(
        n_images=8,
        geometry=TINY,
        printers={"SA": preset("SA"), "ID": ChannelParams.identity()},
        seed=11,
        split=SplitSizes(4, 2, 2),
        max_workers=2,
    )


@pytest.fixture
def tiny_config(tmp_path) -> ExperimentConfig:
    """Two printers, eight tiny codes, three epochs: the whole CLI pipeline in seconds."""
    return ExperimentConfig(
        geometry={"modules": 8, "module_px": 6, "block_px": 24},
        dataset=DatasetConfig(n_images=8, train=4, val=2, test=2, seed=5),
        printers=[PrinterConfig(id="SA"), PrinterConfig(id="ID", base="identity")],
        training=TrainingConfig(arch="fc2", params=TrainSettings(epochs=3, batch_size=8)),
        output_dir=tmp_path / "run",
    )
