"""Attacker pipeline: paired dataset, network estimator and the Thr baseline."""

from src.services.attack.baseline import (
    ThrBaseline,
    baseline_thr,
    calibrate_pixel_threshold,
    thr_estimate,
)
from src.services.attack.dataset import (
    PAPER_SPLIT_SIZES,
    PairedDataset,
    SplitSizes,
    build_dataset,
    load_dataset,
    save_dataset,
)
from src.services.attack.estimator import (
    AttackModel,
    ThresholdSweep,
    TrainingResult,
    calibrate_threshold,
    estimate_code,
    estimate_with_output,
    predict_image,
    sweep_threshold,
    train_attack,
)

__all__ = [
    "AttackModel",
    "PAPER_SPLIT_SIZES",
    "PairedDataset",
    "SplitSizes",
    "ThrBaseline",
    "ThresholdSweep",
    "TrainingResult",
    "baseline_thr",
    "build_dataset",
    "calibrate_pixel_threshold",
    "calibrate_threshold",
    "estimate_code",
    "estimate_with_output",
    "load_dataset",
    "predict_image",
    "save_dataset",
    "sweep_threshold",
    "thr_estimate",
    "train_attack",
]
