"""Attack estimator: train a network per printer, calibrate its threshold, regenerate codes."""

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np
from tqdm import tqdm

from src.config.settings import SHOW_PROGRESS
from src.services.attack.dataset import PairedDataset
from src.services.codegen import (
    BlockSet,
    ModuleMatrix,
    PixelImage,
    assemble_blocks,
    binarize,
    modules_from_pixels,
    split_blocks,
)
from src.services.nn import (
    MlpModel,
    TrainConfig,
    backward,
    build_model,
    forward,
    init_adam_state,
    optimizer_step,
)
from src.utils.constants import DEFAULT_MODULE_PX, THRESHOLD_GRID
from src.utils.errors import DimensionMismatchError, StateError

# rows per forward call during inference
INFERENCE_CHUNK = 4096


@dataclass
class AttackModel:
    """Trained network and, once calibrated, its binarization threshold for one printer."""
    model: MlpModel
    printer: str
    arch: str
    threshold: float | None = None

    @property
    def block_px(self) -> int:
        side = math.isqrt(self.model.input_dim)
        if side * side != self.model.input_dim:
            raise DimensionMismatchError(f"Model input {self.model.input_dim} is not a square block")
        return side

    def require_threshold(self) -> float:
        if self.threshold is None:
            raise StateError(f"Attack model for {self.printer} is not calibrated; run calibrate_threshold")
        return self.threshold


@dataclass
class TrainingResult:
    attack_model: AttackModel
    loss_history: list[float]


@dataclass
class ThresholdSweep:
    """Mean normalized Hamming error at every grid threshold."""
    threshold: float
    error: float
    errors: np.ndarray
    grid: np.ndarray


def sweep_threshold(
        values: np.ndarray,
        targets: np.ndarray,
        grid: np.ndarray = THRESHOLD_GRID,
) -> ThresholdSweep:
    """Pick t from ``grid`` minimizing the error of binarize(values, t, high_is_one).

    With equal-size rows the mean of per-row normalized Hamming equals the
    pooled mismatch rate, so errors are counted over all values at once.
    Ties go to the smallest t.
    """
    values = np.asarray(values, dtype=np.float64).ravel()
    targets = np.asarray(targets).ravel().astype(bool)
    if values.size == 0:
        raise StateError("Threshold sweep needs at least one value")
    if values.size != targets.size:
        raise DimensionMismatchError(f"{values.size} values against {targets.size} targets")

    ones = np.sort(values[targets])
    zeros = np.sort(values[~targets])
    # target 1 predicted 0: value < t ; target 0 predicted 1: value >= t
    missed = np.searchsorted(ones, grid, side="left")
    false_ink = zeros.size - np.searchsorted(zeros, grid, side="left")
    errors = (missed + false_ink) / values.size

    best = int(np.argmin(errors))  # first minimum = smallest t
    return ThresholdSweep(float(grid[best]), float(errors[best]), errors, np.asarray(grid))


def _predict_rows(model: MlpModel, rows: np.ndarray) -> np.ndarray:
    if rows.shape[0] == 0:
        return np.zeros((0, model.output_dim), dtype=model.dtype)
    return np.concatenate([
        forward(model, rows[start:start + INFERENCE_CHUNK])
        for start in range(0, rows.shape[0], INFERENCE_CHUNK)
    ])


def train_attack(
        ds: PairedDataset,
        printer: str,
        arch: str,
        cfg: TrainConfig,
        progress: bool = False,
        on_epoch: Callable[[int, MlpModel], None] | None = None,
) -> TrainingResult:
    """Fit a fresh network to map scan blocks to original blocks.

    Returns the uncalibrated model and the per-epoch mean training loss (each
    batch loss is measured before its update, weighted by batch size).
    ``on_epoch(epoch, model)`` runs after every epoch.
    """
    ds.require_printer(printer)
    inputs, targets = ds.blocks("train", printer)
    n = inputs.shape[0]
    if n == 0:
        raise StateError("Training split is empty")

    model = build_model(arch, cfg.seed, input_dim=ds.geometry.block_dim)
    state = init_adam_state(model)
    # shuffling gets its own stream, separate from weight init
    rng = np.random.default_rng([cfg.seed, 1])

    history: list[float] = []
    epochs = tqdm(
        range(cfg.epochs),
        desc=f"Training {arch} on {printer}",
        disable=not (progress and SHOW_PROGRESS),
    )
    for epoch in epochs:
        order = rng.permutation(n)
        total = 0.0
        for start in range(0, n, cfg.batch_size):
            batch = order[start:start + cfg.batch_size]
            grads = backward(model, inputs[batch], targets[batch], cfg)
            total += grads.loss * len(batch)
            model, state = optimizer_step(model, grads, state, cfg)
        history.append(total / n)
        epochs.set_postfix(loss=f"{history[-1]:.4f}")
        if on_epoch is not None:
            on_epoch(epoch, model)

    return TrainingResult(AttackModel(model, printer, arch), history)


def calibrate_threshold(am: AttackModel, ds: PairedDataset, printer: str | None = None) -> AttackModel:
    """Set t^p to the grid threshold with the lowest validation Hamming error."""
    printer = printer or am.printer
    inputs, targets = ds.blocks("val", printer)
    if inputs.shape[0] == 0:
        raise StateError("Validation split is empty; cannot calibrate a threshold")
    sweep = sweep_threshold(_predict_rows(am.model, inputs), targets)
    return replace(am, threshold=sweep.threshold)


def predict_image(am: AttackModel, scan: PixelImage) -> PixelImage:
    """Grey network output for a whole scan, before thresholding (1 = dark)."""
    block_px = am.block_px
    normalized = PixelImage(scan.ink_intensity(), domain="unit_interval")
    blocks = split_blocks(normalized, block_px)
    outputs = _predict_rows(am.model, blocks.blocks.astype(am.model.dtype))
    grey = BlockSet(block_px, blocks.grid_rows, blocks.grid_cols,
                    np.clip(outputs.astype(np.float64), 0.0, 1.0))
    return assemble_blocks(grey)


def estimate_with_output(
        am: AttackModel,
        scan: PixelImage,
        module_px: int = DEFAULT_MODULE_PX,
) -> tuple[ModuleMatrix, PixelImage]:
    """Estimated code together with the grey output it was thresholded from."""
    threshold = am.require_threshold()
    grey = predict_image(am, scan)
    return modules_from_pixels(binarize(grey, threshold, "high_is_one"), module_px), grey


def estimate_code(am: AttackModel, scan: PixelImage, module_px: int = DEFAULT_MODULE_PX) -> ModuleMatrix:
    """Regenerate the module matrix behind ``scan``."""
    return estimate_with_output(am, scan, module_px)[0]
