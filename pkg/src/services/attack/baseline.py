"""Thr baseline: estimate codes by thresholding the scan directly, no network."""

from dataclasses import dataclass

import numpy as np

from src.services.attack.dataset import PairedDataset
from src.services.attack.estimator import ThresholdSweep, sweep_threshold
from src.services.codegen import ModuleMatrix, PixelImage, binarize, modules_from_pixels
from src.utils.constants import DEFAULT_MODULE_PX
from src.utils.errors import StateError


@dataclass
class ThrBaseline:
    printer: str
    threshold: float
    estimates: dict[int, ModuleMatrix]
    sweep: ThresholdSweep


def calibrate_pixel_threshold(ds: PairedDataset, printer: str, split: str = "val") -> ThresholdSweep:
    """Same grid and criterion as the network calibration, applied to raw ink intensity."""
    ds.require_printer(printer)
    indices = ds.indices(split)
    if not indices:
        raise StateError(f"The {split} split is empty; cannot calibrate a threshold")
    values = np.concatenate([ds.scans[printer][i].ink_intensity().ravel() for i in indices])
    targets = np.concatenate([ds.target(i).values.ravel() for i in indices])
    return sweep_threshold(values, targets)


def thr_estimate(scan: PixelImage, threshold: float, module_px: int = DEFAULT_MODULE_PX) -> ModuleMatrix:
    ink = PixelImage(scan.ink_intensity(), domain="unit_interval")
    return modules_from_pixels(binarize(ink, threshold, "high_is_one"), module_px)


def baseline_thr(ds: PairedDataset, printer: str, split: str = "test") -> ThrBaseline:
    """Calibrate on validation scans, then estimate every code of ``split``."""
    sweep = calibrate_pixel_threshold(ds, printer)
    estimates = {
        i: thr_estimate(ds.scans[printer][i], sweep.threshold, ds.geometry.module_px)
        for i in ds.indices(split)
    }
    return ThrBaseline(printer, sweep.threshold, estimates, sweep)
