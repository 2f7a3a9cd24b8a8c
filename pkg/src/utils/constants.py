"""Geometry defaults, printer preset table and shared numeric constants."""

import numpy as np

# Code geometry: 64x64 modules of 6x6 pixels -> 384x384 image, 24x24-pixel blocks
DEFAULT_MODULES = 64
DEFAULT_MODULE_PX = 6
DEFAULT_BLOCK_PX = 24

# Paper-scale split (384 codes) and desk-scale split (70 codes)
PAPER_SPLIT = {"train": 100, "val": 50, "test": 234}
DESK_SPLIT = {"train": 40, "val": 10, "test": 20}

PAPER_EPOCHS = 1000
DESK_EPOCHS = 150

DEFAULT_DATASET_SEED = 2018
DEFAULT_TRAIN_SEED = 7

# Threshold grid shared by the DNN calibration and the Thr baseline: 0.00 ... 1.00
THRESHOLD_GRID = np.round(np.arange(101) / 100.0, 2)

PRINTER_IDS = ("SA", "LX", "HP", "CA")

LASER_PRINTERS = ("SA", "LX")
INKJET_PRINTERS = ("HP", "CA")

# Virtual printers. The values are tunable knobs, not measurements of the real
# devices. Ordering: dot gain HP > CA > LX >= SA, noise inkjet >= laser.
PRINTER_PRESETS = {
    "SA": {
        "dot_gain_radius": 2,
        "dot_gain_prob": 0.35,
        "psf_sigma": 1.2,
        "gain": 0.9,
        "offset": 0.05,
        "noise_sigma": 0.08,
        "quantize": True,
    },
    "LX": {
        "dot_gain_radius": 2,
        "dot_gain_prob": 0.4,
        "psf_sigma": 1.2,
        "gain": 0.9,
        "offset": 0.05,
        "noise_sigma": 0.09,
        "quantize": True,
    },
    "CA": {
        "dot_gain_radius": 2,
        "dot_gain_prob": 0.55,
        "psf_sigma": 1.4,
        "gain": 0.85,
        "offset": 0.08,
        "noise_sigma": 0.12,
        "quantize": True,
    },
    "HP": {
        "dot_gain_radius": 3,
        "dot_gain_prob": 0.5,
        "psf_sigma": 1.5,
        "gain": 0.85,
        "offset": 0.1,
        "noise_sigma": 0.13,
        "quantize": True,
    },
}
