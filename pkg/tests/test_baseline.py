import numpy as np
import pytest

from src.services.attack import SplitSizes, baseline_thr, build_dataset, calibrate_pixel_threshold, thr_estimate
from src.services.channel import ChannelParams
from src.services.codegen import Geometry
from src.services.detector import hamming_norm
from src.utils.constants import THRESHOLD_GRID
from src.utils.errors import StateError


def _mean_error(ds, baseline) -> float:
    return float(np.mean([
        hamming_norm(ds.originals[i].flat(), baseline.estimates[i].flat()) for i in ds.indices("test")
    ]))


def test_identity_channel_is_exact(identity_dataset):
    baseline = baseline_thr(identity_dataset, "ID")
    assert set(baseline.estimates) == set(identity_dataset.indices("test"))
    assert _mean_error(identity_dataset, baseline) == 0.0


def test_heavy_noise_is_worse_than_identity():
    # one pixel per module so majority voting cannot hide pixel errors
    geometry = Geometry(modules=48, module_px=1, block_px=24)
    printers = {"ID": ChannelParams.identity(), "NOISE": ChannelParams(noise_sigma=0.5)}
    ds = build_dataset(12, geometry, printers, seed=4, split=SplitSizes(4, 4, 4))
    assert _mean_error(ds, baseline_thr(ds, "NOISE")) > _mean_error(ds, baseline_thr(ds, "ID"))


def test_uses_the_shared_grid(noisy_dataset):
    sweep = calibrate_pixel_threshold(noisy_dataset, "SA")
    np.testing.assert_array_equal(sweep.grid, THRESHOLD_GRID)
    assert sweep.threshold in THRESHOLD_GRID


def test_thr_estimate_on_clean_scan(identity_dataset):
    estimate = thr_estimate(identity_dataset.scans["ID"][0], 0.5, module_px=6)
    assert estimate == identity_dataset.originals[0]


def test_empty_validation(tiny_geometry):
    ds = build_dataset(2, tiny_geometry, {"ID": ChannelParams.identity()}, seed=0, split=SplitSizes(1, 0, 1))
    with pytest.raises(StateError):
        baseline_thr(ds, "ID")
