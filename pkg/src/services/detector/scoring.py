"""Authentic vs. fake scores for one printer.

For each test code x_i the defender compares x_i with a fresh print of x_i
(authentic) and with a print of the attacker's estimate x̂_i (fake), both made
on the same virtual printer.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Mapping, Sequence

from src.config.settings import MAX_WORKERS
from src.services.attack.baseline import calibrate_pixel_threshold, thr_estimate
from src.services.attack.dataset import PairedDataset
from src.services.channel import ChannelParams, print_scan
from src.services.codegen import ModuleMatrix, PixelImage, render
from src.services.detector.roc import MEASURE_SIGN, ScoreSet
from src.services.detector.similarity import hamming_norm, pearson_or_zero
from src.utils.errors import MissingArtifactError, ParameterError
from src.utils.seeding import image_seed


def defender_threshold(ds: PairedDataset, printer: str) -> float:
    """The defender's own Thr calibration on authentic validation prints."""
    return calibrate_pixel_threshold(ds, printer).threshold


def score_experiment(
        ds: PairedDataset,
        estimates: Mapping[int, ModuleMatrix],
        params: ChannelParams,
        printer: str,
        authentic_seed: int,
        fake_seed: int,
        measures: Sequence[str] = ("pearson", "hamming"),
        threshold: float | None = None,
        split: str = "test",
        max_workers: int = MAX_WORKERS,
) -> dict[str, ScoreSet]:
    """Score every code of ``split`` against its authentic re-print and its fake.

    ``authentic_seed`` and ``fake_seed`` are stream bases; image i uses
    ``base ^ i``. ``threshold`` is the defender's binarization threshold for
    the hamming measure (calibrated with :func:`defender_threshold` when None).
    """
    unknown = [m for m in measures if m not in MEASURE_SIGN]
    if unknown:
        raise ParameterError(f"Unknown measures: {', '.join(unknown)}")
    indices = ds.indices(split)
    missing = [i for i in indices if i not in estimates]
    if missing:
        raise MissingArtifactError(
            f"No estimate for {len(missing)} {split} image(s) (first: {missing[0]}); run `attack` first"
        )
    if "hamming" in measures and threshold is None:
        threshold = defender_threshold(ds, printer)
    module_px = ds.geometry.module_px

    def measure(original: ModuleMatrix, rendered: PixelImage, scan: PixelImage) -> dict[str, float]:
        scores = {}
        if "pearson" in measures:
            scores["pearson"] = pearson_or_zero(rendered.values, scan.ink_intensity())
        if "hamming" in measures:
            scores["hamming"] = hamming_norm(original.flat(), thr_estimate(scan, threshold, module_px).flat())
        return scores

    def score_image(index: int) -> tuple[dict[str, float], dict[str, float]]:
        original = ds.originals[index]
        rendered = render(original, module_px)
        authentic = print_scan(rendered, params, image_seed(authentic_seed, index))
        fake = print_scan(render(estimates[index], module_px), params, image_seed(fake_seed, index))
        return measure(original, rendered, authentic), measure(original, rendered, fake)

    with ThreadPoolExecutor(max_workers=max(1, max_workers)) as executor:
        results = list(executor.map(score_image, indices))

    return {
        m: ScoreSet(
            authentic=[r[0][m] for r in results],
            fake=[r[1][m] for r in results],
            measure=m,
        )
        for m in measures
    }
