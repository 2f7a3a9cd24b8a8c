from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import pandas as pd

from src.config.settings import MAX_WORKERS
from src.services.attack import AttackModel, baseline_thr, estimate_with_output, load_dataset
from src.services.detector import hamming_norm, pearson_or_zero
from src.services.nn import load_model
from src.states_and_contexts.experiment import ExperimentConfig
from src.tools.layout import resolve_layout
from src.utils.errors import MissingArtifactError, StateError
from src.utils.pnm import write_pbm

METRIC_COLUMNS = ["image_index", "pearson_model", "hamming_model", "pearson_thr", "hamming_thr"]


def cmd_attack(
    config: ExperimentConfig,
    printer: str,
    model_path: str | Path | None = None,
    arch: str | None = None,
    out: str | Path | None = None,
) -> str:
    """Regenerate every test code with the trained model and with the Thr baseline.

    Args:
        config: Validated experiment config
        printer: Printer id present in the dataset
        model_path: PGCM file (defaults to the one `train` writes for printer/arch)
        arch: Architecture label used for the run directories
        out: Run directory overriding the config's output_dir

    Returns:
        Message with the mean regeneration metrics of both methods
    """
    config.printer(printer)
    arch = arch or config.training.arch
    layout = resolve_layout(config, out)
    ds = load_dataset(layout.dataset_dir)
    ds.require_printer(printer)

    model_path = Path(model_path) if model_path else layout.model_path(printer, arch)
    if not model_path.exists():
        raise MissingArtifactError(f"No model at {model_path}; run `train --printer {printer} --arch {arch}` first")
    model, threshold = load_model(model_path)
    if threshold is None:
        raise StateError(f"{model_path} carries no calibrated threshold")
    am = AttackModel(model, printer, arch, threshold)

    thr = baseline_thr(ds, printer)
    module_px = ds.geometry.module_px

    def evaluate(index: int) -> dict:
        scan = ds.scans[printer][index]
        original = ds.originals[index]
        target = ds.target(index).values
        estimate, grey = estimate_with_output(am, scan, module_px)

        write_pbm(estimate, layout.estimate_path(printer, arch, "model", index))
        write_pbm(thr.estimates[index], layout.estimate_path(printer, arch, "thr", index))
        return {
            "image_index": index,
            "pearson_model": pearson_or_zero(target, grey.values),
            "hamming_model": hamming_norm(original.flat(), estimate.flat()),
            "pearson_thr": pearson_or_zero(target, scan.ink_intensity()),
            "hamming_thr": hamming_norm(original.flat(), thr.estimates[index].flat()),
        }

    indices = ds.indices("test")
    if not indices:
        raise StateError("Test split is empty; nothing to attack")
    with ThreadPoolExecutor(max_workers=max(1, MAX_WORKERS)) as executor:
        rows = list(executor.map(evaluate, indices))

    df = pd.DataFrame(rows, columns=METRIC_COLUMNS)
    means = df[METRIC_COLUMNS[1:]].mean()
    summary = pd.DataFrame([{"image_index": "mean", **means.to_dict()}], columns=METRIC_COLUMNS)
    metrics_path = layout.metrics_path(printer, arch)
    pd.concat([df.astype({"image_index": object}), summary], ignore_index=True).to_csv(metrics_path, index=False)

    pd.DataFrame({
        "method": ["model", "thr"],
        "threshold": [am.threshold, thr.threshold],
    }).to_csv(layout.attack_dir(printer, arch) / "thresholds.csv", index=False)

    return f"""Attacked {len(indices)} test codes of {printer} with {arch} (t = {am.threshold:.2f}) and Thr (t = {thr.threshold:.2f}).

                 Pearson    Hamming
{arch.upper():<12}  {means['pearson_model']:9.4f}  {means['hamming_model']:9.4f}
{'THR':<12}  {means['pearson_thr']:9.4f}  {means['hamming_thr']:9.4f}

Metrics: {metrics_path}
Estimates: {layout.attack_dir(printer, arch) / 'estimates'}
"""
