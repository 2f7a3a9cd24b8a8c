from pathlib import Path

import pandas as pd

from src.services.nn import ARCHITECTURES
from src.services.scenario import error_regularity, load_metrics
from src.states_and_contexts.experiment import ExperimentConfig
from src.tools.layout import resolve_layout
from src.utils.errors import MissingArtifactError


def _regeneration_rows(metrics_path: Path, printer: str, arch: str) -> list[dict]:
    df = load_metrics(metrics_path)
    rows = []
    for method, suffix in ((arch, "model"), ("thr", "thr")):
        regularity = error_regularity(df[f"hamming_{suffix}"].astype(float))
        rows.append({
            "printer": printer,
            "run": metrics_path.parent.name,
            "method": method,
            "mean_pearson": float(df[f"pearson_{suffix}"].astype(float).mean()),
            "mean_hamming": regularity["mean_hamming"],
            **{k: v for k, v in regularity.items() if k != "mean_hamming"},
        })
    return rows


def cmd_report(config: ExperimentConfig, out: str | Path | None = None) -> str:
    """Collect every attack and ROC result of a run into two summary tables.

    Args:
        config: Validated experiment config
        out: Run directory overriding the config's output_dir

    Returns:
        Message with the regeneration table and the report paths
    """
    layout = resolve_layout(config, out)
    # printer ids may contain "_"
    runs = [
        (printer, arch)
        for printer in config.printer_ids
        for arch in ARCHITECTURES
        if layout.metrics_path(printer, arch).exists()
    ]
    if not runs:
        raise MissingArtifactError(f"No attack metrics under {layout.root}; run `attack` first")

    regeneration = pd.DataFrame([
        row
        for printer, arch in runs
        for row in _regeneration_rows(layout.metrics_path(printer, arch), printer, arch)
    ])
    layout.report_dir.mkdir(parents=True, exist_ok=True)
    regeneration_path = layout.report_dir / "regeneration.csv"
    regeneration.to_csv(regeneration_path, index=False)

    summaries = sorted((layout.root / "roc").glob("*/summary.csv"))
    detection_path = None
    if summaries:
        detection = pd.concat(
            [pd.read_csv(path).assign(run=path.parent.name) for path in summaries],
            ignore_index=True,
        )
        detection_path = layout.report_dir / "detection.csv"
        detection.to_csv(detection_path, index=False)

    table = regeneration[["printer", "method", "mean_pearson", "mean_hamming", "error_free_pct"]]
    return f"""Regeneration accuracy with respect to the original codes:

{table.to_string(index=False, float_format=lambda v: f'{v:.4f}')}

Report: {regeneration_path}
Detection: {detection_path or 'no ROC summaries yet; run `roc`'}
"""
