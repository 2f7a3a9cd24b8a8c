from pathlib import Path

import numpy as np
import pandas as pd

from src.services.attack import load_dataset
from src.services.codegen import PixelImage, render
from src.services.detector import auc, defender_threshold, pd_at_pfa, pfa_at_pd, roc, score_experiment
from src.states_and_contexts.experiment import ExperimentConfig
from src.tools.layout import resolve_layout
from src.utils.charts import RocCharts
from src.utils.errors import MissingArtifactError
from src.utils.pnm import read_pbm, write_pgm
from src.utils.seeding import stream_seed


def _load_estimates(layout, printer: str, arch: str, method: str, indices: list[int]) -> dict:
    estimates = {}
    for i in indices:
        path = layout.estimate_path(printer, arch, method, i)
        if not path.exists():
            raise MissingArtifactError(
                f"No {method} estimate at {path}; run `attack --printer {printer} --arch {arch}` first"
            )
        estimates[i] = read_pbm(path)
    return estimates


def cmd_roc(
    config: ExperimentConfig,
    printer: str,
    arch: str | None = None,
    out: str | Path | None = None,
) -> str:
    """Score authentic re-prints against model fakes and Thr fakes, then build ROC tables.

    Args:
        config: Validated experiment config
        printer: Printer id present in the dataset
        arch: Architecture whose estimates are scored (defaults to training.arch)
        out: Run directory overriding the config's output_dir

    Returns:
        Message with AUC and operating-point summaries per measure and method
    """
    config.printer(printer)
    arch = arch or config.training.arch
    evaluation = config.evaluation
    layout = resolve_layout(config, out)
    ds = load_dataset(layout.dataset_dir)
    ds.require_printer(printer)

    indices = ds.indices("test")
    methods = {
        arch: _load_estimates(layout, printer, arch, "model", indices),
        "thr": _load_estimates(layout, printer, arch, "thr", indices),
    }

    params = ds.channel_params[printer]
    # one authentic stream and one fake stream shared by both methods
    authentic_seed = stream_seed(ds.seed, f"reprint:authentic:{printer}")
    fake_seed = stream_seed(ds.seed, f"reprint:fake:{printer}")
    threshold = defender_threshold(ds, printer) if "hamming" in evaluation.measures else None

    roc_dir = layout.roc_dir(printer, arch)
    roc_dir.mkdir(parents=True, exist_ok=True)
    scores = {
        method: score_experiment(
            ds, estimates, params, printer,
            authentic_seed=authentic_seed,
            fake_seed=fake_seed,
            measures=evaluation.measures,
            threshold=threshold,
        )
        for method, estimates in methods.items()
    }

    summary_rows = []
    charts = RocCharts(printer, str(roc_dir / "plots"))
    for measure in evaluation.measures:
        curves = {}
        for method in methods:
            score_set = scores[method][measure]
            curve = roc(score_set)
            curves[method] = curve
            curve.to_frame().to_csv(roc_dir / f"roc_{measure}_{method}.csv", index=False)
            score_set.to_frame().to_csv(roc_dir / f"scores_{measure}_{method}.csv", index=False)

            row = {
                "printer": printer,
                "measure": measure,
                "method": method,
                "auc": auc(curve),
                "mean_authentic": float(score_set.authentic.mean()),
                "mean_fake": float(score_set.fake.mean()),
            }
            row.update({f"pd_at_pfa_{t:g}": pd_at_pfa(curve, t) for t in evaluation.target_pfa})
            row.update({f"pfa_at_pd_{t:g}": pfa_at_pd(curve, t) for t in evaluation.target_pd})
            summary_rows.append(row)

        if evaluation.plots:
            charts.plot_roc(curves, measure)
            if evaluation.log_scale:
                charts.plot_roc(curves, measure, log_scale=True)
            charts.plot_score_histogram({m: scores[m][measure] for m in methods}, measure)

    module_px = ds.geometry.module_px
    for method, estimates in methods.items():
        for i in indices:
            diff = np.abs(
                ds.target(i).values.astype(np.int16) - render(estimates[i], module_px).values.astype(np.int16)
            ).astype(np.uint8)
            write_pgm(PixelImage(diff, domain="binary01"), roc_dir / "diffs" / method / f"diff_{i:04d}.pgm")

    summary = pd.DataFrame(summary_rows)
    summary.to_csv(roc_dir / "summary.csv", index=False)

    lines = [f"{r['measure']:<8} {r['method'].upper():<5} AUC {r['auc']:.4f}" for r in summary_rows]
    return f"""Scored {len(indices)} test codes of {printer}: authentic re-prints vs {arch.upper()} and THR fakes.

{chr(10).join(lines)}

ROC tables and summary: {roc_dir}
Difference images: {roc_dir / 'diffs'}
"""
