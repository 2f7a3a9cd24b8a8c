from pathlib import Path

import pandas as pd

from src.services.attack import calibrate_threshold, load_dataset, train_attack
from src.services.nn import save_model
from src.states_and_contexts.experiment import ExperimentConfig
from src.tools.layout import resolve_layout


def cmd_train(
    config: ExperimentConfig,
    printer: str,
    arch: str | None = None,
    out: str | Path | None = None,
    progress: bool = True,
) -> str:
    """Train and calibrate the attack model of one printer.

    Args:
        config: Validated experiment config
        printer: Printer id present in the dataset
        arch: fc2, fc3, fc4 or bn (defaults to training.arch)
        out: Run directory overriding the config's output_dir
        progress: Show a per-epoch progress bar

    Returns:
        Message with the model path, layer widths, threshold and final loss
    """
    config.printer(printer)
    arch = arch or config.training.arch
    layout = resolve_layout(config, out)
    ds = load_dataset(layout.dataset_dir)
    cfg = config.training.settings_for(printer).to_train_config()

    result = train_attack(ds, printer, arch, cfg, progress=progress)
    am = calibrate_threshold(result.attack_model, ds, printer)

    model_path = save_model(am.model, layout.model_path(printer, arch), threshold=am.threshold)
    loss_path = layout.loss_path(printer, arch)
    pd.DataFrame({
        "epoch": range(1, len(result.loss_history) + 1),
        "loss": result.loss_history,
    }).to_csv(loss_path, index=False)

    dims = " -> ".join(str(d) for d in am.model.dims)
    return f"""Trained {arch} for {printer}: {cfg.epochs} epochs, batch {cfg.batch_size}, lr {cfg.learning_rate:g}.

Model: {model_path} ({dims})
Calibrated threshold: {am.threshold:.2f}
Final mean training loss: {result.loss_history[-1]:.6f}
Loss table: {loss_path}
"""
