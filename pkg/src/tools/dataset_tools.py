from pathlib import Path

from src.services.attack import SplitSizes, build_dataset, save_dataset
from src.states_and_contexts.experiment import ExperimentConfig
from src.tools.layout import resolve_layout


def cmd_gen(config: ExperimentConfig, out: str | Path | None = None, progress: bool = True) -> str:
    """Generate originals and per-printer scans and write them with a manifest.

    Args:
        config: Validated experiment config
        out: Run directory overriding the config's output_dir
        progress: Show a progress bar while generating

    Returns:
        Message with the manifest path and the split/block counts
    """
    layout = resolve_layout(config, out)
    d = config.dataset
    ds = build_dataset(
        n_images=d.n_images,
        geometry=config.geometry.to_geometry(),
        printers=config.channel_params(),
        seed=d.seed,
        split=SplitSizes(d.train, d.val, d.test),
        progress=progress,
    )
    manifest_path = save_dataset(ds, layout.dataset_dir)

    counts = ds.block_counts()
    return f"""Generated {len(ds)} codes for printers {', '.join(ds.printers)} (seed {ds.seed}).

Manifest: {manifest_path}
Split (images): train {d.train} / val {d.val} / test {d.test}
Blocks: train {counts['train']} / val {counts['val']} / test {counts['test']}
"""
