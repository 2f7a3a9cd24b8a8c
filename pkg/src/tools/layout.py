"""Where every command reads and writes inside a run directory."""

from dataclasses import dataclass
from pathlib import Path

from src.config.settings import DEFAULT_OUTPUT_DIR
from src.states_and_contexts.experiment import ExperimentConfig


@dataclass(frozen=True)
class RunLayout:
    root: Path

    @property
    def dataset_dir(self) -> Path:
        return self.root / "dataset"

    @property
    def models_dir(self) -> Path:
        return self.root / "models"

    @property
    def report_dir(self) -> Path:
        return self.root / "report"

    def model_path(self, printer: str, arch: str) -> Path:
        return self.models_dir / f"{printer}_{arch}.pgcm"

    def loss_path(self, printer: str, arch: str) -> Path:
        return self.models_dir / f"{printer}_{arch}_loss.csv"

    def attack_dir(self, printer: str, arch: str) -> Path:
        return self.root / "attack" / f"{printer}_{arch}"

    def estimate_path(self, printer: str, arch: str, method: str, index: int) -> Path:
        return self.attack_dir(printer, arch) / "estimates" / method / f"code_{index:04d}.pbm"

    def metrics_path(self, printer: str, arch: str) -> Path:
        return self.attack_dir(printer, arch) / "metrics.csv"

    def roc_dir(self, printer: str, arch: str) -> Path:
        return self.root / "roc" / f"{printer}_{arch}"


def resolve_layout(config: ExperimentConfig, out: str | Path | None = None) -> RunLayout:
    """--out wins over the config's output_dir, which wins over PGC_OUTPUT_DIR."""
    root = out or config.output_dir or DEFAULT_OUTPUT_DIR
    return RunLayout(Path(root))
