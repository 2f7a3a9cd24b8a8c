from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from src.services.channel import ChannelParams, preset
from src.services.codegen import Geometry
from src.services.nn import TrainConfig
from src.utils.constants import (
    DEFAULT_BLOCK_PX,
    DEFAULT_DATASET_SEED,
    DEFAULT_MODULE_PX,
    DEFAULT_MODULES,
    DEFAULT_TRAIN_SEED,
    DESK_EPOCHS,
    DESK_SPLIT,
    PAPER_EPOCHS,
    PAPER_SPLIT,
    PRINTER_IDS,
)
from src.utils.errors import ConfigError

CONFIG_VERSION = 1

Measure = Literal["pearson", "hamming"]
SplitTag = Literal["train", "val", "test"]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


# ========================================
# Experiment config document
# ========================================
class GeometryConfig(_Strict):
    modules: int = Field(DEFAULT_MODULES, ge=1)
    module_px: int = Field(DEFAULT_MODULE_PX, ge=1)
    block_px: int = Field(DEFAULT_BLOCK_PX, ge=1)

    @model_validator(mode="after")
    def _blocks_tile_the_image(self):
        image_px = self.modules * self.module_px
        if image_px % self.block_px:
            raise ValueError(f"block_px={self.block_px} does not divide the {image_px}-pixel code")
        return self

    def to_geometry(self) -> Geometry:
        return Geometry(self.modules, self.module_px, self.block_px)


class DatasetConfig(_Strict):
    n_images: int = Field(sum(DESK_SPLIT.values()), ge=1)
    train: int = Field(DESK_SPLIT["train"], ge=0)
    val: int = Field(DESK_SPLIT["val"], ge=0)
    test: int = Field(DESK_SPLIT["test"], ge=0)
    seed: int = Field(DEFAULT_DATASET_SEED, ge=0)

    @model_validator(mode="after")
    def _split_sums_to_total(self):
        total = self.train + self.val + self.test
        if total != self.n_images:
            raise ValueError(
                f"split sizes train+val+test = {total} must equal n_images = {self.n_images}"
            )
        return self


class ChannelOverrides(_Strict):
    """Partial ChannelParams; unset fields keep the preset value."""
    dot_gain_radius: Optional[int] = Field(None, ge=0)
    dot_gain_prob: Optional[float] = Field(None, ge=0.0, le=1.0)
    psf_sigma: Optional[float] = Field(None, ge=0.0)
    gain: Optional[float] = Field(None, gt=0.0)
    offset: Optional[float] = Field(None, ge=-1.0, le=1.0)
    noise_sigma: Optional[float] = Field(None, ge=0.0)
    quantize: Optional[bool] = None


class PrinterConfig(_Strict):
    id: str
    base: Optional[str] = None  # preset to start from; defaults to id, "identity" for a clean channel
    overrides: ChannelOverrides = Field(default_factory=ChannelOverrides)

    @model_validator(mode="after")
    def _known_base(self):
        base = self.base or self.id
        if base != "identity" and base not in PRINTER_IDS:
            raise ValueError(
                f"printer '{base}' has no preset; set base to one of {', '.join(PRINTER_IDS)} or identity"
            )
        return self

    def channel_params(self) -> ChannelParams:
        base = self.base or self.id
        params = ChannelParams.identity() if base == "identity" else preset(base)
        return params.with_overrides(**self.overrides.model_dump())


class TrainSettings(_Strict):
    epochs: int = Field(DESK_EPOCHS, ge=1)
    batch_size: int = Field(128, ge=1)
    learning_rate: float = Field(1e-3, gt=0.0)
    lam: float = Field(0.0, ge=0.0, alias="lambda")
    regularizer: Literal["none", "l2_weights"] = "none"
    seed: int = Field(DEFAULT_TRAIN_SEED, ge=0)

    def to_train_config(self) -> TrainConfig:
        return TrainConfig(
            epochs=self.epochs,
            batch_size=self.batch_size,
            learning_rate=self.learning_rate,
            lam=self.lam,
            regularizer=self.regularizer,
            seed=self.seed,
        )


class TrainingConfig(_Strict):
    arch: Literal["fc2", "fc3", "fc4", "bn"] = "bn"
    params: TrainSettings = Field(default_factory=TrainSettings)
    per_printer: dict[str, TrainSettings] = Field(default_factory=dict)

    def settings_for(self, printer: str) -> TrainSettings:
        return self.per_printer.get(printer, self.params)


class EvaluationConfig(_Strict):
    measures: list[Measure] = Field(default_factory=lambda: ["pearson", "hamming"], min_length=1)
    target_pfa: list[float] = Field(default_factory=lambda: [0.0, 0.01, 0.1])
    target_pd: list[float] = Field(default_factory=lambda: [0.95, 0.99])
    plots: bool = True
    log_scale: bool = True

    @model_validator(mode="after")
    def _probabilities(self):
        for name in ("target_pfa", "target_pd"):
            for value in getattr(self, name):
                if not 0.0 <= value <= 1.0:
                    raise ValueError(f"{name} entries must lie in [0, 1], got {value}")
        if len(set(self.measures)) != len(self.measures):
            raise ValueError("measures must not repeat")
        return self


def _default_printers() -> list[PrinterConfig]:
    return [PrinterConfig(id=printer_id) for printer_id in PRINTER_IDS]


class ExperimentConfig(_Strict):
    """Everything one run needs; serialized as JSON."""
    config_version: Literal[1] = CONFIG_VERSION
    geometry: GeometryConfig = Field(default_factory=GeometryConfig)
    dataset: DatasetConfig = Field(default_factory=DatasetConfig)
    printers: list[PrinterConfig] = Field(default_factory=_default_printers, min_length=1)
    training: TrainingConfig = Field(default_factory=TrainingConfig)
    evaluation: EvaluationConfig = Field(default_factory=EvaluationConfig)
    output_dir: Optional[Path] = None

    @model_validator(mode="after")
    def _printer_references(self):
        ids = [p.id for p in self.printers]
        duplicates = sorted({i for i in ids if ids.count(i) > 1})
        if duplicates:
            raise ValueError(f"printer ids must be unique, duplicated: {', '.join(duplicates)}")
        unknown = sorted(set(self.training.per_printer) - set(ids))
        if unknown:
            raise ValueError(f"training.per_printer names unknown printers: {', '.join(unknown)}")
        return self

    @classmethod
    def desk_scale(cls) -> "ExperimentConfig":
        return cls()

    @classmethod
    def paper_scale(cls) -> "ExperimentConfig":
        return cls(
            dataset=DatasetConfig(n_images=sum(PAPER_SPLIT.values()), **PAPER_SPLIT),
            training=TrainingConfig(params=TrainSettings(epochs=PAPER_EPOCHS)),
        )

    @classmethod
    def load(cls, path: str | Path) -> "ExperimentConfig":
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except FileNotFoundError:
            raise ConfigError(f"Config file not found: {path}") from None
        try:
            return cls.model_validate_json(text)
        except ValidationError as e:
            raise ConfigError(f"{path}: {format_validation_error(e)}") from None

    @property
    def printer_ids(self) -> list[str]:
        return [p.id for p in self.printers]

    def printer(self, printer_id: str) -> PrinterConfig:
        for p in self.printers:
            if p.id == printer_id:
                return p
        raise ConfigError(
            f"printer '{printer_id}' is not part of this experiment ({', '.join(self.printer_ids)})"
        )

    def channel_params(self) -> dict[str, ChannelParams]:
        return {p.id: p.channel_params() for p in self.printers}

    def with_seed(self, seed: int) -> "ExperimentConfig":
        """Override the dataset seed and every training seed."""
        training = self.training.model_copy(update={
            "params": self.training.params.model_copy(update={"seed": seed}),
            "per_printer": {
                k: v.model_copy(update={"seed": seed}) for k, v in self.training.per_printer.items()
            },
        })
        return self.model_copy(update={
            "dataset": self.dataset.model_copy(update={"seed": seed}),
            "training": training,
        })


def format_validation_error(error: ValidationError) -> str:
    """One '<field.path>: <message>' entry per failure; JSON syntax errors keep line/column."""
    parts = []
    for item in error.errors():
        loc = ".".join(str(p) for p in item["loc"])
        message = item["msg"].removeprefix("Value error, ")
        parts.append(f"{loc}: {message}" if loc else message)
    return "; ".join(parts)


# ========================================
# Dataset manifest
# ========================================
class ChannelParamsRecord(_Strict):
    dot_gain_radius: int
    dot_gain_prob: float
    psf_sigma: float
    gain: float
    offset: float
    noise_sigma: float
    quantize: bool

    @classmethod
    def from_params(cls, params: ChannelParams) -> "ChannelParamsRecord":
        return cls(**params.to_dict())

    def to_params(self) -> ChannelParams:
        return ChannelParams(**self.model_dump())


class ManifestImage(_Strict):
    index: int
    split: SplitTag
    seed: int
    original: str
    scans: dict[str, str]
    scan_seeds: dict[str, int]


class DatasetManifest(_Strict):
    manifest_version: Literal[1] = 1
    seed: int
    geometry: GeometryConfig
    printers: dict[str, ChannelParamsRecord]
    images: list[ManifestImage]
