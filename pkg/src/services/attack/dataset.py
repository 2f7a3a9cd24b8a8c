"""Paired dataset: original codes and their simulated scans per printer.

Splits are assigned by index order (first ``train`` images, then ``val``, then
``test``). Each image has its own seed per stream, so any image can be
regenerated without building the rest of the set.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

import numpy as np
from pydantic import ValidationError
from tqdm import tqdm

from src.config.settings import MAX_WORKERS, SHOW_PROGRESS
from src.services.channel import ChannelParams, print_scan
from src.services.codegen import (
    Geometry,
    ModuleMatrix,
    PixelImage,
    generate_module_matrix,
    render,
    split_blocks,
)
from src.states_and_contexts.experiment import (
    ChannelParamsRecord,
    DatasetManifest,
    GeometryConfig,
    ManifestImage,
)
from src.utils.constants import PAPER_SPLIT
from src.utils.errors import FormatError, MissingArtifactError, ParameterError
from src.utils.pnm import read_pbm, read_pgm, write_pbm, write_pgm
from src.utils.seeding import image_seed, stream_seed

SPLITS = ("train", "val", "test")
MANIFEST_NAME = "manifest.json"


@dataclass(frozen=True)
class SplitSizes:
    train: int
    val: int
    test: int

    def __post_init__(self):
        if min(self.train, self.val, self.test) < 0:
            raise ParameterError(f"Split sizes must be >= 0, got {self}")

    @property
    def total(self) -> int:
        return self.train + self.val + self.test

    def tags(self) -> list[str]:
        return ["train"] * self.train + ["val"] * self.val + ["test"] * self.test


PAPER_SPLIT_SIZES = SplitSizes(**PAPER_SPLIT)


@dataclass
class PairedDataset:
    geometry: Geometry
    originals: list[ModuleMatrix]
    scans: dict[str, list[PixelImage]]
    splits: list[str]
    channel_params: dict[str, ChannelParams]
    seed: int
    image_seeds: list[int] = field(default_factory=list)
    scan_seeds: dict[str, list[int]] = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.originals)
        if len(self.splits) != n:
            raise ParameterError(f"{len(self.splits)} split tags for {n} originals")
        for printer, scans in self.scans.items():
            if len(scans) != n:
                raise ParameterError(f"printer {printer}: {len(scans)} scans for {n} originals")

    def __len__(self) -> int:
        return len(self.originals)

    @property
    def printers(self) -> list[str]:
        return list(self.scans)

    def require_printer(self, printer: str) -> None:
        if printer not in self.scans:
            raise ParameterError(
                f"printer '{printer}' is not in the dataset ({', '.join(self.printers) or 'none'})"
            )

    def indices(self, split: str) -> list[int]:
        return [i for i, tag in enumerate(self.splits) if tag == split]

    def target(self, index: int) -> PixelImage:
        """Rendered original of image ``index`` (1 = dark)."""
        return render(self.originals[index], self.geometry.module_px)

    def block_counts(self) -> dict[str, int]:
        per_image = self.geometry.blocks_per_image
        return {split: len(self.indices(split)) * per_image for split in SPLITS}

    def blocks(self, split: str, printer: str) -> tuple[np.ndarray, np.ndarray]:
        """(inputs, targets) as float32 rows of block_px**2 values.

        Inputs are scan blocks as ink intensity 1 - luminance/255, targets the
        matching blocks of the rendered original.
        """
        self.require_printer(printer)
        dim = self.geometry.block_dim
        inputs, targets = [], []
        for i in self.indices(split):
            scan = self.scans[printer][i]
            inputs.append(split_blocks(
                PixelImage(scan.ink_intensity(), domain="unit_interval"), self.geometry.block_px
            ).blocks)
            targets.append(split_blocks(self.target(i), self.geometry.block_px).blocks)
        if not inputs:
            empty = np.zeros((0, dim), dtype=np.float32)
            return empty, empty.copy()
        return (
            np.concatenate(inputs).astype(np.float32),
            np.concatenate(targets).astype(np.float32),
        )


def _resolve_split(n_images: int, split: SplitSizes | None) -> SplitSizes:
    if split is None:
        if n_images != PAPER_SPLIT_SIZES.total:
            raise ParameterError(
                f"No default split for {n_images} images; pass split sizes explicitly"
            )
        split = PAPER_SPLIT_SIZES
    if split.total != n_images:
        raise ParameterError(f"Split sizes {split} sum to {split.total}, expected {n_images}")
    return split


def build_dataset(
    n_images: int,
    geometry: Geometry,
    printers: Mapping[str, ChannelParams],
    seed: int,
    split: SplitSizes | None = None,
    max_workers: int = MAX_WORKERS,
    progress: bool = False,
) -> PairedDataset:
    """Generate originals and run every printer's channel over them."""
    if n_images < 1:
        raise ParameterError(f"n_images must be >= 1, got {n_images}")
    split = _resolve_split(n_images, split)

    originals_base = stream_seed(seed, "originals")
    scan_bases = {p: stream_seed(seed, f"scan:{p}") for p in printers}

    def make_image(index: int) -> tuple[ModuleMatrix, dict[str, PixelImage]]:
        original = generate_module_matrix(
            image_seed(originals_base, index), geometry.modules, geometry.modules
        )
        rendered = render(original, geometry.module_px)
        scans = {
            p: print_scan(rendered, params, image_seed(scan_bases[p], index))
            for p, params in printers.items()
        }
        return original, scans

    # map keeps index order regardless of completion order
    with ThreadPoolExecutor(max_workers=max(1, max_workers)) as executor:
        results = list(tqdm(
            executor.map(make_image, range(n_images)),
            total=n_images,
            desc="Generating codes",
            disable=not (progress and SHOW_PROGRESS),
        ))

    return PairedDataset(
        geometry=geometry,
        originals=[r[0] for r in results],
        scans={p: [r[1][p] for r in results] for p in printers},
        splits=split.tags(),
        channel_params=dict(printers),
        seed=seed,
        image_seeds=[image_seed(originals_base, i) for i in range(n_images)],
        scan_seeds={p: [image_seed(scan_bases[p], i) for i in range(n_images)] for p in printers},
    )


# ========================================
# On-disk layout
# ========================================
def original_path(index: int) -> str:
    return f"originals/code_{index:04d}.pbm"


def scan_path(printer: str, index: int) -> str:
    return f"scans/{printer}/scan_{index:04d}.pgm"


def save_dataset(ds: PairedDataset, directory: str | Path) -> Path:
    """Write originals (PBM), scans (PGM) and manifest.json; returns the manifest path."""
    directory = Path(directory)
    for i, original in enumerate(ds.originals):
        write_pbm(original, directory / original_path(i))
        for printer in ds.printers:
            write_pgm(ds.scans[printer][i], directory / scan_path(printer, i))

    g = ds.geometry
    manifest = DatasetManifest(
        seed=ds.seed,
        geometry=GeometryConfig(modules=g.modules, module_px=g.module_px, block_px=g.block_px),
        printers={p: ChannelParamsRecord.from_params(ds.channel_params[p]) for p in ds.printers},
        images=[
            ManifestImage(
                index=i,
                split=ds.splits[i],
                seed=ds.image_seeds[i],
                original=original_path(i),
                scans={p: scan_path(p, i) for p in ds.printers},
                scan_seeds={p: ds.scan_seeds[p][i] for p in ds.printers},
            )
            for i in range(len(ds))
        ],
    )
    path = directory / MANIFEST_NAME
    path.write_text(manifest.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return path


def load_dataset(directory: str | Path) -> PairedDataset:
    directory = Path(directory)
    path = directory / MANIFEST_NAME
    if not path.exists():
        raise MissingArtifactError(f"No dataset at {directory}; run `gen` first")
    try:
        manifest = DatasetManifest.model_validate_json(path.read_text(encoding="utf-8"))
    except ValidationError as e:
        raise FormatError(f"Invalid dataset manifest {path}: {e.error_count()} problem(s)") from None

    printers = list(manifest.printers)
    originals, scans = [], {p: [] for p in printers}
    for image in manifest.images:
        try:
            originals.append(read_pbm(directory / image.original))
            for p in printers:
                scans[p].append(read_pgm(directory / image.scans[p]))
        except FileNotFoundError as e:
            raise MissingArtifactError(f"Dataset file missing: {e.filename}; run `gen` again") from None

    return PairedDataset(
        geometry=manifest.geometry.to_geometry(),
        originals=originals,
        scans=scans,
        splits=[image.split for image in manifest.images],
        channel_params={p: record.to_params() for p, record in manifest.printers.items()},
        seed=manifest.seed,
        image_seeds=[image.seed for image in manifest.images],
        scan_seeds={p: [image.scan_seeds[p] for image in manifest.images] for p in printers},
    )
