"""Binary module matrices and their pixel renderings.

Bit polarity is fixed across the package: 1 = dark (inked) module. Rendered
originals use the same convention, so network targets and ink physics agree.
"""

from dataclasses import dataclass, field
from typing import Literal, overload

import numpy as np

from src.utils.constants import DEFAULT_BLOCK_PX, DEFAULT_MODULE_PX, DEFAULT_MODULES
from src.utils.errors import DimensionMismatchError, DomainError, ParameterError

PixelDomain = Literal["binary01", "byte0_255", "unit_interval"]
Polarity = Literal["high_is_one", "low_is_one"]

_DOMAIN_BOUNDS = {
    "binary01": (0.0, 1.0),
    "byte0_255": (0.0, 255.0),
    "unit_interval": (0.0, 1.0),
}


@dataclass(frozen=True, eq=False)
class ModuleMatrix:
    """Row-major binary grid of code modules (1 = dark)."""
    bits: np.ndarray

    def __post_init__(self):
        bits = np.asarray(self.bits)
        if bits.ndim != 2 or bits.shape[0] < 1 or bits.shape[1] < 1:
            raise DimensionMismatchError(f"Module matrix must be a non-empty 2-D grid, got shape {bits.shape}")
        if not np.isin(bits, (0, 1)).all():
            raise DomainError("Module matrix bits must be 0 or 1")
        object.__setattr__(self, "bits", bits.astype(np.uint8, copy=False))

    @property
    def rows(self) -> int:
        return self.bits.shape[0]

    @property
    def cols(self) -> int:
        return self.bits.shape[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleMatrix):
            return NotImplemented
        return self.bits.shape == other.bits.shape and bool(np.array_equal(self.bits, other.bits))

    def flat(self) -> np.ndarray:
        return self.bits.reshape(-1)


@dataclass(frozen=True, eq=False)
class PixelImage:
    """2-D grayscale raster with an explicit value domain."""
    values: np.ndarray
    domain: PixelDomain = "unit_interval"

    def __post_init__(self):
        values = np.asarray(self.values)
        if values.ndim != 2 or values.size == 0:
            raise DimensionMismatchError(f"Pixel image must be a non-empty 2-D array, got shape {values.shape}")
        if self.domain not in _DOMAIN_BOUNDS:
            raise DomainError(f"Unknown pixel domain: {self.domain}")
        low, high = _DOMAIN_BOUNDS[self.domain]
        if self.domain == "binary01":
            if not np.isin(values, (0, 1)).all():
                raise DomainError("binary01 image holds values other than 0 and 1")
            values = values.astype(np.uint8, copy=False)
        elif values.min() < low or values.max() > high or not np.isfinite(values).all():
            raise DomainError(f"{self.domain} image holds values outside [{low:g}, {high:g}]")
        object.__setattr__(self, "values", values)

    @property
    def height(self) -> int:
        return self.values.shape[0]

    @property
    def width(self) -> int:
        return self.values.shape[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PixelImage):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.values.shape == other.values.shape
            and bool(np.array_equal(self.values, other.values))
        )

    def ink_intensity(self) -> np.ndarray:
        """Values as ink amount in [0, 1]; luminance scans are inverted (1 - v/255)."""
        if self.domain == "byte0_255":
            return 1.0 - self.values.astype(np.float64) / 255.0
        return self.values.astype(np.float64)


@dataclass(frozen=True, eq=False)
class BlockSet:
    """Non-overlapping square blocks of an image, row-major by grid position."""
    block_px: int
    grid_rows: int
    grid_cols: int
    blocks: np.ndarray
    domain: PixelDomain = field(default="unit_interval")

    @property
    def count(self) -> int:
        return self.grid_rows * self.grid_cols


def generate_module_matrix(
        seed: int,
        rows: int = DEFAULT_MODULES,
        cols: int = DEFAULT_MODULES,
) -> ModuleMatrix:
    """Draw rows x cols i.i.d. uniform bits from a PRNG seeded by ``seed``."""
    if rows < 1 or cols < 1:
        raise ParameterError(f"Module matrix needs rows, cols >= 1 (got {rows}x{cols})")
    rng = np.random.default_rng(seed % 2**64)
    return ModuleMatrix(rng.integers(0, 2, size=(rows, cols), dtype=np.uint8))


def render(m: ModuleMatrix, module_px: int = DEFAULT_MODULE_PX) -> PixelImage:
    """Expand every module into a constant module_px x module_px square."""
    if module_px < 1:
        raise ParameterError(f"module_px must be >= 1, got {module_px}")
    pixels = np.repeat(np.repeat(m.bits, module_px, axis=0), module_px, axis=1)
    return PixelImage(pixels, domain="binary01")


def split_blocks(img: PixelImage, block_px: int = DEFAULT_BLOCK_PX) -> BlockSet:
    if block_px < 1:
        raise ParameterError(f"block_px must be >= 1, got {block_px}")
    if img.height % block_px or img.width % block_px:
        raise DimensionMismatchError(
            f"Image {img.height}x{img.width} is not divisible into {block_px}x{block_px} blocks"
        )
    grid_rows, grid_cols = img.height // block_px, img.width // block_px
    blocks = (
        img.values.reshape(grid_rows, block_px, grid_cols, block_px)
        .transpose(0, 2, 1, 3)
        .reshape(grid_rows * grid_cols, block_px * block_px)
    )
    return BlockSet(block_px, grid_rows, grid_cols, np.ascontiguousarray(blocks), domain=img.domain)


def assemble_blocks(bs: BlockSet) -> PixelImage:
    """Exact inverse of :func:`split_blocks`."""
    blocks = np.asarray(bs.blocks)
    expected = (bs.grid_rows * bs.grid_cols, bs.block_px * bs.block_px)
    if bs.block_px < 1 or bs.grid_rows < 1 or bs.grid_cols < 1 or blocks.shape != expected:
        raise DimensionMismatchError(
            f"Block set of shape {blocks.shape} does not match a {bs.grid_rows}x{bs.grid_cols} grid "
            f"of {bs.block_px}x{bs.block_px} blocks"
        )
    b = bs.block_px
    pixels = (
        blocks.reshape(bs.grid_rows, bs.grid_cols, b, b)
        .transpose(0, 2, 1, 3)
        .reshape(bs.grid_rows * b, bs.grid_cols * b)
    )
    return PixelImage(np.ascontiguousarray(pixels), domain=bs.domain)


@overload
def binarize(v: PixelImage, t: float, polarity: Polarity = "high_is_one") -> PixelImage: ...
@overload
def binarize(v: np.ndarray, t: float, polarity: Polarity = "high_is_one") -> np.ndarray: ...


def binarize(v, t: float, polarity: Polarity = "high_is_one"):
    """Threshold unit-interval values.

    high_is_one: 1 iff value >= t. low_is_one: 1 iff value < t (raw luminance,
    where ink is dark).
    """
    if not 0.0 <= t <= 1.0:
        raise ParameterError(f"Threshold must lie in [0, 1], got {t}")
    if polarity not in ("high_is_one", "low_is_one"):
        raise ParameterError(f"Unknown polarity: {polarity}")

    if isinstance(v, PixelImage):
        if v.domain == "byte0_255":
            raise DomainError("binarize expects unit-interval input; normalize byte images first")
        return PixelImage(binarize(v.values, t, polarity), domain="binary01")

    values = np.asarray(v)
    if values.size and (values.min() < 0.0 or values.max() > 1.0):
        raise DomainError("binarize expects values in [0, 1]")
    if polarity == "high_is_one":
        return (values >= t).astype(np.uint8)
    return (values < t).astype(np.uint8)


def modules_from_pixels(img: PixelImage, module_px: int = DEFAULT_MODULE_PX) -> ModuleMatrix:
    """Majority vote over each module cell; an exact half votes white (0)."""
    if img.domain != "binary01":
        raise DomainError(f"modules_from_pixels needs a binary01 image, got {img.domain}")
    if module_px < 1:
        raise ParameterError(f"module_px must be >= 1, got {module_px}")
    if img.height % module_px or img.width % module_px:
        raise DimensionMismatchError(
            f"Image {img.height}x{img.width} is not divisible into {module_px}x{module_px} module cells"
        )
    rows, cols = img.height // module_px, img.width // module_px
    votes = img.values.reshape(rows, module_px, cols, module_px).sum(axis=(1, 3), dtype=np.int64)
    return ModuleMatrix((2 * votes > module_px * module_px).astype(np.uint8))
