"""Code geometry: module grid, module size and block size."""

from dataclasses import dataclass

from src.utils.constants import DEFAULT_BLOCK_PX, DEFAULT_MODULE_PX, DEFAULT_MODULES
from src.utils.errors import DimensionMismatchError, ParameterError


@dataclass(frozen=True)
class Geometry:
    modules: int = DEFAULT_MODULES
    module_px: int = DEFAULT_MODULE_PX
    block_px: int = DEFAULT_BLOCK_PX

    def __post_init__(self):
        if self.modules < 1 or self.module_px < 1 or self.block_px < 1:
            raise ParameterError(f"Geometry values must be >= 1, got {self}")
        if self.image_px % self.block_px:
            raise DimensionMismatchError(
                f"{self.image_px}-pixel codes cannot be split into {self.block_px}-pixel blocks"
            )

    @property
    def image_px(self) -> int:
        return self.modules * self.module_px

    @property
    def blocks_per_image(self) -> int:
        return (self.image_px // self.block_px) ** 2

    @property
    def block_dim(self) -> int:
        return self.block_px * self.block_px
