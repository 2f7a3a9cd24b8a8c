"""Module matrices, rendering and the block representation."""

from src.services.codegen.geometry import Geometry
from src.services.codegen.module_matrix import (
    BlockSet,
    ModuleMatrix,
    PixelDomain,
    PixelImage,
    Polarity,
    assemble_blocks,
    binarize,
    generate_module_matrix,
    modules_from_pixels,
    render,
    split_blocks,
)

__all__ = [
    "BlockSet",
    "Geometry",
    "ModuleMatrix",
    "PixelDomain",
    "PixelImage",
    "Polarity",
    "assemble_blocks",
    "binarize",
    "generate_module_matrix",
    "modules_from_pixels",
    "render",
    "split_blocks",
]
