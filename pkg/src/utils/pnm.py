"""Netpbm codecs for code images.

- PGM P5 (maxval 255) for pixel images. binary01 and unit_interval images are
  scaled by 255 and rounded to nearest on write, divided by 255 on read.
- PBM P4 for module matrices (PBM's 1 = black matches our 1 = dark).
- A plain text format for module matrices: one line per row of '0'/'1'.
"""

from pathlib import Path

import numpy as np

from src.services.codegen.module_matrix import ModuleMatrix, PixelDomain, PixelImage
from src.utils.errors import DomainError, FormatError


def _read_header(data: bytes, magic: bytes, n_fields: int) -> tuple[list[int], int]:
    """Parse a netpbm header; returns the numeric fields and the raster offset."""
    if not data.startswith(magic):
        raise FormatError(f"Not a {magic.decode()} file (magic {data[:2]!r})")
    fields: list[int] = []
    pos = len(magic)
    while len(fields) < n_fields:
        if pos >= len(data):
            raise FormatError("Truncated netpbm header")
        ch = data[pos:pos + 1]
        if ch.isspace():
            pos += 1
        elif ch == b"#":
            end = data.find(b"\n", pos)
            pos = len(data) if end < 0 else end + 1
        else:
            start = pos
            while pos < len(data) and data[pos:pos + 1].isdigit():
                pos += 1
            if start == pos:
                raise FormatError(f"Unexpected byte {ch!r} in netpbm header")
            fields.append(int(data[start:pos]))
    # exactly one whitespace byte separates the header from the raster
    if pos >= len(data) or not data[pos:pos + 1].isspace():
        raise FormatError("Missing whitespace after netpbm header")
    return fields, pos + 1


def image_to_bytes(img: PixelImage) -> np.ndarray:
    """8-bit raster for an image, scaling unit-domain values by 255."""
    values = img.values.astype(np.float64)
    if img.domain in ("binary01", "unit_interval"):
        values = values * 255.0
    return np.clip(np.rint(values), 0, 255).astype(np.uint8)


def write_pgm(img: PixelImage, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    raster = image_to_bytes(img)
    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    path.write_bytes(header + raster.tobytes())
    return path


def read_pgm(path: str | Path, domain: PixelDomain = "byte0_255") -> PixelImage:
    data = Path(path).read_bytes()
    (width, height, maxval), offset = _read_header(data, b"P5", 3)
    if maxval != 255:
        raise FormatError(f"Only maxval 255 PGM files are supported (got {maxval})")
    raster = data[offset:]
    if len(raster) != width * height:
        raise FormatError(f"PGM raster holds {len(raster)} bytes, expected {width * height}")
    values = np.frombuffer(raster, dtype=np.uint8).reshape(height, width)
    if domain == "byte0_255":
        return PixelImage(values.copy(), domain="byte0_255")
    if domain == "binary01":
        if not np.isin(values, (0, 255)).all():
            raise DomainError(f"{path} is not a binary image (values other than 0/255)")
        return PixelImage((values // 255).astype(np.uint8), domain="binary01")
    return PixelImage(values.astype(np.float64) / 255.0, domain="unit_interval")


def write_pbm(m: ModuleMatrix, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = f"P4\n{m.cols} {m.rows}\n".encode("ascii")
    path.write_bytes(header + np.packbits(m.bits, axis=1).tobytes())
    return path


def read_pbm(path: str | Path) -> ModuleMatrix:
    data = Path(path).read_bytes()
    (cols, rows), offset = _read_header(data, b"P4", 2)
    row_bytes = (cols + 7) // 8
    raster = data[offset:]
    if len(raster) != rows * row_bytes:
        raise FormatError(f"PBM raster holds {len(raster)} bytes, expected {rows * row_bytes}")
    packed = np.frombuffer(raster, dtype=np.uint8).reshape(rows, row_bytes)
    return ModuleMatrix(np.unpackbits(packed, axis=1)[:, :cols])


def write_module_text(m: ModuleMatrix, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = ["".join("1" if bit else "0" for bit in row) for row in m.bits]
    path.write_text("\n".join(lines) + "\n", encoding="ascii")
    return path


def read_module_text(path: str | Path) -> ModuleMatrix:
    lines = [line.strip() for line in Path(path).read_text(encoding="ascii").splitlines() if line.strip()]
    if not lines:
        raise FormatError(f"{path} holds no module rows")
    if len({len(line) for line in lines}) != 1:
        raise FormatError(f"{path} has rows of unequal length")
    if any(set(line) - {"0", "1"} for line in lines):
        raise FormatError(f"{path} holds characters other than '0' and '1'")
    return ModuleMatrix(np.array([[ch == "1" for ch in line] for line in lines], dtype=np.uint8))
