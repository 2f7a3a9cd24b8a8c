"""Deterministic seed derivation.

Every random stream (originals, scans per printer, re-prints) gets its own base
seed; the seed of image ``i`` in a stream is ``base ^ i`` so images stay
independent and any single image can be regenerated on its own.
"""

import zlib


def stream_seed(seed: int, stream: str) -> int:
    """Stable base seed for a named stream (independent of PYTHONHASHSEED)."""
    return zlib.crc32(f"{seed}:{stream}".encode("utf-8"))


def image_seed(base: int, index: int) -> int:
    return base ^ index
