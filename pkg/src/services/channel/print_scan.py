"""Five-stage print-scan degradation.

Pipeline order is fixed so outputs are reproducible:
(1) probabilistic dot-gain dilation of inked pixels (Chebyshev neighbourhood),
(2) Gaussian PSF blur, truncated at 3 sigma, clamp-to-edge borders,
(3) ink response v <- clamp01(gain * v + offset),
(4) additive Gaussian noise, clamped to [0, 1],
(5) conversion to scanner luminance 255 * (1 - v), optionally quantized.
"""

from dataclasses import asdict, dataclass

import numpy as np
from scipy import ndimage

from src.services.codegen.module_matrix import PixelImage
from src.utils.errors import DomainError, ParameterError

PSF_TRUNCATE = 3.0


@dataclass(frozen=True)
class ChannelParams:
    """Parameters of one virtual printer + scanner."""
    dot_gain_radius: int = 0
    dot_gain_prob: float = 0.0
    psf_sigma: float = 0.0
    gain: float = 1.0
    offset: float = 0.0
    noise_sigma: float = 0.0
    quantize: bool = True

    def __post_init__(self):
        if int(self.dot_gain_radius) != self.dot_gain_radius or self.dot_gain_radius < 0:
            raise ParameterError(f"dot_gain_radius must be a non-negative integer, got {self.dot_gain_radius}")
        if not 0.0 <= self.dot_gain_prob <= 1.0:
            raise ParameterError(f"dot_gain_prob must lie in [0, 1], got {self.dot_gain_prob}")
        if self.psf_sigma < 0:
            raise ParameterError(f"psf_sigma must be >= 0, got {self.psf_sigma}")
        if self.gain <= 0:
            raise ParameterError(f"gain must be > 0, got {self.gain}")
        if not -1.0 <= self.offset <= 1.0:
            raise ParameterError(f"offset must lie in [-1, 1], got {self.offset}")
        if self.noise_sigma < 0:
            raise ParameterError(f"noise_sigma must be >= 0, got {self.noise_sigma}")
        object.__setattr__(self, "dot_gain_radius", int(self.dot_gain_radius))

    @property
    def dot_gain(self) -> float:
        """Expected ink spread in pixels (radius weighted by spread probability)."""
        if self.dot_gain_radius == 0:
            return 0.0
        return self.dot_gain_radius * self.dot_gain_prob

    @classmethod
    def identity(cls) -> "ChannelParams":
        """Zero-degradation channel: the scan is the exact luminance complement."""
        return cls()

    def with_overrides(self, **overrides) -> "ChannelParams":
        values = asdict(self)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return ChannelParams(**values)

    def to_dict(self) -> dict:
        return asdict(self)


def _dot_gain(inked: np.ndarray, params: ChannelParams, rng: np.random.Generator) -> np.ndarray:
    if params.dot_gain_radius == 0:
        return inked
    size = 2 * params.dot_gain_radius + 1
    reach = ndimage.binary_dilation(inked, structure=np.ones((size, size), dtype=bool))
    candidates = reach & ~inked
    spread = rng.random(inked.shape) < params.dot_gain_prob
    return inked | (candidates & spread)


def print_scan(img: PixelImage, params: ChannelParams, seed: int) -> PixelImage:
    """Print then scan a binary image; returns a byte0_255 luminance scan (ink is dark)."""
    if img.domain != "binary01":
        raise DomainError(f"print_scan expects a binary01 image, got {img.domain}")

    # independent streams for the two stochastic stages
    dilation_seq, noise_seq = np.random.SeedSequence(seed % 2**64).spawn(2)

    inked = _dot_gain(img.values.astype(bool), params, np.random.default_rng(dilation_seq))
    v = inked.astype(np.float64)

    # taps stop at floor(3 sigma); gaussian_filter renormalizes the kernel
    radius = int(np.floor(PSF_TRUNCATE * params.psf_sigma))
    if radius > 0:
        v = ndimage.gaussian_filter(v, sigma=params.psf_sigma, mode="nearest", radius=radius)

    v = np.clip(params.gain * v + params.offset, 0.0, 1.0)

    if params.noise_sigma > 0:
        noise = np.random.default_rng(noise_seq).normal(0.0, params.noise_sigma, size=v.shape)
        v = np.clip(v + noise, 0.0, 1.0)

    luminance = 255.0 * (1.0 - v)
    if params.quantize:
        return PixelImage(np.rint(luminance).astype(np.uint8), domain="byte0_255")
    return PixelImage(luminance, domain="byte0_255")
