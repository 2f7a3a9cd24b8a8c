"""PGCM model files.

Layout (little-endian):
    b"PGCM"                         magic
    uint32 version                  currently 1
    uint32 layer count L
    L x (uint32 in_dim, uint32 out_dim, uint32 activation code)
    float32 weights of every layer, row-major, layer by layer
    float32 biases of every layer, layer by layer
    uint8 threshold flag, float32 threshold (0.0 when the flag is 0)

Activation codes: 0 = identity, 1 = relu, 2 = sigmoid.
"""

import struct
from pathlib import Path

import numpy as np

from src.services.nn.mlp import ACTIVATION_CODES, LayerSpec, MlpModel
from src.utils.errors import FormatError

MAGIC = b"PGCM"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<4sII")
_LAYER = struct.Struct("<III")
_TRAILER = struct.Struct("<Bf")
_ACTIVATIONS = {code: name for name, code in ACTIVATION_CODES.items()}


def model_file_size(model: MlpModel) -> int:
    return _HEADER.size + _LAYER.size * len(model.layers) + 4 * model.parameter_count() + _TRAILER.size


def infer_bottleneck(layers: list[LayerSpec]) -> int | None:
    """Index of the narrowest hidden layer when it is narrower than the input."""
    if len(layers) < 2:
        return None
    hidden = [spec.out_dim for spec in layers[:-1]]
    narrowest = int(np.argmin(hidden))
    return narrowest if hidden[narrowest] < layers[0].in_dim else None


def save_model(model: MlpModel, path: str | Path, threshold: float | None = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    chunks = [_HEADER.pack(MAGIC, FORMAT_VERSION, len(model.layers))]
    for spec in model.layers:
        chunks.append(_LAYER.pack(spec.in_dim, spec.out_dim, ACTIVATION_CODES[spec.activation]))
    for w in model.weights:
        chunks.append(np.ascontiguousarray(w, dtype="<f4").tobytes())
    for b in model.biases:
        chunks.append(np.ascontiguousarray(b, dtype="<f4").tobytes())
    flag = threshold is not None
    chunks.append(_TRAILER.pack(1 if flag else 0, float(threshold) if flag else 0.0))
    path.write_bytes(b"".join(chunks))
    return path


def load_model(path: str | Path) -> tuple[MlpModel, float | None]:
    """Read a PGCM file; returns the model and its threshold (None if absent)."""
    data = Path(path).read_bytes()
    if len(data) < _HEADER.size:
        raise FormatError(f"{path}: truncated header")
    magic, version, n_layers = _HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise FormatError(f"{path}: bad magic {magic!r}, expected {MAGIC!r}")
    if version != FORMAT_VERSION:
        raise FormatError(f"{path}: unsupported format version {version}")
    if n_layers < 1:
        raise FormatError(f"{path}: model declares no layers")

    offset = _HEADER.size
    if len(data) < offset + _LAYER.size * n_layers:
        raise FormatError(f"{path}: truncated layer table")
    layers = []
    for _ in range(n_layers):
        in_dim, out_dim, code = _LAYER.unpack_from(data, offset)
        offset += _LAYER.size
        if code not in _ACTIVATIONS:
            raise FormatError(f"{path}: unknown activation code {code}")
        try:
            layers.append(LayerSpec(in_dim, out_dim, _ACTIVATIONS[code]))
        except ValueError as e:
            raise FormatError(f"{path}: invalid layer ({e})") from None

    n_weights = sum(spec.in_dim * spec.out_dim for spec in layers)
    n_biases = sum(spec.out_dim for spec in layers)
    expected = offset + 4 * (n_weights + n_biases) + _TRAILER.size
    if len(data) != expected:
        raise FormatError(f"{path}: file holds {len(data)} bytes, expected {expected}")

    weights, biases = [], []
    for spec in layers:
        count = spec.in_dim * spec.out_dim
        w = np.frombuffer(data, dtype="<f4", count=count, offset=offset)
        weights.append(w.astype(np.float32).reshape(spec.out_dim, spec.in_dim))
        offset += 4 * count
    for spec in layers:
        b = np.frombuffer(data, dtype="<f4", count=spec.out_dim, offset=offset)
        biases.append(b.astype(np.float32))
        offset += 4 * spec.out_dim

    flag, value = _TRAILER.unpack_from(data, offset)
    if flag not in (0, 1):
        raise FormatError(f"{path}: invalid threshold flag {flag}")
    threshold = float(value) if flag else None

    try:
        model = MlpModel(layers, weights, biases, bottleneck_index=infer_bottleneck(layers))
    except ValueError as e:
        raise FormatError(f"{path}: inconsistent model ({e})") from None
    return model, threshold
