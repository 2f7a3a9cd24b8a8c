"""Dense networks: architectures, forward pass, loss and exact backpropagation.

Parameters and activations are float32; loss values are accumulated in float64.
A model may also be cast to float64 (see :meth:`MlpModel.astype`), which the
gradient checker uses.
"""

from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from scipy.special import expit

from src.utils.constants import DEFAULT_BLOCK_PX, DEFAULT_TRAIN_SEED
from src.utils.errors import DimensionMismatchError, ParameterError, StateError

Activation = Literal["identity", "relu", "sigmoid"]
Architecture = Literal["fc2", "fc3", "fc4", "bn"]
Regularizer = Literal["none", "l2_weights"]

ACTIVATION_CODES: dict[str, int] = {"identity": 0, "relu": 1, "sigmoid": 2}
ARCHITECTURES: tuple[str, ...] = ("fc2", "fc3", "fc4", "bn")

INPUT_DIM = DEFAULT_BLOCK_PX * DEFAULT_BLOCK_PX
BN_WIDTHS = (256, 128, 36)


@dataclass(frozen=True)
class LayerSpec:
    in_dim: int
    out_dim: int
    activation: Activation

    def __post_init__(self):
        if self.in_dim < 1 or self.out_dim < 1:
            raise ParameterError(f"Layer dims must be >= 1, got {self.in_dim}->{self.out_dim}")
        if self.activation not in ACTIVATION_CODES:
            raise ParameterError(f"Unknown activation: {self.activation}")


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 1000
    batch_size: int = 128
    learning_rate: float = 1e-3
    lam: float = 0.0
    regularizer: Regularizer = "none"
    seed: int = DEFAULT_TRAIN_SEED

    def __post_init__(self):
        if self.epochs < 1:
            raise ParameterError(f"epochs must be >= 1, got {self.epochs}")
        if self.batch_size < 1:
            raise ParameterError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.learning_rate <= 0:
            raise ParameterError(f"learning_rate must be > 0, got {self.learning_rate}")
        if self.lam < 0:
            raise ParameterError(f"lambda must be >= 0, got {self.lam}")
        if self.regularizer not in ("none", "l2_weights"):
            raise ParameterError(f"Unknown regularizer: {self.regularizer}")

    @property
    def weight_decay(self) -> float:
        """Effective lambda: zero unless the l2_weights regularizer is selected."""
        return self.lam if self.regularizer == "l2_weights" else 0.0


@dataclass
class MlpModel:
    """Ordered dense layers; weights[k] is out_dim x in_dim."""
    layers: list[LayerSpec]
    weights: list[np.ndarray]
    biases: list[np.ndarray]
    bottleneck_index: int | None = None

    def __post_init__(self):
        if not self.layers:
            raise ParameterError("A model needs at least one layer")
        if len(self.weights) != len(self.layers) or len(self.biases) != len(self.layers):
            raise DimensionMismatchError("One weight matrix and one bias vector are required per layer")
        for k, spec in enumerate(self.layers):
            if k > 0 and self.layers[k - 1].out_dim != spec.in_dim:
                raise DimensionMismatchError(
                    f"Layer {k - 1} outputs {self.layers[k - 1].out_dim} values but layer {k} expects {spec.in_dim}"
                )
            if self.weights[k].shape != (spec.out_dim, spec.in_dim):
                raise DimensionMismatchError(
                    f"Layer {k} weights have shape {self.weights[k].shape}, expected {(spec.out_dim, spec.in_dim)}"
                )
            if self.biases[k].shape != (spec.out_dim,):
                raise DimensionMismatchError(
                    f"Layer {k} biases have shape {self.biases[k].shape}, expected {(spec.out_dim,)}"
                )
        if self.bottleneck_index is not None and not 0 <= self.bottleneck_index < len(self.layers) - 1:
            raise ParameterError(f"bottleneck_index {self.bottleneck_index} must name a hidden layer")

    @property
    def dims(self) -> list[int]:
        return [self.layers[0].in_dim] + [spec.out_dim for spec in self.layers]

    @property
    def input_dim(self) -> int:
        return self.layers[0].in_dim

    @property
    def output_dim(self) -> int:
        return self.layers[-1].out_dim

    @property
    def dtype(self) -> np.dtype:
        return self.weights[0].dtype

    def parameter_count(self) -> int:
        return sum(w.size for w in self.weights) + sum(b.size for b in self.biases)

    def astype(self, dtype) -> "MlpModel":
        return MlpModel(
            layers=list(self.layers),
            weights=[w.astype(dtype, copy=True) for w in self.weights],
            biases=[b.astype(dtype, copy=True) for b in self.biases],
            bottleneck_index=self.bottleneck_index,
        )

    def copy(self) -> "MlpModel":
        return self.astype(self.dtype)


@dataclass
class Gradients:
    """Per-parameter gradients, shaped like the model parameters."""
    weights: list[np.ndarray]
    biases: list[np.ndarray]
    loss: float = field(default=float("nan"))


def _activate(z: np.ndarray, activation: str) -> np.ndarray:
    if activation == "relu":
        return np.maximum(z, 0)
    if activation == "sigmoid":
        return expit(z)
    return z


def _activation_grad(z: np.ndarray, a: np.ndarray, activation: str) -> np.ndarray:
    """d activation / d z, given pre-activation z and output a."""
    if activation == "relu":
        return (z > 0).astype(z.dtype)
    if activation == "sigmoid":
        return a * (1 - a)
    return np.ones_like(z)


def _glorot_layer(rng: np.random.Generator, in_dim: int, out_dim: int) -> tuple[np.ndarray, np.ndarray]:
    bound = np.sqrt(6.0 / (in_dim + out_dim))
    weights = rng.uniform(-bound, bound, size=(out_dim, in_dim)).astype(np.float32)
    return weights, np.zeros(out_dim, dtype=np.float32)


def build_from_dims(dims: list[int], seed: int, bottleneck_index: int | None = None) -> MlpModel:
    """relu hidden layers, sigmoid output, Glorot-uniform weights, zero biases."""
    if len(dims) < 2:
        raise ParameterError("A model needs at least an input and an output dimension")
    rng = np.random.default_rng(seed % 2**64)
    layers, weights, biases = [], [], []
    for k in range(len(dims) - 1):
        activation = "sigmoid" if k == len(dims) - 2 else "relu"
        layers.append(LayerSpec(dims[k], dims[k + 1], activation))
        w, b = _glorot_layer(rng, dims[k], dims[k + 1])
        weights.append(w)
        biases.append(b)
    return MlpModel(layers, weights, biases, bottleneck_index=bottleneck_index)


def build_fc(hidden_layers: int, seed: int, input_dim: int = INPUT_DIM) -> MlpModel:
    """Fully connected model whose hidden layers all have the input size."""
    if hidden_layers not in (2, 3, 4):
        raise ParameterError(f"FC models have 2, 3 or 4 hidden layers, got {hidden_layers}")
    return build_from_dims([input_dim] * (hidden_layers + 2), seed)


def build_bn(seed: int, input_dim: int = INPUT_DIM) -> MlpModel:
    """Bottleneck model input->256->128->36->128->256->input."""
    widths = list(BN_WIDTHS)
    dims = [input_dim] + widths + widths[-2::-1] + [input_dim]
    # encoder = layers 0..2, ending at the 36-unit latent layer
    return build_from_dims(dims, seed, bottleneck_index=len(widths) - 1)


def build_model(arch: Architecture, seed: int, input_dim: int = INPUT_DIM) -> MlpModel:
    if arch == "bn":
        return build_bn(seed, input_dim=input_dim)
    if arch in ("fc2", "fc3", "fc4"):
        return build_fc(int(arch[2]), seed, input_dim=input_dim)
    raise ParameterError(f"Unknown architecture '{arch}'. Choose one of {', '.join(ARCHITECTURES)}")


def _as_batch(m: MlpModel, x: np.ndarray, dim: int) -> tuple[np.ndarray, bool]:
    x = np.asarray(x)
    single = x.ndim == 1
    batch = x.reshape(1, -1) if single else x
    if batch.ndim != 2 or batch.shape[1] != dim:
        raise DimensionMismatchError(f"Expected input vectors of length {dim}, got shape {x.shape}")
    return batch.astype(m.dtype, copy=False), single


def _run_layers(m: MlpModel, a: np.ndarray, layer_range: range) -> np.ndarray:
    for k in layer_range:
        a = _activate(a @ m.weights[k].T + m.biases[k], m.layers[k].activation)
    return a


def forward(m: MlpModel, x: np.ndarray) -> np.ndarray:
    """Affine-then-activation composition over a vector or a batch of row vectors."""
    batch, single = _as_batch(m, x, m.input_dim)
    out = _run_layers(m, batch, range(len(m.layers)))
    return out[0] if single else out


def encode(m: MlpModel, x: np.ndarray) -> np.ndarray:
    """Encoder half of a bottleneck model: input -> latent code."""
    if m.bottleneck_index is None:
        raise StateError("Model has no bottleneck; encode/decode need a bottleneck model")
    batch, single = _as_batch(m, x, m.input_dim)
    out = _run_layers(m, batch, range(m.bottleneck_index + 1))
    return out[0] if single else out


def decode(m: MlpModel, z: np.ndarray) -> np.ndarray:
    """Decoder half of a bottleneck model: latent code -> output."""
    if m.bottleneck_index is None:
        raise StateError("Model has no bottleneck; encode/decode need a bottleneck model")
    batch, single = _as_batch(m, z, m.layers[m.bottleneck_index].out_dim)
    out = _run_layers(m, batch, range(m.bottleneck_index + 1, len(m.layers)))
    return out[0] if single else out


def weight_square_sum(m: MlpModel) -> float:
    return float(sum(np.sum(np.square(w, dtype=np.float64)) for w in m.weights))


def loss(pred: np.ndarray, target: np.ndarray, m: MlpModel, cfg: TrainConfig) -> float:
    """Squared Euclidean distance plus lambda * sum(W^2) under l2_weights (biases excluded)."""
    pred = np.asarray(pred, dtype=np.float64)
    target = np.asarray(target, dtype=np.float64)
    if pred.shape != target.shape:
        raise DimensionMismatchError(f"Prediction shape {pred.shape} differs from target shape {target.shape}")
    value = float(np.sum(np.square(pred - target)))
    if cfg.weight_decay:
        value += cfg.weight_decay * weight_square_sum(m)
    return value


def objective(m: MlpModel, batch_x: np.ndarray, batch_t: np.ndarray, cfg: TrainConfig) -> float:
    """Mean over the batch of the per-sample loss."""
    pred = forward(m, batch_x)
    pred = pred.reshape(1, -1) if pred.ndim == 1 else pred
    target = np.asarray(batch_t).reshape(pred.shape[0], -1)
    if target.shape != pred.shape:
        raise DimensionMismatchError(f"Target shape {np.shape(batch_t)} does not match outputs {pred.shape}")
    data = np.sum(np.square(pred.astype(np.float64) - target), axis=1).mean()
    return float(data + cfg.weight_decay * weight_square_sum(m)) if cfg.weight_decay else float(data)


def backward(m: MlpModel, batch_x: np.ndarray, batch_t: np.ndarray, cfg: TrainConfig) -> Gradients:
    """Exact gradient of the mean-over-batch loss (including 2*lambda*W)."""
    x, _ = _as_batch(m, batch_x, m.input_dim)
    if x.shape[0] == 0:
        raise ParameterError("backward needs a non-empty batch")
    t = np.asarray(batch_t)
    t = t.reshape(1, -1) if t.ndim == 1 else t
    if t.shape != (x.shape[0], m.output_dim):
        raise DimensionMismatchError(
            f"Targets of shape {np.shape(batch_t)} do not match a batch of {x.shape[0]}x{m.output_dim}"
        )
    t = t.astype(m.dtype, copy=False)

    activations = [x]
    pre_activations = []
    a = x
    for k, spec in enumerate(m.layers):
        z = a @ m.weights[k].T + m.biases[k]
        a = _activate(z, spec.activation)
        pre_activations.append(z)
        activations.append(a)

    n = x.shape[0]
    residual = a - t
    data_loss = float(np.sum(np.square(residual, dtype=np.float64)) / n)

    grad_w: list[np.ndarray] = [None] * len(m.layers)
    grad_b: list[np.ndarray] = [None] * len(m.layers)
    delta = (2.0 / n) * residual
    for k in range(len(m.layers) - 1, -1, -1):
        spec = m.layers[k]
        delta = delta * _activation_grad(pre_activations[k], activations[k + 1], spec.activation)
        grad_w[k] = delta.T @ activations[k]
        grad_b[k] = delta.sum(axis=0)
        if k > 0:
            delta = delta @ m.weights[k]

    total = data_loss
    if cfg.weight_decay:
        for k, w in enumerate(m.weights):
            grad_w[k] = grad_w[k] + (2.0 * cfg.weight_decay) * w
        total += cfg.weight_decay * weight_square_sum(m)

    dtype = m.dtype
    return Gradients(
        weights=[g.astype(dtype, copy=False) for g in grad_w],
        biases=[g.astype(dtype, copy=False) for g in grad_b],
        loss=total,
    )
