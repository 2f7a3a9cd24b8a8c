"""Self-contained dense-network engine."""

from src.services.nn.gradcheck import GradCheckReport, check_gradients
from src.services.nn.mlp import (
    ACTIVATION_CODES,
    ARCHITECTURES,
    Gradients,
    LayerSpec,
    MlpModel,
    TrainConfig,
    backward,
    build_bn,
    build_fc,
    build_model,
    decode,
    encode,
    forward,
    loss,
    objective,
)
from src.services.nn.model_io import load_model, model_file_size, save_model
from src.services.nn.optimizer import AdamState, init_adam_state, optimizer_step

__all__ = [
    "ACTIVATION_CODES",
    "ARCHITECTURES",
    "AdamState",
    "GradCheckReport",
    "Gradients",
    "LayerSpec",
    "MlpModel",
    "TrainConfig",
    "backward",
    "build_bn",
    "build_fc",
    "build_model",
    "check_gradients",
    "decode",
    "encode",
    "forward",
    "init_adam_state",
    "load_model",
    "loss",
    "model_file_size",
    "objective",
    "optimizer_step",
    "save_model",
]
