"""Adam with bias-corrected moments (beta1=0.9, beta2=0.999, eps=1e-8)."""

from dataclasses import dataclass

import numpy as np

from src.services.nn.mlp import Gradients, MlpModel, TrainConfig
from src.utils.errors import DimensionMismatchError, StateError

BETA1 = 0.9
BETA2 = 0.999
EPSILON = 1e-8


@dataclass
class AdamState:
    step: int
    m_weights: list[np.ndarray]
    v_weights: list[np.ndarray]
    m_biases: list[np.ndarray]
    v_biases: list[np.ndarray]


def init_adam_state(model: MlpModel) -> AdamState:
    """Zero moments; create once per training run."""
    return AdamState(
        step=0,
        m_weights=[np.zeros_like(w) for w in model.weights],
        v_weights=[np.zeros_like(w) for w in model.weights],
        m_biases=[np.zeros_like(b) for b in model.biases],
        v_biases=[np.zeros_like(b) for b in model.biases],
    )


def _update(param: np.ndarray, grad: np.ndarray, m: np.ndarray, v: np.ndarray,
            lr: float, correction1: float, correction2: float) -> None:
    m *= BETA1
    m += (1 - BETA1) * grad
    v *= BETA2
    v += (1 - BETA2) * np.square(grad)
    m_hat = m / correction1
    v_hat = v / correction2
    param -= (lr * m_hat / (np.sqrt(v_hat) + EPSILON)).astype(param.dtype, copy=False)


def optimizer_step(
        model: MlpModel,
        grads: Gradients,
        state: AdamState | None,
        cfg: TrainConfig,
) -> tuple[MlpModel, AdamState]:
    """Apply one Adam update in place; returns the model and the advanced state."""
    if state is None or not isinstance(state, AdamState):
        raise StateError("Optimizer state is not initialized; call init_adam_state(model) first")
    if len(state.m_weights) != len(model.weights) or len(grads.weights) != len(model.weights):
        raise DimensionMismatchError("Gradients/optimizer state do not match the model layers")

    state.step += 1
    correction1 = 1 - BETA1 ** state.step
    correction2 = 1 - BETA2 ** state.step
    for k in range(len(model.weights)):
        _update(model.weights[k], grads.weights[k], state.m_weights[k], state.v_weights[k],
                cfg.learning_rate, correction1, correction2)
        _update(model.biases[k], grads.biases[k], state.m_biases[k], state.v_biases[k],
                cfg.learning_rate, correction1, correction2)
    return model, state
