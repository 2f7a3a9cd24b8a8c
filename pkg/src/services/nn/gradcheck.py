"""Central finite-difference verification of :func:`backward`."""

from dataclasses import dataclass

import numpy as np

from src.services.nn.mlp import MlpModel, TrainConfig, _activate, backward, objective

# Gradients smaller than this are compared in absolute terms
RELATIVE_FLOOR = 1e-4


@dataclass
class GradCheckReport:
    max_relative_error: float
    checked: int
    worst_parameter: str
    skipped_kinks: int = 0

    def passed(self, tolerance: float = 1e-3) -> bool:
        return self.checked > 0 and self.max_relative_error <= tolerance


def _relu_pattern(m: MlpModel, x: np.ndarray) -> np.ndarray:
    """Sign pattern of every relu pre-activation over the batch."""
    a, signs = x, []
    for k, spec in enumerate(m.layers):
        z = a @ m.weights[k].T + m.biases[k]
        if spec.activation == "relu":
            signs.append((z > 0).ravel())
        a = _activate(z, spec.activation)
    return np.concatenate(signs) if signs else np.zeros(0, dtype=bool)


def check_gradients(
        model: MlpModel,
        batch_x: np.ndarray,
        batch_t: np.ndarray,
        cfg: TrainConfig,
        n_coords: int = 2000,
        step: float = 1e-3,
        seed: int = 0,
) -> GradCheckReport:
    """Compare analytic gradients with central differences on sampled coordinates.

    Runs on a float64 copy so the comparison is not dominated by float32 rounding.
    Relative error is |a - n| / max(|a|, |n|, RELATIVE_FLOOR). Coordinates whose
    +-step moves any relu unit across its kink have no valid finite difference;
    they are counted in ``skipped_kinks`` instead of being compared.
    """
    probe = model.astype(np.float64)
    x = np.asarray(batch_x, dtype=np.float64)
    x = x.reshape(1, -1) if x.ndim == 1 else x
    t = np.asarray(batch_t, dtype=np.float64)
    analytic = backward(probe, x, t, cfg)
    base_pattern = _relu_pattern(probe, x)

    params = [("W", k, w, analytic.weights[k]) for k, w in enumerate(probe.weights)]
    params += [("b", k, b, analytic.biases[k]) for k, b in enumerate(probe.biases)]
    sizes = np.array([p[2].size for p in params])
    total = int(sizes.sum())
    offsets = np.concatenate([[0], np.cumsum(sizes)])

    rng = np.random.default_rng(seed)
    chosen = rng.choice(total, size=min(n_coords, total), replace=False)

    worst, worst_name = 0.0, ""
    checked = skipped = 0
    for flat_index in np.sort(chosen):
        which = int(np.searchsorted(offsets, flat_index, side="right") - 1)
        kind, layer, array, grad = params[which]
        local = np.unravel_index(int(flat_index - offsets[which]), array.shape)

        original = array[local]
        array[local] = original + step
        plus = objective(probe, x, t, cfg)
        crossed = not np.array_equal(_relu_pattern(probe, x), base_pattern)
        array[local] = original - step
        minus = objective(probe, x, t, cfg)
        crossed = crossed or not np.array_equal(_relu_pattern(probe, x), base_pattern)
        array[local] = original

        if crossed:
            skipped += 1
            continue
        checked += 1
        numeric = (plus - minus) / (2 * step)
        exact = float(grad[local])
        error = abs(exact - numeric) / max(abs(exact), abs(numeric), RELATIVE_FLOOR)
        if error > worst:
            worst, worst_name = error, f"{kind}{layer}{tuple(int(i) for i in local)}"

    return GradCheckReport(
        max_relative_error=worst,
        checked=checked,
        worst_parameter=worst_name,
        skipped_kinks=skipped,
    )
