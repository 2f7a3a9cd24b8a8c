import numpy as np
import pytest

from src.services.nn import (
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
from src.services.nn.mlp import LayerSpec, MlpModel, build_from_dims
from src.utils.errors import DimensionMismatchError, ParameterError, StateError


class TestArchitectures:
    @pytest.mark.parametrize("hidden", [2, 3, 4])
    def test_fc_dims(self, hidden):
        m = build_fc(hidden, seed=0)
        assert m.dims == [576] * (hidden + 2)
        assert [s.activation for s in m.layers] == ["relu"] * hidden + ["sigmoid"]
        assert m.bottleneck_index is None

    def test_bn_dims(self):
        m = build_bn(seed=0)
        assert m.dims == [576, 256, 128, 36, 128, 256, 576]
        assert m.bottleneck_index == 2
        assert m.layers[-1].activation == "sigmoid"

    @pytest.mark.parametrize("hidden", [1, 5])
    def test_fc_rejects_other_depths(self, hidden):
        with pytest.raises(ParameterError):
            build_fc(hidden, seed=0)

    def test_build_model_dispatch(self):
        assert build_model("fc3", seed=1).dims == build_fc(3, seed=1).dims
        assert build_model("bn", seed=1).dims == build_bn(seed=1).dims
        with pytest.raises(ParameterError):
            build_model("cnn", seed=1)

    def test_same_seed_same_weights(self):
        a, b = build_bn(seed=5), build_bn(seed=5)
        assert all(np.array_equal(x, y) for x, y in zip(a.weights, b.weights))

    def test_glorot_bounds_and_zero_biases(self):
        m = build_fc(2, seed=3)
        bound = np.sqrt(6.0 / (576 + 576))
        assert all(np.abs(w).max() <= bound + 1e-6 for w in m.weights)
        assert all(not b.any() for b in m.biases)
        assert m.dtype == np.float32

    def test_chain_mismatch(self):
        layers = [LayerSpec(4, 3, "relu"), LayerSpec(2, 4, "sigmoid")]
        with pytest.raises(DimensionMismatchError):
            MlpModel(layers, [np.zeros((3, 4)), np.zeros((4, 2))], [np.zeros(3), np.zeros(4)])


class TestForward:
    def test_output_in_unit_interval(self, rng):
        out = forward(build_bn(seed=0), rng.random((5, 576)).astype(np.float32))
        assert out.shape == (5, 576)
        assert out.min() >= 0.0 and out.max() <= 1.0

    def test_vector_and_batch_agree(self, rng):
        m = build_fc(2, seed=0)
        x = rng.random((3, 576)).astype(np.float32)
        np.testing.assert_array_equal(forward(m, x[1]), forward(m, x)[1])

    def test_zero_weights_give_half(self):
        m = build_fc(2, seed=0)
        for w in m.weights:
            w[:] = 0
        np.testing.assert_array_equal(forward(m, np.ones(576, dtype=np.float32)), np.full(576, 0.5, dtype=np.float32))

    def test_identity_layer_by_hand(self):
        m = MlpModel(
            [LayerSpec(2, 2, "identity")],
            [np.array([[1.0, 2.0], [3.0, 4.0]])],
            [np.array([0.5, -1.0])],
        )
        # [1*1 + 2*2 + 0.5, 3*1 + 4*2 - 1]
        np.testing.assert_allclose(forward(m, np.array([1.0, 2.0])), [5.5, 10.0])

    def test_wrong_length(self):
        with pytest.raises(DimensionMismatchError):
            forward(build_fc(2, seed=0), np.zeros(575))

    def test_encode_decode_composes_to_forward(self, rng):
        m = build_bn(seed=2)
        x = rng.random((4, 576)).astype(np.float32)
        z = encode(m, x)
        assert z.shape == (4, 36)
        np.testing.assert_allclose(decode(m, z), forward(m, x), rtol=0, atol=1e-7)

    def test_encode_needs_bottleneck(self):
        with pytest.raises(StateError):
            encode(build_fc(2, seed=0), np.zeros(576))


class TestLoss:
    def test_squared_distance(self):
        m = build_fc(2, seed=0)
        cfg = TrainConfig()
        assert loss(np.array([0.5, 1.0]), np.array([0.0, 1.0]), m, cfg) == pytest.approx(0.25)

    def test_regularizer_only_under_l2(self):
        m = build_fc(2, seed=0)
        pred = np.zeros(3)
        plain = loss(pred, pred, m, TrainConfig(lam=0.1))
        weighted = loss(pred, pred, m, TrainConfig(lam=0.1, regularizer="l2_weights"))
        assert plain == 0.0
        expected = 0.1 * sum(float(np.sum(w.astype(np.float64) ** 2)) for w in m.weights)
        assert weighted == pytest.approx(expected, rel=1e-9)

    def test_shape_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            loss(np.zeros(3), np.zeros(4), build_fc(2, seed=0), TrainConfig())

    def test_objective_is_batch_mean(self, rng):
        m = build_fc(2, seed=0)
        cfg = TrainConfig()
        x = rng.random((4, 576)).astype(np.float32)
        t = (rng.random((4, 576)) > 0.5).astype(np.float32)
        per_sample = [loss(forward(m, x[i]), t[i], m, cfg) for i in range(4)]
        assert objective(m, x, t, cfg) == pytest.approx(np.mean(per_sample), rel=1e-6)

    def test_backward_reports_objective(self, rng):
        m = build_bn(seed=0)
        cfg = TrainConfig(lam=1e-4, regularizer="l2_weights")
        x = rng.random((6, 576)).astype(np.float32)
        t = (rng.random((6, 576)) > 0.5).astype(np.float32)
        grads = backward(m, x, t, cfg)
        assert grads.loss == pytest.approx(objective(m, x, t, cfg), rel=1e-5)
        assert [g.shape for g in grads.weights] == [w.shape for w in m.weights]
        assert [g.shape for g in grads.biases] == [b.shape for b in m.biases]


@pytest.mark.parametrize("kwargs", [
    {"epochs": 0},
    {"batch_size": 0},
    {"learning_rate": 0.0},
    {"lam": -1.0},
    {"regularizer": "l1"},
])
def test_invalid_train_config(kwargs):
    with pytest.raises(ParameterError):
        TrainConfig(**kwargs)


class TestBackward:
    def test_zero_gradient_when_prediction_matches(self):
        m = build_fc(2, seed=0)
        for w in m.weights:
            w[:] = 0
        x = np.random.default_rng(0).random((4, 576)).astype(np.float32)
        grads = backward(m, x, np.full((4, 576), 0.5, dtype=np.float32), TrainConfig())
        assert grads.loss == 0.0
        assert not any(g.any() for g in grads.weights + grads.biases)

    def test_pair_gradient_is_mean_of_singles(self, rng):
        m = build_from_dims([6, 5, 4], seed=3).astype(np.float64)
        x = rng.random((2, 6))
        t = (rng.random((2, 4)) > 0.5).astype(np.float64)
        cfg = TrainConfig()
        pair = backward(m, x, t, cfg)
        first, second = backward(m, x[:1], t[:1], cfg), backward(m, x[1:], t[1:], cfg)
        for k in range(len(m.layers)):
            np.testing.assert_allclose(pair.weights[k], (first.weights[k] + second.weights[k]) / 2, rtol=1e-12, atol=1e-15)
            np.testing.assert_allclose(pair.biases[k], (first.biases[k] + second.biases[k]) / 2, rtol=1e-12, atol=1e-15)
