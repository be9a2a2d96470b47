"""
Network, Configuration, and Serialization Tests
"""

# pylint: disable=invalid-name

# stdlib
import tempfile
from pathlib import Path

# library
import numpy as np

# module
from ensagg.exceptions import ConfigError, ShapeError
from ensagg.netlab import (
    NetConfig,
    NetModel,
    forward,
    load_model,
    model_from_bytes,
    model_to_bytes,
    save_model,
)

# tests
from tests.util import BaseTest


def small_model(head: str = "DRN", activation: str = "tanh", seed: int = 0, **kwargs) -> NetModel:
    config = NetConfig(head=head, hidden_sizes=(5, 4), activation=activation, seed=seed, **kwargs)
    rng = np.random.default_rng(seed)
    return NetModel.initialize(config, 3, rng, targets=rng.normal(size=50))


class TestNetConfig(BaseTest):
    """Tests hyperparameter validation"""

    def test_defaults(self):
        """Default configuration is a valid DRN"""
        config = NetConfig()
        self.assertEqual(config.head, "DRN")
        self.assertEqual(config.n_outputs, 2)
        self.assertEqual(NetConfig(head="BQN", bqn_degree=8).n_outputs, 9)
        self.assertEqual(NetConfig(head="HEN", hen_edges=[0, 1, 2, 3]).n_outputs, 3)
        with self.assertRaises(ConfigError):
            _ = NetConfig(head="HEN").n_outputs

    def test_invalid(self):
        """Each bad value names its key"""
        for kwargs, key in (
            ({"head": "GAN"}, "net.head"),
            ({"hidden_sizes": ()}, "net.hidden_sizes"),
            ({"hidden_sizes": (4, 0)}, "net.hidden_sizes"),
            ({"activation": "sigmoid"}, "net.activation"),
            ({"bqn_degree": 0}, "net.bqn_degree"),
            ({"hen_edges": (0, 0)}, "net.hen_edges"),
            ({"learning_rate": 0}, "net.learning_rate"),
            ({"batch_size": 0}, "net.batch_size"),
            ({"patience": 0}, "net.patience"),
        ):
            with self.assertRaises(ConfigError) as context:
                NetConfig(**kwargs)
            self.assertEqual(context.exception.key, key)

    def test_dict(self):
        """Configurations load from plain objects"""
        config = NetConfig(head="HEN", hen_edges=(0, 1, 2), hidden_sizes=[3])
        data = config.to_dict()
        self.assertEqual(data["hidden_sizes"], [3])
        self.assertEqual(data["hen_edges"], [0.0, 1.0, 2.0])
        self.assertEqual(NetConfig.from_dict(data), config)
        with self.assertRaises(ConfigError) as context:
            NetConfig.from_dict({"depth": 3})
        self.assertEqual(context.exception.key, "net.depth")
        self.assertEqual(config.with_updates(seed=4).seed, 4)


class TestNetModel(BaseTest):
    """Tests the forward pass and backpropagation"""

    def test_shapes(self):
        """Layers chain from inputs to head outputs"""
        model = small_model("BQN", bqn_degree=6)
        self.assertEqual([w.shape for w in model.weights], [(3, 5), (5, 4), (4, 7)])
        self.assertEqual(model.raw(np.zeros((8, 3))).shape, (8, 7))
        self.assertEqual(len(forward(model, np.zeros((2, 3)))), 2)
        with self.assertRaises(ShapeError):
            model.raw(np.zeros((2, 4)))
        with self.assertRaises(ShapeError):
            NetModel(model.config, model.weights[:2], model.biases[:2], np.zeros(3), np.ones(3))

    def test_standardization(self):
        """Features are scaled with the stored statistics"""
        model = small_model()
        shifted = NetModel(
            model.config, model.weights, model.biases, np.full(3, 10.0), np.full(3, 2.0)
        )
        x = np.random.default_rng(5).normal(size=(4, 3))
        self.assert_close(shifted.raw(10 + 2 * x), model.raw(x), 1e-12)

    def test_gradients(self):
        """Backpropagation matches central differences on every parameter"""
        for head, activation, extra in (
            ("DRN", "tanh", {}),
            ("BQN", "softplus", {"bqn_degree": 3}),
            ("HEN", "softplus", {"hen_edges": (-3, -1, 0, 1, 3)}),
        ):
            model = small_model(head, activation, seed=1, **extra)
            rng = np.random.default_rng(6)
            x = rng.normal(size=(7, 3))
            y = rng.normal(size=7)
            _, grads = model.gradients(x, y)
            eps = 1e-8
            for param, grad in zip(model.parameters, grads):
                self.assertEqual(param.shape, grad.shape)
                for index in list(np.ndindex(*param.shape))[:6]:
                    saved = param[index]
                    param[index] = saved + eps
                    up = model.loss(x, y)
                    param[index] = saved - eps
                    down = model.loss(x, y)
                    param[index] = saved
                    self.assert_close(grad[index], (up - down) / (2 * eps), 1e-6)

    def test_parameters(self):
        """Parameter copies restore the model"""
        model = small_model()
        x = np.ones((2, 3))
        before = model.raw(x)
        saved = model.copy_parameters()
        for param in model.parameters:
            param += 1
        self.assertFalse(np.allclose(model.raw(x), before))
        model.set_parameters(saved)
        self.assert_close(model.raw(x), before, 0)


class TestModelIO(BaseTest):
    """Tests the versioned binary model format"""

    def test_round_trip(self):
        """Serialized models predict identically"""
        model = small_model("HEN", hen_edges=(-2, 0, 1, 2))
        clone = model_from_bytes(model_to_bytes(model))
        x = np.random.default_rng(7).normal(size=(5, 3))
        np.testing.assert_array_equal(clone.raw(x), model.raw(x))
        self.assertEqual(clone.config, model.config)
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "member.bin"
            save_model(model, path)
            np.testing.assert_array_equal(load_model(path).raw(x), model.raw(x))

    def test_bad_data(self):
        """Wrong magic, version, or length raise ShapeError"""
        data = model_to_bytes(small_model())
        for bad in (b"NOTAMODEL" + data[9:], data + b"\x00" * 8, data[:8] + b"\x09\x00" + data[10:]):
            with self.assertRaises(ShapeError):
                model_from_bytes(bad)
