"""
Output Head Tests
"""

# pylint: disable=invalid-name,protected-access

# library
import numpy as np

# module
from ensagg.distributions import BernsteinQuantileDist, HistogramDist, NormalDist
from ensagg.exceptions import ShapeError
from ensagg.netlab import (
    BernsteinHead,
    HistogramHead,
    NormalHead,
    loss,
    make_head,
    softplus,
    softplus_inv,
)
from ensagg.scoring import crps_normal
from ensagg.static.core import SIGMA_FLOOR

# tests
from tests.util import BaseTest


def numeric_gradient(head, raw: np.ndarray, y: np.ndarray, eps: float = 1e-6) -> np.ndarray:
    """Central differences of the mean head loss"""
    grad = np.zeros_like(raw)
    for index in np.ndindex(*raw.shape):
        up, down = raw.copy(), raw.copy()
        up[index] += eps
        down[index] -= eps
        grad[index] = (head.loss(up, y)[0] - head.loss(down, y)[0]) / (2 * eps)
    return grad


class TestActivations(BaseTest):
    """Tests softplus helpers"""

    def test_softplus_inverse(self):
        """softplus_inv undoes softplus"""
        x = np.array([-5.0, -0.3, 0.0, 2.0, 30.0])
        self.assert_close(softplus_inv(softplus(x)), x, 1e-9)
        self.assertTrue(np.all(softplus(x) > 0))


class TestNormalHead(BaseTest):
    """Tests the DRN head"""

    def setUp(self):
        rng = np.random.default_rng(0)
        self.head = NormalHead()
        self.raw = rng.normal(size=(6, 2))
        self.y = rng.normal(size=6)

    def test_params(self):
        """Scale goes through softplus with a floor"""
        mu, sigma = NormalHead.params(np.array([[1.0, -50.0], [0.0, 0.0]]))
        self.assert_close(mu, [1, 0])
        self.assertGreaterEqual(sigma.min(), SIGMA_FLOOR)
        self.assert_close(sigma[1], np.log(2) + SIGMA_FLOOR, 1e-14)

    def test_loss(self):
        """Loss is the mean closed-form CRPS"""
        value, grad = loss(self.head, self.raw, self.y)
        mu, sigma = NormalHead.params(self.raw)
        self.assert_close(value, np.mean(crps_normal(mu, sigma, self.y)), 1e-14)
        self.assertEqual(grad.shape, self.raw.shape)

    def test_gradient(self):
        """Analytic gradient matches central differences"""
        _, grad = self.head.loss(self.raw, self.y)
        self.assert_close(grad, numeric_gradient(self.head, self.raw, self.y), 1e-7)

    def test_distributions(self):
        """One normal forecast per row"""
        dists = self.head.distributions(self.raw)
        self.assertEqual(len(dists), 6)
        self.assertIsInstance(dists[0], NormalDist)
        with self.assertRaises(ShapeError):
            self.head.distributions(np.zeros((2, 3)))

    def test_init_bias(self):
        """Initial bias matches the target mean and spread"""
        y = np.random.default_rng(1).normal(3, 2, 500)
        mu, sigma = NormalHead.params(self.head.init_bias(y)[None, :])
        self.assert_close(mu, [y.mean()], 1e-12)
        self.assert_close(sigma, [y.std()], 1e-9)


class TestBernsteinHead(BaseTest):
    """Tests the BQN head"""

    def setUp(self):
        rng = np.random.default_rng(2)
        self.head = BernsteinHead(5)
        self.raw = rng.normal(size=(4, 6))
        self.y = rng.normal(size=4)

    def test_coefficients(self):
        """Coefficients are nondecreasing by construction"""
        alpha = BernsteinHead.coefficients(self.raw)
        self.assertTrue(np.all(np.diff(alpha, axis=1) > 0))
        self.assert_close(alpha[:, 0], self.raw[:, 0])
        dists = self.head.distributions(self.raw)
        self.assertIsInstance(dists[0], BernsteinQuantileDist)
        self.assertEqual(dists[0].degree, 5)

    def test_gradient(self):
        """Analytic pinball gradient matches central differences"""
        _, grad = self.head.loss(self.raw, self.y)
        self.assert_close(grad, numeric_gradient(self.head, self.raw, self.y, eps=1e-8), 1e-6)

    def test_n_outputs(self):
        """Degree d needs d + 1 outputs"""
        self.assertEqual(self.head.n_outputs, 6)
        with self.assertRaises(ShapeError):
            self.head.loss(np.zeros((2, 5)), np.zeros(2))

    def test_init_bias(self):
        """Initial coefficients span the bulk of the targets"""
        y = np.random.default_rng(3).uniform(-1, 1, 1000)
        alpha = BernsteinHead.coefficients(self.head.init_bias(y)[None, :])[0]
        self.assertLess(abs(alpha[0] + 1), 0.05)
        self.assertLess(abs(alpha[-1] - 1), 0.05)

    def test_random_outputs(self):
        """Any raw output gives a nondecreasing quantile function"""
        head = BernsteinHead(12)
        raw = np.random.default_rng(5).normal(0, 5, size=(10_000, 13))
        alpha = BernsteinHead.coefficients(raw)
        self.assertTrue(np.all(np.diff(alpha, axis=1) >= 0))
        q = alpha @ head.basis.T
        steps = np.diff(q, axis=1)
        self.assertTrue(np.all(steps >= -1e-9 * np.maximum(1.0, np.abs(q[:, 1:]))))
        self.assertTrue(np.all(np.isfinite(q)))


class TestHistogramHead(BaseTest):
    """Tests the HEN head"""

    def setUp(self):
        rng = np.random.default_rng(4)
        self.head = HistogramHead([0.0, 0.5, 1.0, 2.0])
        self.raw = rng.normal(size=(5, 3))
        self.y = rng.uniform(0, 2, 5)

    def test_distributions(self):
        """Softmax probabilities on the shared edges"""
        dists = self.head.distributions(self.raw)
        self.assertIsInstance(dists[0], HistogramDist)
        self.assert_close(dists[0].edges, [0, 0.5, 1, 2])
        self.assert_close(sum(d.probs.sum() for d in dists), 5, 1e-12)

    def test_loss(self):
        """Cross-entropy of the observed bin"""
        raw = np.zeros((1, 3))
        value, _ = self.head.loss(raw, np.array([0.7]))
        self.assert_close(value, np.log(3), 1e-14)

    def test_gradient(self):
        """Softmax minus one-hot matches central differences"""
        _, grad = self.head.loss(self.raw, self.y)
        self.assert_close(grad, numeric_gradient(self.head, self.raw, self.y), 1e-7)

    def test_bin_index(self):
        """Bins are half-open and outside targets clamp with one warning"""
        self.assert_close(self.head.bin_index(np.array([0.0, 0.49, 0.5, 1.99, 2.0])), [0, 0, 1, 2, 2])
        with self.assertLogs("ensagg.netlab.heads", level="WARNING"):
            index = self.head.bin_index(np.array([-1.0, 3.0]))
        self.assert_close(index, [0, 2])
        with self.assertLogs("ensagg.netlab.heads", level="DEBUG") as logs:
            self.head.bin_index(np.array([5.0]))
        self.assertEqual([r.levelname for r in logs.records], ["DEBUG"])

    def test_init_bias(self):
        """Initial probabilities follow smoothed bin frequencies"""
        y = np.array([0.1, 0.2, 0.3, 1.5])
        probs = self.head.distributions(self.head.init_bias(y)[None, :])[0].probs
        self.assert_close(probs, [4 / 7, 1 / 7, 2 / 7], 1e-12)

    def test_random_outputs(self):
        """Any raw output gives probabilities on the simplex"""
        raw = np.random.default_rng(6).normal(0, 10, size=(10_000, 3))
        dists = self.head.distributions(raw)
        probs = np.array([d.probs for d in dists])
        self.assertTrue(np.all(probs >= 0))
        self.assert_close(probs.sum(axis=1), 1.0, 1e-12)


class TestMakeHead(BaseTest):
    """Tests the head factory"""

    def test_variants(self):
        """Names map to head classes"""
        self.assertIsInstance(make_head("DRN"), NormalHead)
        self.assertEqual(make_head("BQN", degree=3).n_outputs, 4)
        self.assertEqual(make_head("HEN", edges=[0, 1, 2]).n_outputs, 2)
        with self.assertRaises(ShapeError):
            make_head("HEN")
        with self.assertRaises(ShapeError):
            make_head("QRF")
