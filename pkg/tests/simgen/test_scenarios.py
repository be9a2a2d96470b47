"""
Scenario Generation Tests
"""

# pylint: disable=invalid-name

# stdlib
import json
import tempfile
from pathlib import Path

# library
import numpy as np
import pandas as pd
from scipy import stats

# module
from ensagg.distributions import NormalDist, SkewNormalDist
from ensagg.exceptions import ConfigError
from ensagg.scoring import crps_normal, pit_many
from ensagg.simgen import ScenarioSpec, generate, optimal_crps, write_datasets, write_latent
from ensagg.simgen.scenarios import SKEW_SHAPE
from ensagg.structs import Dataset

# tests
from tests.util import BaseTest


def small_spec(scenario: str = "S1", **kwargs) -> ScenarioSpec:
    sizes = {"n_train": 60, "n_valid": 20, "n_test": 40, "seed": 11}
    sizes.update(kwargs)
    return ScenarioSpec(id=scenario, **sizes)


class TestScenarioSpec(BaseTest):
    """Tests scenario settings"""

    def test_defaults(self):
        """Default sizes follow the desk study"""
        spec = ScenarioSpec()
        self.assertEqual((spec.n_train, spec.n_valid, spec.n_test), (6000, 2000, 10000))
        self.assertEqual(spec.n_total, 18000)
        self.assertEqual(ScenarioSpec.from_dict(spec.to_dict()), spec)

    def test_invalid(self):
        """Each bad value names its key"""
        for kwargs, key in (
            ({"id": "S9"}, "scenario.id"),
            ({"n_train": 0}, "scenario.n_train"),
            ({"n_test": 0}, "scenario.n_test"),
            ({"n_valid": -1}, "scenario.n_valid"),
            ({"noise_scale": 0}, "scenario.noise_scale"),
        ):
            with self.assertRaises(ConfigError) as context:
                ScenarioSpec(**kwargs)
            self.assertEqual(context.exception.key, key)
        with self.assertRaises(ConfigError) as context:
            ScenarioSpec.from_dict({"size": 3})
        self.assertEqual(context.exception.key, "scenario.size")


class TestGenerate(BaseTest):
    """Tests the data-generating processes"""

    def test_splits(self):
        """Every scenario yields the requested split sizes"""
        for scenario, width in (("S1", 5), ("S2", 5), ("S3", 5), ("S4", 1)):
            train, valid, test, optimal = generate(small_spec(scenario))
            self.assertEqual((len(train), len(valid), len(test)), (60, 20, 40))
            self.assertEqual(train.n_features, width)
            self.assertEqual(len(optimal), 40)

    def test_reproducible(self):
        """All randomness comes from the seed"""
        first = generate(small_spec("S3"))
        second = generate(small_spec("S3"))
        np.testing.assert_array_equal(first.test.targets, second.test.targets)
        np.testing.assert_array_equal(first.train.features, second.train.features)
        other = generate(small_spec("S3", seed=12))
        self.assertFalse(np.allclose(first.test.targets, other.test.targets))

    def test_linear(self):
        """S1 optimal forecasts are normal with log-linear scale"""
        data = generate(small_spec("S1"))
        self.assertEqual(data.optimal_family, "normal")
        self.assertIsInstance(data.optimal_test[0], NormalDist)
        self.assertEqual(len(data.latent["beta1"]), 5)
        mu = data.test.features @ np.array(data.latent["beta1"])
        self.assert_close(data.optimal_params["mu"], mu, 1e-12)
        flat = generate(small_spec("S1", homoscedastic=True, noise_scale=2.0))
        self.assert_close(flat.optimal_params["sigma"], 2.0, 1e-15)
        self.assertEqual(flat.latent["beta2"], [0.0] * 5)

    def test_skewed(self):
        """S2 noise is left skewed around the Friedman mean"""
        data = generate(small_spec("S2", n_test=2000))
        self.assertIsInstance(data.optimal_test[0], SkewNormalDist)
        noise = data.test.targets - data.optimal_params["location"]
        # SkewNormal(0, 1, -5) has mean near -0.78
        self.assertLess(noise.mean(), -0.6)
        self.assertGreater(noise.mean(), -0.95)

    def test_skewness(self):
        """S2 noise has the skew-normal skewness"""
        data = generate(small_spec("S2", n_train=1, n_valid=0, n_test=1_000_000))
        params = data.optimal_params
        noise = (data.test.targets - params["location"]) / params["scale"]
        expected = SkewNormalDist(0, 1, SKEW_SHAPE).skewness
        self.assert_close(stats.skew(noise), expected, 0.01)

    def test_marginals(self):
        """S1 features are independent standard normal"""
        x = generate(small_spec("S1", n_train=1_000_000, n_valid=0, n_test=1)).train.features
        self.assertLessEqual(np.abs(x.mean(axis=0)).max(), 0.01)
        variance = x.var(axis=0)
        self.assertTrue(np.all((variance >= 0.97) & (variance <= 1.03)), variance)
        self.assertLess(np.abs(np.corrcoef(x, rowvar=False) - np.eye(5)).max(), 0.01)

    def test_optimal_pit(self):
        """Optimal forecasts are calibrated"""
        for scenario in ("S1", "S3", "S4"):
            data = generate(small_spec(scenario, n_test=10_000))
            values = pit_many(data.optimal_test, data.test.targets)
            self.assertLess(stats.kstest(values, "uniform").statistic, 0.02, scenario)

    def test_mixtures(self):
        """S3 and S4 keep the latent component of every case"""
        for scenario in ("S3", "S4"):
            data = generate(small_spec(scenario))
            pi = data.latent["pi"]
            self.assertEqual([len(pi[k]) for k in ("train", "valid", "test")], [60, 20, 40])
            self.assertTrue(set(pi["test"]) <= {0, 1})
        data = generate(small_spec("S4"))
        wide = np.array(data.latent["pi"]["test"]) == 0
        self.assert_close(data.optimal_params["sigma"][wide], 0.8, 1e-15)

    def test_case(self):
        """Cases pair a test target with its optimal forecast"""
        data = generate(small_spec("S1"))
        case = data.case(3)
        self.assertEqual(case.target, data.test.targets[3])
        self.assertIs(case.optimal, data.optimal_test[3])
        np.testing.assert_array_equal(case.features, data.test.features[3])

    def test_optimal_crps(self):
        """Optimal score is closed form for normal laws"""
        data = generate(small_spec("S3"))
        params = data.optimal_params
        expected = np.mean(crps_normal(params["mu"], params["sigma"], data.test.targets))
        self.assert_close(optimal_crps(data), expected, 1e-12)
        self.assertEqual(data.optimal_crps, optimal_crps(data))
        skewed = generate(small_spec("S2"))
        self.assertGreater(optimal_crps(skewed), 0)
        self.assertTrue(np.isfinite(optimal_crps(skewed)))


class TestExport(BaseTest):
    """Tests CSV and latent state files"""

    def test_write(self):
        """Splits reload from CSV and latent state from JSON"""
        data = generate(small_spec("S3"))
        with tempfile.TemporaryDirectory() as tmp:
            paths = write_datasets(data, Path(tmp) / "s3")
            self.assertEqual(set(paths), {"train", "valid", "test"})
            frame = pd.read_csv(paths["test"])
            self.assertEqual(list(frame.columns), ["f1", "f2", "f3", "f4", "f5", "y"])
            reloaded = Dataset.from_frame(frame)
            self.assert_close(reloaded.targets, data.test.targets, 1e-12)
            self.assert_close(reloaded.features, data.test.features, 1e-12)
            path = write_latent(data, Path(tmp) / "latent.json")
            payload = json.loads(path.read_text())
            self.assertEqual(payload["scenario"]["id"], "S3")
            self.assertEqual(payload["latent"]["pi"]["test"], data.latent["pi"]["test"])
