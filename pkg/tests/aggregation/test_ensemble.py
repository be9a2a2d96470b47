"""
Ensemble and Aggregation Method Tests
"""

# pylint: disable=invalid-name

# module
from ensagg.aggregation import AggMethod, EnsembleForecast
from ensagg.distributions import BernsteinQuantileDist, HistogramDist, NormalDist
from ensagg.exceptions import ConfigError, DomainError, InvalidDistribution, ShapeError
from ensagg.structs import CoefficientFit, VICoefficients

# tests
from tests.util import BaseTest


class TestEnsembleForecast(BaseTest):
    """Tests ensemble construction"""

    def test_init(self):
        """Members must be non-empty and homogeneous"""
        with self.assertRaises(ShapeError):
            EnsembleForecast([])
        with self.assertRaises(ShapeError):
            EnsembleForecast([NormalDist(0, 1), BernsteinQuantileDist([0, 1])])
        with self.assertRaises(ShapeError):
            EnsembleForecast(
                [HistogramDist([0, 1, 2], [0.5, 0.5]), HistogramDist([0, 1, 3], [0.5, 0.5])]
            )
        ens = EnsembleForecast([NormalDist(0, 1), NormalDist(1, 1)])
        self.assertEqual(ens.n, 2)
        self.assertEqual(len(ens), 2)
        self.assertEqual(ens.family, "normal")

    def test_first(self):
        """Prefix ensembles keep member order"""
        ens = EnsembleForecast([NormalDist(i, 1) for i in range(5)])
        self.assertEqual([m.mu for m in ens.first(3)], [0, 1, 2])
        for n in (0, 6):
            with self.assertRaises(ShapeError):
                ens.first(n)

    def test_dict(self):
        """Ensembles load from a members object or a bare list"""
        ens = EnsembleForecast([NormalDist(7, 1), NormalDist(10, 1)])
        data = ens.to_dict()
        self.assertEqual(len(data["members"]), 2)
        self.assertEqual(EnsembleForecast.from_dict(data).members, ens.members)
        self.assertEqual(EnsembleForecast.from_dict(data["members"]).n, 2)


class TestAggMethod(BaseTest):
    """Tests aggregation method descriptors"""

    def test_variants(self):
        """Free coefficients per variant"""
        for variant, free in (
            ("LP", ()),
            ("V0eq", ()),
            ("Vaeq", ("a",)),
            ("V0w", ("w0",)),
            ("Vaw", ("a", "w0")),
        ):
            method = AggMethod(variant)
            self.assertEqual(method.free_params, free)
            self.assertEqual(method.needs_estimation, bool(free))
            self.assertEqual(method.is_vi, variant != "LP")
        with self.assertRaises(ConfigError):
            AggMethod("median")

    def test_coefficients(self):
        """Fixed coefficients override given ones"""
        given = VICoefficients(-6.0, 0.6)
        self.assertIsNone(AggMethod("LP", given).coefficients(2))
        self.assertEqual(AggMethod("V0eq", given).coefficients(2), VICoefficients(0.0, 0.5))
        self.assertEqual(AggMethod("Vaeq", given).coefficients(2), VICoefficients(-6.0, 0.5))
        self.assertEqual(AggMethod("V0w", given).coefficients(2), VICoefficients(0.0, 0.6))
        self.assertEqual(AggMethod("Vaw", given).coefficients(2), given)
        self.assertEqual(AggMethod("Vaw").coefficients(4), VICoefficients(0.0, 0.25))


class TestCoefficients(BaseTest):
    """Tests coefficient value objects"""

    def test_invariants(self):
        """w0 must be non-negative and both finite"""
        for a, w0 in ((0.0, -0.1), (float("nan"), 1.0), (0.0, float("inf"))):
            with self.assertRaises(DomainError):
                VICoefficients(a, w0)

    def test_fit_dict(self):
        """Coefficient fits persist as flat objects"""
        fit = CoefficientFit("Vaw", VICoefficients(0.5, 0.3), 4, 0.71)
        data = fit.to_dict()
        self.assertEqual(
            data, {"variant": "Vaw", "a": 0.5, "w0": 0.3, "n": 4, "validation_crps": 0.71}
        )
        self.assertEqual(CoefficientFit.from_dict(data), fit)
        with self.assertRaises(InvalidDistribution):
            CoefficientFit.from_dict({"variant": "Vaw"})
