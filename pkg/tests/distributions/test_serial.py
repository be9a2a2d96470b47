"""
Distribution JSON and Batch Evaluation Tests
"""

# pylint: disable=invalid-name

# stdlib
import json

# library
import numpy as np

# module
from ensagg.distributions import (
    BernsteinQuantileDist,
    HistogramDist,
    MixtureDist,
    NormalDist,
    PiecewiseLinearQuantile,
    SampleDist,
    SkewNormalDist,
    VincentizedDist,
    cdf_many,
    dumps,
    from_dict,
    loads,
    quantile_many,
)
from ensagg.exceptions import DomainError, InvalidDistribution

# tests
from tests.util import BaseTest, load_forecasts


class TestSerial(BaseTest):
    """Tests the family-tagged JSON representation"""

    def test_family_tags(self):
        """Each family writes its tag and named fields"""
        for dist, fields in (
            (NormalDist(1, 2), {"family": "normal", "mu": 1.0, "sigma": 2.0}),
            (
                SkewNormalDist(0, 1, -5),
                {"family": "skewnormal", "location": 0.0, "scale": 1.0, "shape": -5.0},
            ),
            (BernsteinQuantileDist([0, 1]), {"family": "bernstein", "coeffs": [0.0, 1.0]}),
            (
                HistogramDist([0, 1], [1]),
                {"family": "histogram", "edges": [0.0, 1.0], "probs": [1.0]},
            ),
        ):
            self.assertEqual(dist.to_dict(), fields)

    def test_nested(self):
        """Composite families nest their members"""
        mixture = MixtureDist([NormalDist(0, 1), HistogramDist([0, 1], [1])], [0.25, 0.75])
        self.assertEqual(loads(dumps(mixture)), mixture)
        vi = VincentizedDist([BernsteinQuantileDist([0, 1, 3])], a=1.0, w0=0.5)
        self.assertEqual(from_dict(json.loads(dumps(vi))), vi)

    def test_list(self):
        """Lists of distributions serialize as JSON arrays"""
        dists = [PiecewiseLinearQuantile([0, 1], [2, 3]), SampleDist([3, 1, 2])]
        text = dumps(dists)
        self.assertTrue(text.startswith("["))
        self.assertEqual(loads(text), dists)

    def test_fixture(self):
        """Loads the stored forecast fixture"""
        dists = load_forecasts(__file__, "forecasts.json")
        self.assertEqual([d.family for d in dists], ["normal", "bernstein", "histogram"])
        self.assertEqual(dists[0].cdf(0), 0.5)

    def test_bad_input(self):
        """Unknown families and missing fields raise InvalidDistribution"""
        for data in ({"family": "gamma"}, {"mu": 0}, {"family": "normal", "mu": 0}, [1]):
            with self.assertRaises(InvalidDistribution):
                from_dict(data)
        with self.assertRaises(InvalidDistribution):
            from_dict({"family": "normal", "mu": 0, "sigma": -1})


class TestSample(BaseTest):
    """Tests the empirical distribution"""

    def test_init(self):
        """Values are sorted and must not be empty"""
        self.assert_close(SampleDist([3, 1, 2]).values, [1, 2, 3])
        with self.assertRaises(DomainError):
            SampleDist([])

    def test_step_functions(self):
        """CDF and quantile are right-continuous steps"""
        dist = SampleDist([0, 1, 2, 3])
        self.assert_close(dist.cdf([-1, 0, 0.5, 3]), [0, 0.25, 0.25, 1])
        self.assert_close(dist.cdf_left([0, 1]), [0, 0.25])
        self.assert_close(dist.quantile([0, 0.25, 0.26, 1]), [0, 0, 1, 3])

    def test_many_quantile(self):
        """Equal-size samples are evaluated together"""
        dists = [SampleDist([0, 1, 2, 3]), SampleDist([4, 5, 6, 7])]
        q = SampleDist.many_quantile(dists, np.array([0.5, 1.0]))
        self.assert_close(q, [[1, 3], [5, 7]])


class TestBatch(BaseTest):
    """Tests evaluation across cases of mixed families"""

    def test_mixed_families(self):
        """Batched values match per-case values"""
        dists = [
            NormalDist(0, 1),
            HistogramDist([0, 1, 2], [0.5, 0.5]),
            NormalDist(5, 2),
            BernsteinQuantileDist([0, 2]),
        ]
        z = np.array([0.0, 0.5, 4.0, 1.5])
        self.assert_close(cdf_many(dists, z), [d.cdf(v) for d, v in zip(dists, z)], 1e-12)
        p = np.array([0.1, 0.5, 0.9])
        q = quantile_many(dists, p)
        self.assertEqual(q.shape, (4, 3))
        for row, dist in zip(q, dists):
            self.assert_close(row, dist.quantile(p), 1e-12)
