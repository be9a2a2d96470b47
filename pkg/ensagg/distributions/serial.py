"""
JSON representation of forecast distributions
"""

# stdlib
import json
from typing import Callable, Dict, List, Union

# module
from ensagg.distributions.base import ForecastDist
from ensagg.distributions.bernstein import BernsteinQuantileDist
from ensagg.distributions.composite import MixtureDist, VincentizedDist
from ensagg.distributions.empirical import SampleDist
from ensagg.distributions.parametric import NormalDist, SkewNormalDist
from ensagg.distributions.piecewise import HistogramDist, PiecewiseLinearQuantile
from ensagg.exceptions import InvalidDistribution


def _mixture(data: dict) -> MixtureDist:
    return MixtureDist([from_dict(c) for c in data["components"]], data.get("weights"))


def _vincentized(data: dict) -> VincentizedDist:
    return VincentizedDist(
        [from_dict(m) for m in data["members"]], data.get("a", 0.0), data.get("w0")
    )


_HANDLERS: Dict[str, Callable[[dict], ForecastDist]] = {
    "normal": lambda d: NormalDist(d["mu"], d["sigma"]),
    "skewnormal": lambda d: SkewNormalDist(d["location"], d["scale"], d["shape"]),
    "bernstein": lambda d: BernsteinQuantileDist(d["coeffs"]),
    "histogram": lambda d: HistogramDist(d["edges"], d["probs"]),
    "pl_quantile": lambda d: PiecewiseLinearQuantile(d["levels"], d["values"]),
    "sample": lambda d: SampleDist(d["values"]),
    "mixture": _mixture,
    "vincentized": _vincentized,
}


def from_dict(data: dict) -> ForecastDist:
    """Builds a distribution from its family-tagged dict"""
    try:
        handler = _HANDLERS[data["family"]]
    except (KeyError, TypeError) as key_error:
        raise InvalidDistribution(f"Unknown distribution family in {data!r}") from key_error
    try:
        return handler(data)
    except KeyError as key_error:
        raise InvalidDistribution(
            f"{data['family']} distribution is missing field {key_error}"
        ) from key_error


def to_dict(dist: ForecastDist) -> dict:
    """Family-tagged dict of a distribution"""
    return dist.to_dict()


def dumps(dist: Union[ForecastDist, List[ForecastDist]], **kwargs) -> str:
    """JSON string of one distribution or a list of them"""
    if isinstance(dist, ForecastDist):
        return json.dumps(dist.to_dict(), **kwargs)
    return json.dumps([d.to_dict() for d in dist], **kwargs)


def loads(text: str) -> Union[ForecastDist, List[ForecastDist]]:
    """Parses one distribution or a list of them from JSON"""
    data = json.loads(text)
    if isinstance(data, list):
        return [from_dict(d) for d in data]
    return from_dict(data)
