"""
Versioned binary serialization of trained models

Layout: magic, version (uint16), header length (uint32), JSON header, then
little-endian float64 weights and biases per layer in row-major order
"""

# stdlib
import json
import struct
from pathlib import Path
from typing import Union

# library
import numpy as np

# module
from ensagg.exceptions import ShapeError
from ensagg.netlab.config import NetConfig
from ensagg.netlab.network import NetModel

MAGIC = b"ENSAGGNN"
VERSION = 1
_PREFIX = struct.Struct("<HI")


def model_to_bytes(model: NetModel) -> bytes:
    header = {
        "config": model.config.to_dict(),
        "feature_mean": model.feature_mean.tolist(),
        "feature_scale": model.feature_scale.tolist(),
        "shapes": [list(w.shape) for w in model.weights],
    }
    text = json.dumps(header, sort_keys=True).encode("utf8")
    body = b"".join(np.ascontiguousarray(p, dtype="<f8").tobytes() for p in model.parameters)
    return MAGIC + _PREFIX.pack(VERSION, len(text)) + text + body


def model_from_bytes(data: bytes) -> NetModel:
    if not data.startswith(MAGIC):
        raise ShapeError("Not a serialized ensagg model")
    offset = len(MAGIC)
    version, size = _PREFIX.unpack_from(data, offset)
    if version != VERSION:
        raise ShapeError(f"Unsupported model format version {version}")
    offset += _PREFIX.size
    header = json.loads(data[offset : offset + size].decode("utf8"))
    offset += size
    weights, biases = [], []
    for rows, cols in header["shapes"]:
        for shape in ((rows, cols), (cols,)):
            count = int(np.prod(shape))
            values = np.frombuffer(data, dtype="<f8", count=count, offset=offset)
            offset += 8 * count
            (weights if len(shape) == 2 else biases).append(values.reshape(shape).astype(float))
    if offset != len(data):
        raise ShapeError("Serialized model has trailing bytes")
    return NetModel(
        NetConfig.from_dict(header["config"]),
        weights,
        biases,
        np.array(header["feature_mean"]),
        np.array(header["feature_scale"]),
    )


def save_model(model: NetModel, path: Union[str, Path]):
    Path(path).write_bytes(model_to_bytes(model))


def load_model(path: Union[str, Path]) -> NetModel:
    return model_from_bytes(Path(path).read_bytes())
