"""
File exports of generated scenario data
"""

# stdlib
import json
from pathlib import Path
from typing import Dict, Union

# module
from ensagg.simgen.scenarios import ScenarioData


def write_datasets(data: ScenarioData, directory: Union[str, Path]) -> Dict[str, Path]:
    """Writes train.csv, valid.csv, and test.csv with columns f1..fk, y"""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = {}
    for name in ("train", "valid", "test"):
        path = directory / f"{name}.csv"
        getattr(data, name).to_frame().to_csv(path, index=False)
        paths[name] = path
    return paths


def write_latent(data: ScenarioData, path: Union[str, Path]) -> Path:
    """Writes the latent state needed to recompute the optimal forecasts"""
    path = Path(path)
    payload = {"scenario": data.spec.to_dict(), "latent": data.latent}
    path.write_text(json.dumps(payload, indent=2), encoding="utf8")
    return path
