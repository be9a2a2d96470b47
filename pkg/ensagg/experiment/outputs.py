"""
Writes study results to the output directory
"""

# stdlib
import json
import logging
import math
from pathlib import Path
from typing import Dict, Optional, Union

# library
import numpy as np
import pandas as pd

# module
from ensagg.experiment.summary import coefficients_frame, pit_frame, results_frame
from ensagg.structs import CellRecord, EvalReport, RunResult

LOG = logging.getLogger(__name__)


def _clean(value):
    """JSON-ready copy with NaN as null"""
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_clean(v) for v in value]
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def write_json(data: object, path: Path):
    text = json.dumps(_clean(data), indent=2, allow_nan=False)
    path.write_text(text + "\n", encoding="utf8")


def write_outputs(
    result: RunResult, summary: pd.DataFrame, output_dir: Union[str, Path]
) -> Dict[str, Path]:
    """Writes results, coefficients, PIT, summary, and run metadata files"""
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "results": out / "results.csv",
        "coefficients": out / "coefficients.csv",
        "pit": out / "pit.csv",
        "summary": out / "summary.csv",
        "summary_json": out / "summary.json",
        "meta": out / "run_meta.json",
    }
    results_frame(result).to_csv(paths["results"], index=False)
    coefficients_frame(result).to_csv(paths["coefficients"], index=False)
    pit_frame(result).to_csv(paths["pit"], index=False)
    summary.to_csv(paths["summary"], index=False)
    cells = json.loads(summary.to_json(orient="records"))
    write_json({"cells": cells, "omitted": summary.attrs.get("omitted", [])}, paths["summary_json"])
    write_json(result.meta, paths["meta"])
    LOG.info("Wrote %d records to %s", len(result.records), out)
    return paths


def _optional(value) -> Optional[float]:
    return None if pd.isna(value) else float(value)


def load_result(output_dir: Union[str, Path]) -> RunResult:
    """Rebuilds a RunResult from the files written by write_outputs"""
    out = Path(output_dir)
    rows = pd.read_csv(out / "results.csv")
    coeffs = pd.read_csv(out / "coefficients.csv")
    pit = pd.read_csv(out / "pit.csv")
    keys = ["variant", "method", "n", "rep"]
    coeff_map = {tuple(row[keys]): row for _, row in coeffs.iterrows()}
    pit_map = {key: group.sort_values("case")["pit"].to_numpy() for key, group in pit.groupby(keys)}
    records = []
    for _, row in rows.iterrows():
        key = (row["variant"], row["method"], int(row["n"]), int(row["rep"]))
        report = None
        if not pd.isna(row["mean_crps"]):
            report = EvalReport(
                mean_crps=float(row["mean_crps"]),
                crpss=float(row["crpss"]),
                pit_values=pit_map.get(key, np.empty(0)),
                pi_coverage=float(row["coverage"]),
                pi_length=float(row["pi_length"]),
                bias=float(row["bias"]),
                n_cases=0,
            )
        record = CellRecord(row["scenario"], *key, report=report)
        if key in coeff_map:
            coeff = coeff_map[key]
            record.a = _optional(coeff["a"])
            record.w0 = _optional(coeff["w0"])
            record.delta_n = _optional(coeff["delta_n"])
        records.append(record)
    meta_path = out / "run_meta.json"
    meta = json.loads(meta_path.read_text(encoding="utf8")) if meta_path.exists() else {}
    return RunResult(records, meta)
