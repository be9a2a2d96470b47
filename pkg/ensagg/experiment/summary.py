"""
Summary tables over repetitions
"""

# stdlib
from typing import List

# library
import numpy as np
import pandas as pd

# module
from ensagg.exceptions import DomainError
from ensagg.static.core import COEFFICIENT_COLUMNS, RESULT_COLUMNS
from ensagg.structs import RunResult

CELL_KEYS = ["scenario", "variant", "method", "n"]

SUMMARY_COLUMNS = CELL_KEYS + [
    "reps",
    "missing",
    "crpss_mean",
    "crpss_q25",
    "crpss_median",
    "crpss_q75",
    "mean_crps",
    "coverage",
    "pi_length",
    "bias",
    "a",
    "delta_n",
]


def results_frame(result: RunResult) -> pd.DataFrame:
    """Long-format result rows with the fixed leading columns"""
    columns = list(RESULT_COLUMNS) + ["variant", "scenario"]
    return pd.DataFrame([r.row() for r in result.records], columns=columns)


def coefficients_frame(result: RunResult) -> pd.DataFrame:
    """Estimated coefficients of the VI cells"""
    rows = [
        {
            "variant": r.variant,
            "method": r.method,
            "n": r.n,
            "rep": r.rep,
            "a": r.a,
            "w0": r.w0,
            "delta_n": r.delta_n,
        }
        for r in result.records
        if r.w0 is not None
    ]
    return pd.DataFrame(rows, columns=list(COEFFICIENT_COLUMNS))


def pit_frame(result: RunResult) -> pd.DataFrame:
    """PIT values of the cells that kept them"""
    frames: List[pd.DataFrame] = []
    for r in result.records:
        if r.report is None or not r.report.pit_values.size:
            continue
        pit = r.report.pit_values
        frames.append(
            pd.DataFrame(
                {
                    "variant": r.variant,
                    "method": r.method,
                    "n": r.n,
                    "rep": r.rep,
                    "case": np.arange(pit.size),
                    "pit": pit,
                }
            )
        )
    if not frames:
        return pd.DataFrame(columns=["variant", "method", "n", "rep", "case", "pit"])
    return pd.concat(frames, ignore_index=True)


def summarize(result: RunResult) -> pd.DataFrame:
    """Mean and quartiles of CRPSS plus mean metrics per (variant, method, n)

    Cells missing in every repetition are left out and listed in
    frame.attrs["omitted"] with their repetition count
    """
    if not result.records:
        raise DomainError("Cannot summarize an empty result")
    rows = pd.DataFrame(
        [
            {**r.row(), "a": r.a, "delta_n": r.delta_n, "is_missing": r.missing}
            for r in result.records
        ]
    )
    summary, omitted = [], []
    for key, group in rows.groupby(CELL_KEYS, sort=False):
        present = group[~group["is_missing"]]
        cell = dict(zip(CELL_KEYS, key))
        missing = int(group["is_missing"].sum())
        if present.empty:
            omitted.append({**cell, "n": int(cell["n"]), "missing": missing})
            continue
        crpss = present["crpss"].astype(float)
        summary.append(
            {
                **cell,
                "reps": len(present),
                "missing": missing,
                "crpss_mean": crpss.mean(),
                "crpss_q25": crpss.quantile(0.25),
                "crpss_median": crpss.median(),
                "crpss_q75": crpss.quantile(0.75),
                "mean_crps": present["mean_crps"].mean(),
                "coverage": present["coverage"].mean(),
                "pi_length": present["pi_length"].mean(),
                "bias": present["bias"].mean(),
                "a": present["a"].astype(float).mean(),
                "delta_n": present["delta_n"].astype(float).mean(),
            }
        )
    frame = pd.DataFrame(summary, columns=SUMMARY_COLUMNS)
    frame.attrs["omitted"] = omitted
    return frame
