"""
Plot-ready tables and a static chart of a finished study
"""

# stdlib
from pathlib import Path
from typing import Dict, Union

# library
import matplotlib

matplotlib.use("Agg")

# pylint: disable=wrong-import-position
import matplotlib.pyplot as plt
import pandas as pd

# module
from ensagg.experiment import check, load_result, summarize, write_criteria
from ensagg.static.core import DEEP_ENSEMBLE


def crpss_table(summary: pd.DataFrame) -> pd.DataFrame:
    """Tidy CRPSS quartiles per variant, method, and ensemble size"""
    columns = ["variant", "method", "n", "crpss_q25", "crpss_median", "crpss_q75"]
    table = summary.loc[summary["method"] != DEEP_ENSEMBLE, columns]
    return table.sort_values(["variant", "method", "n"]).reset_index(drop=True)


def crpss_chart(table: pd.DataFrame, path: Union[str, Path]) -> Path:
    """SVG line chart of the median CRPSS over n, one panel per variant"""
    variants = list(dict.fromkeys(table["variant"]))
    fig, axes = plt.subplots(1, max(len(variants), 1), figsize=(4 * max(len(variants), 1), 3.2), squeeze=False)
    for ax, variant in zip(axes[0], variants):
        rows = table[table["variant"] == variant]
        for method, group in rows.groupby("method", sort=False):
            ax.plot(group["n"], group["crpss_median"], marker="o", label=method)
        ax.axhline(0.0, color="grey", linewidth=0.8)
        ax.set_title(variant)
        ax.set_xlabel("ensemble size n")
    axes[0][0].set_ylabel("median CRPSS")
    axes[0][-1].legend(fontsize="small")
    fig.tight_layout()
    path = Path(path)
    # fixed salt for stable element ids
    with matplotlib.rc_context({"svg.hashsalt": "ensagg"}):
        fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path


def write_report(results_dir: Union[str, Path], output_dir: Union[str, Path, None] = None) -> Dict[str, Path]:
    """Writes crpss.csv, crpss.svg, and criteria.json for a study directory"""
    results_dir = Path(results_dir)
    out = Path(output_dir) if output_dir else results_dir
    out.mkdir(parents=True, exist_ok=True)
    result = load_result(results_dir)
    table = crpss_table(summarize(result))
    paths = {"table": out / "crpss.csv", "chart": out / "crpss.svg", "criteria": out / "criteria.json"}
    table.to_csv(paths["table"], index=False)
    crpss_chart(table, paths["chart"])
    write_criteria(check(result), paths["criteria"])
    return paths
