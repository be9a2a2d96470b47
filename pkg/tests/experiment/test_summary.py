"""
Summary Table and Output File Tests
"""

# pylint: disable=invalid-name

# stdlib
import json
import math
import tempfile
from pathlib import Path
from typing import Optional

# library
import numpy as np
import time_machine

# module
from ensagg.exceptions import DomainError
from ensagg.experiment import (
    coefficients_frame,
    load_result,
    pit_frame,
    results_frame,
    summarize,
    write_outputs,
)
from ensagg.experiment.outputs import write_json
from ensagg.experiment.study import _now
from ensagg.static.core import COEFFICIENT_COLUMNS, DEEP_ENSEMBLE, RESULT_COLUMNS
from ensagg.structs import CellRecord, EvalReport, RunResult

# tests
from tests.util import BaseTest


def make_record(
    method: str,
    n: int,
    rep: int,
    crpss: Optional[float],
    w0: Optional[float] = None,
    pit: int = 0,
) -> CellRecord:
    """Cell with a report, or a missing cell when crpss is None"""
    record = CellRecord("S1", "DRN", method, n, rep)
    if crpss is None:
        record.error = "only 1 members trained"
        return record
    record.report = EvalReport(
        mean_crps=1 - crpss,
        crpss=crpss,
        pit_values=(np.arange(pit) + 0.5) / max(pit, 1),
        pi_coverage=0.9,
        pi_length=2.0 + rep,
        bias=0.1 * rep,
        n_cases=10,
    )
    if w0 is not None:
        record.a, record.w0, record.delta_n = 0.0, w0, n * w0 - 1
    return record


def sample_result() -> RunResult:
    records = []
    for rep, crpss in enumerate((0.1, 0.2, 0.3, 0.4)):
        records.append(make_record(DEEP_ENSEMBLE, 2, rep, 0.0, pit=4))
        records.append(make_record("LP", 2, rep, crpss, pit=2))
        records.append(make_record("V0w", 2, rep, crpss + 0.1, w0=0.4 + 0.01 * rep))
        records.append(make_record("LP", 4, rep, None))
    return RunResult(records, {"config": {"pi_level": 0.9}, "crps": math.nan})


class TestSummary(BaseTest):
    """Tests summary tables"""

    def setUp(self):
        self.result = sample_result()

    def test_results_frame(self):
        """Results keep the fixed leading columns and mark missing cells"""
        frame = results_frame(self.result)
        self.assertEqual(list(frame.columns[: len(RESULT_COLUMNS)]), list(RESULT_COLUMNS))
        self.assertEqual(len(frame), 16)
        self.assertEqual(int(frame["mean_crps"].isna().sum()), 4)

    def test_coefficients_frame(self):
        """Only VI cells have coefficients"""
        frame = coefficients_frame(self.result)
        self.assertEqual(list(frame.columns), list(COEFFICIENT_COLUMNS))
        self.assertEqual(set(frame["method"]), {"V0w"})
        self.assert_close(frame["delta_n"], 2 * frame["w0"] - 1, 1e-12)

    def test_pit_frame(self):
        """PIT rows are indexed by case"""
        frame = pit_frame(self.result)
        self.assertEqual(len(frame), 4 * (4 + 2))
        self.assertEqual(list(frame["case"][:4]), [0, 1, 2, 3])
        self.assertTrue(pit_frame(RunResult()).empty)

    def test_summarize(self):
        """Quartiles over repetitions per cell"""
        summary = summarize(self.result)
        self.assertEqual(len(summary), 3)
        lp = summary[summary["method"] == "LP"].iloc[0]
        self.assertEqual((lp["reps"], lp["missing"]), (4, 0))
        self.assert_close(lp["crpss_mean"], 0.25, 1e-12)
        self.assert_close(lp["crpss_median"], 0.25, 1e-12)
        self.assert_close(lp["crpss_q25"], 0.175, 1e-12)
        self.assert_close(lp["crpss_q75"], 0.325, 1e-12)
        self.assert_close(lp["pi_length"], 3.5, 1e-12)
        self.assertTrue(math.isnan(lp["delta_n"]))
        vi = summary[summary["method"] == "V0w"].iloc[0]
        self.assert_close(vi["delta_n"], 2 * 0.415 - 1, 1e-12)
        self.assertEqual(
            summary.attrs["omitted"],
            [{"scenario": "S1", "variant": "DRN", "method": "LP", "n": 4, "missing": 4}],
        )
        with self.assertRaises(DomainError):
            summarize(RunResult())


class TestOutputs(BaseTest):
    """Tests writing and reloading a study directory"""

    def test_write_json(self):
        """NaN and numpy values become plain JSON"""
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "data.json"
            write_json({"x": np.float64(math.nan), "y": np.arange(2), 3: (1.5,)}, path)
            self.assertEqual(json.loads(path.read_text()), {"x": None, "y": [0, 1], "3": [1.5]})

    @time_machine.travel("2024-05-01 12:00", tick=False)
    def test_timestamps(self):
        """Run timestamps are UTC with second precision"""
        self.assertEqual(_now(), "2024-05-01T12:00:00+00:00")

    def test_round_trip(self):
        """Written results load back into records"""
        result = sample_result()
        with tempfile.TemporaryDirectory() as tmp:
            paths = write_outputs(result, summarize(result), tmp)
            for path in paths.values():
                self.assertTrue(path.exists())
            meta = json.loads(paths["meta"].read_text())
            self.assertIsNone(meta["crps"])
            summary = json.loads(paths["summary_json"].read_text())
            self.assertEqual(len(summary["cells"]), 3)
            self.assertEqual(len(summary["omitted"]), 1)
            loaded = load_result(tmp)
        self.assertEqual(len(loaded.records), len(result.records))
        self.assertEqual(loaded.n_missing, 4)
        for original, copy in zip(result.records, loaded.records):
            self.assertEqual(
                (copy.variant, copy.method, copy.n, copy.rep),
                (original.variant, original.method, original.n, original.rep),
            )
            if original.missing:
                continue
            self.assert_close(copy.report.crpss, original.report.crpss, 1e-12)
            self.assert_close(copy.report.pit_values, original.report.pit_values, 1e-12)
            if original.w0 is not None:
                self.assert_close(copy.w0, original.w0, 1e-12)
            else:
                self.assertIsNone(copy.w0)
