"""
Acceptance checks on a finished study

Each check returns a status of passed, failed, skipped (not applicable to
the run), or vacuous (precondition not met) with the numbers behind it
"""

# stdlib
from pathlib import Path
from typing import Dict, List, Optional, Union

# library
import numpy as np
from scipy import stats

# module
from ensagg.experiment.outputs import write_json
from ensagg.scoring import central_excess
from ensagg.static.core import DEEP_ENSEMBLE, PI_LEVEL
from ensagg.structs import RunResult

#: Central PIT mass above the uniform share that counts as overdispersion
OVERDISPERSION_EXCESS = 0.02

#: Significance level of the one-sided sign test
SIGN_TEST_LEVEL = 0.05


def _scenario(result: RunResult) -> Optional[str]:
    ids = {r.scenario for r in result.records}
    return ids.pop() if len(ids) == 1 else None


def _crpss(result: RunResult, **filters) -> Dict[int, float]:
    """CRPSS by repetition of the present cells matching filters"""
    return {r.rep: r.report.crpss for r in result.cells(**filters) if not r.missing}


def _median(values) -> float:
    values = list(values)
    return float(np.median(values)) if values else float("nan")


def _sizes(result: RunResult) -> List[int]:
    return sorted({r.n for r in result.records})


def _methods(result: RunResult) -> List[str]:
    return sorted({r.method for r in result.records} - {DEEP_ENSEMBLE})


def _outcome(passed: bool, **details) -> dict:
    return {"status": "passed" if passed else "failed", "details": details}


def _skipped(reason: str) -> dict:
    return {"status": "skipped", "details": {"reason": reason}}


def sign_test(better: Dict[int, float], worse: Dict[int, float]) -> dict:
    """One-sided sign test that the first CRPSS exceeds the second over paired reps"""
    reps = sorted(set(better) & set(worse))
    wins = sum(better[r] > worse[r] for r in reps)
    pvalue = stats.binomtest(wins, len(reps), 0.5, alternative="greater").pvalue if reps else 1.0
    return {"pairs": len(reps), "wins": int(wins), "pvalue": float(pvalue)}


def check_positive_skill(result: RunResult) -> dict:
    """S1: every method beats DE for DRN and BQN, and V0eq beats LP for DRN"""
    if _scenario(result) != "S1":
        return _skipped("needs a Scenario 1 run")
    medians = {}
    for variant in ("DRN", "BQN"):
        for method in _methods(result):
            for n in _sizes(result):
                values = _crpss(result, variant=variant, method=method, n=n)
                if values:
                    medians[f"{variant}/{method}/{n}"] = _median(values.values())
    if not medians:
        return _skipped("no DRN or BQN cells")
    positive = all(v > 0 for v in medians.values())
    details = {"median_crpss": medians}
    methods = _methods(result)
    if "LP" in methods and "V0eq" in methods:
        sizes = _sizes(result)
        n = 10 if 10 in sizes else max((s for s in sizes if s <= 10), default=sizes[0])
        vi = _crpss(result, variant="DRN", method="V0eq", n=n)
        lp = _crpss(result, variant="DRN", method="LP", n=n)
        test = sign_test(vi, lp)
        ordered = _median(vi.values()) > _median(lp.values()) and test["pvalue"] <= SIGN_TEST_LEVEL
        details["ordering"] = {"n": n, **test}
        return _outcome(positive and ordered, **details)
    return _outcome(positive, **details)


def check_size_effect(result: RunResult) -> dict:
    """S1: median CRPSS at n=10 reaches 90% of the value at n=20"""
    if _scenario(result) != "S1":
        return _skipped("needs a Scenario 1 run")
    if not {10, 20} <= set(_sizes(result)):
        return _skipped("needs ensemble sizes 10 and 20")
    ratios, passed = {}, True
    for variant in sorted({r.variant for r in result.records}):
        for method in _methods(result):
            at10 = _median(_crpss(result, variant=variant, method=method, n=10).values())
            at20 = _median(_crpss(result, variant=variant, method=method, n=20).values())
            if np.isnan(at10) or np.isnan(at20):
                continue
            ok = at10 >= 0.9 * at20 if at20 > 0 else at10 >= at20
            ratios[f"{variant}/{method}"] = {"n10": at10, "n20": at20, "passed": bool(ok)}
            passed &= bool(ok)
    return _outcome(passed, medians=ratios)


def check_skewed_improvement(result: RunResult) -> dict:
    """S2: every method improves on the BQN members"""
    if _scenario(result) != "S2":
        return _skipped("needs a Scenario 2 run")
    medians = {}
    for method in _methods(result):
        for n in _sizes(result):
            values = _crpss(result, variant="BQN", method=method, n=n)
            if values:
                medians[f"{method}/{n}"] = _median(values.values())
    if not medians:
        return _skipped("no BQN cells")
    return _outcome(all(v > 0 for v in medians.values()), median_crpss=medians)


def check_overdispersion(result: RunResult, level: float = PI_LEVEL) -> dict:
    """HEN: overdispersed members lead V0w to shrink the weight and fix coverage"""
    de_cells = [
        r
        for r in result.cells(variant="HEN", method=DEEP_ENSEMBLE)
        if not r.missing and r.report.pit_values.size
    ]
    if not de_cells:
        return _skipped("no HEN PIT values")
    n = min(r.n for r in de_cells)
    pit = np.concatenate([r.report.pit_values for r in de_cells if r.n == n])
    excess = central_excess(pit)
    diagnostic = {"n": n, "central_excess": excess, "threshold": OVERDISPERSION_EXCESS}
    if excess <= OVERDISPERSION_EXCESS:
        return {"status": "vacuous", "details": {"pit": diagnostic}}
    if not {"V0w", "V0eq"} <= set(_methods(result)):
        return _skipped("needs V0w and V0eq")
    weighted = [r for r in result.cells(variant="HEN", method="V0w") if not r.missing]
    equal = [r for r in result.cells(variant="HEN", method="V0eq") if not r.missing]
    delta = _median(r.delta_n for r in weighted)
    closer = {}
    for size in _sizes(result):
        cov_w = [r.report.pi_coverage for r in weighted if r.n == size]
        cov_eq = [r.report.pi_coverage for r in equal if r.n == size]
        if cov_w and cov_eq:
            closer[size] = abs(np.mean(cov_w) - level) < abs(np.mean(cov_eq) - level)
    passed = delta < 0 and bool(closer) and all(closer.values())
    return _outcome(passed, pit=diagnostic, median_delta_n=delta, coverage_closer=closer)


CHECKS = {
    "positive_skill": check_positive_skill,
    "size_effect": check_size_effect,
    "skewed_improvement": check_skewed_improvement,
    "hen_overdispersion": check_overdispersion,
}


def check(result: RunResult) -> Dict[str, dict]:
    """Runs every acceptance check on a study result"""
    level = result.meta.get("config", {}).get("pi_level", PI_LEVEL)
    ret = {}
    for name, func in CHECKS.items():
        ret[name] = func(result, level) if func is check_overdispersion else func(result)
    return ret


def write_criteria(outcomes: Dict[str, dict], path: Union[str, Path]) -> Path:
    path = Path(path)
    write_json(outcomes, path)
    return path
