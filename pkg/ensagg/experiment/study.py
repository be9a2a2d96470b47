"""
Simulation study over repetitions, network variants, methods, and ensemble sizes
"""

# stdlib
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from datetime import datetime, timezone
from typing import Dict, List, Optional, Sequence, Tuple

# library
import numpy as np
from scipy.special import softmax

# module
from ensagg import __version__
from ensagg.aggregation import AggMethod, EnsembleForecast, aggregate, delta_n
from ensagg.aggregation.estimation import fit_from_quantile_sums
from ensagg.distributions import (
    BernsteinQuantileDist,
    ForecastDist,
    HistogramDist,
    NormalDist,
    SampleDist,
    quantile_many,
)
from ensagg.distributions.bernstein import bernstein_basis
from ensagg.exceptions import DegenerateReference, DegenerateScale, ShapeError
from ensagg.experiment.config import RunConfig
from ensagg.netlab import BernsteinHead, DeepEnsemble, NormalHead, train_ensemble
from ensagg.scoring import (
    CaseScores,
    coverage,
    quantile_grid,
    score_cases,
    skill_score,
    summarize_cases,
)
from ensagg.simgen import ScenarioData, generate, optimal_crps
from ensagg.static.core import DEEP_ENSEMBLE, METHODS, VARIANTS
from ensagg.structs import CellRecord, CoefficientFit, EvalReport, RunResult

LOG = logging.getLogger(__name__)

#: Seed offset between repetitions, larger than any ensemble
MEMBER_SEED_STRIDE = 10_000

# Cases per chunk when drawing Bernstein mixture samples
_CHUNK = 256


def repetition_seeds(config: RunConfig, rep: int) -> Tuple[int, int]:
    """Scenario and first member seed of a repetition"""
    return config.scenario.seed + rep, config.net.seed + rep * MEMBER_SEED_STRIDE


def _cell_seed(config: RunConfig, rep: int, variant: str, method: str, n: int) -> np.random.SeedSequence:
    method_index = ((DEEP_ENSEMBLE,) + METHODS).index(method)
    return np.random.SeedSequence(
        [config.scenario.seed, rep, VARIANTS.index(variant), method_index, n]
    )


def _safe_skill(mean_f: float, mean_ref: float, mean_opt: float) -> float:
    try:
        return skill_score(mean_f, mean_ref, mean_opt)
    except DegenerateReference:
        LOG.warning("Reference score equals the optimal score, CRPSS undefined")
        return math.nan


def lp_sample_forecasts(
    variant: str, raw: np.ndarray, m: int, rng: np.random.Generator, degree: int = 12
) -> List[SampleDist]:
    """m draws per case from the equally weighted mixture of the members

    raw holds the members' head outputs with shape (members, cases, outputs)
    """
    n, cases = raw.shape[:2]
    index = rng.integers(n, size=(cases, m))
    column = np.arange(cases)[:, None]
    if variant == "DRN":
        mu, sigma = NormalHead.params(raw.reshape(n * cases, -1))
        mu, sigma = mu.reshape(n, cases), sigma.reshape(n, cases)
        draws = mu[index, column] + sigma[index, column] * rng.standard_normal((cases, m))
    elif variant == "BQN":
        alpha = BernsteinHead.coefficients(raw.reshape(n * cases, -1)).reshape(n, cases, -1)
        u = rng.random((cases, m))
        draws = np.empty((cases, m))
        for start in range(0, cases, _CHUNK):
            rows = slice(start, start + _CHUNK)
            chosen = alpha[index[rows], column[rows]]
            basis = bernstein_basis(u[rows].ravel(), degree).reshape(chosen.shape)
            draws[rows] = np.sum(chosen * basis, axis=2)
    else:
        raise ShapeError(f"Sample-based linear pool is not used for {variant}")
    return [SampleDist(row) for row in draws]


def aggregate_cases(
    variant: str,
    method: AggMethod,
    raw: np.ndarray,
    members: Sequence[Sequence[ForecastDist]],
    rng: np.random.Generator,
    lp_samples: int,
    degree: int = 12,
) -> List[ForecastDist]:
    """Aggregated test forecasts of the first raw.shape[0] members, vectorized per variant"""
    n = raw.shape[0]
    if not method.is_vi:
        if variant == "HEN":
            probs = softmax(raw, axis=2).mean(axis=0)
            edges = members[0][0].edges
            return [HistogramDist(edges, row / row.sum()) for row in probs]
        return lp_sample_forecasts(variant, raw, lp_samples, rng, degree)
    coeffs = method.coefficients(n)
    flat = raw.reshape(n * raw.shape[1], -1)
    if variant == "DRN":
        if coeffs.w0 == 0:
            raise DegenerateScale("w0 = 0 collapses the aggregated scale")
        mu, sigma = NormalHead.params(flat)
        mu = coeffs.a + coeffs.w0 * mu.reshape(n, -1).sum(axis=0)
        sigma = coeffs.w0 * sigma.reshape(n, -1).sum(axis=0)
        return [NormalDist(m, s) for m, s in zip(mu, sigma)]
    if variant == "BQN":
        alpha = BernsteinHead.coefficients(flat).reshape(n, raw.shape[1], -1).sum(axis=0)
        return [BernsteinQuantileDist(row) for row in coeffs.a + coeffs.w0 * alpha]
    return [aggregate(EnsembleForecast(case), method) for case in zip(*members[:n])]


def _de_report(
    scores: Sequence[CaseScores], n: int, obs: np.ndarray, s_opt: float, keep_pit: bool
) -> EvalReport:
    """Average verification of the first n members"""
    chosen = scores[:n]
    s_ref = float(np.mean([s.crps.mean() for s in chosen]))
    return EvalReport(
        mean_crps=s_ref,
        crpss=_safe_skill(s_ref, s_ref, s_opt),
        pit_values=np.concatenate([s.pit for s in chosen]) if keep_pit else np.empty(0),
        pi_coverage=float(np.mean([coverage(s.lower, s.upper, obs) for s in chosen])),
        pi_length=float(np.mean([np.mean(s.upper - s.lower) for s in chosen])),
        bias=float(np.mean([s.median_error.mean() for s in chosen])),
        n_cases=obs.size,
    )


def _missing(config: RunConfig, variant: str, n: int, rep: int, error: str) -> List[CellRecord]:
    return [
        CellRecord(config.scenario.id, variant, method, n, rep, error=error)
        for method in (DEEP_ENSEMBLE,) + config.methods
    ]


def _fit(
    method: AggMethod, prefix: Optional[np.ndarray], obs: np.ndarray, n: int, levels: np.ndarray
) -> CoefficientFit:
    if prefix is None:
        return CoefficientFit(method.variant, method.coefficients(n), n, math.nan)
    return fit_from_quantile_sums(method, prefix[n - 1], obs, n, levels)


def run_variant(
    config: RunConfig,
    data: ScenarioData,
    variant: str,
    rep: int,
    s_opt: float,
    ensemble: DeepEnsemble,
) -> List[CellRecord]:
    """Cells of one network variant within a repetition"""
    scenario = config.scenario.id
    test_y = data.test.targets
    valid_y = data.valid.targets
    available = ensemble.n
    records: List[CellRecord] = []
    if available == 0:
        for n in config.sizes:
            records += _missing(config, variant, n, rep, str(ensemble.failure))
        return records
    raw_test = ensemble.predict_params(data.test.features)
    members = ensemble.member_forecasts(data.test.features)
    scores = [
        score_cases(forecasts, test_y, config.pi_level, j) for j, forecasts in enumerate(members)
    ]
    levels = quantile_grid(config.quantile_levels)
    prefix = None
    if len(data.valid):
        valid_members = ensemble.member_forecasts(data.valid.features)
        prefix = np.cumsum(np.stack([quantile_many(f, levels) for f in valid_members]), axis=0)
    degree = config.net.bqn_degree
    for n in config.sizes:
        if n > available:
            error = f"only {available} members trained: {ensemble.failure}"
            LOG.warning("rep %d %s n=%d missing, %s", rep, variant, n, error)
            records += _missing(config, variant, n, rep, error)
            continue
        keep_pit = n in config.pit_sizes
        de = _de_report(scores, n, test_y, s_opt, keep_pit)
        records.append(CellRecord(scenario, variant, DEEP_ENSEMBLE, n, rep, de))
        for name in config.methods:
            method = AggMethod(name)
            record = CellRecord(scenario, variant, name, n, rep)
            seq = _cell_seed(config, rep, variant, name, n)
            sample_seq, score_seq = seq.spawn(2)
            try:
                if method.is_vi:
                    fit = _fit(method, prefix, valid_y, n, levels)
                    method = AggMethod(name, fit.coeffs)
                    record.a, record.w0 = fit.coeffs.a, fit.coeffs.w0
                    record.delta_n = delta_n(fit.coeffs.w0, n)
                    record.validation_crps = fit.validation_crps
                forecasts = aggregate_cases(
                    variant,
                    method,
                    raw_test[:n],
                    members,
                    np.random.default_rng(sample_seq),
                    config.lp_samples,
                    degree,
                )
                cases = score_cases(
                    forecasts, test_y, config.pi_level, int(score_seq.generate_state(1)[0])
                )
            except ValueError as exc:
                LOG.warning("rep %d %s %s n=%d failed: %s", rep, variant, name, n, exc)
                record.error = str(exc)
                records.append(record)
                continue
            report = summarize_cases(cases, test_y)
            report.crpss = _safe_skill(report.mean_crps, de.mean_crps, s_opt)
            if not keep_pit:
                report.pit_values = np.empty(0)
            record.report = report
            records.append(record)
    return records


def run_repetition(
    config: RunConfig, rep: int, workers: int = 1
) -> Tuple[List[CellRecord], Dict[str, object]]:
    """Generates data, trains every variant, and evaluates all cells of one repetition

    Members of each variant train in up to workers processes
    """
    scenario_seed, net_seed = repetition_seeds(config, rep)
    data = generate(replace(config.scenario, seed=scenario_seed))
    s_opt = optimal_crps(data)
    LOG.info("rep %d: %s generated, optimal CRPS %.4f", rep, config.scenario.id, s_opt)
    records: List[CellRecord] = []
    trained = {}
    for variant in config.variants:
        net = config.net.with_updates(head=variant, seed=net_seed)
        ensemble = train_ensemble(
            net, data.train, data.valid, config.max_members, workers=workers, keep_partial=True
        )
        trained[variant] = ensemble.n
        LOG.info("rep %d: trained %d %s members", rep, ensemble.n, variant)
        records += run_variant(config, data, variant, rep, s_opt, ensemble)
    meta = {
        "rep": rep,
        "scenario_seed": scenario_seed,
        "member_seed": net_seed,
        "optimal_crps": s_opt,
        "members_trained": trained,
    }
    return records, meta


def _order(record: CellRecord) -> tuple:
    methods = (DEEP_ENSEMBLE,) + METHODS
    return (VARIANTS.index(record.variant), record.n, methods.index(record.method), record.rep)


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def worker_split(config: RunConfig) -> Tuple[int, int]:
    """Processes for repetitions and for the members inside one repetition

    Pools do not nest: several repetitions share config.threads between them
    and train members serially, a single repetition hands them to its members
    """
    rep_workers = min(config.threads, config.repetitions)
    if rep_workers > 1:
        return rep_workers, 1
    return 1, min(config.threads, config.max_members)


def run(config: RunConfig) -> RunResult:
    """Runs every repetition, in worker processes when config.threads > 1"""
    started = _now()
    reps = list(range(config.repetitions))
    rep_workers, member_workers = worker_split(config)
    if rep_workers > 1:
        with ProcessPoolExecutor(max_workers=rep_workers) as pool:
            chunks = list(pool.map(run_repetition, [config] * len(reps), reps))
    else:
        chunks = [run_repetition(config, rep, member_workers) for rep in reps]
    records = sorted((r for chunk, _ in chunks for r in chunk), key=_order)
    result = RunResult(records)
    result.meta = {
        "version": __version__,
        "config": config.to_dict(),
        "started": started,
        "finished": _now(),
        "repetitions": [meta for _, meta in chunks],
        "validation_split": "additional cases drawn from the training process",
        "n_records": len(records),
        "n_missing": result.n_missing,
    }
    if result.n_missing:
        LOG.warning("%d of %d cells are missing", result.n_missing, len(records))
    return result
