"""
Mini-batch training of ensemble members
"""

# stdlib
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional

# library
import numpy as np

# module
from ensagg.exceptions import DomainError, TrainingError
from ensagg.netlab.config import NetConfig
from ensagg.netlab.ensemble import DeepEnsemble
from ensagg.netlab.network import NetModel
from ensagg.structs import Dataset

LOG = logging.getLogger(__name__)


class Adam:
    """Adaptive moment estimation updating parameter arrays in place"""

    def __init__(
        self,
        params: List[np.ndarray],
        learning_rate: float,
        beta1: float = 0.9,
        beta2: float = 0.999,
        eps: float = 1e-8,
    ):
        self.learning_rate = learning_rate
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.steps = 0
        self.first = [np.zeros_like(p) for p in params]
        self.second = [np.zeros_like(p) for p in params]

    def step(self, params: List[np.ndarray], grads: List[np.ndarray]):
        self.steps += 1
        scale1 = 1 - self.beta1 ** self.steps
        scale2 = 1 - self.beta2 ** self.steps
        for param, grad, m, v in zip(params, grads, self.first, self.second):
            m *= self.beta1
            m += (1 - self.beta1) * grad
            v *= self.beta2
            v += (1 - self.beta2) * grad * grad
            param -= self.learning_rate * (m / scale1) / (np.sqrt(v / scale2) + self.eps)


def hen_edges_from_targets(targets, n_bins: int = 50) -> np.ndarray:
    """Edges at equidistant empirical quantiles, unique to the second digit

    The outer edges are widened outward so every training target lies inside
    """
    y = np.asarray(targets, dtype=float)
    if y.size == 0:
        raise DomainError("Edges need at least one target")
    edges = np.round(np.quantile(y, np.linspace(0, 1, n_bins + 1)), 2)
    edges[0] = np.floor(y.min() * 100) / 100
    edges[-1] = np.ceil(y.max() * 100) / 100
    edges = np.unique(edges)
    if edges.size < 2:
        edges = np.array([edges[0] - 0.01, edges[0] + 0.01])
    return edges


def prepare_config(config: NetConfig, train: Dataset) -> NetConfig:
    """Fills in HEN edges from the training targets when none are given"""
    if config.head == "HEN" and config.hen_edges is None:
        return config.with_updates(hen_edges=tuple(hen_edges_from_targets(train.targets, config.hen_bins)))
    return config


def train_member(config: NetConfig, train: Dataset, valid: Optional[Dataset] = None) -> NetModel:
    """Trains one member from the seeded initialization

    Stops after max_epochs or when the validation loss has not improved for
    patience epochs, restoring the best weights
    """
    if len(train) == 0:
        raise DomainError("Training set must not be empty")
    config = prepare_config(config, train)
    rng = np.random.default_rng(config.seed)
    mean = train.features.mean(axis=0)
    scale = train.features.std(axis=0)
    scale = np.where(scale > 0, scale, 1.0)
    model = NetModel.initialize(config, train.n_features, rng, train.targets, mean, scale)
    optimizer = Adam(model.parameters, config.learning_rate)
    monitor = valid if valid is not None and len(valid) else train
    best_loss, best_params, wait = np.inf, model.copy_parameters(), 0
    for epoch in range(1, config.max_epochs + 1):
        order = rng.permutation(len(train))
        total = 0.0
        for start in range(0, order.size, config.batch_size):
            batch = order[start : start + config.batch_size]
            value, grads = model.gradients(train.features[batch], train.targets[batch])
            if not np.isfinite(value):
                raise TrainingError(f"Training loss diverged in epoch {epoch}", epoch)
            optimizer.step(model.parameters, grads)
            total += value * batch.size
        valid_loss = model.loss(monitor.features, monitor.targets)
        if not np.isfinite(valid_loss):
            raise TrainingError(f"Validation loss diverged in epoch {epoch}", epoch)
        model.history.append(
            {"epoch": epoch, "train_loss": total / len(train), "valid_loss": valid_loss}
        )
        if valid_loss < best_loss:
            best_loss, best_params, wait = valid_loss, model.copy_parameters(), 0
        else:
            wait += 1
            if wait >= config.patience:
                LOG.debug("Seed %d stopped early after epoch %d", config.seed, epoch)
                break
    model.set_parameters(best_params)
    return model


def _train_seed(args) -> NetModel:
    config, train, valid = args
    return train_member(config, train, valid)


def train_ensemble(
    config: NetConfig,
    train: Dataset,
    valid: Optional[Dataset],
    n: int,
    workers: int = 1,
    keep_partial: bool = False,
) -> DeepEnsemble:
    """Trains n members with seeds seed, seed + 1, ..., seed + n - 1

    With keep_partial a failing member ends the ensemble instead of raising,
    and the failure is kept on the returned ensemble
    """
    if n < 1:
        raise DomainError(f"Ensemble needs at least one member, got {n}")
    # Shared edges keep HEN members on one histogram grid
    config = prepare_config(config, train)
    jobs = [(config.with_updates(seed=config.seed + i), train, valid) for i in range(n)]
    models: List[NetModel] = []
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_train_seed, job) for job in jobs]
            for i, future in enumerate(futures):
                try:
                    models.append(future.result())
                except TrainingError as exc:
                    if not keep_partial:
                        raise
                    return _partial(models, i, exc)
        return DeepEnsemble(models)
    for i, job in enumerate(jobs):
        try:
            models.append(_train_seed(job))
        except TrainingError as exc:
            if not keep_partial:
                raise
            return _partial(models, i, exc)
    return DeepEnsemble(models)


def _partial(models: List[NetModel], index: int, exc: TrainingError) -> DeepEnsemble:
    LOG.warning("Member %d failed in epoch %d, keeping %d members", index, exc.epoch, len(models))
    return DeepEnsemble(models, failure=exc)
