"""Moving-cost coefficient matrix: closed-form init, refit, estimate, RMSE.

The number of SWAPs needed to turn one layer's placement into the next is
approximated by sum_mu a[mu, pi[mu]]. The matrix ``a`` starts from a
closed form assuming uniformly distributed permutations and is refit on
observed (permutation, swap count) samples by minimum-norm least squares.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

import numpy as np

from .device import Device
from . import tokenswap

HISTORY_CAP = 50_000
SAMPLED_INIT_K = 20_000


class ModelError(ValueError):
    pass


class EmptySampleSet(ModelError):
    pass


class SchemaMismatch(ModelError):
    pass


@dataclass(frozen=True)
class RearrangementSample:
    pi: tuple[int, ...]
    swap_count: int


@dataclass(frozen=True)
class MoveCostModel:
    device_name: str
    n: int
    a: np.ndarray
    history: tuple[RearrangementSample, ...] = ()
    version: int = 0

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        if a.shape != (self.n, self.n) or not np.isfinite(a).all():
            raise ModelError(f"coefficient matrix must be finite {self.n}x{self.n}")
        object.__setattr__(self, "a", a)


def _closed_form(n: int, cond_mean: np.ndarray, mean: float) -> np.ndarray:
    """a = (N-1)/N * <Ns | pi_mu = nu> - (N-2)/N * <Ns>."""
    return (n - 1) / n * cond_mean - (n - 2) / n * mean


def uniform_init(device: Device, exact_limit: int = tokenswap.DEFAULT_EXACT_LIMIT,
                 samples: int = SAMPLED_INIT_K, seed: int = 0) -> MoveCostModel:
    """Initial model assuming uniformly distributed rearrangements.

    For small devices the conditional means are exact, computed over all N!
    permutations with the exact swap solver. Larger devices are estimated
    from random permutations scored with the heuristic solver (biased high,
    documented approximation).
    """
    n = device.num_qubits
    if n <= exact_limit:
        dist = tokenswap.exact_distances(device, exact_limit)
        total = np.zeros((n, n))
        count = np.zeros((n, n))
        grand = 0.0
        for arr, swaps in dist.items():
            # arr is position->token; the permutation it realises sends token t to its position.
            for position, token in enumerate(arr):
                total[token, position] += swaps
                count[token, position] += 1
            grand += swaps
        cond_mean = total / count
        mean = grand / len(dist)
    else:
        rng = np.random.default_rng(seed)
        total = np.zeros((n, n))
        count = np.zeros((n, n))
        grand = 0.0
        for _ in range(samples):
            pi = tuple(int(x) for x in rng.permutation(n))
            swaps = len(tokenswap.min_swaps_heuristic(device, pi))
            for mu, nu in enumerate(pi):
                total[mu, nu] += swaps
                count[mu, nu] += 1
            grand += swaps
        mean = grand / samples
        cond_mean = np.where(count > 0, total / np.maximum(count, 1), mean)
    return MoveCostModel(device.name, n, _closed_form(n, cond_mean, mean))


def _design(samples, n: int) -> tuple[np.ndarray, np.ndarray]:
    rows = np.zeros((len(samples), n * n))
    targets = np.zeros(len(samples))
    for k, s in enumerate(samples):
        for mu, nu in enumerate(s.pi):
            rows[k, mu * n + nu] = 1.0
        targets[k] = s.swap_count
    return rows, targets


def fit(model: MoveCostModel, samples) -> MoveCostModel:
    """Refit on the capped union of history and new samples.

    The coefficients are the minimum-norm least-squares solution of the
    indicator system (one row per sample, targets are observed swap
    counts), obtained via the pseudoinverse (numpy lstsq).
    """
    samples = tuple(samples)
    if not samples:
        raise EmptySampleSet("fit needs at least one sample")
    for s in samples:
        if sorted(s.pi) != list(range(model.n)):
            raise ModelError(f"sample permutation has wrong size: {s.pi}")
    history = (model.history + samples)[-HISTORY_CAP:]
    rows, targets = _design(history, model.n)
    flat, *_ = np.linalg.lstsq(rows, targets, rcond=None)
    return replace(model, a=flat.reshape(model.n, model.n),
                   history=history, version=model.version + 1)


def estimate_swaps(model: MoveCostModel, pi) -> float:
    """sum_mu a[mu, pi[mu]]; the moving-cost estimate is 3x this value."""
    return float(sum(model.a[mu, nu] for mu, nu in enumerate(pi)))


def rmse(model: MoveCostModel, samples) -> float:
    """RMSE of the moving-cost approximation (in physical CNOTs, factor 3)."""
    samples = tuple(samples)
    if not samples:
        raise EmptySampleSet("rmse needs at least one sample")
    sq = sum((3 * s.swap_count - 3 * estimate_swaps(model, s.pi)) ** 2 for s in samples)
    return math.sqrt(sq / len(samples))


def save(model: MoveCostModel, path: str) -> None:
    payload = {
        "device_name": model.device_name,
        "n": model.n,
        "version": model.version,
        "a": model.a.tolist(),
        "history": [{"pi": list(s.pi), "swaps": s.swap_count} for s in model.history],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh)


def load(path: str, expect_n: int | None = None) -> MoveCostModel:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    model = MoveCostModel(
        payload["device_name"], int(payload["n"]), np.array(payload["a"], dtype=float),
        tuple(RearrangementSample(tuple(s["pi"]), int(s["swaps"])) for s in payload["history"]),
        int(payload["version"]),
    )
    if expect_n is not None and model.n != expect_n:
        raise SchemaMismatch(f"model is for {model.n} qubits, expected {expect_n}")
    return model
