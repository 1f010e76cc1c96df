"""Ising-machine abstraction: built-in simulated annealer, remote client, pool.

The annealer runs single-flip Metropolis with geometric cooling and
restarts; it is deterministic given (problem, seed, sweep budget). A
remote solver speaks a minimal JSON protocol and its reported energy is
always recomputed locally. ``pool_solve`` runs a dependency DAG of solve
jobs with at most I in flight.
"""
from __future__ import annotations

import time
from concurrent.futures import FIRST_COMPLETED, ThreadPoolExecutor, wait
from dataclasses import dataclass

import numpy as np

from .qubo import QuboProblem, energy

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn
        return wrap


class SolverError(RuntimeError):
    pass


class TransportError(SolverError):
    pass


class ProtocolError(SolverError):
    pass


class SolverTimeout(SolverError):
    pass


class DependencyFailed(SolverError):
    pass


DEFAULT_TIMEOUT_MS = 1000
REMOTE_RETRIES = 3


@dataclass(frozen=True)
class SolveRequest:
    qubo: QuboProblem
    timeout_ms: int = DEFAULT_TIMEOUT_MS
    seed: int = 0

    def __post_init__(self):
        if self.timeout_ms < 1:
            raise ValueError("timeout_ms must be >= 1")


@dataclass(frozen=True)
class SolveResult:
    bits: tuple[int, ...]
    energy: float
    elapsed_ms: int
    solver_id: str


def _csr(qubo: QuboProblem):
    """Symmetric adjacency in CSR form plus the linear (diagonal) part."""
    n = qubo.num_vars
    linear = np.zeros(n)
    neighbors: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for (u, v), coeff in qubo.terms.items():
        if u == v:
            linear[u] += coeff
        else:
            neighbors[u].append((v, coeff))
            neighbors[v].append((u, coeff))
    indptr = np.zeros(n + 1, dtype=np.int64)
    for i in range(n):
        indptr[i + 1] = indptr[i] + len(neighbors[i])
    indices = np.zeros(indptr[-1], dtype=np.int64)
    data = np.zeros(indptr[-1])
    for i, nbrs in enumerate(neighbors):
        for k, (j, coeff) in enumerate(sorted(nbrs)):
            indices[indptr[i] + k] = j
            data[indptr[i] + k] = coeff
    return indptr, indices, data, linear


@njit(cache=True, nogil=True)
def _anneal(indptr, indices, data, linear, sweeps, restarts, t_hot, t_cold, seed):
    np.random.seed(seed)
    n = linear.shape[0]
    best_bits = np.zeros(n, dtype=np.int8)
    best_e = 0.0  # energy of the all-zero state relative to the constant
    if sweeps < 1:
        sweeps = 1
    ratio = (t_cold / t_hot) ** (1.0 / max(sweeps - 1, 1))
    for restart in range(restarts):
        bits = np.zeros(n, dtype=np.int8)
        if restart > 0:
            for i in range(n):
                bits[i] = np.int8(np.random.randint(0, 2))
        # local field: flipping i changes the energy by (1 - 2 x_i) * field[i]
        field = linear.copy()
        e = 0.0
        for i in range(n):
            if bits[i] == 1:
                e += linear[i]
                for k in range(indptr[i], indptr[i + 1]):
                    j = indices[k]
                    if j > i and bits[j] == 1:
                        e += data[k]
        for i in range(n):
            if bits[i] == 1:
                for k in range(indptr[i], indptr[i + 1]):
                    field[indices[k]] += data[k]
        if restart == 0 or e < best_e:
            best_e = e
            best_bits = bits.copy()
        temp = t_hot
        for _ in range(sweeps):
            for i in range(n):
                delta = (1 - 2 * bits[i]) * field[i]
                if delta <= 0.0 or np.random.random() < np.exp(-delta / temp):
                    change = 1 - 2 * bits[i]
                    bits[i] += np.int8(change)
                    e += delta
                    for k in range(indptr[i], indptr[i + 1]):
                        field[indices[k]] += data[k] * change
                    if e < best_e:
                        best_e = e
                        best_bits = bits.copy()
            temp *= ratio
    return best_bits, best_e


def solve_sa(req: SolveRequest, sweeps: int = 400, restarts: int = 4,
             solver_id: str = "sa") -> SolveResult:
    """Best-found bitstring under restarted simulated annealing.

    The all-zero state is always a candidate, so the result is never worse
    than the empty assignment. Deterministic given (qubo, seed, sweeps,
    restarts).
    """
    start = time.monotonic()
    qubo = req.qubo
    if qubo.num_vars == 0:
        return SolveResult((), qubo.constant, 0, solver_id)
    indptr, indices, data, linear = _csr(qubo)
    scale = max(np.abs(data).max() if data.size else 0.0, np.abs(linear).max() if linear.size else 0.0)
    t_hot = scale if scale > 0 else 1.0
    bits, rel_energy = _anneal(indptr, indices, data, linear, sweeps, restarts,
                               t_hot, 1e-3 * t_hot, np.uint32(req.seed & 0xFFFFFFFF))
    elapsed = int((time.monotonic() - start) * 1000)
    return SolveResult(tuple(int(b) for b in bits), rel_energy + qubo.constant, elapsed, solver_id)


def calibrate_sweeps(qubo: QuboProblem, timeout_ms: int, probe_sweeps: int = 50) -> int:
    """Convert a wall-clock budget into a sweep budget via a short probe run."""
    probe = SolveRequest(qubo, timeout_ms=max(timeout_ms, 1), seed=0)
    start = time.monotonic()
    solve_sa(probe, sweeps=probe_sweeps, restarts=1)
    per_sweep_ms = max((time.monotonic() - start) * 1000 / probe_sweeps, 1e-6)
    return max(int(timeout_ms / per_sweep_ms), 1)


def solve_remote(req: SolveRequest, endpoint: str, auth_token: str = "",
                 retries: int = REMOTE_RETRIES) -> SolveResult:
    """POST the QUBO to a remote annealing service and validate the reply.

    The remote energy is ignored; the energy is recomputed locally from the
    returned bits (constant-term conventions differ between services).
    """
    import requests

    payload = {
        "num_vars": req.qubo.num_vars,
        "terms": [[u, v, c] for (u, v), c in sorted(req.qubo.terms.items())],
        "constant": req.qubo.constant,
        "timeout_ms": req.timeout_ms,
    }
    headers = {"Authorization": f"Bearer {auth_token}"} if auth_token else {}
    start = time.monotonic()
    last_exc: Exception | None = None
    for _ in range(retries):
        try:
            resp = requests.post(endpoint, json=payload, headers=headers,
                                 timeout=req.timeout_ms / 1000 + 5)
            break
        except requests.Timeout as exc:
            raise SolverTimeout(f"remote solver timed out: {exc}") from exc
        except requests.RequestException as exc:
            last_exc = exc
    else:
        raise TransportError(f"remote solver unreachable after {retries} attempts: {last_exc}")
    if resp.status_code != 200:
        raise ProtocolError(f"remote solver returned HTTP {resp.status_code}")
    try:
        body = resp.json()
        bits = tuple(int(b) for b in body["bits"])
    except (ValueError, KeyError, TypeError) as exc:
        raise ProtocolError(f"malformed remote response: {exc}") from exc
    if len(bits) != req.qubo.num_vars or any(b not in (0, 1) for b in bits):
        raise ProtocolError(f"remote returned {len(bits)} bits, expected {req.qubo.num_vars}")
    elapsed = int((time.monotonic() - start) * 1000)
    return SolveResult(bits, energy(req.qubo, bits), elapsed, f"remote:{endpoint}")


def pool_solve(dependencies: dict[int, set[int]], build, solve, workers: int = 1,
               on_complete=None) -> dict[int, SolveResult]:
    """Solve a dependency DAG of jobs with at most ``workers`` in flight.

    ``build(job, results)`` produces a SolveRequest once all of ``job``'s
    dependencies have results; ``solve(request)`` runs it. Errors are
    collected per job (dependants fail with DependencyFailed) and re-raised
    after independent jobs have finished.
    """
    remaining = {job: set(deps) for job, deps in dependencies.items()}
    dependants: dict[int, list[int]] = {job: [] for job in dependencies}
    for job, deps in dependencies.items():
        for d in deps:
            if d not in dependants:
                raise SolverError(f"job {job} depends on unknown job {d}")
            dependants[d].append(job)
    results: dict[int, SolveResult] = {}
    errors: dict[int, Exception] = {}

    def task(job: int):
        return solve(build(job, results))

    with ThreadPoolExecutor(max_workers=workers) as pool:
        inflight = {}
        ready = sorted(job for job, deps in remaining.items() if not deps)

        def launch():
            while ready:
                job = ready.pop(0)
                inflight[pool.submit(task, job)] = job

        def fail(job: int, exc: Exception):
            errors[job] = exc
            for child in dependants[job]:
                if child not in errors:
                    fail(child, DependencyFailed(f"dependency {job} failed: {exc}"))

        launch()
        while inflight:
            done, _ = wait(inflight, return_when=FIRST_COMPLETED)
            for fut in done:
                job = inflight.pop(fut)
                try:
                    results[job] = fut.result()
                except Exception as exc:  # noqa: BLE001 - collected per job
                    fail(job, exc)
                    continue
                if on_complete is not None:
                    on_complete(job, results[job])
                for child in dependants[job]:
                    remaining[child].discard(job)
                    if not remaining[child] and child not in errors:
                        ready.append(child)
                ready.sort()
            launch()
    if errors:
        first = errors[min(errors)]
        raise first
    return results
