"""End-to-end compilation: partition, route via QUBO solves, synthesize.

The solver pool executes the chunk schedule; each solved chunk's boundary
mappings feed the objectives of its dependants. The compiled circuit is
always re-verified against the logical input before being returned.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

from . import coeffs, scheduler, solver, synthesis
from .circuit import LogicalCircuit
from .device import Device, SubsetInfeasible, get_device, select_subset
from .partition import group_chunks, slice_layers
from .qubo import BoundaryTerm, build_chunk_qubo, decode_solution


class VerificationFailed(RuntimeError):
    """The compiled circuit does not implement the logical circuit."""


@dataclass(frozen=True)
class CompileConfig:
    device: str = "ring:6"
    strategy: str = "binary"
    solvers: int = 1
    timeout_ms: int = 1000
    sweeps: int | None = None
    restarts: int = 4
    layer_cap: int = 20
    var_budget: int = 1200
    penalty: float | None = None
    model_path: str | None = None
    seed: int = 0
    exact_token_swap_limit: int = 8
    solver_backend: str = "sa"
    remote_token: str = ""

    def __post_init__(self):
        if self.solvers < 1 or self.layer_cap < 1 or self.var_budget < 1:
            raise ValueError("solvers, layer_cap and var_budget must be >= 1")
        if self.strategy not in scheduler.STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")


@dataclass(frozen=True)
class CompileResult:
    physical: synthesis.PhysicalCircuit
    device: Device
    mappings: tuple[tuple[int, ...], ...]
    model: coeffs.MoveCostModel
    elapsed_ms: int


def _solve_backend(config: CompileConfig, sweeps: int):
    if config.solver_backend == "sa":
        return lambda req: solver.solve_sa(req, sweeps=sweeps, restarts=config.restarts)
    if config.solver_backend.startswith("remote:"):
        endpoint = config.solver_backend[len("remote:"):]
        return lambda req: solver.solve_remote(req, endpoint, config.remote_token)
    raise ValueError(f"unknown solver backend {config.solver_backend!r}")


def compile_circuit(circuit: LogicalCircuit, config: CompileConfig) -> CompileResult:
    """Run the full pipeline and verify the result (hard error on failure)."""
    start = time.monotonic()
    full_device = get_device(config.device)
    if circuit.num_qubits > full_device.num_qubits:
        raise SubsetInfeasible(
            f"{circuit.num_qubits} logical qubits exceed {full_device.num_qubits} physical")
    device = select_subset(full_device, circuit.num_qubits)
    n = device.num_qubits

    if config.model_path:
        model = coeffs.load(config.model_path, expect_n=n)
    else:
        model = coeffs.uniform_init(device, config.exact_token_swap_limit, seed=config.seed)

    layers = slice_layers(circuit, config.layer_cap)
    chunks = group_chunks(len(layers), n, config.var_budget)
    schedule = scheduler.make_schedule(len(chunks), config.strategy)

    qubos: dict[int, object] = {}
    chunk_mappings: dict[int, list[tuple[int, ...]]] = {}

    def build(k: int, _results) -> solver.SolveRequest:
        node = schedule.node(k)
        boundaries = []
        if node.left_source is not None:
            src, dist = node.left_source
            boundaries.append(BoundaryTerm("left", chunk_mappings[src][-1], dist))
        if node.right_source is not None:
            src, dist = node.right_source
            boundaries.append(BoundaryTerm("right", chunk_mappings[src][0], dist))
        chunk = chunks[k]
        qubo = build_chunk_qubo(layers[chunk.lo:chunk.hi], device, model,
                                boundaries, config.penalty)
        qubos[k] = qubo
        return solver.SolveRequest(qubo, config.timeout_ms, config.seed + k)

    def on_complete(k: int, result: solver.SolveResult) -> None:
        chunk_mappings[k] = decode_solution(qubos[k], result.bits, device)

    if config.sweeps is not None:
        sweeps = config.sweeps
    else:
        probe = build(next(k for k in range(len(chunks))
                           if not schedule.node(k).dependencies), {})
        sweeps = solver.calibrate_sweeps(probe.qubo, config.timeout_ms)
    solve = _solve_backend(config, sweeps)
    solver.pool_solve(schedule.dependency_map(), build, solve,
                      workers=config.solvers, on_complete=on_complete)

    mappings = [m for k in range(len(chunks)) for m in chunk_mappings[k]]
    physical = synthesis.synthesize(circuit, layers, mappings, device,
                                    config.exact_token_swap_limit)
    ok, msg = synthesis.verify_equivalence(circuit, physical, mappings)
    if not ok:
        raise VerificationFailed(msg)
    elapsed = int((time.monotonic() - start) * 1000)
    return CompileResult(physical, device, tuple(tuple(m) for m in mappings), model, elapsed)
