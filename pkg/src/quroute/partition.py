"""Slice a circuit into CNOT-capped layers and group layers into chunks.

Each layer is assigned one logical-to-physical mapping by the router, so
the layer cap bounds how many CNOTs share a placement; the chunk budget
bounds how many N*N mapping-variable blocks fit one solver call.
"""
from __future__ import annotations

from dataclasses import dataclass

from .circuit import Cnot, Gate, LogicalCircuit


class PartitionError(ValueError):
    pass


class BudgetTooSmall(PartitionError):
    """Even a single layer's N^2 mapping variables exceed the budget."""


@dataclass(frozen=True)
class Layer:
    index: int
    gates: tuple[Gate, ...]

    @property
    def cnots(self) -> tuple[Cnot, ...]:
        return tuple(g for g in self.gates if isinstance(g, Cnot))

    @property
    def cnot_count(self) -> int:
        return len(self.cnots)


@dataclass(frozen=True)
class Chunk:
    index: int
    lo: int  # first layer (inclusive)
    hi: int  # last layer (exclusive)
    var_count: int

    @property
    def num_layers(self) -> int:
        return self.hi - self.lo


def slice_layers(circuit: LogicalCircuit, layer_cap: int = 20) -> list[Layer]:
    """Greedy left-to-right fill: a gate starts a new layer exactly when
    adding it would exceed ``layer_cap`` CNOTs. Single-qubit gates never
    trigger a split. Always yields at least one layer."""
    if layer_cap < 1:
        raise PartitionError("layer_cap must be >= 1")
    layers: list[Layer] = []
    current: list[Gate] = []
    cnots = 0
    for g in circuit.gates:
        if isinstance(g, Cnot) and cnots == layer_cap:
            layers.append(Layer(len(layers), tuple(current)))
            current, cnots = [], 0
        current.append(g)
        if isinstance(g, Cnot):
            cnots += 1
    layers.append(Layer(len(layers), tuple(current)))
    return layers


def group_chunks(num_layers: int, num_qubits: int, var_budget: int = 1200) -> list[Chunk]:
    """Partition [0, M) into chunks of floor(var_budget / N^2) layers each."""
    if num_layers < 1 or num_qubits < 1:
        raise PartitionError("need at least one layer and one qubit")
    per_layer = num_qubits * num_qubits
    size = var_budget // per_layer
    if size < 1:
        raise BudgetTooSmall(f"var_budget {var_budget} < N^2 = {per_layer}")
    chunks = []
    for lo in range(0, num_layers, size):
        hi = min(lo + size, num_layers)
        chunks.append(Chunk(len(chunks), lo, hi, (hi - lo) * per_layer))
    return chunks
