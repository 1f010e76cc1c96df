"""QUBO objective for one circuit chunk, plus energy evaluation and decoding.

Variables are x[m, i, mu] = 1 iff logical qubit i sits on physical qubit
mu in layer m of the chunk. The objective combines the building cost of
each layer's CNOTs, the approximated moving cost between adjacent layers,
linearised moving-cost terms toward already-solved neighbouring chunks,
and one-hot penalties enforcing a bijection per layer.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .coeffs import MoveCostModel
from .device import Device
from .partition import Layer


class QuboError(ValueError):
    pass


class DimensionMismatch(QuboError):
    pass


class EmptyChunk(QuboError):
    pass


class LengthMismatch(QuboError):
    pass


@dataclass(frozen=True)
class BoundaryTerm:
    """Frozen mapping of a solved neighbour chunk's edge layer."""
    side: str                 # "left" | "right" relative to this chunk
    mapping: tuple[int, ...]  # logical -> physical
    distance: int             # chunk distance d; terms are weighted 1/d

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise QuboError(f"bad boundary side {self.side!r}")
        if self.distance < 1:
            raise QuboError("boundary distance must be >= 1")


@dataclass
class QuboProblem:
    num_vars: int
    terms: dict[tuple[int, int], float]  # upper-triangular; diagonal = linear
    constant: float
    num_layers: int
    n: int  # device qubits per layer
    layer_cnots: tuple[tuple[tuple[int, int], ...], ...] = ()

    def var(self, m: int, i: int, mu: int) -> int:
        return (m * self.n + i) * self.n + mu

    def add(self, u: int, v: int, coeff: float) -> None:
        if coeff == 0.0:
            return
        key = (u, v) if u <= v else (v, u)
        new = self.terms.get(key, 0.0) + coeff
        if new == 0.0:
            self.terms.pop(key, None)
        else:
            self.terms[key] = new

    def to_json(self) -> str:
        return json.dumps({
            "num_vars": self.num_vars,
            "terms": [[u, v, c] for (u, v), c in sorted(self.terms.items())],
            "constant": self.constant,
        })


def energy(qubo: QuboProblem, bits) -> float:
    if len(bits) != qubo.num_vars:
        raise LengthMismatch(f"expected {qubo.num_vars} bits, got {len(bits)}")
    total = qubo.constant
    for (u, v), coeff in qubo.terms.items():
        if bits[u] and bits[v]:
            total += coeff
    return total


def build_chunk_qubo(layers: list[Layer], device: Device, move_model: MoveCostModel,
                     boundaries: list[BoundaryTerm] = (), penalty: float | None = None) -> QuboProblem:
    """Assemble the chunk objective.

    ``penalty`` defaults to twice the largest cost-term magnitude, which
    makes violating a one-hot constraint strictly unprofitable at optimum.
    """
    if not layers:
        raise EmptyChunk("chunk has no layers")
    n = device.num_qubits
    if move_model.n != n:
        raise DimensionMismatch(f"move model is {move_model.n}x{move_model.n}, device has {n} qubits")
    for b in boundaries:
        if sorted(b.mapping) != list(range(n)):
            raise DimensionMismatch(f"boundary mapping is not a bijection on {n} qubits")

    num_layers = len(layers)
    qubo = QuboProblem(
        num_vars=num_layers * n * n, terms={}, constant=0.0, num_layers=num_layers, n=n,
        layer_cnots=tuple(tuple((g.control, g.target) for g in lay.cnots) for lay in layers),
    )
    cost = device.build_cost_matrix
    a = move_model.a

    # Building cost: c(mu, nu) per (control, target) placement within each layer.
    for m, lay in enumerate(layers):
        for g in lay.cnots:
            for mu in range(n):
                for nu in range(n):
                    if mu != nu:
                        qubo.add(qubo.var(m, g.control, mu), qubo.var(m, g.target, nu),
                                 float(cost[mu, nu]))

    # Moving cost between adjacent layers inside the chunk.
    for m in range(num_layers - 1):
        for i in range(n):
            for mu in range(n):
                for nu in range(n):
                    qubo.add(qubo.var(m, i, mu), qubo.var(m + 1, i, nu), 3.0 * float(a[mu, nu]))

    # Linearised moving cost toward solved neighbours, weighted 1/distance.
    for b in boundaries:
        edge = 0 if b.side == "left" else num_layers - 1
        w = 3.0 / b.distance
        for i in range(n):
            fixed = b.mapping[i]
            for mu in range(n):
                coeff = a[fixed, mu] if b.side == "left" else a[mu, fixed]
                qubo.add(qubo.var(edge, i, mu), qubo.var(edge, i, mu), w * float(coeff))

    if penalty is None:
        scale = max((abs(c) for c in qubo.terms.values()), default=0.0)
        penalty = 2.0 * scale if scale > 0 else 1.0
    if penalty <= 0:
        raise QuboError("penalty weight must be positive")

    # One-hot rows (each logical on exactly one physical) and columns.
    for m in range(num_layers):
        for i in range(n):
            _add_one_hot(qubo, [qubo.var(m, i, mu) for mu in range(n)], penalty)
        for mu in range(n):
            _add_one_hot(qubo, [qubo.var(m, i, mu) for i in range(n)], penalty)
    return qubo


def _add_one_hot(qubo: QuboProblem, variables: list[int], lam: float) -> None:
    """lam * (sum(x) - 1)^2 expanded: -lam*x_i, +2lam*x_i*x_j, +lam constant."""
    for idx, u in enumerate(variables):
        qubo.add(u, u, -lam)
        for v in variables[idx + 1:]:
            qubo.add(u, v, 2.0 * lam)
    qubo.constant += lam


def layer_bits(qubo: QuboProblem, bits, m: int) -> np.ndarray:
    mat = np.zeros((qubo.n, qubo.n), dtype=np.int64)
    for i in range(qubo.n):
        for mu in range(qubo.n):
            mat[i, mu] = bits[qubo.var(m, i, mu)]
    return mat


def decode_solution(qubo: QuboProblem, bits, device: Device) -> list[tuple[int, ...]]:
    """Interpret each layer's bit matrix as a mapping, repairing violations.

    A valid permutation matrix is returned as-is. Otherwise: greedily keep
    set cells whose row and column are both free (lowest (i, mu) first),
    then assign remaining logicals to remaining physicals minimising the
    added building cost of that layer's gates (ties -> lowest index).
    """
    if len(bits) != qubo.num_vars:
        raise LengthMismatch(f"expected {qubo.num_vars} bits, got {len(bits)}")
    n = qubo.n
    cost = device.build_cost_matrix
    mappings = []
    for m in range(qubo.num_layers):
        mat = layer_bits(qubo, bits, m)
        assign: dict[int, int] = {}
        used_cols: set[int] = set()
        for i in range(n):
            for mu in range(n):
                if mat[i, mu] and i not in assign and mu not in used_cols:
                    assign[i] = mu
                    used_cols.add(mu)
        gates = qubo.layer_cnots[m]
        for i in range(n):
            if i in assign:
                continue
            free = [mu for mu in range(n) if mu not in used_cols]
            best = min(free, key=lambda mu: (_added_cost(i, mu, gates, assign, cost), mu))
            assign[i] = best
            used_cols.add(best)
        mappings.append(tuple(assign[i] for i in range(n)))
    return mappings


def _added_cost(i: int, mu: int, gates, assign: dict[int, int], cost) -> int:
    total = 0
    for c, t in gates:
        if c == i and t in assign and assign[t] != mu:
            total += int(cost[mu, assign[t]])
        elif t == i and c in assign and assign[c] != mu:
            total += int(cost[assign[c], mu])
    return total


def encode_mappings(qubo: QuboProblem, mappings) -> list[int]:
    """Inverse of decode for valid per-layer bijections (test helper)."""
    bits = [0] * qubo.num_vars
    for m, mapping in enumerate(mappings):
        for i, mu in enumerate(mapping):
            bits[qubo.var(m, i, mu)] = 1
    return bits
