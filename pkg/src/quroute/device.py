"""Physical devices as coupling graphs with distance and CNOT-cost matrices.

A CNOT between qubits at hop distance d costs max(1, 4(d-1)) physical
CNOTs; a SWAP between neighbours costs 3. Both matrices are precomputed
at load time and the device is immutable afterwards.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from importlib import resources

import numpy as np


class DeviceError(ValueError):
    pass


class UnknownDevice(DeviceError):
    pass


class InvalidTopology(DeviceError):
    pass


class DisconnectedGraph(InvalidTopology):
    pass


class SameQubit(DeviceError):
    pass


class SubsetInfeasible(DeviceError):
    pass


@dataclass(frozen=True)
class Device:
    name: str
    num_qubits: int
    edges: frozenset[tuple[int, int]]
    # Index of each qubit in the device this one was cut from (identity by default).
    parent_indices: tuple[int, ...] = ()
    _dist: np.ndarray = field(init=False, repr=False, compare=False)
    _cost: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.num_qubits
        if n < 1:
            raise InvalidTopology("device needs at least one qubit")
        for u, v in self.edges:
            if u == v:
                raise InvalidTopology(f"self-loop on qubit {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidTopology(f"edge ({u},{v}) out of range")
        if not self.parent_indices:
            object.__setattr__(self, "parent_indices", tuple(range(n)))
        object.__setattr__(self, "_dist", _all_pairs_distance(n, self.adjacency()))
        cost = np.maximum(1, 4 * (self._dist - 1))
        np.fill_diagonal(cost, 0)
        object.__setattr__(self, "_cost", cost)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.num_qubits)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for nbrs in adj:
            nbrs.sort()
        return adj

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    @property
    def distance(self) -> np.ndarray:
        """Hop-count matrix (symmetric, zero diagonal)."""
        return self._dist

    @property
    def build_cost_matrix(self) -> np.ndarray:
        """Physical-CNOT cost matrix c(mu, nu) = max(1, 4(d-1)); diagonal 0."""
        return self._cost

    def build_cost(self, mu: int, nu: int) -> int:
        if mu == nu:
            raise SameQubit(f"build_cost({mu},{mu}) is undefined")
        return int(self._cost[mu, nu])

    @property
    def diameter(self) -> int:
        return int(self._dist.max())


def _all_pairs_distance(n: int, adj: list[list[int]]) -> np.ndarray:
    """Exact hop counts by BFS from every source; raises on disconnection."""
    dist = np.full((n, n), -1, dtype=np.int64)
    for src in range(n):
        dist[src, src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if dist[src, v] < 0:
                    dist[src, v] = dist[src, u] + 1
                    queue.append(v)
    if (dist < 0).any():
        raise DisconnectedGraph("coupling graph is not connected")
    return dist


def _edges(pairs) -> frozenset[tuple[int, int]]:
    return frozenset((min(u, v), max(u, v)) for u, v in pairs)


def builtin(name: str) -> Device:
    """Construct a named device: linear:<n>, ring:<n>, star:<hub>:<n>, ibm_qx5, ibm_qx20."""
    if name in ("ibm_qx5", "ibm_qx20"):
        data = resources.files("quroute.devices").joinpath(f"{name}.json").read_text()
        return _from_json(json.loads(data))
    parts = name.split(":")
    try:
        if parts[0] == "linear" and len(parts) == 2:
            n = int(parts[1])
            return Device(name, n, _edges((i, i + 1) for i in range(n - 1)))
        if parts[0] == "ring" and len(parts) == 2:
            n = int(parts[1])
            if n < 3:
                return Device(name, n, _edges((i, i + 1) for i in range(n - 1)))
            return Device(name, n, _edges([(i, (i + 1) % n) for i in range(n)]))
        if parts[0] == "star" and len(parts) == 3:
            hub, n = int(parts[1]), int(parts[2])
            if not 0 <= hub < n:
                raise InvalidTopology(f"hub {hub} out of range")
            return Device(name, n, _edges((hub, i) for i in range(n) if i != hub))
    except ValueError as exc:
        if isinstance(exc, DeviceError):
            raise
        raise UnknownDevice(f"bad device name: {name!r}") from exc
    raise UnknownDevice(f"unknown device: {name!r}")


def _from_json(payload: dict) -> Device:
    try:
        return Device(payload["name"], int(payload["num_qubits"]), _edges(payload["edges"]))
    except KeyError as exc:
        raise InvalidTopology(f"device file missing field {exc}") from exc


def load_device(path: str) -> Device:
    """Load a device from a JSON file {name, num_qubits, edges: [[u,v], ...]}."""
    with open(path, encoding="utf-8") as fh:
        return _from_json(json.load(fh))


def get_device(name_or_path: str) -> Device:
    """Resolve a --device argument: builtin name or path to a JSON file."""
    try:
        return builtin(name_or_path)
    except UnknownDevice:
        if name_or_path.endswith(".json"):
            return load_device(name_or_path)
        raise


def select_subset(device: Device, k: int) -> Device:
    """Deterministic connected induced subgraph on k qubits.

    Greedy BFS growth: seed at the maximum-degree vertex (ties -> lowest
    index), then repeatedly add the frontier vertex minimising the summed
    distance to the chosen set (ties -> lowest index). Indices are remapped
    to 0..k-1 in ascending original order; the original indices are kept
    in ``parent_indices``.
    """
    n = device.num_qubits
    if k > n:
        raise SubsetInfeasible(f"cannot select {k} of {n} qubits")
    if k == n:
        return device
    adj = device.adjacency()
    degree = [len(a) for a in adj]
    seed = max(range(n), key=lambda v: (degree[v], -v))
    chosen = {seed}
    while len(chosen) < k:
        frontier = sorted({v for u in chosen for v in adj[u]} - chosen)
        if not frontier:
            raise SubsetInfeasible("frontier exhausted before reaching k qubits")
        best = min(frontier, key=lambda v: (int(device.distance[v, sorted(chosen)].sum()), v))
        chosen.add(best)
    keep = sorted(chosen)
    remap = {old: new for new, old in enumerate(keep)}
    sub_edges = _edges((remap[u], remap[v]) for u, v in device.edges if u in chosen and v in chosen)
    return Device(f"{device.name}[{k}]", k, sub_edges, parent_indices=tuple(keep))
