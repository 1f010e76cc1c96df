"""Turn (circuit, per-layer mappings) into a hardware-executable circuit.

Each layer's logical CNOTs are built on the device either directly
(remote CNOT cascades along shortest paths) or through a relay qubit that
caches a shared control or target parity for a group of commuting CNOTs.
Adjacent layers are stitched with SWAP sequences. Every compiled circuit
is checked against the logical circuit with a GF(2) linear-algebra
verifier rather than trusted by construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .circuit import Cnot, LogicalCircuit, SharedGroup, SingleQubitGate, commuting_shared_groups
from .coeffs import RearrangementSample
from .device import Device, SameQubit
from .partition import Layer
from . import tokenswap


class SynthesisError(ValueError):
    pass


class NotAdjacent(SynthesisError):
    pass


class MappingInvalid(SynthesisError):
    pass


@dataclass(frozen=True)
class PCnot:
    control: int
    target: int


@dataclass(frozen=True)
class PSingle:
    name: str
    params: tuple[float, ...]
    qubit: int
    logical: int = -1  # which logical qubit this gate came from
    layer: int = -1    # which layer's mapping placed it (-1: not layered)


PhysicalGate = PCnot | PSingle


@dataclass(frozen=True)
class Stats:
    building_cost: int
    moving_cost: int
    total_physical_cnots: int
    logical_cnots: int
    average_compilation_cost: float

    def to_dict(self) -> dict:
        return {
            "building_cost": self.building_cost,
            "moving_cost": self.moving_cost,
            "total_physical_cnots": self.total_physical_cnots,
            "logical_cnots": self.logical_cnots,
            "average_compilation_cost": self.average_compilation_cost,
        }


@dataclass(frozen=True)
class PhysicalCircuit:
    device: Device
    gates: tuple[PhysicalGate, ...]
    stats: Stats
    initial_mapping: tuple[int, ...]
    final_mapping: tuple[int, ...]
    samples: tuple[RearrangementSample, ...] = ()


def _shortest_path(device: Device, src: int, dst: int) -> list[int]:
    """Lexicographically smallest shortest path from src to dst."""
    dist = device.distance
    adj = device.adjacency()
    path = [src]
    cur = src
    while cur != dst:
        cur = min(v for v in adj[cur] if dist[v, dst] == dist[cur, dst] - 1)
        path.append(cur)
    return path


def remote_cnot(device: Device, control: int, target: int) -> list[PCnot]:
    """CNOT between arbitrary qubits as a cascade along a shortest path.

    Adjacent qubits need a single gate; at distance d >= 2 the two-pass
    ladder uses exactly 4(d-1) gates, restores every intermediate qubit,
    and leaves target XOR-ed with control.
    """
    if control == target:
        raise SameQubit(f"remote_cnot({control},{control}) is undefined")
    if device.has_edge(control, target):
        return [PCnot(control, target)]
    path = _shortest_path(device, control, target)
    k = len(path) - 1
    # One pass: descend the chain to the control, then climb back up.
    block = [PCnot(path[j], path[j + 1]) for j in range(k - 1, -1, -1)]
    block += [PCnot(path[j], path[j + 1]) for j in range(1, k - 1)]
    return block * 2


def swap_gate(device: Device, mu: int, nu: int) -> list[PCnot]:
    """Exchange two adjacent qubits' states with 3 CNOTs."""
    if not device.has_edge(mu, nu):
        raise NotAdjacent(f"({mu},{nu}) is not a device edge")
    return [PCnot(mu, nu), PCnot(nu, mu), PCnot(mu, nu)]


def _ladder(device: Device, relay: int, leaf: int) -> list[PCnot]:
    """Palindrome chain of 2d-1 CNOTs spreading the relay's parity to leaf.

    Applied once before and once after loading the relay, it makes leaf
    absorb the loaded parity while restoring every path qubit.
    """
    path = _shortest_path(device, relay, leaf)
    down = [PCnot(path[j], path[j + 1]) for j in range(len(path) - 1)]
    return down + down[-2::-1]


def _carry(device: Device, control: int, relay: int) -> list[PCnot]:
    """Palindrome chain of 2d-1 CNOTs loading control's parity onto relay.

    Unlike remote_cnot it deliberately dirties the path interior; applying
    it a second time after the fan-out restores relay and interior alike.
    """
    path = _shortest_path(device, control, relay)
    up = [PCnot(path[j], path[j + 1]) for j in range(len(path) - 2, -1, -1)]
    return up + up[-2::-1]


def _gf2_product(n: int, gates) -> np.ndarray:
    mat = np.eye(n, dtype=np.uint8)
    for g in gates:
        if isinstance(g, PCnot):
            mat[g.target] ^= mat[g.control]
    return mat


def _transpose_sequence(gates: list[PCnot]) -> list[PCnot]:
    """GF(2) transpose of a CNOT sequence: reverse order, flip each gate."""
    return [PCnot(g.target, g.control) for g in reversed(gates)]


def _relay_candidate(device: Device, control: int, targets: list[int],
                     relay: int) -> tuple[list[PCnot], int] | None:
    """Gate sequence routing the group through ``relay``, or None.

    Each target occurrence independently takes the cheaper of the direct
    remote CNOT and the relayed fan-out (4 d(relay, t) - 2); at most one
    occurrence per distinct target is relayed so fan-out ladders never
    cancel. Returns None when the relay helps nothing.
    """
    cost = device.build_cost_matrix
    dist = device.distance
    if relay == control:
        return None
    relayed: list[int] = []
    direct: list[int] = []
    seen: set[int] = set()
    relay_in_group = False
    for t in targets:
        if t == relay and not relay_in_group:
            relay_in_group = True
            continue
        fan = 4 * int(dist[relay, t]) - 2
        if t != relay and t not in seen and fan < cost[control, t]:
            relayed.append(t)
            seen.add(t)
        else:
            direct.append(t)
    if not relayed and not relay_in_group:
        return None
    if not relayed and relay_in_group:
        return None  # plain direct construction covers this
    pre = [g for t in relayed for g in _ladder(device, relay, t)]
    post = [g for t in relayed for g in _ladder(device, relay, t)]
    if relay_in_group:
        load = remote_cnot(device, control, relay)
        seq = pre + load + post
    else:
        carry = _carry(device, control, relay)
        seq = pre + carry + post + carry
    for t in direct:
        seq += remote_cnot(device, control, t)
    return seq, len(seq)


def _construct_group(device: Device, group: SharedGroup, mapping: tuple[int, ...]) -> list[PCnot]:
    """Physical gates for one commuting group, relay-routed when cheaper.

    Every relay candidate is verified against the group's GF(2) matrix
    before being accepted; on any mismatch the direct construction wins.
    """
    flip = group.role == "target"
    pairs = [(g.control, g.target) if not flip else (g.target, g.control) for g in group.gates]
    control = mapping[pairs[0][0]]
    targets = [mapping[t] for _, t in pairs]

    direct = [g for t in targets for g in remote_cnot(device, control, t)]
    best, best_cost = direct, len(direct)
    expected = _gf2_product(device.num_qubits, direct)
    for relay in range(device.num_qubits):
        cand = _relay_candidate(device, control, targets, relay)
        if cand is None or cand[1] >= best_cost:
            continue
        seq, seq_cost = cand
        if np.array_equal(_gf2_product(device.num_qubits, seq), expected):
            best, best_cost = seq, seq_cost
    return _transpose_sequence(best) if flip else best


def construct_layer(layer: Layer, mapping: tuple[int, ...], device: Device) -> tuple[list[PhysicalGate], int]:
    """Physical gates for one layer plus its building cost.

    Commuting CNOT runs are built as groups (enabling relay routing);
    single-qubit gates are placed at their logical qubit's position and
    keep their order relative to the first CNOT of each group.
    """
    _check_mapping(mapping, device)
    groups = commuting_shared_groups(layer.cnots)
    group_of: dict[int, int] = {}
    k = 0
    for gi, grp in enumerate(groups):
        for _ in grp.gates:
            group_of[k] = gi
            k += 1
    out: list[PhysicalGate] = []
    building = 0
    emitted: set[int] = set()
    ci = 0
    for g in layer.gates:
        if isinstance(g, SingleQubitGate):
            out.append(PSingle(g.name, g.params, mapping[g.qubit], logical=g.qubit, layer=layer.index))
            continue
        gi = group_of[ci]
        ci += 1
        if gi in emitted:
            continue
        emitted.add(gi)
        gates = _construct_group(device, groups[gi], mapping)
        out.extend(gates)
        building += len(gates)
    return out, building


def stitch_layers(mapping_m: tuple[int, ...], mapping_m1: tuple[int, ...], device: Device,
                  exact_limit: int = tokenswap.DEFAULT_EXACT_LIMIT
                  ) -> tuple[list[PCnot], int, RearrangementSample]:
    """SWAP sequence turning one layer's placement into the next.

    Returns (gates, moving cost, rearrangement sample). The permutation
    sends each qubit's current position to its next position; it is solved
    exactly on small devices and heuristically otherwise.
    """
    _check_mapping(mapping_m, device)
    _check_mapping(mapping_m1, device)
    n = device.num_qubits
    pi = [0] * n
    for i in range(n):
        pi[mapping_m[i]] = mapping_m1[i]
    pi = tuple(pi)
    if n <= exact_limit:
        swaps = tokenswap.min_swaps_exact(device, pi, exact_limit)
    else:
        swaps = tokenswap.min_swaps_heuristic(device, pi)
    gates = [g for u, v in swaps for g in swap_gate(device, u, v)]
    return gates, 3 * len(swaps), RearrangementSample(pi, len(swaps))


def synthesize(circuit: LogicalCircuit, layers: list[Layer], mappings: list[tuple[int, ...]],
               device: Device, exact_limit: int = tokenswap.DEFAULT_EXACT_LIMIT) -> PhysicalCircuit:
    """Build every layer, stitch between layers, and assemble statistics."""
    if len(layers) != len(mappings):
        raise SynthesisError(f"{len(layers)} layers but {len(mappings)} mappings")
    if not layers:
        raise SynthesisError("need at least one layer")
    gates: list[PhysicalGate] = []
    building = moving = 0
    samples: list[RearrangementSample] = []
    for m, (layer, mapping) in enumerate(zip(layers, mappings)):
        if m > 0:
            stitch, cost, sample = stitch_layers(mappings[m - 1], mapping, device, exact_limit)
            gates.extend(stitch)
            moving += cost
            samples.append(sample)
        built, cost = construct_layer(layer, mapping, device)
        gates.extend(built)
        building += cost
    logical = circuit.num_cnots
    total = building + moving
    stats = Stats(building, moving, total, logical, total / logical if logical else 0.0)
    return PhysicalCircuit(device, tuple(gates), stats, tuple(mappings[0]), tuple(mappings[-1]),
                           tuple(samples))


def _check_mapping(mapping, device: Device) -> None:
    if sorted(mapping) != list(range(device.num_qubits)):
        raise MappingInvalid(f"not a bijection on {device.num_qubits} qubits: {mapping}")


def _permutation_matrix(mapping: tuple[int, ...], n: int) -> np.ndarray:
    mat = np.zeros((n, n), dtype=np.uint8)
    for i, mu in enumerate(mapping):
        mat[mu, i] = 1
    return mat


def verify_equivalence(logical: LogicalCircuit, physical: PhysicalCircuit,
                       mappings: list[tuple[int, ...]] | None = None) -> tuple[bool, str]:
    """Check the compiled circuit against the logical one.

    (a) As GF(2) row operations, the physical CNOT matrix must equal
    P_out @ L @ P_in^T for the logical CNOT matrix L and the boundary
    placement permutations. (b) Per logical qubit, the emitted single-qubit
    gates must match the logical ones in order, each placed where its
    layer's mapping puts that qubit. Returns (verdict, diagnostic).
    """
    n = physical.device.num_qubits
    lmat = np.eye(n, dtype=np.uint8)
    for g in logical.cnot_gates():
        lmat[g.target] ^= lmat[g.control]
    expected = (_permutation_matrix(physical.final_mapping, n) @ lmat
                @ _permutation_matrix(physical.initial_mapping, n).T) % 2
    actual = _gf2_product(n, physical.gates)
    if not np.array_equal(actual, expected):
        return False, "GF(2) matrix mismatch between physical and logical CNOT actions"

    logical_singles: dict[int, list[tuple[str, tuple[float, ...]]]] = {}
    for g in logical.gates:
        if isinstance(g, SingleQubitGate):
            logical_singles.setdefault(g.qubit, []).append((g.name, g.params))
    physical_singles: dict[int, list[PSingle]] = {}
    for g in physical.gates:
        if isinstance(g, PSingle):
            if g.logical < 0:
                return False, f"single-qubit gate {g.name} lacks a logical-qubit tag"
            physical_singles.setdefault(g.logical, []).append(g)
    if set(logical_singles) != set(physical_singles):
        return False, "single-qubit gates dropped or invented for some logical qubit"
    for q, expect in logical_singles.items():
        got = physical_singles[q]
        if [(g.name, g.params) for g in got] != expect:
            return False, f"single-qubit gate sequence differs on logical qubit {q}"
        if mappings is not None:
            last_layer = -1
            for g in got:
                if g.layer < last_layer:
                    return False, f"single-qubit gates out of layer order on logical qubit {q}"
                last_layer = max(last_layer, g.layer)
                if g.layer >= 0 and mappings[g.layer][q] != g.qubit:
                    return False, (f"gate {g.name} on logical {q} sits on physical {g.qubit}, "
                                   f"but layer {g.layer} maps it to {mappings[g.layer][q]}")
    return True, "ok"


def to_qasm(physical: PhysicalCircuit, reg: str = "p") -> str:
    """Emit the physical circuit as OpenQASM 2.0 over physical indices."""
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";',
             f"qreg {reg}[{physical.device.num_qubits}];"]
    for g in physical.gates:
        if isinstance(g, PCnot):
            lines.append(f"cx {reg}[{g.control}],{reg}[{g.target}];")
        else:
            params = "(" + ",".join(repr(p) for p in g.params) + ")" if g.params else ""
            lines.append(f"{g.name}{params} {reg}[{g.qubit}];")
    return "\n".join(lines) + "\n"
