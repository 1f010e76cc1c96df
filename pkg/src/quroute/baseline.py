"""Naive reference router used for relative quality comparisons.

Start from the identity placement; for each logical CNOT in program
order, SWAP the control toward the target along a shortest path until
they are adjacent, then emit one CNOT. Deliberately unsophisticated.
"""
from __future__ import annotations

from .circuit import Cnot, LogicalCircuit
from .device import Device, SubsetInfeasible
from .synthesis import PCnot, PhysicalCircuit, PSingle, Stats, swap_gate


def compile_naive(circuit: LogicalCircuit, device: Device) -> PhysicalCircuit:
    if circuit.num_qubits > device.num_qubits:
        raise SubsetInfeasible(
            f"{circuit.num_qubits} logical qubits exceed {device.num_qubits} physical")
    n = device.num_qubits
    dist = device.distance
    adj = device.adjacency()
    pos = list(range(n))  # logical -> physical (padded with idle logicals)
    arr = list(range(n))  # physical -> logical
    gates: list[PCnot | PSingle] = []
    building = moving = 0

    for g in circuit.gates:
        if isinstance(g, Cnot):
            c, t = pos[g.control], pos[g.target]
            while not device.has_edge(c, t):
                step = min(v for v in adj[c] if dist[v, t] == dist[c, t] - 1)
                gates.extend(swap_gate(device, c, step))
                moving += 3
                lc, ls = arr[c], arr[step]
                arr[c], arr[step] = ls, lc
                pos[lc], pos[ls] = step, c
                c = step
            gates.append(PCnot(c, pos[g.target]))
            building += 1
        else:
            gates.append(PSingle(g.name, g.params, pos[g.qubit], logical=g.qubit))

    logical = circuit.num_cnots
    total = building + moving
    stats = Stats(building, moving, total, logical, total / logical if logical else 0.0)
    return PhysicalCircuit(device, tuple(gates), stats,
                           tuple(range(n)), tuple(pos))
