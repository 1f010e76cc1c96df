import itertools

import numpy as np
import pytest

from quroute.circuit import Cnot, LogicalCircuit, SingleQubitGate, parse_qasm
from quroute.device import SameQubit, builtin
from quroute.partition import Layer, slice_layers
from quroute.synthesis import (
    NotAdjacent, PCnot, PSingle, construct_layer, remote_cnot, stitch_layers,
    swap_gate, synthesize, to_qasm, verify_equivalence,
)
from quroute.tokenswap import min_swaps_exact


def gf2(n, gates):
    mat = np.eye(n, dtype=np.uint8)
    for g in gates:
        if isinstance(g, PCnot):
            mat[g.target] ^= mat[g.control]
    return mat


def cnot_matrix(n, pairs):
    mat = np.eye(n, dtype=np.uint8)
    for c, t in pairs:
        mat[t] ^= mat[c]
    return mat


def test_remote_cnot_counts():
    for name in ("linear:6", "ring:6", "star:0:6"):
        dev = builtin(name)
        for c in range(6):
            for t in range(6):
                if c != t:
                    d = int(dev.distance[c, t])
                    assert len(remote_cnot(dev, c, t)) == max(1, 4 * (d - 1))


def test_remote_cnot_semantics():
    dev = builtin("linear:5")
    for c, t in [(0, 1), (0, 2), (0, 4), (4, 0), (3, 1)]:
        gates = remote_cnot(dev, c, t)
        assert all(dev.has_edge(g.control, g.target) for g in gates)
        assert np.array_equal(gf2(5, gates), cnot_matrix(5, [(c, t)]))


def test_remote_cnot_same_qubit():
    with pytest.raises(SameQubit):
        remote_cnot(builtin("linear:3"), 1, 1)


def test_swap_gate():
    dev = builtin("ring:4")
    gates = swap_gate(dev, 0, 1)
    assert len(gates) == 3
    assert np.array_equal(gf2(4, gates + gates), np.eye(4, dtype=np.uint8))
    with pytest.raises(NotAdjacent):
        swap_gate(dev, 0, 2)


def test_relay_fixture_star():
    # hub p2 adjacent to everything; group of CNOTs from p0 to p2, p3, p4
    dev = builtin("star:2:5")
    layer = Layer(0, (Cnot(0, 2), Cnot(0, 3), Cnot(0, 4)))
    gates, cost = construct_layer(layer, (0, 1, 2, 3, 4), dev)
    assert cost == 5  # straightforward would need 1 + 4 + 4 = 9
    assert [(g.control, g.target) for g in gates] == [(2, 3), (2, 4), (0, 2), (2, 3), (2, 4)]
    assert np.array_equal(gf2(5, gates), cnot_matrix(5, [(0, 2), (0, 3), (0, 4)]))


def test_relay_outside_group():
    # CNOTs p0 -> {p1, p3, p4} on the star: hub p2 is not a target but still relays
    dev = builtin("star:2:5")
    layer = Layer(0, (Cnot(0, 1), Cnot(0, 3), Cnot(0, 4)))
    gates, cost = construct_layer(layer, (0, 1, 2, 3, 4), dev)
    direct = sum(dev.build_cost(0, t) for t in (1, 3, 4))
    assert cost < direct
    mat = gf2(5, gates)
    assert np.array_equal(mat, cnot_matrix(5, [(0, 1), (0, 3), (0, 4)]))
    assert np.array_equal(mat[2], np.eye(5, dtype=np.uint8)[2])  # relay restored


def test_relay_never_chosen_when_all_adjacent():
    dev = builtin("star:0:4")
    layer = Layer(0, (Cnot(0, 1), Cnot(0, 2), Cnot(0, 3)))
    gates, cost = construct_layer(layer, (0, 1, 2, 3), dev)
    assert cost == 3
    assert all(g.control == 0 for g in gates)


def test_shared_target_group_uses_relay_symmetrically():
    dev = builtin("star:2:5")
    layer = Layer(0, (Cnot(2, 0), Cnot(3, 0), Cnot(4, 0)))
    gates, cost = construct_layer(layer, (0, 1, 2, 3, 4), dev)
    assert cost == 5
    assert np.array_equal(gf2(5, gates), cnot_matrix(5, [(2, 0), (3, 0), (4, 0)]))


def test_construct_layer_places_singles():
    dev = builtin("linear:3")
    layer = Layer(4, (SingleQubitGate("h", (), 1), Cnot(0, 1), SingleQubitGate("t", (), 0)))
    gates, cost = construct_layer(layer, (2, 1, 0), dev)
    singles = [g for g in gates if isinstance(g, PSingle)]
    assert [(g.name, g.qubit, g.logical, g.layer) for g in singles] == [
        ("h", 1, 1, 4), ("t", 2, 0, 4)]
    assert cost == 1


def test_stitch_identity_and_transposition():
    dev = builtin("linear:4")
    ident = (0, 1, 2, 3)
    gates, cost, sample = stitch_layers(ident, ident, dev)
    assert gates == [] and cost == 0 and sample.swap_count == 0
    gates, cost, sample = stitch_layers(ident, (1, 0, 2, 3), dev)
    assert cost == 3 and sample.swap_count == 1


def test_stitch_matches_exact_oracle():
    dev = builtin("ring:4")
    ident = (0, 1, 2, 3)
    rotated = (1, 2, 3, 0)
    gates, cost, sample = stitch_layers(ident, rotated, dev)
    pi = tuple(rotated[i] for i in range(4))  # token at mu goes to rotated[mu]
    assert cost == 3 * len(min_swaps_exact(dev, sample.pi))
    assert sample.pi == pi


def test_synthesize_trivial_layer():
    dev = builtin("linear:3")
    circ = LogicalCircuit(3, (Cnot(0, 1), Cnot(1, 2)))
    phys = synthesize(circ, slice_layers(circ), [(0, 1, 2)], dev)
    st = phys.stats
    assert (st.building_cost, st.moving_cost, st.total_physical_cnots) == (2, 0, 2)
    assert st.average_compilation_cost == 1.0
    ok, msg = verify_equivalence(circ, phys, [(0, 1, 2)])
    assert ok, msg


def test_synthesize_empty_circuit():
    dev = builtin("linear:2")
    circ = LogicalCircuit(2)
    phys = synthesize(circ, slice_layers(circ), [(0, 1)], dev)
    assert phys.gates == () and phys.stats.total_physical_cnots == 0
    assert phys.stats.average_compilation_cost == 0.0


def test_stats_identity_on_multilayer():
    dev = builtin("ring:4")
    circ = parse_qasm("qreg q[4]; cx q[0],q[2]; cx q[1],q[3]; cx q[0],q[1]; cx q[2],q[3];")
    layers = slice_layers(circ, layer_cap=2)
    mappings = [(0, 1, 2, 3), (0, 2, 1, 3)]
    phys = synthesize(circ, layers, mappings, dev)
    pcnots = sum(isinstance(g, PCnot) for g in phys.gates)
    assert phys.stats.total_physical_cnots == pcnots
    assert phys.stats.total_physical_cnots == phys.stats.building_cost + phys.stats.moving_cost
    ok, msg = verify_equivalence(circ, phys, mappings)
    assert ok, msg


def test_verifier_catches_dropped_gate():
    dev = builtin("linear:3")
    circ = LogicalCircuit(3, (Cnot(0, 1), Cnot(1, 2)))
    phys = synthesize(circ, slice_layers(circ), [(0, 1, 2)], dev)
    broken = phys.__class__(dev, phys.gates[:-1], phys.stats,
                            phys.initial_mapping, phys.final_mapping)
    ok, _ = verify_equivalence(circ, broken, [(0, 1, 2)])
    assert not ok


def test_verifier_catches_misplaced_single():
    dev = builtin("linear:2")
    circ = LogicalCircuit(2, (SingleQubitGate("h", (), 0),))
    phys = synthesize(circ, slice_layers(circ), [(1, 0)], dev)
    ok, _ = verify_equivalence(circ, phys, [(1, 0)])
    assert ok
    wrong = phys.__class__(dev, (PSingle("h", (), 0, logical=0, layer=0),), phys.stats,
                           phys.initial_mapping, phys.final_mapping)
    ok, _ = verify_equivalence(circ, wrong, [(1, 0)])
    assert not ok


def test_physical_qasm_roundtrip_parses():
    dev = builtin("ring:4")
    circ = parse_qasm("qreg q[4]; h q[0]; cx q[0],q[2]; rz(0.5) q[1];")
    phys = synthesize(circ, slice_layers(circ), [(0, 1, 2, 3)], dev)
    reparsed = parse_qasm(to_qasm(phys))
    assert reparsed.num_qubits == 4
    assert reparsed.num_cnots == phys.stats.total_physical_cnots
