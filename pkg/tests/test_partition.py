import pytest

from quroute.circuit import Cnot, LogicalCircuit, SingleQubitGate
from quroute.partition import BudgetTooSmall, PartitionError, group_chunks, slice_layers

from conftest import random_circuit


def test_slice_respects_cap_and_order():
    circ = random_circuit(5, 47, seed=11, num_singles=9)
    layers = slice_layers(circ, layer_cap=10)
    assert all(lay.cnot_count <= 10 for lay in layers)
    flat = tuple(g for lay in layers for g in lay.gates)
    assert flat == circ.gates
    assert [lay.index for lay in layers] == list(range(len(layers)))


def test_singles_never_split():
    gates = tuple(SingleQubitGate("h", (), 0) for _ in range(30))
    layers = slice_layers(LogicalCircuit(2, gates), layer_cap=1)
    assert len(layers) == 1


def test_exact_fill():
    circ = LogicalCircuit(3, tuple(Cnot(0, 1) for _ in range(40)))
    layers = slice_layers(circ, layer_cap=20)
    assert [lay.cnot_count for lay in layers] == [20, 20]


def test_empty_circuit_single_layer():
    layers = slice_layers(LogicalCircuit(3))
    assert len(layers) == 1 and layers[0].gates == ()


def test_bad_cap():
    with pytest.raises(PartitionError):
        slice_layers(LogicalCircuit(2), layer_cap=0)


def test_group_chunks_arithmetic():
    # N=8: floor(1200 / 64) = 18 layers per chunk
    chunks = group_chunks(40, 8, var_budget=1200)
    assert [c.num_layers for c in chunks] == [18, 18, 4]
    assert chunks[0].var_count == 18 * 64
    assert [(c.lo, c.hi) for c in chunks] == [(0, 18), (18, 36), (36, 40)]


def test_budget_too_small():
    with pytest.raises(BudgetTooSmall):
        group_chunks(10, 35, var_budget=1200)


def test_chunks_cover_range():
    chunks = group_chunks(7, 6, var_budget=144)
    assert chunks[0].num_layers == 4
    assert chunks[-1].hi == 7
    covered = [m for c in chunks for m in range(c.lo, c.hi)]
    assert covered == list(range(7))
