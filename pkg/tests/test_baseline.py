import pytest

from quroute.baseline import compile_naive
from quroute.circuit import Cnot, LogicalCircuit, parse_qasm
from quroute.device import SubsetInfeasible, builtin
from quroute.synthesis import verify_equivalence

from conftest import random_circuit


def test_adjacent_circuit_cost_one():
    dev = builtin("linear:3")
    circ = LogicalCircuit(3, (Cnot(0, 1), Cnot(1, 2), Cnot(1, 0)))
    phys = compile_naive(circ, dev)
    assert phys.stats.average_compilation_cost == 1.0
    assert phys.stats.moving_cost == 0


def test_single_distant_cnot():
    dev = builtin("linear:5")
    circ = LogicalCircuit(5, (Cnot(0, 4),))
    phys = compile_naive(circ, dev)
    d = int(dev.distance[0, 4])
    assert phys.stats.moving_cost == 3 * (d - 1)
    assert phys.stats.total_physical_cnots == 3 * (d - 1) + 1
    ok, msg = verify_equivalence(circ, phys)
    assert ok, msg


def test_random_circuits_verify():
    for seed in range(5):
        circ = random_circuit(5, 25, seed=seed, num_singles=6)
        for name in ("ring:5", "linear:5", "star:0:5"):
            phys = compile_naive(circ, builtin(name))
            ok, msg = verify_equivalence(circ, phys)
            assert ok, f"{name} seed {seed}: {msg}"


def test_cost_bound():
    circ = random_circuit(6, 40, seed=9)
    dev = builtin("linear:6")
    phys = compile_naive(circ, dev)
    assert phys.stats.total_physical_cnots <= circ.num_cnots * (3 * dev.diameter + 1)


def test_too_many_logical_qubits():
    with pytest.raises(SubsetInfeasible):
        compile_naive(LogicalCircuit(5), builtin("linear:3"))


def test_qasm_input(full_adder_qasm):
    circ = parse_qasm(full_adder_qasm)
    phys = compile_naive(circ, builtin("ring:4"))
    ok, msg = verify_equivalence(circ, phys)
    assert ok, msg
