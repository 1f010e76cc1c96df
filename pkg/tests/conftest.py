"""Shared fixtures and independent oracles used across the test suite."""
from __future__ import annotations

import random

import pytest

from quroute.circuit import Cnot, LogicalCircuit, SingleQubitGate

# One line per acceptance criterion, emitted after the test summary where
# pytest's output capture cannot swallow them.
acceptance_lines: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)


def brute_force_minimum(qubo) -> float:
    """Exhaustive QUBO minimum; only usable for small variable counts."""
    assert qubo.num_vars <= 20
    best = None
    for mask in range(1 << qubo.num_vars):
        bits = [(mask >> i) & 1 for i in range(qubo.num_vars)]
        e = qubo.constant + sum(c for (u, v), c in qubo.terms.items() if bits[u] and bits[v])
        best = e if best is None else min(best, e)
    return best


def random_circuit(n: int, num_cnots: int, seed: int, num_singles: int = 0) -> LogicalCircuit:
    """Deterministic random circuit used by several tests."""
    rng = random.Random(seed)
    gates = []
    singles_left = num_singles
    while sum(isinstance(g, Cnot) for g in gates) < num_cnots:
        if singles_left and rng.random() < 0.2:
            gates.append(SingleQubitGate(rng.choice(["h", "t", "tdg", "s"]), (), rng.randrange(n)))
            singles_left -= 1
        else:
            a, b = rng.sample(range(n), 2)
            gates.append(Cnot(a, b))
    return LogicalCircuit(n, tuple(gates))


@pytest.fixture
def full_adder_qasm() -> str:
    from pathlib import Path
    return (Path(__file__).parent.parent / "benchmarks" / "full_adder.qasm").read_text()
