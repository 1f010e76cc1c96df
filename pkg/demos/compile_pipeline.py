"""Walk a small circuit through the whole compilation pipeline.

Run with: python demos/compile_pipeline.py
"""
from pathlib import Path

from quroute import CompileConfig, compile_circuit, compile_naive, parse_qasm
from quroute.device import builtin
from quroute.synthesis import to_qasm

qasm = (Path(__file__).parent.parent / "benchmarks" / "full_adder.qasm").read_text()
circuit = parse_qasm(qasm)
print(f"logical circuit: {circuit.num_qubits} qubits, {circuit.num_cnots} CNOTs, "
      f"{len(circuit.gates) - circuit.num_cnots} single-qubit gates")

# A small layer cap lets the router change the placement between phases of
# the adder; with the default cap the whole circuit shares one mapping.
config = CompileConfig(device="ring:4", layer_cap=4, sweeps=400, seed=2)
result = compile_circuit(circuit, config)
stats = result.physical.stats

print(f"\ncompiled to {result.device.name}:")
print(f"  building cost: {stats.building_cost} physical CNOTs")
print(f"  moving cost:   {stats.moving_cost} physical CNOTs")
print(f"  total:         {stats.total_physical_cnots} "
      f"(average {stats.average_compilation_cost:.2f} per logical CNOT)")
print(f"  layer mappings: {list(result.mappings)}")

naive = compile_naive(circuit, builtin("ring:4"))
print(f"\nnaive baseline needs {naive.stats.total_physical_cnots} physical CNOTs")

print("\nfirst lines of the routed circuit:")
for line in to_qasm(result.physical).splitlines()[:10]:
    print(" ", line)
