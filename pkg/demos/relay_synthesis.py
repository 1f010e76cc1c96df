"""Remote CNOTs and relay-qubit construction on a star device.

A CNOT between qubits at distance d costs max(1, 4(d-1)) physical CNOTs.
When several commuting CNOTs share a control, a relay qubit can cache the
control's parity once and fan it out cheaply.

Run with: python demos/relay_synthesis.py
"""
from quroute.circuit import Cnot
from quroute.device import builtin
from quroute.partition import Layer
from quroute.synthesis import construct_layer, remote_cnot

line = builtin("linear:4")
print("remote CNOT costs on a 4-qubit line:")
for target in (1, 2, 3):
    gates = remote_cnot(line, 0, target)
    print(f"  0 -> {target} (distance {target}): {len(gates)} gates: "
          f"{[(g.control, g.target) for g in gates]}")

star = builtin("star:2:5")
group = Layer(0, (Cnot(0, 2), Cnot(0, 3), Cnot(0, 4)))
direct = sum(star.build_cost(0, t) for t in (2, 3, 4))
gates, cost = construct_layer(group, (0, 1, 2, 3, 4), star)
print(f"\nfan-out group on star:2:5 (CNOTs from p0 to p2, p3, p4):")
print(f"  straightforward cost: {direct}")
print(f"  relay through the hub: {cost} gates: {[(g.control, g.target) for g in gates]}")
print("  the hub caches p0's parity once, so each extra target costs only 2 gates")
