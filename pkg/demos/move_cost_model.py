"""The moving-cost coefficient matrix: closed-form start, refit on data.

The QUBO objective approximates the SWAP count of a rearrangement pi by
sum_mu a[mu, pi[mu]]. This demo shows the uniform-permutation closed
form, then improves the matrix with samples from real compile runs.

Run with: python demos/move_cost_model.py
"""
import random

import numpy as np

from quroute import CompileConfig, compile_circuit, coeffs
from quroute.circuit import Cnot, LogicalCircuit
from quroute.device import builtin

device = builtin("ring:6")
model = coeffs.uniform_init(device)
np.set_printoptions(precision=3, suppress=True)
print("closed-form coefficients for ring:6 (uniform permutations):")
print(model.a)

ident = tuple(range(6))
rotate = tuple((i + 1) % 6 for i in range(6))
print(f"\nestimated swaps: identity {coeffs.estimate_swaps(model, ident):.2f}, "
      f"rotate-by-one {coeffs.estimate_swaps(model, rotate):.2f}")

# Collect rearrangement samples by compiling random circuits with a tiny
# layer cap (many layers -> many stitches -> many samples).
rng = random.Random(0)
samples = []
for seed in range(3):
    gates = tuple(Cnot(*rng.sample(range(6), 2)) for _ in range(300))
    result = compile_circuit(LogicalCircuit(6, gates),
                             CompileConfig(device="ring:6", seed=seed, sweeps=200, layer_cap=3))
    samples.extend(result.physical.samples)
print(f"\ncollected {len(samples)} rearrangement samples from 3 compile runs")

held, train = samples[:100], samples[100:]
refit = coeffs.fit(model, train)
print(f"held-out RMSE: uniform {coeffs.rmse(model, held):.3f}, "
      f"refit v{refit.version} {coeffs.rmse(refit, held):.3f}")
