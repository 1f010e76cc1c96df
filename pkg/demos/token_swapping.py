"""Token swapping: realising a permutation with adjacent SWAPs.

Run with: python demos/token_swapping.py
"""
import itertools
import random

from quroute.device import builtin
from quroute.tokenswap import min_swaps_exact, min_swaps_heuristic

ring = builtin("ring:6")
pi = (3, 4, 5, 0, 1, 2)  # rotate everything halfway around the ring
exact = min_swaps_exact(ring, pi)
heur = min_swaps_heuristic(ring, pi)
print(f"half-rotation on ring:6: exact {len(exact)} swaps {exact}")
print(f"                     heuristic {len(heur)} swaps {heur}")

rng = random.Random(1)
print("\nheuristic overhead over 200 random permutations per device:")
for name in ("linear:6", "ring:6", "star:0:6"):
    dev = builtin(name)
    extra = total = 0
    for _ in range(200):
        p = tuple(rng.sample(range(6), 6))
        e, h = len(min_swaps_exact(dev, p)), len(min_swaps_heuristic(dev, p))
        extra += h - e
        total += e
    print(f"  {name:10s}: exact total {total}, heuristic overhead +{extra} swaps")
