"""Chunk scheduling strategies and their parallel wave counts.

Independent solves every chunk at once but ignores inter-chunk movement;
sequential couples every chunk to its left neighbour but cannot run in
parallel; binary places chunks on a midpoint tree, coupling each chunk to
its nearest solved neighbours while staying parallelizable.

Run with: python demos/scheduling_strategies.py
"""
from quroute.scheduler import make_schedule, steps

Q = 15
sched = make_schedule(Q, "binary")
print(f"binary schedule for {Q} chunks:")
for node in sched.nodes:
    deps = sorted(node.dependencies) or "-"
    print(f"  chunk {node.chunk:2d}: depends on {deps}, "
          f"left source {node.left_source}, right source {node.right_source}")

print("\nwave counts with I parallel solvers:")
print(f"{'I':>3} {'independent':>12} {'sequential':>11} {'binary':>7}")
for workers in (1, 2, 4, 8):
    print(f"{workers:>3} {steps(Q, workers, 'independent'):>12} "
          f"{steps(Q, workers, 'sequential'):>11} {steps(Q, workers, 'binary'):>7}")
