"""Plan the order in which chunk objectives are solved.

Three strategies: independent (every chunk at once, no coupling),
sequential (left to right, each chunk sees its solved left neighbour) and
binary (chunks on a midpoint tree, solved root first; each chunk sees its
nearest solved neighbour on each side, weighted by chunk distance).
"""
from __future__ import annotations

from dataclasses import dataclass


class ScheduleError(ValueError):
    pass


STRATEGIES = ("independent", "sequential", "binary")


@dataclass(frozen=True)
class ScheduleNode:
    chunk: int
    dependencies: frozenset[int]
    # (source chunk index, distance in chunks) or None per side
    left_source: tuple[int, int] | None = None
    right_source: tuple[int, int] | None = None


@dataclass(frozen=True)
class Schedule:
    strategy: str
    nodes: tuple[ScheduleNode, ...]

    def node(self, chunk: int) -> ScheduleNode:
        return self.nodes[chunk]

    def dependency_map(self) -> dict[int, set[int]]:
        return {n.chunk: set(n.dependencies) for n in self.nodes}


def make_schedule(num_chunks: int, strategy: str = "binary") -> Schedule:
    """Solve order and boundary sources for ``num_chunks`` chunks."""
    if num_chunks < 1:
        raise ScheduleError("need at least one chunk")
    if strategy not in STRATEGIES:
        raise ScheduleError(f"unknown strategy {strategy!r}")
    if strategy == "independent" or num_chunks == 1:
        nodes = tuple(ScheduleNode(k, frozenset()) for k in range(num_chunks))
        return Schedule(strategy, nodes)
    if strategy == "sequential":
        nodes = [ScheduleNode(0, frozenset())]
        for k in range(1, num_chunks):
            nodes.append(ScheduleNode(k, frozenset({k - 1}), left_source=(k - 1, 1)))
        return Schedule(strategy, tuple(nodes))

    # Binary: midpoint tree over [0, Q), left-biased for even ranges.
    nodes: dict[int, ScheduleNode] = {}

    def descend(lo: int, hi: int, parent: int | None) -> None:
        if lo >= hi:
            return
        k = (lo + hi - 1) // 2
        left = (lo - 1, k - lo + 1) if lo > 0 else None
        right = (hi, hi - k) if hi < num_chunks else None
        deps = frozenset() if parent is None else frozenset({parent})
        nodes[k] = ScheduleNode(k, deps, left_source=left, right_source=right)
        descend(lo, k, k)
        descend(k + 1, hi, k)

    descend(0, num_chunks, None)
    return Schedule(strategy, tuple(nodes[k] for k in range(num_chunks)))


def steps(num_chunks: int, workers: int, strategy: str = "binary") -> int:
    """Wave count under greedy list scheduling with ``workers`` machines.

    A wave runs up to ``workers`` ready chunks; a chunk becomes ready once
    its dependencies have finished.
    """
    if workers < 1:
        raise ScheduleError("need at least one worker")
    schedule = make_schedule(num_chunks, strategy)
    remaining = schedule.dependency_map()
    done: set[int] = set()
    waves = 0
    while len(done) < num_chunks:
        ready = sorted(k for k, deps in remaining.items() if k not in done and deps <= done)
        if not ready:
            raise ScheduleError("dependency cycle in schedule")
        done.update(ready[:workers])
        waves += 1
    return waves
