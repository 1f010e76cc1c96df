"""Token swapping: realise a permutation of qubit states with adjacent SWAPs.

A permutation ``pi`` maps each position to the destination of the token
currently held there (pi[mu] = nu means the state on qubit mu must end on
qubit nu). ``min_swaps_exact`` finds a provably shortest SWAP sequence by
breadth-first search over arrangements; ``min_swaps_heuristic`` moves
tokens one at a time toward destinations chosen in an order that keeps
the unfixed subgraph connected.
"""
from __future__ import annotations

import heapq
from collections import deque

from .device import Device


class TokenSwapError(ValueError):
    pass


class TooLarge(TokenSwapError):
    """Device exceeds the exact-solver size limit."""


class InvalidEdge(TokenSwapError):
    pass


SwapSequence = list[tuple[int, int]]

DEFAULT_EXACT_LIMIT = 8


def _check_permutation(pi, n: int) -> tuple[int, ...]:
    pi = tuple(pi)
    if sorted(pi) != list(range(n)):
        raise TokenSwapError(f"not a permutation of {n} elements: {pi}")
    return pi


def target_arrangement(pi: tuple[int, ...]) -> tuple[int, ...]:
    """Position -> token array after realising pi from the identity."""
    arr = [0] * len(pi)
    for token, dest in enumerate(pi):
        arr[dest] = token
    return tuple(arr)


def apply_swaps(arrangement, seq: SwapSequence, device: Device | None = None) -> tuple[int, ...]:
    """Apply each swap (exchange of two positions) in order."""
    arr = list(arrangement)
    for u, v in seq:
        if device is not None and not device.has_edge(u, v):
            raise InvalidEdge(f"({u},{v}) is not a device edge")
        arr[u], arr[v] = arr[v], arr[u]
    return tuple(arr)


def min_swaps_exact(device: Device, pi, exact_limit: int = DEFAULT_EXACT_LIMIT) -> SwapSequence:
    """Shortest SWAP sequence realising pi, by BFS over the arrangement graph."""
    n = device.num_qubits
    if n > exact_limit:
        raise TooLarge(f"{n} qubits exceeds exact limit {exact_limit}")
    pi = _check_permutation(pi, n)
    start = tuple(range(n))
    goal = target_arrangement(pi)
    if start == goal:
        return []
    edges = sorted(device.edges)
    parent: dict[tuple[int, ...], tuple[tuple[int, ...], tuple[int, int]]] = {}
    seen = {start}
    queue = deque([start])
    while queue:
        arr = queue.popleft()
        for u, v in edges:
            nxt = list(arr)
            nxt[u], nxt[v] = nxt[v], nxt[u]
            nxt = tuple(nxt)
            if nxt in seen:
                continue
            seen.add(nxt)
            parent[nxt] = (arr, (u, v))
            if nxt == goal:
                seq: SwapSequence = []
                cur = nxt
                while cur != start:
                    cur, edge = parent[cur]
                    seq.append(edge)
                seq.reverse()
                return seq
            queue.append(nxt)
    raise TokenSwapError("arrangement graph exhausted without reaching target")


def exact_distances(device: Device, exact_limit: int = DEFAULT_EXACT_LIMIT) -> dict[tuple[int, ...], int]:
    """Swap distance from the identity to every arrangement (single BFS).

    Keys are position->token arrangements; the swap count for a permutation
    pi is ``exact_distances(dev)[target_arrangement(pi)]``.
    """
    n = device.num_qubits
    if n > exact_limit:
        raise TooLarge(f"{n} qubits exceeds exact limit {exact_limit}")
    edges = sorted(device.edges)
    start = tuple(range(n))
    dist = {start: 0}
    queue = deque([start])
    while queue:
        arr = queue.popleft()
        d = dist[arr]
        for u, v in edges:
            nxt = list(arr)
            nxt[u], nxt[v] = nxt[v], nxt[u]
            nxt = tuple(nxt)
            if nxt not in dist:
                dist[nxt] = d + 1
                queue.append(nxt)
    return dist


def _destination_order(device: Device) -> list[int]:
    """Processing order for destinations.

    Grow a sequence from a maximum-eccentricity seed by repeatedly appending
    the lowest-index neighbour of the chosen set, then reverse it. Fixing
    destinations in the reversed order keeps the unfixed subgraph connected.
    """
    n = device.num_qubits
    ecc = device.distance.max(axis=1)
    seed = min(range(n), key=lambda v: (-int(ecc[v]), v))
    adj = device.adjacency()
    seq = [seed]
    chosen = {seed}
    while len(seq) < n:
        frontier = sorted({v for u in chosen for v in adj[u]} - chosen)
        seq.append(frontier[0])
        chosen.add(frontier[0])
    seq.reverse()
    return seq


def min_swaps_heuristic(device: Device, pi) -> SwapSequence:
    """Near-optimal SWAP sequence: route tokens to destinations one by one.

    Each routed token follows a minimum-weight path in the unfixed
    subgraph; an edge mu->nu is weighed by how much the step helps the
    moving token minus how much it hurts the token it displaces, plus 2.
    Ties are broken by lexicographically smallest vertex sequence.
    """
    n = device.num_qubits
    pi = _check_permutation(pi, n)
    dist = device.distance
    adj = device.adjacency()
    arr = list(range(n))      # position -> token
    pos = list(range(n))      # token -> position
    unfixed = set(range(n))
    seq: SwapSequence = []

    for dest in _destination_order(device):
        token = arr[dest] if pi[arr[dest]] == dest else next(t for t in range(n) if pi[t] == dest)
        src = pos[token]
        if src != dest:
            path = _min_weight_path(src, dest, adj, dist, unfixed, arr, pi)
            for u, v in zip(path, path[1:]):
                seq.append((min(u, v), max(u, v)))
                ta, tb = arr[u], arr[v]
                arr[u], arr[v] = tb, ta
                pos[ta], pos[tb] = v, u
        unfixed.discard(dest)
    return seq


def _min_weight_path(src, dest, adj, dist, allowed, arr, pi):
    """Dijkstra from src to dest inside ``allowed``, lexicographic tie-break."""
    moving_dest = pi[arr[src]]
    best: dict[int, tuple[int, tuple[int, ...]]] = {}
    heap = [(0, (src,))]
    while heap:
        cost, path = heapq.heappop(heap)
        node = path[-1]
        if node == dest:
            return list(path)
        if node in best and best[node] <= (cost, path):
            continue
        best[node] = (cost, path)
        for nxt in adj[node]:
            if nxt not in allowed or nxt in path:
                continue
            displaced_dest = pi[arr[nxt]]
            gain = int(dist[nxt, moving_dest]) - int(dist[node, moving_dest])
            loss = int(dist[nxt, displaced_dest]) - int(dist[node, displaced_dest])
            w = gain - loss + 2
            heapq.heappush(heap, (cost + w, path + (nxt,)))
    raise TokenSwapError(f"no path from {src} to {dest} in unfixed subgraph")
