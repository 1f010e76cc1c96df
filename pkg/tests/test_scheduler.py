import math

import pytest

from quroute.scheduler import Schedule, ScheduleError, make_schedule, steps


def test_independent_no_coupling():
    sched = make_schedule(5, "independent")
    assert all(not n.dependencies for n in sched.nodes)
    assert all(n.left_source is None and n.right_source is None for n in sched.nodes)


def test_sequential_chain():
    sched = make_schedule(4, "sequential")
    assert [sorted(n.dependencies) for n in sched.nodes] == [[], [0], [1], [2]]
    assert sched.nodes[2].left_source == (1, 1)
    assert sched.nodes[0].left_source is None


def test_single_chunk_trivial():
    for strategy in ("independent", "sequential", "binary"):
        sched = make_schedule(1, strategy)
        assert len(sched.nodes) == 1 and not sched.nodes[0].dependencies


def test_binary_q15_tree_shape():
    sched = make_schedule(15, "binary")
    root = [n.chunk for n in sched.nodes if not n.dependencies]
    assert root == [7]
    depth1 = sorted(n.chunk for n in sched.nodes if n.dependencies == frozenset({7}))
    assert depth1 == [3, 11]


def test_binary_every_nonroot_single_dependency():
    for q in (2, 5, 16, 31, 64):
        sched = make_schedule(q, "binary")
        assert sorted(n.chunk for n in sched.nodes) == list(range(q))
        roots = [n for n in sched.nodes if not n.dependencies]
        assert len(roots) == 1
        assert all(len(n.dependencies) == 1 for n in sched.nodes if n not in roots)


def test_binary_boundary_sources_solved_before_consumer():
    sched = make_schedule(13, "binary")
    order: dict[int, int] = {}

    def depth(k):
        if k in order:
            return order[k]
        deps = sched.nodes[k].dependencies
        order[k] = 0 if not deps else 1 + depth(next(iter(deps)))
        return order[k]

    for n in sched.nodes:
        for side in (n.left_source, n.right_source):
            if side is not None:
                src, dist = side
                assert dist >= 1
                assert depth(src) < depth(n.chunk)


def test_binary_boundary_distances():
    sched = make_schedule(15, "binary")
    # chunk 3 covers [0, 7): left neighbour is absent, right source is 7 at distance 4
    assert sched.nodes[3].left_source is None
    assert sched.nodes[3].right_source == (7, 4)
    # chunk 11 covers [8, 15): left source 7 at distance 4, no right neighbour
    assert sched.nodes[11].left_source == (7, 4)
    assert sched.nodes[11].right_source is None


def test_steps_formulas():
    assert steps(28, 4, "independent") == 7
    assert steps(28, 4, "sequential") == 28
    assert steps(15, 1, "binary") == 15
    assert steps(15, 4, "binary") <= 8


def test_steps_bounds_exhaustive():
    for q in range(1, 65):
        for i in range(1, 9):
            assert steps(q, i, "independent") == math.ceil(q / i)
            assert steps(q, i, "sequential") == q
            assert steps(q, i, "binary") < q / i + math.floor(math.log2(q)) + 2


def test_errors():
    with pytest.raises(ScheduleError):
        make_schedule(0, "binary")
    with pytest.raises(ScheduleError):
        make_schedule(3, "mystery")
    with pytest.raises(ScheduleError):
        steps(3, 0, "binary")
