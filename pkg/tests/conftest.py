"""Shared reference instances and seeded random generators."""

import random

import pytest

from latfix import SmpInstance, WeightedDigraph

# 4x4 matching instance used throughout (0-based ids; man 0's favourite is
# woman 3, etc.).  Its proposer-optimal solution is G = (1, 2, 2, 1).
REF4_MPREF = [[3, 0, 1, 2], [1, 2, 0, 3], [2, 0, 3, 1], [1, 3, 2, 0]]
REF4_WPREF = [[3, 0, 2, 1], [0, 3, 1, 2], [0, 1, 3, 2], [2, 0, 3, 1]]

# regret(man 1) <= regret(man 0), as one precedence edge per rank
REF4_REGRET_EDGES = [((0, r), (1, r)) for r in range(1, 5)]

# 5-vertex graph whose two-round cost evolution is pinned in the tests:
# (0,0,0,0,0) -> (0,9,2,3,2) -> (0,9,2,8,7)
GRAPH5_EDGES = [(0, 1, 9), (0, 2, 2), (1, 3, 3), (2, 3, 6), (4, 3, 8), (1, 4, 2), (2, 4, 5)]


@pytest.fixture
def ref4():
    return SmpInstance(REF4_MPREF, REF4_WPREF)


@pytest.fixture
def ref4_regret():
    return SmpInstance(REF4_MPREF, REF4_WPREF, cross_edges=REF4_REGRET_EDGES)


@pytest.fixture
def graph5():
    return WeightedDigraph(5, GRAPH5_EDGES)


def random_smp(rng: random.Random, n: int) -> SmpInstance:
    mpref = [rng.sample(range(n), n) for _ in range(n)]
    wpref = [rng.sample(range(n), n) for _ in range(n)]
    return SmpInstance(mpref, wpref)


def random_reachable_digraph(rng: random.Random, n: int, wmax: int = 20) -> WeightedDigraph:
    """Random digraph where every vertex is reachable from the source."""
    edges = set()
    order = list(range(1, n))
    rng.shuffle(order)
    reached = [0]
    for j in order:  # random arborescence guarantees reachability
        i = rng.choice(reached)
        edges.add((i, j))
        reached.append(j)
    for _ in range(rng.randint(0, 2 * n)):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            edges.add((i, j))
    return WeightedDigraph(n, [(i, j, rng.randint(1, wmax)) for i, j in sorted(edges)])


def random_dag_jobs(rng: random.Random, n: int, tmax: int = 9):
    t = [rng.randint(1, tmax) for _ in range(n)]
    pre = [set() for _ in range(n)]
    for j in range(n):
        for i in range(j):  # edges respect index order, hence acyclic
            if rng.random() < 0.3:
                pre[j].add(i)
    return t, pre


def random_auction(rng: random.Random, n: int, vmax: int = 6):
    return [[rng.randint(0, vmax) for _ in range(n)] for _ in range(n)]
