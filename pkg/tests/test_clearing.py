import random
from itertools import combinations

import pytest

from latfix import (
    AtMost,
    AuctionInstance,
    WithinDelta,
    check_least,
    clearing_problem,
    demand_graph,
    minimal_overdemanded,
    solve,
)
from latfix.clearing import _is_overdemanded, clearing_matching, demand_sets
from latfix.oracles import oracle_clearing_prices
from tests.conftest import random_auction


def test_demand_graph_examples():
    inst = AuctionInstance([[4, 1], [3, 2]])
    assert demand_graph(inst, (0, 0)) == {(0, 0), (0, 1)}
    assert demand_graph(inst, (1, 0)) == {(0, 0), (0, 1), (1, 1)}  # bidder 1 now tied
    diag = AuctionInstance([[1, 0], [0, 1]])
    assert demand_graph(diag, (0, 0)) == {(0, 0), (1, 1)}


def test_every_bidder_demands_something():
    rng = random.Random(2)
    for _ in range(30):
        inst = AuctionInstance(random_auction(rng, rng.randint(1, 4)))
        g = tuple(rng.randint(0, 3) for _ in range(inst.n))
        demands = demand_sets(inst, g)
        assert all(d for d in demands)


def test_minimal_overdemanded_examples():
    assert minimal_overdemanded(AuctionInstance([[4, 1], [3, 2]]), (0, 0)) == {0}
    assert minimal_overdemanded(AuctionInstance([[1, 0], [0, 1]]), (0, 0)) is None
    assert minimal_overdemanded(AuctionInstance([[5, 5], [5, 5]]), (0, 0)) is None


def test_minimal_set_has_no_overdemanded_proper_subset():
    rng = random.Random(8)
    found = 0
    for _ in range(80):
        inst = AuctionInstance(random_auction(rng, rng.randint(2, 4)))
        g = tuple(rng.randint(0, 2) for _ in range(inst.n))
        j = minimal_overdemanded(inst, g)
        if j is None:
            continue
        found += 1
        demands = demand_sets(inst, g)
        assert _is_overdemanded(tuple(sorted(j)), demands)
        for size in range(1, len(j)):
            for subset in combinations(sorted(j), size):
                assert not _is_overdemanded(subset, demands)
    assert found > 5


def test_clearing_examples():
    res = solve(clearing_problem(AuctionInstance([[4, 1], [3, 2]])))
    assert res.solution == (1, 0)
    assert solve(clearing_problem(AuctionInstance([[1, 0], [0, 1]]))).solution == (0, 0)
    assert solve(clearing_problem(AuctionInstance([[0, 0], [0, 0]]))).solution == (0, 0)


def test_solution_always_admits_perfect_matching():
    rng = random.Random(12)
    for _ in range(50):
        inst = AuctionInstance(random_auction(rng, rng.randint(1, 4)))
        res = solve(clearing_problem(inst))
        assert res.feasible
        assignment = clearing_matching(inst, res.solution)
        assert assignment is not None
        assert sorted(assignment) == list(range(inst.n))


def test_matches_grid_oracle_minimum():
    rng = random.Random(14)
    for _ in range(60):
        inst = AuctionInstance(random_auction(rng, rng.randint(1, 4)))
        answers = oracle_clearing_prices(inst)
        floor = tuple(min(a[i] for a in answers) for i in range(inst.n))
        assert solve(clearing_problem(inst)).solution == floor


def test_accelerated_mode_equals_unit_mode():
    rng = random.Random(16)
    for _ in range(60):
        inst = AuctionInstance(random_auction(rng, rng.randint(1, 4)))
        unit = solve(clearing_problem(inst))
        fast = solve(clearing_problem(inst, accelerated=True))
        assert unit.solution == fast.solution
        assert fast.rounds <= unit.rounds


def test_constrained_clearing_against_grid_filter():
    # G[0] <= G[1] contradicts every clearing vector of this market (bidder 1
    # strictly prefers item 0 whenever it is no pricier than item 1), so the
    # constrained problem is infeasible.
    inst = AuctionInstance([[4, 1], [3, 2]])
    answers = oracle_clearing_prices(inst)
    assert not [a for a in answers if a[0] <= a[1]]
    res = solve(clearing_problem(inst, [AtMost(0, 1)]))
    assert not res.feasible

    # the reverse ordering is satisfiable and equals the filtered minimum
    filtered = [a for a in answers if a[1] <= a[0]]
    floor = tuple(min(a[i] for a in filtered) for i in range(2))
    res = solve(clearing_problem(inst, [AtMost(1, 0)]))
    assert res.solution == floor


def test_constrained_clearing_within_delta():
    rng = random.Random(18)
    checked = 0
    for _ in range(40):
        inst = AuctionInstance(random_auction(rng, 2, vmax=5))
        delta = rng.randint(0, 2)
        answers = oracle_clearing_prices(inst)
        filtered = [a for a in answers if abs(a[0] - a[1]) <= delta]
        res = solve(clearing_problem(inst, [WithinDelta(0, 1, delta)]))
        if not filtered:
            assert not res.feasible
        else:
            checked += 1
            floor = tuple(min(a[i] for a in filtered) for i in range(2))
            assert res.solution == floor
    assert checked > 5


def test_prices_never_decrease_across_rounds():
    inst = AuctionInstance([[6, 1, 0], [5, 2, 0], [4, 3, 1]])
    res = solve(clearing_problem(inst), trace=True)
    states = [(0, 0, 0)] + [rec.state for rec in res.trace]
    for before, after in zip(states, states[1:]):
        assert all(b <= a for b, a in zip(before, after))


def test_least_vector_property():
    inst = AuctionInstance([[4, 1], [3, 2]])
    problem = clearing_problem(inst)
    res = solve(problem)
    assert check_least(problem, res.solution)


def test_valuation_validation():
    with pytest.raises(ValueError):
        AuctionInstance([])
    with pytest.raises(ValueError):
        AuctionInstance([[1, 2]])
    with pytest.raises(ValueError):
        AuctionInstance([[1, -2], [0, 1]])
    with pytest.raises(ValueError):
        AuctionInstance([[0.5, 1], [1, 0]])
