import random

import pytest

from latfix import (
    AuctionInstance,
    EventSpaceTooLarge,
    JobInstance,
    SmpInstance,
    TooManySolutions,
    build_slice,
    clearing_problem,
    count_solutions,
    enumerate_solutions,
    job_problem,
    join_irreducible,
    proposal_vector,
    smp_problem,
    solve,
)
from latfix.engine import LatticeProblem, feasible_grid_points
from latfix.oracles import oracle_clearing_prices, oracle_stable_matchings
from tests.conftest import random_smp


def test_reference_join_irreducibles(ref4):
    base = smp_problem(ref4)
    # pinning man 0 at his 2nd choice (woman 0) and 3rd choice (woman 1)
    assert join_irreducible(base, (0, 2)).vector == (2, 2, 3, 1)
    assert join_irreducible(base, (0, 3)).vector == (3, 2, 3, 4)
    # level 0 is vacuous: the base optimum comes back
    assert join_irreducible(base, (2, 0)).vector == solve(base).solution


def test_reference_slice_and_enumeration(ref4):
    base = smp_problem(ref4)
    poset = build_slice(base)
    assert poset.bottom == (1, 2, 2, 1)
    assert poset.elements == ((2, 2, 3, 1), (3, 2, 3, 4))
    sols = enumerate_solutions(poset, base)
    expected = sorted(proposal_vector(ref4, m) for m in oracle_stable_matchings(ref4))
    assert sols == expected
    assert count_solutions(poset) == len(expected) == 3
    assert sols[0] == solve(base).solution
    top_join = tuple(max(col) for col in zip(poset.bottom, *poset.elements))
    assert sols[-1] == top_join


def test_single_pair_slice():
    inst = SmpInstance([[0]], [[0]])
    base = smp_problem(inst)
    poset = build_slice(base)
    assert poset.elements == ()
    assert enumerate_solutions(poset, base) == [(1,)]
    assert count_solutions(poset) == 1


def test_random_instances_enumerate_exactly_the_stable_matchings():
    rng = random.Random(19)
    for _ in range(40):
        inst = random_smp(rng, rng.randint(1, 6))
        base = smp_problem(inst)
        sols = enumerate_solutions(build_slice(base), base)
        expected = sorted(proposal_vector(inst, m) for m in oracle_stable_matchings(inst))
        assert sols == expected
        assert not base.forbidden_indices(sols[0])


def test_constrained_slice_matches_filtered_oracle(ref4_regret):
    base = smp_problem(ref4_regret)
    sols = enumerate_solutions(build_slice(base), base)
    expected = sorted(
        proposal_vector(ref4_regret, m) for m in oracle_stable_matchings(ref4_regret)
    )
    assert sols == expected
    assert all(g[1] <= g[0] for g in sols)


def test_infeasible_base_yields_empty_slice():
    mpref = [[0, 1], [1, 0]]
    wpref = [[0, 1], [1, 0]]
    # forcing both women onto man 0 is unsatisfiable in a perfect matching
    inst = SmpInstance(mpref, wpref, forced_pairs=[(0, 0), (0, 1)])
    base = smp_problem(inst)
    poset = build_slice(base)
    assert poset.bottom is None
    assert poset.elements == ()
    assert enumerate_solutions(poset, base) == []
    assert count_solutions(poset) == 0


def test_clearing_slice_matches_grid_enumeration():
    rng = random.Random(21)
    for _ in range(15):
        inst = AuctionInstance([[rng.randint(0, 4) for _ in range(2)] for _ in range(2)])
        base = clearing_problem(inst)
        sols = enumerate_solutions(build_slice(base), base)
        assert sols == oracle_clearing_prices(inst)


def test_job_slice_matches_grid_enumeration():
    inst = JobInstance([1, 2], [set(), {0}])
    base = job_problem(inst)
    sols = enumerate_solutions(build_slice(base), base)
    assert sols == sorted(feasible_grid_points(base))


def test_hasse_edges_are_covers(ref4):
    poset = build_slice(smp_problem(ref4))
    assert poset.hasse_edges() == [(0, 1)]  # the two elements form a chain


def test_event_space_guard():
    inst = JobInstance([1] * 4, [set()] * 4)
    base = job_problem(inst)  # tops are 4 * 1 = 4 each, 16 events total
    with pytest.raises(EventSpaceTooLarge):
        build_slice(base, max_events=3)


def test_non_integral_tops_rejected():
    problem = LatticeProblem(
        n=1, top=(1.5,), forbidden_indices=lambda g: set(), advance=lambda g, i: g[i] + 1
    )
    with pytest.raises(ValueError):
        build_slice(problem)


def test_too_many_solutions_guard():
    # an antichain of k pairwise-incomparable vectors has 2^k down-sets
    inst = JobInstance([1, 1, 1], [set(), set(), set()])
    base = job_problem(inst)
    poset = build_slice(base)
    count = count_solutions(poset)
    assert count > 4
    with pytest.raises(TooManySolutions) as exc:
        enumerate_solutions(poset, base, max_solutions=4)
    assert exc.value.count == count
