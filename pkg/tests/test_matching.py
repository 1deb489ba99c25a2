import random

import pytest

from latfix import (
    CyclicPrecedence,
    SmpInstance,
    check_least,
    frontier,
    is_stable,
    matching_of,
    proposal_vector,
    smp_problem,
    solve,
)
from latfix.matching import _RejectionTracker
from latfix.oracles import oracle_stable_matchings, reference_gale_shapley
from tests.conftest import REF4_MPREF, REF4_REGRET_EDGES, REF4_WPREF, random_smp


def test_reference_instance_proposer_optimal(ref4):
    res = solve(smp_problem(ref4))
    assert res.solution == (1, 2, 2, 1)
    # man 0 gets woman 3, man 1 woman 2, man 2 woman 0, man 3 woman 1
    assert matching_of(ref4, res.solution) == (3, 2, 0, 1)
    assert min(oracle_stable_matchings(ref4), key=lambda m: proposal_vector(ref4, m)) == (3, 2, 0, 1)


def test_single_pair():
    inst = SmpInstance([[0]], [[0]])
    assert solve(smp_problem(inst)).solution == (1,)


def test_frontier_examples():
    assert frontier([2, 1, 2, 1]) == {(0, 2), (1, 1), (2, 2), (3, 1)}
    assert frontier([0, 0, 0, 0]) == set()
    assert frontier([4, 4, 4, 4]) == {(j, 4) for j in range(4)}


def test_is_stable_on_known_matchings(ref4):
    assert is_stable(ref4, (3, 2, 0, 1))  # proposer-optimal
    assert is_stable(ref4, (1, 2, 3, 0))  # proposer-pessimal
    assert not is_stable(ref4, (0, 1, 2, 3))
    with pytest.raises(ValueError):
        is_stable(ref4, (0, 0, 1, 2))


def test_matching_of_requires_full_proposals(ref4):
    with pytest.raises(ValueError):
        matching_of(ref4, (1, 0, 1, 1))


def test_matches_reference_deferred_acceptance_on_random_instances():
    rng = random.Random(5)
    for _ in range(120):
        inst = random_smp(rng, rng.randint(1, 8))
        res = solve(smp_problem(inst))
        assert res.feasible
        got = matching_of(inst, res.solution)
        assert got == reference_gale_shapley(inst.mpref, inst.wpref)
        assert is_stable(inst, got)


def test_total_steps_bounded_by_n_squared():
    rng = random.Random(6)
    for _ in range(30):
        n = rng.randint(2, 8)
        inst = random_smp(rng, n)
        res = solve(smp_problem(inst))
        assert res.steps <= n * n


def test_stable_vectors_closed_under_meet_and_join():
    rng = random.Random(9)
    for _ in range(40):
        inst = random_smp(rng, rng.randint(2, 6))
        vectors = [proposal_vector(inst, m) for m in oracle_stable_matchings(inst)]
        for v in vectors:
            for w in vectors:
                meet = tuple(min(a, b) for a, b in zip(v, w))
                join = tuple(max(a, b) for a, b in zip(v, w))
                assert meet in vectors
                assert join in vectors


def test_regret_constraint_on_reference_instance(ref4_regret):
    res = solve(smp_problem(ref4_regret))
    assert res.solution == (2, 2, 3, 1)
    assert matching_of(ref4_regret, res.solution) == (0, 2, 3, 1)
    assert res.solution[1] <= res.solution[0]  # the encoded regret order
    # the oracle's minimum over constrained stable matchings agrees
    best = min(
        (proposal_vector(ref4_regret, m) for m in oracle_stable_matchings(ref4_regret)),
    )
    assert res.solution == best


def test_cross_edges_respected_on_random_instances():
    rng = random.Random(13)
    for _ in range(60):
        n = rng.randint(2, 6)
        inst = random_smp(rng, n)
        a, b = rng.sample(range(n), 2)
        edges = [((a, r), (b, r)) for r in range(1, n + 1)]  # regret(b) <= regret(a)
        constrained = SmpInstance(inst.mpref, inst.wpref, cross_edges=edges)
        res = solve(smp_problem(constrained))
        expected = sorted(
            proposal_vector(constrained, m) for m in oracle_stable_matchings(constrained)
        )
        if not expected:
            assert not res.feasible
        else:
            assert res.feasible
            assert res.solution == min(expected)
            g = res.solution
            assert g[b] <= g[a]
            assert is_stable(constrained, matching_of(constrained, g))


def test_forbidden_and_forced_pairs_match_oracle_filtering():
    rng = random.Random(17)
    for _ in range(60):
        n = rng.randint(2, 6)
        base = random_smp(rng, n)
        forbidden = [(rng.randrange(n), rng.randrange(n))]
        forced = [(rng.randrange(n), rng.randrange(n))] if rng.random() < 0.5 else []
        inst = SmpInstance(
            base.mpref, base.wpref, forbidden_pairs=forbidden, forced_pairs=forced
        )
        res = solve(smp_problem(inst))
        stable = oracle_stable_matchings(inst)
        if not stable:
            assert not res.feasible
        else:
            assert res.feasible
            assert res.solution == min(proposal_vector(inst, m) for m in stable)


def test_least_vector_property_on_small_instances(ref4):
    problem = smp_problem(ref4)
    res = solve(problem)
    assert check_least(problem, res.solution)


def test_cyclic_cross_edges_rejected():
    mpref = [[0, 1], [1, 0]]
    wpref = [[0, 1], [1, 0]]
    with pytest.raises(CyclicPrecedence):
        SmpInstance(mpref, wpref, cross_edges=[((0, 1), (1, 1)), ((1, 1), (0, 1))])
    # a cycle through the chains: (0,2) before (1,1), (1,1) before (0,1)
    with pytest.raises(CyclicPrecedence):
        SmpInstance(mpref, wpref, cross_edges=[((0, 2), (1, 1)), ((1, 1), (0, 1))])


def test_transitive_closure_triggers_chained_constraints_in_one_pass():
    n = 3
    mpref = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
    wpref = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
    # (0,2) before (1,2) and (1,2) before (2,2): closure implies (0,2) before (2,2)
    inst = SmpInstance(mpref, wpref, cross_edges=[((0, 2), (1, 2)), ((1, 2), (2, 2))])
    tracker = _RejectionTracker(inst)
    forbidden = tracker.query((1, 1, 2))
    assert {0, 1} <= forbidden  # both source men caught in the same round


def test_tracker_incremental_agrees_with_fresh_evaluation():
    rng = random.Random(23)
    for _ in range(20):
        n = rng.randint(2, 6)
        inst = random_smp(rng, n)
        shared = _RejectionTracker(inst)
        g = [0] * n
        for _ in range(15):
            fresh = _RejectionTracker(inst)
            assert shared.query(tuple(g)) == fresh.query(tuple(g))
            j = rng.randrange(n)
            if g[j] < n:
                g[j] += 1
        # non-monotone probe forces a rebuild and must still agree
        probe = tuple(rng.randint(0, n) for _ in range(n))
        assert shared.query(probe) == _RejectionTracker(inst).query(probe)


def test_instance_validation():
    with pytest.raises(ValueError):
        SmpInstance([[0, 1]], [[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        SmpInstance([[0, 0], [1, 0]], [[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        SmpInstance([[0, 1], [1, 0]], [[0, 1], [1, 0]], cross_edges=[((0, 1), (0, 2))])
    with pytest.raises(ValueError):
        SmpInstance([[0, 1], [1, 0]], [[0, 1], [1, 0]], cross_edges=[((0, 5), (1, 1))])
    with pytest.raises(ValueError):
        SmpInstance([[0, 1], [1, 0]], [[0, 1], [1, 0]], forbidden_pairs=[(0, 9)])
