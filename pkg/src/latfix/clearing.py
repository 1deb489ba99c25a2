"""Minimum market clearing prices via over-demand detection, with constraints.

A price vector clears the market when the demand graph (each bidder joined
to the items maximizing value minus price) has a perfect matching.  While it
does not, Hall's condition fails: some item set J is demanded exclusively by
strictly more bidders than |J|.  Raising the prices of a *minimal* such set
is the only way any feasible price vector above the current one can exist,
so those items advance each round.  Valuations (and therefore prices) are
integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence, Set, Tuple

from .constraints import Constraint, conjoin
from .engine import LatticeProblem

#: subset minimization enumerates subsets of the over-demanded seed set
MINIMIZE_LIMIT = 16


class OverdemandSearchTooLarge(ValueError):
    """Seed over-demanded set too large for exhaustive subset minimization."""


@dataclass(frozen=True)
class AuctionInstance:
    """Square market: valuations[b][i] = bidder b's integer value for item i."""

    valuations: tuple

    def __init__(self, valuations):
        v = tuple(tuple(row) for row in valuations)
        n = len(v)
        if n == 0:
            raise ValueError("need at least one bidder and item")
        for row in v:
            if len(row) != n:
                raise ValueError("valuation matrix must be square")
            for x in row:
                if x != int(x) or x < 0:
                    raise ValueError(f"valuations must be non-negative integers, got {x!r}")
        object.__setattr__(self, "valuations", tuple(tuple(int(x) for x in row) for row in v))

    @property
    def n(self) -> int:
        return len(self.valuations)

    @property
    def top(self) -> tuple:
        v = self.valuations
        return tuple(max(v[b][i] for b in range(self.n)) for i in range(self.n))


def demand_sets(inst: AuctionInstance, g: Sequence) -> Tuple[tuple, ...]:
    """Per bidder, the sorted tuple of payoff-maximizing items at prices g."""
    n = inst.n
    out = []
    for b in range(n):
        payoffs = [inst.valuations[b][i] - g[i] for i in range(n)]
        best = max(payoffs)
        out.append(tuple(i for i in range(n) if payoffs[i] == best))
    return tuple(out)


def demand_graph(inst: AuctionInstance, g: Sequence) -> Set[Tuple[int, int]]:
    """Edge set {(item, bidder)} of the demand graph at prices g."""
    return {(i, b) for b, items in enumerate(demand_sets(inst, g)) for i in items}


def _max_matching(demands: Sequence[tuple], n: int):
    """Maximum bidder-to-item matching by augmenting paths (deterministic)."""
    item_owner = [-1] * n  # item -> bidder
    bidder_item = [-1] * n

    def augment(b, visited):
        for i in demands[b]:
            if i not in visited:
                visited.add(i)
                if item_owner[i] == -1 or augment(item_owner[i], visited):
                    item_owner[i] = b
                    bidder_item[b] = i
                    return True
        return False

    for b in range(n):
        augment(b, set())
    return item_owner, bidder_item


def _is_overdemanded(subset: tuple, demands: Sequence[tuple]) -> bool:
    """Hall-count test: more bidders demand exclusively within ``subset``
    than it has items."""
    inside = set(subset)
    exclusive = sum(1 for d in demands if inside.issuperset(d))
    return exclusive > len(subset)


def minimal_overdemanded(inst: AuctionInstance, g: Sequence) -> Optional[Set[int]]:
    """A minimal over-demanded item set at prices g, or None if none exists.

    None means the demand graph has a perfect matching, i.e. g clears the
    market.  Otherwise the alternating-path region around the smallest
    unmatched bidder yields an over-demanded seed set, which is minimized by
    exhaustive subset search in ascending size order (the smallest subset
    passing the Hall-count test has no over-demanded proper subset).
    """
    n = inst.n
    demands = demand_sets(inst, g)
    item_owner, bidder_item = _max_matching(demands, n)
    unmatched = [b for b in range(n) if bidder_item[b] == -1]
    if not unmatched:
        return None

    seed_bidders = {unmatched[0]}
    items: Set[int] = set()
    queue = [unmatched[0]]
    while queue:
        b = queue.pop()
        for i in demands[b]:
            if i not in items:
                items.add(i)
                owner = item_owner[i]
                if owner != -1 and owner not in seed_bidders:
                    seed_bidders.add(owner)
                    queue.append(owner)

    if len(items) > MINIMIZE_LIMIT:
        raise OverdemandSearchTooLarge(
            f"over-demanded seed set has {len(items)} items (limit {MINIMIZE_LIMIT})"
        )
    ordered = sorted(items)
    for size in range(1, len(ordered)):
        for subset in combinations(ordered, size):
            if _is_overdemanded(subset, demands):
                return set(subset)
    return items


def clearing_problem(
    inst: AuctionInstance,
    cs: Sequence[Constraint] = (),
    accelerated: bool = False,
) -> LatticeProblem:
    """Price problem whose least feasible vector is the minimum clearing price.

    Unit mode raises every item of the selected minimal over-demanded set by
    one price unit per round.  Accelerated mode raises the whole set
    uniformly by the largest amount that provably cannot overshoot: the
    smallest payoff gap to an outside item among bidders demanding entirely
    within the set (the set stays minimal over-demanded under any smaller
    uniform raise, so unit reasoning applies step by step).
    """
    n = inst.n
    cache = {"g": None, "raise_set": None, "amount": None}

    def analyze(g):
        if cache["g"] == g:
            return cache["raise_set"], cache["amount"]
        raise_set = minimal_overdemanded(inst, g)
        amount = 1
        if raise_set is not None and accelerated:
            demands = demand_sets(inst, g)
            gaps = []
            for b in range(n):
                if raise_set.issuperset(demands[b]):
                    best = inst.valuations[b][demands[b][0]] - g[demands[b][0]]
                    outside = max(
                        inst.valuations[b][i] - g[i] for i in range(n) if i not in raise_set
                    )
                    gaps.append(best - outside)
            amount = max(1, min(gaps)) if gaps else 1
        cache["g"] = g
        cache["raise_set"] = raise_set
        cache["amount"] = amount
        return raise_set, amount

    def forbidden_indices(g):
        raise_set, _ = analyze(g)
        return set() if raise_set is None else set(raise_set)

    def advance(g, j):
        _, amount = analyze(g)
        return g[j] + amount

    base = LatticeProblem(
        n=n,
        top=inst.top,
        forbidden_indices=forbidden_indices,
        advance=advance,
        min_step=1,
    )
    return conjoin(base, cs)


def clearing_matching(inst: AuctionInstance, g: Sequence) -> Optional[tuple]:
    """item -> bidder assignment at clearing prices g, or None if not clearing."""
    item_owner, bidder_item = _max_matching(demand_sets(inst, g), inst.n)
    if any(b == -1 for b in bidder_item):
        return None
    return tuple(item_owner)
