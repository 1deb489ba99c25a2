"""Independent brute-force references used to validate every solver.

Nothing here may import the solver modules: answers come from permutation
or grid enumeration (plus one textbook deferred-acceptance routine and one
textbook relaxation routine), deliberately naive so they can be trusted.
Instance arguments are duck-typed: any object with the documented attributes
works.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from itertools import permutations, product
from typing import List, Optional, Sequence, Set, Tuple

import numpy as np

ENUM_LIMIT_MATCHING = 8  # n! permutation scans
ENUM_LIMIT_ITEMS = 4  # price grid dimensions
ENUM_LIMIT_PRICE = 8  # price grid extent per dimension
GRID_LIMIT = 10**7


class TooLarge(ValueError):
    """Instance exceeds the brute-force enumeration bounds."""


@dataclass(frozen=True)
class OracleReport:
    """Reference answers plus the work spent producing them."""

    problem: str
    answers: tuple
    enumerated: int
    elapsed: float


def timed_report(problem: str, answers, enumerated: int, started: float) -> OracleReport:
    return OracleReport(problem, tuple(answers), enumerated, time.perf_counter() - started)


def reference_gale_shapley(mpref, wpref) -> tuple:
    """Textbook deferred acceptance; returns the proposer-optimal matching."""
    n = len(mpref)
    rank = [[0] * n for _ in range(n)]
    for z in range(n):
        for pos, m in enumerate(wpref[z]):
            rank[z][m] = pos
    next_choice = [0] * n
    holder = [-1] * n  # per woman
    free = list(range(n - 1, -1, -1))
    while free:
        m = free.pop()
        w = mpref[m][next_choice[m]]
        next_choice[m] += 1
        cur = holder[w]
        if cur == -1:
            holder[w] = m
        elif rank[w][m] < rank[w][cur]:
            holder[w] = m
            free.append(cur)
        else:
            free.append(m)
    matching = [0] * n
    for w, m in enumerate(holder):
        matching[m] = w
    return tuple(matching)


def _has_blocking_pair(mpref, wpref, matching) -> bool:
    n = len(mpref)
    wrank = [[0] * n for _ in range(n)]
    for z in range(n):
        for pos, m in enumerate(wpref[z]):
            wrank[z][m] = pos
    partner_of_woman = [0] * n
    for m, w in enumerate(matching):
        partner_of_woman[w] = m
    for m in range(n):
        for w in mpref[m]:
            if w == matching[m]:
                break
            if wrank[w][m] < wrank[w][partner_of_woman[w]]:
                return True
    return False


def oracle_stable_matchings(inst) -> Set[tuple]:
    """All stable matchings of an instance, by scanning every permutation.

    Honors the instance's cross edges (via the implied rank-vector ordering)
    and restricted pairs.  Matchings are woman-per-man tuples, 0-based.
    """
    n = inst.n
    if n > ENUM_LIMIT_MATCHING:
        raise TooLarge(f"n = {n} exceeds permutation-scan bound {ENUM_LIMIT_MATCHING}")
    mpref, wpref = inst.mpref, inst.wpref
    mrank = [[0] * n for _ in range(n)]
    for m in range(n):
        for pos, w in enumerate(mpref[m]):
            mrank[m][w] = pos + 1
    cross = tuple(getattr(inst, "cross_edges", ()))
    forbidden = set(getattr(inst, "forbidden_pairs", ()))
    forced = set(getattr(inst, "forced_pairs", ()))
    out = set()
    for matching in permutations(range(n)):
        if _has_blocking_pair(mpref, wpref, matching):
            continue
        if any(matching[m] == w for m, w in forbidden):
            continue
        if any(matching[m] != w for m, w in forced):
            continue
        g = [mrank[m][matching[m]] for m in range(n)]
        ok = True
        for e in cross:
            (sm, sr), (dm, dr) = e.src, e.dst
            if g[dm] >= dr and g[sm] < sr:
                ok = False
                break
        if ok:
            out.add(tuple(matching))
    return out


def oracle_bellman_ford(graph) -> Tuple[tuple, frozenset]:
    """Exact single-source distances by |V|-1 relaxation sweeps.

    Returns (distances, unreachable) where unreachable vertices carry inf.
    """
    n, edges = graph.n, graph.edges
    dist = [math.inf] * n
    dist[0] = 0
    for _ in range(n - 1):
        changed = False
        for i, j, w in edges:
            if dist[i] + w < dist[j]:
                dist[j] = dist[i] + w
                changed = True
        if not changed:
            break
    unreachable = frozenset(j for j in range(n) if dist[j] == math.inf)
    return tuple(dist), unreachable


def oracle_clearing_prices(inst) -> List[tuple]:
    """All integral clearing price vectors at or below the max-valuation tops.

    Grid enumeration with a vectorized perfect-matching test per grid point.
    Self-checks meet-closure of the answer set: the component-wise minimum
    over all clearing vectors must itself clear the market.
    """
    v = np.asarray(inst.valuations, dtype=np.int64)
    n = v.shape[0]
    if n > ENUM_LIMIT_ITEMS:
        raise TooLarge(f"n = {n} exceeds grid bound {ENUM_LIMIT_ITEMS}")
    tops = v.max(axis=0)
    if tops.max(initial=0) > ENUM_LIMIT_PRICE:
        raise TooLarge(f"top price {tops.max()} exceeds grid bound {ENUM_LIMIT_PRICE}")

    axes = [np.arange(t + 1) for t in tops]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n)
    payoffs = v[None, :, :] - grid[:, None, :]  # (points, bidder, item)
    demand = payoffs == payoffs.max(axis=2, keepdims=True)
    clears = np.zeros(len(grid), dtype=bool)
    for perm in permutations(range(n)):
        cols = np.asarray(perm)
        clears |= demand[:, np.arange(n), cols].all(axis=1)
    answers = sorted(tuple(int(x) for x in row) for row in grid[clears])
    if answers:
        floor = tuple(min(a[i] for a in answers) for i in range(n))
        if floor not in set(answers):
            raise AssertionError("clearing set is not meet-closed; enumeration is broken")
    return answers


def oracle_job_times(t: Sequence, pre: Sequence) -> Optional[tuple]:
    """Longest-path completion times over the prerequisite DAG; None on a cycle."""
    n = len(t)
    indeg = [0] * n
    succ = [[] for _ in range(n)]
    for j in range(n):
        for i in pre[j]:
            indeg[j] += 1
            succ[i].append(j)
    order = [j for j in range(n) if indeg[j] == 0]
    finish = [None] * n
    for j in order:
        finish[j] = t[j]
    head = 0
    while head < len(order):
        i = order[head]
        head += 1
        for j in succ[i]:
            cand = finish[i] + t[j]
            if finish[j] is None or cand > finish[j]:
                finish[j] = cand
            indeg[j] -= 1
            if indeg[j] == 0:
                order.append(j)
    if len(order) != n:
        return None
    return tuple(finish)


def oracle_exclusive_prefix(a: Sequence) -> tuple:
    out = [0]
    for x in a[:-1]:
        out.append(out[-1] + x)
    return tuple(out)


def grid_feasible_vectors(predicate, top: Sequence) -> List[tuple]:
    """All integer vectors at or below ``top`` satisfying ``predicate``."""
    tops = [int(t) for t in top]
    size = 1
    for t in tops:
        size *= t + 1
        if size > GRID_LIMIT:
            raise TooLarge(f"grid exceeds {GRID_LIMIT} points")
    return [v for v in product(*(range(t + 1) for t in tops)) if predicate(v)]


def grid_least_feasible(predicate, top: Sequence) -> Optional[tuple]:
    """Component-wise minimum of the feasible grid points (None when empty).

    Also asserts the minimum is itself feasible, which any meet-closed
    predicate must satisfy.
    """
    feasible = grid_feasible_vectors(predicate, top)
    if not feasible:
        return None
    floor = tuple(min(v[i] for v in feasible) for i in range(len(top)))
    if not predicate(floor):
        raise AssertionError("predicate is not meet-closed on this instance")
    return floor
