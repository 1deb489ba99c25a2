"""Round-synchronous least-fixpoint engine over products of totally ordered chains.

A problem supplies, for any candidate vector G, the set of *forbidden*
indices (components that must grow before any vector >= G can be feasible)
and, per forbidden index, the smallest safe target value.  Starting from the
all-zeros vector, the engine advances every forbidden index of each round's
snapshot simultaneously until no index is forbidden (the least feasible
vector has been reached) or some target exceeds the per-component ceiling
(no feasible vector exists below the ceiling).

This strategy is sound exactly for meet-closed feasibility predicates: the
advancement targets never jump past the least feasible vector, so the
result, when it exists, is the component-wise minimum of all feasible
vectors at or below ``top``.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

Value = float  # non-negative int or float; problems declare which they use

SEQUENTIAL = "sequential"
PARALLEL = "parallel"

#: hard ceiling on brute-force grid size for check_least
GRID_LIMIT = 10**7


class EngineError(Exception):
    """Base class for engine failures."""


class ProblemContractViolation(EngineError):
    """A problem reported a forbidden index whose target does not increase it."""


class DomainTooLarge(EngineError):
    """The integer grid below ``top`` is too large to enumerate."""


@dataclass(frozen=True)
class LatticeProblem:
    """A feasibility problem over vectors of length ``n`` bounded by ``top``.

    ``forbidden_indices(G)`` must be a pure function of G.  ``advance(G, j)``
    is only consulted for indices reported forbidden at G and must return a
    value strictly greater than ``G[j]``.  ``min_step`` is a positive lower
    bound on advancement magnitude, used only for termination accounting
    (rounds never exceed ``sum(ceil(top[i] / min_step))``).
    """

    n: int
    top: tuple
    forbidden_indices: Callable[[tuple], set]
    advance: Callable[[tuple, int], Value]
    min_step: Value = 1

    def round_bound(self) -> int:
        """Worst-case number of advancement rounds."""
        return sum(math.ceil(t / self.min_step) for t in self.top)


@dataclass(frozen=True)
class TraceRecord:
    round: int
    state: tuple
    forbidden: frozenset


@dataclass(frozen=True)
class SolveResult:
    """Outcome of a solve: least feasible vector, or an infeasibility witness.

    On success ``solution`` holds the least feasible vector and ``witness``
    is None.  On failure ``solution`` is None and ``witness``/``attempted``
    identify the component whose required value exceeded ``top``.  ``rounds``
    counts completed advancement rounds, ``steps`` individual component
    advancements.
    """

    solution: Optional[tuple]
    witness: Optional[int]
    attempted: Optional[Value]
    rounds: int
    steps: int
    trace: Optional[tuple] = field(default=None, repr=False)

    @property
    def feasible(self) -> bool:
        return self.solution is not None


def solve(
    problem: LatticeProblem,
    mode: str = SEQUENTIAL,
    threads: int = 1,
    trace: bool = False,
) -> SolveResult:
    """Find the least vector <= problem.top satisfying the problem's predicate.

    Both modes share the same round semantics: all targets are computed from
    an immutable snapshot of G, then applied together.  ``parallel`` merely
    evaluates the per-index targets on a thread pool; the result is identical
    for every mode and thread count.
    """
    if mode not in (SEQUENTIAL, PARALLEL):
        raise ValueError(f"unknown mode {mode!r}")
    if threads < 1:
        raise ValueError("threads must be >= 1")

    top = tuple(problem.top)
    g = [0] * problem.n
    records = [] if trace else None
    rounds = 0
    steps = 0
    pool = ThreadPoolExecutor(max_workers=threads) if mode == PARALLEL else None
    try:
        while True:
            snapshot = tuple(g)
            forbidden = sorted(problem.forbidden_indices(snapshot))
            if not forbidden:
                return SolveResult(
                    solution=snapshot,
                    witness=None,
                    attempted=None,
                    rounds=rounds,
                    steps=steps,
                    trace=tuple(records) if records is not None else None,
                )
            if pool is not None:
                targets = list(pool.map(lambda j: problem.advance(snapshot, j), forbidden))
            else:
                targets = [problem.advance(snapshot, j) for j in forbidden]
            for j, target in zip(forbidden, targets):
                if target <= snapshot[j]:
                    raise ProblemContractViolation(
                        f"advance(G, {j}) = {target!r} does not exceed G[{j}] = {snapshot[j]!r}"
                    )
            for j, target in zip(forbidden, targets):
                if target > top[j]:
                    return SolveResult(
                        solution=None,
                        witness=j,
                        attempted=target,
                        rounds=rounds,
                        steps=steps,
                        trace=tuple(records) if records is not None else None,
                    )
            for j, target in zip(forbidden, targets):
                g[j] = target
            rounds += 1
            steps += len(forbidden)
            if records is not None:
                records.append(TraceRecord(rounds, tuple(g), frozenset(forbidden)))
    finally:
        if pool is not None:
            pool.shutdown()


def check_least(problem: LatticeProblem, candidate: Sequence) -> bool:
    """Brute-force check that ``candidate`` is the least feasible vector.

    Enumerates the full integer grid below ``top`` (so ``top`` must be small
    and integral) and verifies that the candidate is feasible while no
    feasible grid point is strictly smaller in any component.
    """
    top = []
    for t in problem.top:
        if t != int(t) or t < 0:
            raise DomainTooLarge(f"top component {t!r} is not a small non-negative integer")
        top.append(int(t))
    size = 1
    for t in top:
        size *= t + 1
        if size > GRID_LIMIT:
            raise DomainTooLarge(f"grid exceeds {GRID_LIMIT} points")

    candidate = tuple(candidate)
    if problem.forbidden_indices(candidate):
        return False
    for vector in itertools.product(*(range(t + 1) for t in top)):
        if any(v < c for v, c in zip(vector, candidate)):
            if not problem.forbidden_indices(vector):
                return False
    return True


def feasible_grid_points(problem: LatticeProblem) -> Iterable[tuple]:
    """Yield every feasible integer grid point below ``top`` (test helper)."""
    top = [int(t) for t in problem.top]
    size = 1
    for t in top:
        size *= t + 1
        if size > GRID_LIMIT:
            raise DomainTooLarge(f"grid exceeds {GRID_LIMIT} points")
    for vector in itertools.product(*(range(t + 1) for t in top)):
        if not problem.forbidden_indices(vector):
            yield vector
