"""Compact representation and enumeration of *all* feasible vectors.

When the feasible set of an integral problem is closed under join as well as
meet, it forms a finite distributive lattice, so it is determined by its
join-irreducible elements.  Each join-irreducible is the least feasible
vector whose component ``i`` reaches a level ``k`` -- computable by the same
engine after conjoining the lower-bound constraint.  Every feasible vector
is then the join of a down-closed subset of these elements with the least
feasible vector, and distinct down-closed subsets give distinct vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .constraints import LowerBound, conjoin
from .engine import LatticeProblem, solve

EVENT_LIMIT = 4096
SOLUTION_LIMIT = 100_000


class EventSpaceTooLarge(ValueError):
    """Sum of top components exceeds the join-irreducible enumeration bound."""


class TooManySolutions(ValueError):
    """Down-set count exceeds the enumeration bound; carries the count."""

    def __init__(self, count, limit):
        self.count = count
        self.limit = limit
        super().__init__(f"{count} solutions exceed the bound {limit}")


@dataclass(frozen=True)
class JoinIrreducible:
    """Least feasible vector with component ``seed[0]`` at level >= ``seed[1]``."""

    seed: Tuple[int, int]
    vector: Optional[tuple]
    exists: bool


@dataclass(frozen=True)
class SlicePoset:
    """Deduplicated join-irreducible vectors above bottom, ordered component-wise.

    ``bottom`` is the least feasible vector of the base problem (None when
    the base is infeasible, in which case ``elements`` is empty).
    """

    elements: tuple
    bottom: Optional[tuple]

    def leq(self, a, b) -> bool:
        return all(x <= y for x, y in zip(a, b))

    def hasse_edges(self) -> List[Tuple[int, int]]:
        """Cover pairs (lower index, upper index) of the element order."""
        covers = []
        elems = self.elements
        for x, a in enumerate(elems):
            for y, b in enumerate(elems):
                if x != y and self.leq(a, b) and a != b:
                    if not any(
                        z != x and z != y and self.leq(a, c) and self.leq(c, b) and a != c != b
                        for z, c in enumerate(elems)
                    ):
                        covers.append((x, y))
        return covers


def join_irreducible(base: LatticeProblem, event: Tuple[int, int], **solve_kwargs) -> JoinIrreducible:
    """Solve the base problem under the extra bound G[event[0]] >= event[1]."""
    i, k = event
    if not 0 <= i < base.n:
        raise ValueError(f"index {i} out of range")
    if k > base.top[i]:
        raise ValueError(f"level {k} exceeds top[{i}] = {base.top[i]}")
    if k <= 0:
        res = solve(base, **solve_kwargs)
        return JoinIrreducible((i, k), res.solution, res.feasible)
    floor = [0] * base.n
    floor[i] = k
    res = solve(conjoin(base, [LowerBound(floor)]), **solve_kwargs)
    return JoinIrreducible((i, k), res.solution, res.feasible)


def build_slice(base: LatticeProblem, max_events: int = EVENT_LIMIT) -> SlicePoset:
    """All distinct join-irreducible vectors of an integral base problem.

    Infeasible seeds are dropped, duplicates merged, and vectors equal to the
    least feasible vector excluded (the empty down-set already produces it).
    """
    tops = []
    for t in base.top:
        if t != int(t) or t < 0:
            raise ValueError(f"slice construction needs integral tops, got {t!r}")
        tops.append(int(t))
    total = sum(tops)
    if total > max_events:
        raise EventSpaceTooLarge(f"{total} candidate events exceed the bound {max_events}")

    bottom = solve(base).solution
    if bottom is None:
        return SlicePoset(elements=(), bottom=None)
    vectors = set()
    for i, t in enumerate(tops):
        # levels at or below bottom[i] reproduce bottom; skip them
        for k in range(int(bottom[i]) + 1, t + 1):
            ji = join_irreducible(base, (i, k))
            if ji.exists and ji.vector != bottom:
                vectors.add(ji.vector)
    return SlicePoset(elements=tuple(sorted(vectors)), bottom=bottom)


def _linear_extension(elements: Sequence[tuple]):
    """Order compatible with component-wise <=, plus predecessor lists."""
    order = sorted(range(len(elements)), key=lambda idx: (sum(elements[idx]), elements[idx]))
    elems = [elements[idx] for idx in order]
    preds = []
    for x, a in enumerate(elems):
        preds.append([y for y in range(x) if all(p <= q for p, q in zip(elems[y], a))])
    return elems, preds


def count_solutions(slice_poset: SlicePoset) -> int:
    """Number of down-closed subsets of the slice (= number of feasible vectors)."""
    if slice_poset.bottom is None:
        return 0
    elems, preds = _linear_extension(slice_poset.elements)
    m = len(elems)

    def rec(idx, included):
        if idx == m:
            return 1
        total = rec(idx + 1, included)  # exclude elems[idx]
        if all(included[p] for p in preds[idx]):
            included[idx] = True
            total += rec(idx + 1, included)
            included[idx] = False
        return total

    return rec(0, [False] * m)


def enumerate_solutions(
    slice_poset: SlicePoset,
    base: LatticeProblem,
    max_solutions: int = SOLUTION_LIMIT,
) -> List[tuple]:
    """Every feasible vector of the base problem, lexicographically sorted.

    Each down-closed subset of the slice contributes the component-wise join
    of its members with the least feasible vector.
    """
    bottom = solve(base).solution
    if bottom is None:
        return []
    count = count_solutions(slice_poset)
    if count > max_solutions:
        raise TooManySolutions(count, max_solutions)

    elems, preds = _linear_extension(slice_poset.elements)
    m = len(elems)
    out = set()

    def rec(idx, included):
        if idx == m:
            joined = list(bottom)
            for x in range(m):
                if included[x]:
                    for c, v in enumerate(elems[x]):
                        if v > joined[c]:
                            joined[c] = v
            out.add(tuple(joined))
            return
        rec(idx + 1, included)
        if all(included[p] for p in preds[idx]):
            included[idx] = True
            rec(idx + 1, included)
            included[idx] = False

    rec(0, [False] * m)
    return sorted(out)
