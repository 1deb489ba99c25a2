"""Side constraints on cost/price vectors, and conjunction with a base problem.

Every constraint here is meet-closed: if two vectors satisfy it, so does
their component-wise minimum.  That is what makes the engine's advancement
strategy sound for the conjunction of a base problem with any number of
constraints.  Sum-style conditions (``G[i] + G[j] >= k``) are not meet-closed
and are rejected at parse time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .engine import LatticeProblem, ProblemContractViolation


@dataclass(frozen=True)
class AtMost:
    """G[i] <= G[j]: when violated, j is forbidden and must rise to G[i]."""

    i: int
    j: int


@dataclass(frozen=True)
class Equal:
    """G[i] == G[j], the conjunction of AtMost both ways."""

    i: int
    j: int


@dataclass(frozen=True)
class Implies:
    """(G[i] >= k) implies (G[j] >= m)."""

    i: int
    k: float
    j: int
    m: float


@dataclass(frozen=True)
class LowerBound:
    """G[i] >= floor[i] for every component."""

    floor: tuple

    def __init__(self, floor):
        object.__setattr__(self, "floor", tuple(floor))


@dataclass(frozen=True)
class WithinDelta:
    """|G[i] - G[j]| <= delta, decomposed into two one-sided conditions."""

    i: int
    j: int
    delta: float


Constraint = Union[AtMost, Equal, Implies, LowerBound, WithinDelta]


class RejectedConstraint(ValueError):
    """Raised for constraint forms that are not meet-closed (e.g. sums)."""

    def __init__(self, description: str):
        self.description = description
        super().__init__(description)


def validate_constraint(c: Constraint, n: int) -> None:
    """Check index bounds and non-negativity against a vector length n."""
    if isinstance(c, (AtMost, Equal)):
        indices = (c.i, c.j)
    elif isinstance(c, Implies):
        indices = (c.i, c.j)
        if c.k < 0 or c.m < 0:
            raise ValueError(f"thresholds must be non-negative: {c}")
    elif isinstance(c, LowerBound):
        if len(c.floor) != n:
            raise ValueError(f"lowerBound length {len(c.floor)} != n = {n}")
        if any(f < 0 for f in c.floor):
            raise ValueError("lowerBound components must be non-negative")
        return
    elif isinstance(c, WithinDelta):
        indices = (c.i, c.j)
        if c.delta < 0:
            raise ValueError(f"delta must be non-negative: {c}")
    else:
        raise TypeError(f"not a constraint: {c!r}")
    for idx in indices:
        if not 0 <= idx < n:
            raise ValueError(f"index {idx} out of range for n = {n}")


def constraint_forbidden(g: Sequence, c: Constraint) -> set:
    """Forbidden (index, target) pairs of constraint ``c`` at vector ``g``.

    Empty exactly when the constraint holds at ``g``.  Each target is the
    least value the index must reach: any vector >= g keeping that component
    below the target still violates the constraint.
    """
    if isinstance(c, AtMost):
        if g[c.j] < g[c.i]:
            return {(c.j, g[c.i])}
        return set()
    if isinstance(c, Equal):
        out = set()
        if g[c.j] < g[c.i]:
            out.add((c.j, g[c.i]))
        if g[c.i] < g[c.j]:
            out.add((c.i, g[c.j]))
        return out
    if isinstance(c, Implies):
        if g[c.i] >= c.k and g[c.j] < c.m:
            return {(c.j, c.m)}
        return set()
    if isinstance(c, LowerBound):
        return {(i, f) for i, f in enumerate(c.floor) if g[i] < f}
    if isinstance(c, WithinDelta):
        out = set()
        if g[c.i] > g[c.j] + c.delta:
            out.add((c.j, g[c.i] - c.delta))
        if g[c.j] > g[c.i] + c.delta:
            out.add((c.i, g[c.j] - c.delta))
        return out
    raise TypeError(f"not a constraint: {c!r}")


def satisfies(g: Sequence, c: Constraint) -> bool:
    return not constraint_forbidden(g, c)


def conjoin(base: LatticeProblem, cs: Sequence[Constraint]) -> LatticeProblem:
    """Base problem with extra constraints, solved as one predicate.

    The conjunction's forbidden set is the union of the parts' forbidden
    sets; the target for an index is the maximum over the parts that report
    it forbidden.  Constraints are re-evaluated from scratch every round.
    """
    cs = tuple(cs)
    if not cs:
        return base
    for c in cs:
        validate_constraint(c, base.n)

    def forbidden_indices(g):
        out = set(base.forbidden_indices(g))
        for c in cs:
            out.update(j for j, _ in constraint_forbidden(g, c))
        return out

    def advance(g, j):
        best = None
        if j in base.forbidden_indices(g):
            best = base.advance(g, j)
        for c in cs:
            for jj, target in constraint_forbidden(g, c):
                if jj == j and (best is None or target > best):
                    best = target
        if best is None:
            raise ProblemContractViolation(f"advance called for non-forbidden index {j}")
        return best

    return LatticeProblem(
        n=base.n,
        top=base.top,
        forbidden_indices=forbidden_indices,
        advance=advance,
        min_step=base.min_step,
    )


def parse_constraint(obj: dict) -> Constraint:
    """Parse the JSON form of a single constraint (0-based indices).

    Accepted forms::

        {"atMost": [i, j]}            {"equal": [i, j]}
        {"implies": {"i": i, "k": k, "j": j, "m": m}}
        {"lowerBound": [f0, f1, ...]} {"withinDelta": [i, j, delta]}
    """
    if not isinstance(obj, dict) or len(obj) != 1:
        raise RejectedConstraint(f"constraint must be a single-key object, got {obj!r}")
    key, val = next(iter(obj.items()))
    if key == "atMost":
        i, j = val
        return AtMost(int(i), int(j))
    if key == "equal":
        i, j = val
        return Equal(int(i), int(j))
    if key == "implies":
        return Implies(int(val["i"]), val["k"], int(val["j"]), val["m"])
    if key == "lowerBound":
        return LowerBound(tuple(val))
    if key == "withinDelta":
        i, j, delta = val
        return WithinDelta(int(i), int(j), delta)
    if key in ("sumAtLeast", "sum"):
        raise RejectedConstraint(
            "sum constraints (G[i] + G[j] >= k) are not meet-closed; "
            "neither index alone is forced to rise, so they cannot be solved here"
        )
    raise RejectedConstraint(f"unknown constraint kind {key!r}")


def parse_constraints(objs) -> list:
    return [parse_constraint(o) for o in objs or []]
