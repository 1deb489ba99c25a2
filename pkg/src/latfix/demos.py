"""Warm-up problems: precedence-constrained job completion times and prefix sums.

Both reduce to "G[j] must be at least a monotone function of G", which makes
them the simplest conformance checks for the engine.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import LatticeProblem


@dataclass(frozen=True)
class JobInstance:
    """Durations t[j] > 0 and per-job prerequisite sets.

    A cyclic prerequisite relation has no finite schedule; solving such an
    instance reports infeasibility once the targets outgrow the ceiling.
    """

    t: tuple
    pre: tuple  # pre[j] = frozenset of prerequisite job indices

    def __init__(self, t, pre=None):
        t = tuple(t)
        if not t:
            raise ValueError("need at least one job")
        if any(d <= 0 for d in t):
            raise ValueError("durations must be strictly positive")
        n = len(t)
        pre = [frozenset(p) for p in pre] if pre is not None else [frozenset()] * n
        if len(pre) != n:
            raise ValueError("pre must have one entry per job")
        for p in pre:
            for i in p:
                if not 0 <= i < n:
                    raise ValueError(f"prerequisite index {i} out of range")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "pre", tuple(pre))

    @property
    def n(self) -> int:
        return len(self.t)


@dataclass(frozen=True)
class PrefixInstance:
    """Array of non-negative values whose exclusive running sum is wanted."""

    a: tuple

    def __init__(self, a):
        a = tuple(a)
        if not a:
            raise ValueError("array must be non-empty")
        if any(x < 0 for x in a):
            raise ValueError("entries must be non-negative")
        object.__setattr__(self, "a", a)

    @property
    def n(self) -> int:
        return len(self.a)


def job_problem(inst: JobInstance) -> LatticeProblem:
    """Least completion times: G[j] >= t[j] and G[j] >= G[i] + t[j] for i in pre(j).

    The ceiling n * max(t) bounds any schedule by the serial one, so cyclic
    prerequisites surface as infeasibility rather than divergence.
    """
    t, pre, n = inst.t, inst.pre, inst.n
    ceiling = n * max(t)

    def target(g, j):
        need = t[j]
        for i in pre[j]:
            if g[i] + t[j] > need:
                need = g[i] + t[j]
        return need

    def forbidden_indices(g):
        return {j for j in range(n) if g[j] < target(g, j)}

    return LatticeProblem(
        n=n,
        top=(ceiling,) * n,
        forbidden_indices=forbidden_indices,
        advance=target,
        min_step=min(t),
    )


def prefix_problem(inst: PrefixInstance) -> LatticeProblem:
    """Exclusive prefix sums as the least vector with G[j] >= G[j-1] + a[j-1]."""
    a, n = inst.a, inst.n
    total = sum(a)
    positive = [x for x in a if x > 0]
    # component 0 is never forbidden; each advancement adds a suffix of array
    # entries, so the smallest positive entry bounds every step from below
    step = min(positive) if positive else 1

    def forbidden_indices(g):
        return {j for j in range(1, n) if g[j] < g[j - 1] + a[j - 1]}

    def advance(g, j):
        return g[j - 1] + a[j - 1]

    return LatticeProblem(
        n=n,
        top=(total,) * n,
        forbidden_indices=forbidden_indices,
        advance=advance,
        min_step=step,
    )
