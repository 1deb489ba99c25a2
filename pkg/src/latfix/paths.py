"""Single-source shortest paths by monotone cost advancement, with constraints.

A cost vector is feasible when every non-source vertex has a *parent*: an
in-neighbour i with G[j] >= G[i] + w[i,j].  Parent edges cannot cycle
(weights are strictly positive), so parent chains always reach the source
and any feasible vector dominates the true distances; the least feasible
vector is exactly the distance vector.  Two advancement schemes are offered:

* variant ``a`` raises a parentless vertex to its cheapest in-edge bound;
* variant ``b`` raises every vertex not yet connected to the source through
  parent edges, jumping at least to the cheapest bound crossing from the
  connected ("fixed") region, which fixes whole layers per round.

Collapsing variant ``b`` to one vertex per round recovers the classic
heap-based algorithm (``dijkstra_distances``).
"""

from __future__ import annotations

import heapq
import math
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence, Set

from .constraints import Constraint, conjoin
from .engine import SEQUENTIAL, LatticeProblem, SolveResult, solve


class UnreachableVertex(ValueError):
    """Some vertices have no path from the source; carries the partial result."""

    def __init__(self, unreachable, distances):
        self.unreachable = tuple(sorted(unreachable))
        self.distances = tuple(distances)
        super().__init__(f"vertices {self.unreachable} unreachable from the source")


@dataclass(frozen=True)
class WeightedDigraph:
    """Directed graph with strictly positive weights; vertex 0 is the source."""

    n: int
    edges: tuple  # (i, j, w) triples

    def __init__(self, n, edges):
        edges = tuple((int(i), int(j), w) for i, j, w in edges)
        if n < 1:
            raise ValueError("need at least the source vertex")
        for i, j, w in edges:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) out of range")
            if w <= 0:
                raise ValueError(f"edge ({i}, {j}) has non-positive weight {w}")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", edges)
        pre = [[] for _ in range(n)]
        out = [[] for _ in range(n)]
        for i, j, w in edges:
            pre[j].append((i, w))
            out[i].append((j, w))
        object.__setattr__(self, "pre", tuple(tuple(p) for p in pre))
        object.__setattr__(self, "out", tuple(tuple(o) for o in out))
        orphans = [j for j in range(1, n) if not pre[j]]
        if orphans:
            warnings.warn(
                f"vertices {orphans} have no incoming edges and are unreachable",
                stacklevel=2,
            )

    @property
    def max_weight(self):
        return max((w for _, _, w in self.edges), default=0)

    @property
    def min_weight(self):
        return min((w for _, _, w in self.edges), default=1)


def parent(j: int, i: int, g: Sequence, graph: WeightedDigraph) -> bool:
    """True when edge (i, j) exists and G[j] already covers reaching j via i."""
    for pi, w in graph.pre[j]:
        if pi == i and g[j] >= g[i] + w:
            return True
    return False


def parents_of(j: int, g: Sequence, graph: WeightedDigraph) -> list:
    """All parents of j at g, ascending by vertex id."""
    return sorted({i for i, w in graph.pre[j] if g[j] >= g[i] + w})


def fixed_set(g: Sequence, graph: WeightedDigraph) -> Set[int]:
    """Vertices joined to the source by a chain of parent edges.

    Least fixpoint of "source, or has a fixed parent", computed by search
    from vertex 0 over current parent edges.
    """
    fixed = {0}
    queue = [0]
    while queue:
        i = queue.pop()
        for j, w in graph.out[i]:
            if j not in fixed and g[j] >= g[i] + w:
                fixed.add(j)
                queue.append(j)
    return fixed


def beta(g: Sequence, graph: WeightedDigraph, fixed: Optional[Set[int]] = None):
    """Cheapest bound crossing from fixed to non-fixed vertices, or None.

    None means no edge leaves the fixed region: every remaining vertex is
    unreachable from the source.
    """
    if fixed is None:
        fixed = fixed_set(g, graph)
    best = None
    for i, j, w in graph.edges:
        if i in fixed and j not in fixed:
            bound = g[i] + w
            if best is None or bound < best:
                best = bound
    return best


def _cheapest_in_edge(j, g, graph):
    best = math.inf
    for i, w in graph.pre[j]:
        bound = g[i] + w
        if bound < best:
            best = bound
    return best  # inf when pre(j) is empty


def path_problem(graph: WeightedDigraph) -> LatticeProblem:
    """Variant ``a``: forbidden = parentless non-source vertex."""
    n = graph.n
    ceiling = n * graph.max_weight

    def forbidden_indices(g):
        out = set()
        for j in range(1, n):
            gj = g[j]
            for i, w in graph.pre[j]:
                if gj >= g[i] + w:
                    break
            else:
                out.add(j)
        return out

    def advance(g, j):
        return _cheapest_in_edge(j, g, graph)

    return LatticeProblem(
        n=n,
        top=(ceiling,) * n,
        forbidden_indices=forbidden_indices,
        advance=advance,
        min_step=graph.min_weight,
    )


def rooted_problem(graph: WeightedDigraph) -> LatticeProblem:
    """Variant ``b``: forbidden = not connected to the source via parents.

    The crossing bound is computed once per snapshot and shared by every
    forbidden vertex of the round.
    """
    n = graph.n
    ceiling = n * graph.max_weight
    cache = {"g": None, "fixed": None, "beta": None}

    def analyze(g):
        if cache["g"] != g:
            fx = fixed_set(g, graph)
            cache["g"] = g
            cache["fixed"] = fx
            cache["beta"] = beta(g, graph, fx)
        return cache["fixed"], cache["beta"]

    def forbidden_indices(g):
        fx, _ = analyze(g)
        return set(range(n)) - fx

    def advance(g, j):
        _, crossing = analyze(g)
        if crossing is None:
            return math.inf  # nothing reachable remains; force infeasibility
        return max(crossing, _cheapest_in_edge(j, g, graph))

    return LatticeProblem(
        n=n,
        top=(ceiling,) * n,
        forbidden_indices=forbidden_indices,
        advance=advance,
        min_step=graph.min_weight,
    )


def shortest_a(graph: WeightedDigraph, cs: Sequence[Constraint] = (), **solve_kwargs) -> SolveResult:
    """Least constrained cost vector, per-vertex advancement."""
    return solve(conjoin(path_problem(graph), cs), **solve_kwargs)


def shortest_b(graph: WeightedDigraph, cs: Sequence[Constraint] = (), **solve_kwargs) -> SolveResult:
    """Least constrained cost vector, crossing-bound advancement."""
    return solve(conjoin(rooted_problem(graph), cs), **solve_kwargs)


def dijkstra_distances(graph: WeightedDigraph) -> tuple:
    """Classic heap-based specialization: one vertex fixed per step, in
    source-distance order.

    Unlike the solvers, unreachable vertices raise (with the partial result
    attached) instead of reporting plain infeasibility.
    """
    n = graph.n
    dist = [math.inf] * n
    dist[0] = 0
    done = [False] * n
    heap = [(0, 0)]
    while heap:
        d, i = heapq.heappop(heap)
        if done[i]:
            continue
        done[i] = True
        for j, w in graph.out[i]:
            nd = d + w
            if nd < dist[j]:
                dist[j] = nd
                heapq.heappush(heap, (nd, j))
    unreachable = [j for j in range(n) if not done[j]]
    if unreachable:
        raise UnreachableVertex(unreachable, dist)
    return tuple(dist)
