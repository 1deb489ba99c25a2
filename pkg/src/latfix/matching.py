"""Stable matching with external precedence constraints on proposal order.

Men are processes 0..n-1; man ``j``'s proposals form a chain of events
``(j, 1) .. (j, n)`` walked in preference order, and ``G[j]`` counts how many
proposals he has made (0 = none, so ranks are 1-based).  When ``G[j] >= 1``
he currently holds the woman ``mpref[j][G[j]-1]``.  Cross-process precedence
edges couple events of different men: an edge (i, r) -> (j, s) means man i's
r-th proposal must already have happened in any state where man j's s-th
proposal has; such edges encode regret-order constraints.  With none present
the least feasible state is exactly the proposer-optimal stable matching.

A state is feasible when every man has proposed, the executed events are
down-closed under the precedence order, and no woman prefers a man who has
already proposed to her over the man currently holding her.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence, Set, Tuple

from .engine import LatticeProblem

Event = Tuple[int, int]  # (man index 0-based, rank 1-based)


class CyclicPrecedence(ValueError):
    """The per-man chains plus cross edges contain a cycle."""


def _inverse_permutation(row) -> tuple:
    """1-based positions: out[x] = index of x in row, plus one."""
    out = [0] * len(row)
    for pos, x in enumerate(row):
        out[x] = pos + 1
    return tuple(out)


@dataclass(frozen=True)
class PrecedenceEdge:
    """Cross-process edge: ``src`` must be executed in any state executing ``dst``."""

    src: Event
    dst: Event

    def __init__(self, src, dst):
        src = (int(src[0]), int(src[1]))
        dst = (int(dst[0]), int(dst[1]))
        if src[0] == dst[0]:
            raise ValueError("cross edges must relate distinct men")
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "dst", dst)


class SmpInstance:
    """Preference matrices plus optional cross edges and restricted pairs.

    ``mpref[i]`` lists women (0-based ids) in man i's preference order;
    ``wpref[z]`` lists men in woman z's order.  ``rank[z][m]`` is the 1-based
    position of man m in woman z's list.  A forced pair is encoded as
    forbidden pairs for every other man: in a perfect matching that pins the
    woman to her forced partner.
    """

    def __init__(self, mpref, wpref, cross_edges=(), forbidden_pairs=(), forced_pairs=()):
        self.mpref = tuple(tuple(row) for row in mpref)
        self.wpref = tuple(tuple(row) for row in wpref)
        n = len(self.mpref)
        if n == 0 or len(self.wpref) != n:
            raise ValueError("need equally many men and women")
        for row in self.mpref + self.wpref:
            if sorted(row) != list(range(n)):
                raise ValueError("each preference row must be a permutation of 0..n-1")
        self.n = n
        # rank[z][m]: 1-based position of man m in woman z's list
        self.rank = tuple(_inverse_permutation(row) for row in self.wpref)
        # mrank[i][w]: 1-based position of woman w in man i's list
        self.mrank = tuple(_inverse_permutation(row) for row in self.mpref)

        self.cross_edges = tuple(
            e if isinstance(e, PrecedenceEdge) else PrecedenceEdge(*e) for e in cross_edges
        )
        for e in self.cross_edges:
            for man, rank in (e.src, e.dst):
                if not (0 <= man < n and 1 <= rank <= n):
                    raise ValueError(f"event {(man, rank)} out of range")
        if self.cross_edges:
            _check_acyclic(self.cross_edges, n)
        closed = _transitive_cross_closure(self.cross_edges)
        # per source man: (src_rank, dst_man, dst_rank) triples
        self._edges_from: Tuple[Tuple[Tuple[int, int, int], ...], ...] = tuple(
            tuple(sorted((sr, dm, dr) for (sm, sr), (dm, dr) in closed if sm == m))
            for m in range(n)
        )
        self._has_cross = bool(closed)

        self.forbidden_pairs = frozenset((int(m), int(w)) for m, w in forbidden_pairs)
        self.forced_pairs = frozenset((int(m), int(w)) for m, w in forced_pairs)
        for m, w in self.forbidden_pairs | self.forced_pairs:
            if not (0 <= m < n and 0 <= w < n):
                raise ValueError(f"pair {(m, w)} out of range")
        banned: List[Set[int]] = [set() for _ in range(n)]
        for m, w in self.forbidden_pairs:
            banned[m].add(self.mrank[m][w])
        for m, w in self.forced_pairs:
            for other in range(n):
                if other != m:
                    banned[other].add(self.mrank[other][w])
        self._banned_ranks = tuple(frozenset(b) for b in banned)


def _check_acyclic(edges: Sequence[PrecedenceEdge], n: int) -> None:
    """Cycle check over the event graph (per-man chains + cross edges)."""
    succ: Dict[Event, List[Event]] = {}
    for m in range(n):
        for r in range(1, n):
            succ.setdefault((m, r), []).append((m, r + 1))
    for e in edges:
        succ.setdefault(e.src, []).append(e.dst)
    state: Dict[Event, int] = {}  # 1 = on stack, 2 = done
    for start in list(succ):
        if state.get(start):
            continue
        state[start] = 1
        stack = [(start, iter(succ.get(start, ())))]
        while stack:
            node, it = stack[-1]
            for nxt in it:
                s = state.get(nxt)
                if s == 1:
                    raise CyclicPrecedence(f"precedence cycle through event {nxt}")
                if s is None:
                    state[nxt] = 1
                    stack.append((nxt, iter(succ.get(nxt, ()))))
                    break
            else:
                state[node] = 2
                stack.pop()


def _transitive_cross_closure(edges: Sequence[PrecedenceEdge]) -> Set[Tuple[Event, Event]]:
    """Close cross edges under composition through the per-man chains.

    (a,ra)->(b,rb) followed by (b,rb2)->(c,rc) composes whenever rb2 >= rb,
    since the chain carries (b,rb) up to (b,rb2).  Closing up front lets a
    chained constraint across three or more men trigger in a single round.
    Self-reaching compositions are either chain-implied (vacuous) or part of
    a cycle already rejected by the acyclicity check.
    """
    closed: Set[Tuple[Event, Event]] = {(e.src, e.dst) for e in edges}
    while True:
        extra = set()
        for (a, ra), (b, rb) in closed:
            for (b2, rb2), (c, rc) in closed:
                if b2 == b and rb2 >= rb and c != a:
                    e = ((a, ra), (c, rc))
                    if e not in closed:
                        extra.add(e)
        if not extra:
            return closed
        closed |= extra


class _RejectionTracker:
    """Incremental forbidden-set evaluation for proposal vectors.

    For monotone query sequences (the engine only ever grows G) each proposal
    is processed once, so a whole run costs O(total proposals + re-evaluated
    men).  Any non-monotone query (grid checkers probe arbitrary vectors)
    triggers a full rebuild; the reported set is a pure function of G either
    way.
    """

    def __init__(self, inst: SmpInstance):
        self.inst = inst
        self._valid = False

    def _evaluate(self, g, j) -> bool:
        inst = self.inst
        gj = g[j]
        if gj == 0:
            return True
        if gj < self.require[j]:
            return True
        if gj in inst._banned_ranks[j]:
            return True
        z = inst.mpref[j][gj - 1]
        return self.best[z] < inst.rank[z][j]

    def _refresh_requirements(self, g) -> Set[int]:
        """Largest source rank among cross edges whose destination has executed."""
        dirty = set()
        for m in range(self.inst.n):
            req = self.require[m]
            for src_rank, dst_man, dst_rank in self.inst._edges_from[m]:
                if src_rank > req and g[dst_man] >= dst_rank:
                    req = src_rank
            if req != self.require[m]:
                self.require[m] = req
                dirty.add(m)
        return dirty

    def _rebuild(self, g):
        inst = self.inst
        n = inst.n
        self.seen = list(g)
        self.best = [n + 1] * n
        self.holders: List[Set[int]] = [set() for _ in range(n)]
        self.require = [0] * n
        for i in range(n):
            gi = g[i]
            for k in range(gi):
                z = inst.mpref[i][k]
                r = inst.rank[z][i]
                if r < self.best[z]:
                    self.best[z] = r
            if gi >= 1:
                self.holders[inst.mpref[i][gi - 1]].add(i)
        if inst._has_cross:
            self._refresh_requirements(g)
        self.forbidden = {j for j in range(n) if self._evaluate(g, j)}
        self._valid = True

    def _update(self, g):
        inst = self.inst
        mpref, rank = inst.mpref, inst.rank
        dirty: Set[int] = set()
        for i in range(inst.n):
            gi = g[i]
            old = self.seen[i]
            if gi > old:
                if old >= 1:
                    self.holders[mpref[i][old - 1]].discard(i)
                for k in range(old, gi):
                    z = mpref[i][k]
                    r = rank[z][i]
                    if r < self.best[z]:
                        self.best[z] = r
                        dirty |= self.holders[z]
                self.holders[mpref[i][gi - 1]].add(i)
                dirty.add(i)
                self.seen[i] = gi
        if inst._has_cross:
            dirty |= self._refresh_requirements(g)
        for j in dirty:
            if self._evaluate(g, j):
                self.forbidden.add(j)
            else:
                self.forbidden.discard(j)

    def query(self, g) -> Set[int]:
        if not self._valid or any(gi < si for gi, si in zip(g, self.seen)):
            self._rebuild(g)
        elif any(gi > si for gi, si in zip(g, self.seen)):
            self._update(g)
        return set(self.forbidden)


def smp_problem(inst: SmpInstance) -> LatticeProblem:
    """Proposal-count problem whose least feasible vector is the optimal matching.

    A man is forbidden when he has not proposed, when a not-yet-executed
    event of his is required by an already-executed event of another man,
    when he holds a restricted pair, or when a man his woman prefers has
    already proposed to her.  The only valid repair is his next proposal, so
    every target is G[j] + 1.
    """
    tracker = _RejectionTracker(inst)
    n = inst.n

    def forbidden_indices(g):
        return tracker.query(g)

    def advance(g, j):
        return g[j] + 1

    return LatticeProblem(
        n=n,
        top=(n,) * n,
        forbidden_indices=forbidden_indices,
        advance=advance,
        min_step=1,
    )


def frontier(g: Sequence[int]) -> Set[Event]:
    """Last executed event per man: {(j, G[j]) for G[j] >= 1}."""
    return {(j, gj) for j, gj in enumerate(g) if gj >= 1}


def matching_of(inst: SmpInstance, g: Sequence[int]) -> tuple:
    """Woman currently held by each man (requires every G[j] >= 1)."""
    if any(gj < 1 for gj in g):
        raise ValueError("some man has not proposed; no matching to read off")
    return tuple(inst.mpref[j][gj - 1] for j, gj in enumerate(g))


def proposal_vector(inst: SmpInstance, matching: Sequence[int]) -> tuple:
    """Rank vector of a matching: G[j] = position of man j's partner in his list."""
    return tuple(inst.mrank[j][w] for j, w in enumerate(matching))


def is_stable(inst: SmpInstance, matching: Sequence[int]) -> bool:
    """True when no man and woman mutually prefer each other over their partners."""
    n = inst.n
    matching = tuple(matching)
    if sorted(matching) != list(range(n)):
        raise ValueError("matching must be a bijection")
    partner_of_woman = [0] * n
    for m, w in enumerate(matching):
        partner_of_woman[w] = m
    for m in range(n):
        my_rank = inst.mrank[m][matching[m]]
        for w in inst.mpref[m][: my_rank - 1]:  # women m prefers to his partner
            if inst.rank[w][m] < inst.rank[w][partner_of_woman[w]]:
                return False
    return True
