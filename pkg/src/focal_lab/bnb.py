"""Maximum conflict-free subfamily by branch and bound.

Candidates are indexed ``0..N-1``. A *conflict* is a bitmask of candidates
that may not all be chosen together (a focal configuration, or a set of
lam pairwise disjoint edges). The search looks for a largest set of
candidates containing no conflict.

Conflicts are reduced as candidates get chosen: a residual conflict with one
free vertex forbids it, one with two free vertices becomes an edge of the
pairwise conflict graph. The pruning bound is a greedy partition of the
remaining candidates into cliques of that graph (at most one vertex per
clique can be chosen), ordered as in Tomita-style maximum clique search.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence


@dataclass
class BnBResult:
    best: list[int]
    complete: bool
    nodes: int
    reason: str


class _Stop(Exception):
    pass


def _low(x: int) -> int:
    return (x & -x).bit_length() - 1


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class ConflictSearch:
    def __init__(self, n_cand: int, conflicts: Iterable[int]):
        self.n = n_cand
        full = (1 << n_cand) - 1
        forbid = 0
        adj = [0] * n_cand
        inc: list[list[int]] = [[] for _ in range(n_cand)]
        for e in sorted(set(conflicts)):
            c = e.bit_count()
            if c == 0:
                raise ValueError("empty conflict: no feasible set at all")
            if c == 1:
                forbid |= e
            elif c == 2:
                u = _low(e)
                w = _low(e ^ (1 << u))
                adj[u] |= 1 << w
                adj[w] |= 1 << u
            else:
                for v in _bits(e):
                    inc[v].append(e)
        self.P0 = full & ~forbid
        self.adj0 = adj
        # conflicts of size >= 3, listed at each of their vertices; a conflict is
        # live while all its vertices are chosen or still available
        self.inc = inc

    def _include(self, v: int, C: int, P: int, adj: list[int]):
        """Choose v: returns the new chosen set, available set and pair-conflict graph."""
        bv = 1 << v
        C |= bv
        P = P & ~adj[v] & ~bv
        live = C | P
        nadj = None
        forbid = 0
        for e in self.inc[v]:
            if e & ~live:
                continue
            res = e & ~C
            c = res.bit_count()
            if c == 1:
                forbid |= res
            elif c == 2:
                if nadj is None:
                    nadj = adj.copy()
                u = _low(res)
                w = _low(res ^ (1 << u))
                nadj[u] |= 1 << w
                nadj[w] |= 1 << u
        return C, P & ~forbid, (adj if nadj is None else nadj)

    @staticmethod
    def _cover(P: int, adj: list[int]):
        order: list[int] = []
        colors: list[int] = []
        U = P
        c = 0
        while U:
            c += 1
            Q = U
            while Q:
                v = _low(Q)
                Q &= adj[v]
                U &= ~(1 << v)
                order.append(v)
                colors.append(c)
        return order, colors

    def solve(
        self,
        incumbent: Sequence[int] = (),
        cap: int | None = None,
        forced: int | None = None,
        orbits: Sequence[Sequence[int]] | None = None,
        node_budget: int | None = None,
        time_budget: float | None = None,
        on_improve: Callable[[list[int]], None] | None = None,
        exhaustive: bool = False,
        on_node: Callable[[list[int]], None] | None = None,
    ) -> BnBResult:
        """Search for a maximum conflict-free set.

        ``forced`` may name a candidate that some optimum is known to contain
        (by symmetry); ``orbits`` then partitions the other candidates into
        orbits of the symmetry group fixing it. ``cap`` is an admissible upper
        bound: the search stops as soon as the incumbent reaches it.
        ``exhaustive`` disables bounding and symmetry and visits every
        conflict-free set. ``on_node`` sees the chosen set at every node
        (for consistency checks).
        """
        best = list(incumbent)
        state = {"nodes": 0}
        deadline = None if time_budget is None else time.monotonic() + time_budget

        def tick():
            state["nodes"] += 1
            if node_budget is not None and state["nodes"] > node_budget:
                raise _Stop("budget")
            if deadline is not None and (state["nodes"] & 255) == 0 and time.monotonic() > deadline:
                raise _Stop("time")

        def record(chosen: list[int]) -> None:
            nonlocal best
            if on_node is not None:
                on_node(chosen)
            if len(chosen) > len(best):
                best = list(chosen)
                if on_improve is not None:
                    on_improve(best)
                if cap is not None and len(best) >= cap:
                    raise _Stop("cap")

        def expand(chosen, C, P, adj):
            tick()
            record(chosen)
            if not P:
                return
            order, colors = self._cover(P, adj)
            size = len(chosen)
            for i in range(len(order) - 1, -1, -1):
                if size + colors[i] <= len(best):
                    return
                v = order[i]
                C2, P2, adj2 = self._include(v, C, P, adj)
                chosen.append(v)
                expand(chosen, C2, P2, adj2)
                chosen.pop()
                P &= ~(1 << v)

        def enumerate_all(chosen, C, P, adj):
            tick()
            record(chosen)
            for v in list(_bits(P)):
                C2, P2, adj2 = self._include(v, C, P, adj)
                P2 &= ~((1 << (v + 1)) - 1)
                chosen.append(v)
                enumerate_all(chosen, C2, P2, adj2)
                chosen.pop()

        reason = "exhaustive" if exhaustive else "bound"
        try:
            if cap is not None and len(best) >= cap:
                raise _Stop("cap")
            if exhaustive:
                enumerate_all([], 0, self.P0, self.adj0)
            elif forced is None or not (self.P0 >> forced) & 1:
                expand([], 0, self.P0, self.adj0)
            else:
                tick()
                C, P, adj = self._include(forced, 0, self.P0, self.adj0)
                chosen = [forced]
                record(chosen)
                groups = orbits if orbits is not None else [[v] for v in _bits(P)]
                for orb in groups:
                    omask = 0
                    for v in orb:
                        omask |= 1 << v
                    live = omask & P
                    if not live:
                        continue
                    _, colors = self._cover(P, adj)
                    if 1 + (colors[-1] if colors else 0) <= len(best):
                        break
                    rep = _low(live)
                    C2, P2, adj2 = self._include(rep, C, P, adj)
                    chosen.append(rep)
                    expand(chosen, C2, P2, adj2)
                    chosen.pop()
                    # every family meeting this orbit is equivalent to one through rep
                    P &= ~omask
        except _Stop as stop:
            reason = str(stop)
            if reason in ("budget", "time"):
                return BnBResult(sorted(best), False, state["nodes"], reason)
        return BnBResult(sorted(best), True, state["nodes"], reason)
