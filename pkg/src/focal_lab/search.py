"""Exact f_r(n, k) and f_r^q(n) for tiny parameters.

The candidates are all of C([n], k) (or all of [q]^n). Every r-set of
candidates forming a focal configuration is recorded as a conflict, and a
maximum conflict-free subset is found by branch and bound. The search starts
from the best available construction and stops as soon as that meets a valid
upper bound.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, product

from .bnb import ConflictSearch
from .bounds import code_bounds, hypergraph_bounds
from .core import QaryCode, UniformFamily, binom, threshold_t
from .designs import design_small, greedy_packing
from .focal import _DiffView, find_focal
from .induced import build_induced_code, build_induced_family
from .oa import code_from_oa, oa_exists_by_construction, oa_for_order

DEFAULT_FAMILY_CAP = 40
DEFAULT_CODE_CAP = 1 << 20
DEFAULT_SEARCH_CAP = 4096


class Proof(str, Enum):
    EXHAUSTIVE = "Exhaustive"
    BNB_COMPLETE = "BranchAndBoundComplete"
    TIMEOUT = "Timeout"


@dataclass
class SearchResult:
    params: dict
    optimum: int
    extremal: UniformFamily | QaryCode
    nodes: int
    proof: Proof
    closed_by: str  # cap / bound / exhaustive / budget / time / search-cap
    upper_cap: int
    seed_source: str
    seed_size: int
    elapsed: float = field(default=0.0, compare=False)

    @property
    def complete(self) -> bool:
        return self.proof != Proof.TIMEOUT

    def to_dict(self) -> dict:
        ex = self.extremal
        items = ex.edges if isinstance(ex, UniformFamily) else ex.words
        proof = self.proof.value if self.complete else f"Timeout({self.optimum})"
        return {
            "params": self.params,
            "optimum": self.optimum,
            "complete": self.complete,
            "proofOfMaximality": proof,
            "closedBy": self.closed_by,
            "nodesExplored": self.nodes,
            "upperCap": self.upper_cap,
            "seedSource": self.seed_source,
            "seedSize": self.seed_size,
            "extremal": [list(x) for x in items],
        }


def focal_conflicts(obj: UniformFamily | QaryCode, r: int) -> list[int]:
    """Bitmasks (over member indices) of every r-set of members that forms a focal configuration.

    For each focus, members are grouped by their difference mask; a
    configuration is a choice of r-1 pairwise disjoint nonzero masks and one
    member from each group.
    """
    view = _DiffView(obj)
    p = r - 1
    out: set[int] = set()
    for a in range(len(view)):
        groups: dict[int, list[int]] = {}
        for i, m in enumerate(view.masks(a).tolist()):
            if i != a:
                groups.setdefault(m, []).append(i)
        keys = sorted(groups)

        def rec(start: int, used: int, chosen: list[int]) -> None:
            if len(chosen) == p:
                for pick in product(*(groups[m] for m in chosen)):
                    bits = 1 << a
                    for i in pick:
                        bits |= 1 << i
                    out.add(bits)
                return
            for j in range(start, len(keys)):
                m = keys[j]
                if m & used == 0:
                    chosen.append(m)
                    rec(j + 1, used | m, chosen)
                    chosen.pop()

        rec(0, 0, [])
    return sorted(out)


def _greedy_conflict_free(n_cand: int, conflicts: list[int]) -> list[int]:
    by_top: dict[int, list[int]] = {}
    for c in conflicts:
        by_top.setdefault(c.bit_length() - 1, []).append(c)
    chosen = 0
    picked = []
    for v in range(n_cand):
        trial = chosen | (1 << v)
        if all(c & ~trial for c in by_top.get(v, ())):
            chosen = trial
            picked.append(v)
    return picked


def _family_seeds(r: int, n: int, k: int, restarts: int = 3) -> list[tuple[str, UniformFamily]]:
    t = threshold_t(r, k)
    seeds: list[tuple[str, UniformFamily]] = []
    d = design_small(n, k, t) if k > t else None
    if d is not None:
        seeds.append(("design", d))
    if n >= k > t >= 2:
        best = max((greedy_packing(n, k, t, seed=s) for s in range(restarts)), key=len)
        seeds.append(("greedy-packing", best))
    try:
        seeds.append(("induced-packing", build_induced_family(r, n, k, seed=0, restarts=restarts).packing.family()))
    except ValueError:
        pass
    return seeds


def _code_seeds(r: int, n: int, q: int, restarts: int = 3) -> list[tuple[str, QaryCode]]:
    t = threshold_t(r, n)
    seeds: list[tuple[str, QaryCode]] = []
    if oa_exists_by_construction(t, n, q):
        seeds.append(("orthogonal-array", code_from_oa(oa_for_order(t, n, q))))
    try:
        seeds.append(("induced-packing", build_induced_code(r, n, q, seed=0, restarts=restarts).packing.code()))
    except ValueError:
        pass
    return seeds


def _run(
    r: int,
    universe: UniformFamily | QaryCode,
    seeds: list,
    upper: int,
    orbit_key,
    params: dict,
    node_budget: int | None,
    time_budget: float | None,
    exhaustive: bool,
    debug: bool,
    search_cap: int,
) -> SearchResult:
    start = time.monotonic()
    items = list(universe.edges if isinstance(universe, UniformFamily) else universe.words)
    index = {x: i for i, x in enumerate(items)}
    best_src, best_idx = "none", []
    for name, obj in seeds:
        members = list(obj.edges if isinstance(obj, UniformFamily) else obj.words)
        if find_focal(obj, r) is not None:
            raise AssertionError(f"seed construction {name} is not focal-free")
        if len(members) > len(best_idx):
            best_src, best_idx = name, sorted(index[x] for x in members)
    cap = min(upper, len(items))

    def wrap(idx: list[int]):
        chosen = [items[i] for i in sorted(idx)]
        return universe.with_edges(chosen) if isinstance(universe, UniformFamily) else universe.with_words(chosen)

    def result(idx, nodes, proof, closed_by):
        ex = wrap(idx)
        if find_focal(ex, r) is not None:
            raise AssertionError("search returned a family with a focal configuration")
        return SearchResult(params, len(idx), ex, nodes, proof, closed_by, cap, best_src, len(best_idx),
                            time.monotonic() - start)

    if not exhaustive and len(best_idx) >= cap:
        return result(best_idx, 0, Proof.BNB_COMPLETE, "cap")
    if len(items) > search_cap:
        return result(best_idx, 0, Proof.TIMEOUT, "search-cap")
    conflicts = focal_conflicts(universe, r)
    search = ConflictSearch(len(items), conflicts)
    if not best_idx:
        best_src, best_idx = "greedy", _greedy_conflict_free(len(items), conflicts)

    on_node = None
    if debug:
        def on_node(chosen):
            if find_focal(wrap(chosen), r) is not None:
                raise AssertionError(f"incremental pruning accepted a focal set {chosen}")

    if exhaustive:
        res = search.solve(exhaustive=True, node_budget=node_budget, time_budget=time_budget, on_node=on_node)
    else:
        groups: dict = {}
        for i in range(1, len(items)):
            groups.setdefault(orbit_key(items[0], items[i]), []).append(i)
        orbits = [groups[key] for key in sorted(groups, reverse=True)]
        res = search.solve(incumbent=best_idx, cap=cap, forced=0, orbits=orbits, node_budget=node_budget,
                           time_budget=time_budget, on_node=on_node)
    if not res.complete:
        return result(res.best, res.nodes, Proof.TIMEOUT, res.reason)
    proof = Proof.EXHAUSTIVE if exhaustive else Proof.BNB_COMPLETE
    return result(res.best, res.nodes, proof, res.reason)


def exact_f(
    r: int,
    n: int,
    k: int,
    node_budget: int | None = None,
    time_budget: float | None = None,
    cap: int = DEFAULT_FAMILY_CAP,
    seed_construction: bool = True,
    use_bounds: bool = True,
    exhaustive: bool = False,
    debug: bool = False,
) -> SearchResult:
    """Maximum r-focal-free subfamily of C([n], k).

    Symmetry: some optimum contains {1..k} (S_n is transitive on k-sets), and
    the remaining k-sets are branched on by their orbit under the stabilizer,
    i.e. by the size of their intersection with {1..k}.
    """
    if r < 3:
        raise ValueError("r must be >= 3")
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n (n={n}, k={k})")
    if binom(n, k) > cap:
        raise ValueError(f"C({n},{k}) = {binom(n, k)} exceeds the candidate cap {cap}")
    universe = UniformFamily.complete(n, k)
    upper = binom(n, k)
    if use_bounds and k >= 2:
        upper = min(upper, hypergraph_bounds(r, n, k).best_upper())
    seeds = _family_seeds(r, n, k) if seed_construction else []
    return _run(r, universe, seeds, upper, lambda e0, e: len(set(e0) & set(e)),
                {"r": r, "n": n, "k": k}, node_budget, time_budget, exhaustive, debug, cap)


def exact_f_code(
    r: int,
    n: int,
    q: int,
    node_budget: int | None = None,
    time_budget: float | None = None,
    cap: int = DEFAULT_CODE_CAP,
    search_cap: int = DEFAULT_SEARCH_CAP,
    seed_construction: bool = True,
    use_bounds: bool = True,
    exhaustive: bool = False,
    debug: bool = False,
) -> SearchResult:
    """Maximum r-focal-free subcode of [q]^n.

    Symmetry: relabeling symbols in each coordinate is transitive on [q]^n, so
    some optimum contains the all-ones word; the other words are branched on
    by their agreement pattern with it. Cubes above ``search_cap`` words are
    not searched (the result is the best construction, marked Timeout) unless
    a construction already meets a valid upper bound.
    """
    if r < 3:
        raise ValueError("r must be >= 3")
    if n < 1 or q < 2:
        raise ValueError(f"need n >= 1 and q >= 2 (n={n}, q={q})")
    if q ** n > cap:
        raise ValueError(f"q^n = {q ** n} exceeds the candidate cap {cap}")
    universe = QaryCode(n, q, tuple(product(range(1, q + 1), repeat=n)))
    upper = q ** n
    if use_bounds and n >= 2:
        upper = min(upper, code_bounds(r, n, q).best_upper())
    seeds = _code_seeds(r, n, q) if seed_construction else []

    def agreement(w0, w):
        return tuple(i for i in range(n) if w0[i] == w[i])

    return _run(r, universe, seeds, upper, agreement, {"r": r, "n": n, "q": q},
                node_budget, time_budget, exhaustive, debug, search_cap)
