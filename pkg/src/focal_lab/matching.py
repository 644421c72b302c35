"""Erdős matching numbers m(n, s, lam).

m(n, s, lam) is the largest number of edges of an s-uniform family on [n]
containing no lam pairwise disjoint edges. ``m_formula`` is the conjectured
closed form, ``frankl_bound`` a proven upper bound, and ``m_bruteforce`` an
exact branch-and-bound oracle for small parameters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations

from .bnb import ConflictSearch
from .core import UniformFamily, binom, edge_mask

DEFAULT_CAP = 30


class Regime(str, Enum):
    TRIVIAL_LAMBDA1 = "TrivialLambda1"
    BRUTE_FORCED = "BruteForced"
    FORMULA_ONLY = "FormulaOnly"
    # exact by a classical argument, no search needed
    TRIVIAL_SMALL = "TrivialSmall"
    ERDOS_KO_RADO = "ErdosKoRado"
    ERDOS_GALLAI = "ErdosGallai"


class CapExceeded(ValueError):
    pass


def m_formula(n: int, s: int, lam: int) -> int:
    """max{C(n,s) - C(n-lam+1,s), C(s*lam-1,s)}."""
    if n < 1 or s < 1 or lam < 1:
        raise ValueError("m_formula needs n, s, lam >= 1")
    return max(binom(n, s) - binom(n - lam + 1, s), binom(s * lam - 1, s))


def formula_hypothesis_holds(n: int, s: int, lam: int) -> bool:
    """Whether n >= s*lam, the range in which the closed form is conjectured."""
    return n >= s * lam


def frankl_bound(n: int, s: int, lam: int) -> int:
    return (lam - 1) * binom(n - 1, s - 1)


def matching_number(edges) -> int:
    """Size of a largest set of pairwise disjoint edges (exact, by search)."""
    masks = sorted({edge_mask(e) for e in edges}, key=lambda m: (m.bit_count(), m))
    best = 0

    def rec(start: int, used: int, size: int) -> None:
        nonlocal best
        if size > best:
            best = size
        if size + (len(masks) - start) <= best:
            return
        for i in range(start, len(masks)):
            if masks[i] & used == 0:
                rec(i + 1, used | masks[i], size + 1)

    rec(0, 0, 0)
    return best


def matching_conflicts(edges: list[tuple[int, ...]], lam: int) -> list[int]:
    """Bitmasks (over edge indices) of every set of lam pairwise disjoint edges."""
    masks = [edge_mask(e) for e in edges]
    out: list[int] = []

    def rec(start: int, used: int, chosen: int, depth: int) -> None:
        if depth == lam:
            out.append(chosen)
            return
        for i in range(start, len(masks)):
            if masks[i] & used == 0:
                rec(i + 1, used | masks[i], chosen | (1 << i), depth + 1)

    rec(0, 0, 0, 0)
    return out


def m_bruteforce(n: int, s: int, lam: int, cap: int = DEFAULT_CAP, node_budget: int | None = None):
    """Exact m(n, s, lam) together with one extremal family.

    Raises CapExceeded when C(n, s) > cap.
    """
    if n < 0 or s < 0 or lam < 1:
        raise ValueError("need n, s >= 0 and lam >= 1")
    if s > n:
        return 0, UniformFamily(n, s, ()) if s >= 1 else None
    total = binom(n, s)
    if total > cap:
        raise CapExceeded(f"C({n},{s}) = {total} exceeds cap {cap}")
    edges = list(combinations(range(1, n + 1), s))
    if lam == 1:
        return 0, _family(n, s, [])
    search = ConflictSearch(len(edges), matching_conflicts(edges, lam))
    # any single edge is lam-matching-free for lam >= 2, and S_n acts transitively
    # on s-sets, so some optimum contains the first edge; the stabilizer orbits
    # are the classes of edges by intersection size with it
    first = set(edges[0])
    orbits: dict[int, list[int]] = {}
    for i, e in enumerate(edges[1:], start=1):
        orbits.setdefault(len(first & set(e)), []).append(i)
    groups = [orbits[key] for key in sorted(orbits, reverse=True)]
    res = search.solve(forced=0, orbits=groups, node_budget=node_budget)
    if not res.complete:
        raise RuntimeError(f"node budget exhausted for m({n},{s},{lam})")
    return len(res.best), _family(n, s, [edges[i] for i in res.best])


def _family(n: int, s: int, edges) -> UniformFamily | None:
    if s < 1:
        # 0-uniform "families" hold at most the empty edge; there is no UniformFamily for them
        return None
    return UniformFamily(n, s, tuple(edges))


@dataclass(frozen=True)
class MatchingNumberResult:
    n: int
    s: int
    lam: int
    formula_value: int | None
    frankl_bound: int
    exact_value: int | None
    extremal_family: UniformFamily | None = field(default=None, compare=False)
    regime: Regime = Regime.FORMULA_ONLY
    hypothesis_holds: bool = True

    @property
    def value(self) -> int:
        return self.exact_value if self.exact_value is not None else self.formula_value

    @property
    def conjectural(self) -> bool:
        return self.exact_value is None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "s": self.s,
            "lambda": self.lam,
            "formulaValue": self.formula_value,
            "franklBound": self.frankl_bound,
            "exactValue": self.exact_value,
            "value": self.value,
            "regime": self.regime.value,
            "conjectural": self.conjectural,
            "hypothesisHolds": self.hypothesis_holds,
            "extremalFamily": None if self.extremal_family is None
            else [list(e) for e in self.extremal_family.edges],
        }


def m_classical(n: int, s: int, lam: int) -> tuple[int, Regime] | None:
    """m(n, s, lam) where a classical theorem settles it, else None.

    * n < s*lam (or s = 0): no lam disjoint s-sets fit, so every s-set may be taken;
    * s = 1: at most lam-1 singletons;
    * lam = 2, n >= 2s: Erdős-Ko-Rado, a star of size C(n-1, s-1);
    * s = 2, n >= 2*lam: Erdős-Gallai, which is the closed form for graphs.
    """
    if lam == 1:
        return 0, Regime.TRIVIAL_LAMBDA1
    if s == 0 or n < s * lam:
        return binom(n, s), Regime.TRIVIAL_SMALL
    if s == 1:
        return lam - 1, Regime.TRIVIAL_SMALL
    if lam == 2:
        return binom(n - 1, s - 1), Regime.ERDOS_KO_RADO
    if s == 2:
        return m_formula(n, s, lam), Regime.ERDOS_GALLAI
    return None


def m_resolve(
    n: int, s: int, lam: int, cap: int = DEFAULT_CAP, exact: bool = True, classical: bool = False
) -> MatchingNumberResult:
    """Best available value of m(n, s, lam).

    Exact when lam = 1 or brute force is feasible (C(n,s) <= cap); with
    ``classical`` also when one of the theorems in ``m_classical`` applies.
    Otherwise the closed form, flagged conjectural (and with
    ``hypothesis_holds`` false when n < s*lam, where the closed form is
    not even conjectured).
    """
    formula = m_formula(n, s, lam) if s >= 1 and n >= 1 else None
    fb = frankl_bound(n, s, lam)
    hyp = formula_hypothesis_holds(n, s, lam)
    if lam == 1:
        return MatchingNumberResult(n, s, lam, formula, fb, 0, _family(n, s, []),
                                    Regime.TRIVIAL_LAMBDA1, hyp)
    if s == 0:
        # the empty set alone; lam >= 2 copies of it are not distinct edges
        return MatchingNumberResult(n, s, lam, formula, fb, 1, None, Regime.TRIVIAL_SMALL, hyp)
    if exact and binom(n, s) <= cap:
        val, fam = m_bruteforce(n, s, lam, cap=cap)
        return MatchingNumberResult(n, s, lam, formula, fb, val, fam, Regime.BRUTE_FORCED, hyp)
    known = m_classical(n, s, lam) if classical else None
    if known is not None:
        return MatchingNumberResult(n, s, lam, formula, fb, known[0], None, known[1], hyp)
    if formula is None:
        raise ValueError(f"no value available for m({n},{s},{lam})")
    return MatchingNumberResult(n, s, lam, formula, fb, None, None, Regime.FORMULA_ONLY, hyp)
