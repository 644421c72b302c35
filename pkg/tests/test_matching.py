from itertools import combinations

import networkx as nx
import pytest

from focal_lab.core import binom
from focal_lab.matching import (
    CapExceeded,
    Regime,
    frankl_bound,
    m_bruteforce,
    m_classical,
    m_formula,
    m_resolve,
    matching_conflicts,
    matching_number,
)


def nx_graph_m(n: int, lam: int) -> int:
    """m(n, 2, lam) by scanning every graph on [n] with networkx's maximum matching."""
    pairs = list(combinations(range(n), 2))
    best = 0
    for bits in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if bits >> i & 1]
        if len(edges) <= best:
            continue
        g = nx.Graph(edges)
        if len(nx.max_weight_matching(g, maxcardinality=True)) < lam:
            best = len(edges)
    return best


def nx_matching_number(edges) -> int:
    """Largest set of pairwise disjoint edges via a maximum clique of the disjointness graph."""
    g = nx.Graph()
    g.add_nodes_from(range(len(edges)))
    for i, j in combinations(range(len(edges)), 2):
        if not set(edges[i]) & set(edges[j]):
            g.add_edge(i, j)
    return max((len(c) for c in nx.find_cliques(g)), default=0)


@pytest.mark.parametrize("n", range(2, 6))
@pytest.mark.parametrize("lam", [1, 2, 3])
def test_graph_case_against_networkx(n, lam):
    val, fam = m_bruteforce(n, 2, lam, cap=binom(n, 2))
    assert val == nx_graph_m(n, lam)
    assert len(fam) == val


def test_matching_number_against_networkx():
    import random

    rng = random.Random(3)
    for _ in range(60):
        n = rng.randint(3, 8)
        s = rng.randint(1, 3)
        pool = list(combinations(range(1, n + 1), s))
        edges = rng.sample(pool, rng.randint(0, min(12, len(pool))))
        assert matching_number(edges) == nx_matching_number(edges)


def test_matching_conflicts_are_disjoint_sets():
    edges = [(1, 2), (3, 4), (1, 3), (5, 6)]
    confl = matching_conflicts(edges, 2)
    as_sets = sorted(tuple(i for i in range(4) if c >> i & 1) for c in confl)
    assert as_sets == [(0, 1), (0, 3), (1, 3), (2, 3)]


@pytest.mark.parametrize("n,s,lam", [(n, s, lam) for n in range(1, 9) for s in (1, 2, 3) for lam in (1, 2, 3)
                                     if n >= s * lam and binom(n, s) <= 56])
def test_formula_and_frankl_on_small_range(n, s, lam):
    val, fam = m_bruteforce(n, s, lam, cap=56)
    assert val == m_formula(n, s, lam)
    assert val <= frankl_bound(n, s, lam) or lam == 1
    if fam is not None and len(fam):
        assert matching_number(fam.edges) < lam


def test_extremal_families_match_value():
    val, fam = m_bruteforce(6, 3, 2, cap=20)
    assert val == 10 == len(fam)
    assert matching_number(fam.edges) == 1


def test_cap_enforced():
    with pytest.raises(CapExceeded):
        m_bruteforce(10, 3, 2, cap=30)


def test_resolve_regimes():
    assert m_resolve(8, 3, 1).regime == Regime.TRIVIAL_LAMBDA1
    r = m_resolve(6, 2, 3)
    assert r.regime == Regime.BRUTE_FORCED and r.value == 10 and not r.conjectural
    r = m_resolve(40, 10, 5)
    assert r.regime == Regime.FORMULA_ONLY and r.conjectural and not r.hypothesis_holds
    r = m_resolve(20, 5, 3, exact=False)
    assert r.regime == Regime.FORMULA_ONLY and r.value == m_formula(20, 5, 3)
    assert m_resolve(20, 5, 2, classical=True).regime == Regime.ERDOS_KO_RADO
    assert m_resolve(20, 2, 4, classical=True).regime == Regime.ERDOS_GALLAI


def test_classical_values_agree_with_search():
    for n, s, lam in [(6, 2, 2), (7, 3, 2), (8, 2, 3), (5, 1, 3), (5, 3, 2), (3, 2, 2)]:
        known = m_classical(n, s, lam)
        assert known is not None
        assert known[0] == m_bruteforce(n, s, lam, cap=60)[0]


def test_result_json_keys():
    d = m_resolve(5, 2, 2).to_dict()
    assert d["value"] == 4 and d["regime"] == "BruteForced"
    assert d["extremalFamily"] is not None
