from itertools import combinations

import pytest

from focal_lab.core import binom
from focal_lab.focal import FocalWitness, find_focal
from focal_lab.induced import (
    InducedPacking,
    _copy_from_embedding,
    build_induced_code,
    build_induced_family,
    focal_free_code_build_packing,
    focal_free_family_build,
    induced_packing_greedy,
    refute_witness,
    template_F_from_G,
    verify_induced_packing,
)
from focal_lab.matching import matching_number


@pytest.mark.parametrize("r,k", [(3, 3), (3, 4), (3, 5), (3, 6), (4, 4), (4, 5), (4, 6), (5, 6)])
def test_template_structure(r, k):
    T = template_F_from_G(r, k)
    assert all(len(A) == T.t for A in T.F)
    assert len(T.F) == binom(k, T.t) - T.m_value
    if T.lam >= 2:
        assert matching_number(T.G) < T.lam
    full = set(range(1, k + 1))
    assert not {tuple(sorted(full - set(A))) for A in T.G} & set(T.F)


def test_template_bruteforce_matches_formula_size():
    for r, k in [(3, 4), (3, 6), (4, 6)]:
        a = template_F_from_G(r, k)
        b = template_F_from_G(r, k, prefer="bruteforce")
        assert a.size == b.size


def test_template_degenerate_and_bad_preference():
    with pytest.raises(ValueError, match="empty template"):
        template_F_from_G(6, 3)
    with pytest.raises(ValueError):
        template_F_from_G(3, 3, prefer="other")


@pytest.mark.parametrize("r,k,n", [(3, 3, 9), (3, 4, 10), (4, 4, 9), (4, 5, 10), (3, 5, 10)])
def test_complete_host_packing(r, k, n):
    P = induced_packing_greedy(n, template_F_from_G(r, k), seed=3)
    assert all(verify_induced_packing(P).values())
    assert find_focal(P.family(), r) is None
    assert 0 < P.ratio()


@pytest.mark.parametrize("r,n,q", [(3, 3, 3), (3, 4, 3), (4, 4, 2), (3, 5, 2), (4, 5, 3)])
def test_faithful_packing(r, n, q):
    P = induced_packing_greedy(n, template_F_from_G(r, n), seed=1, faithful=True, q=q)
    assert all(verify_induced_packing(P).values())
    assert find_focal(P.code(), r) is None
    with pytest.raises(ValueError):
        P.family()


def test_faithful_needs_matching_template():
    with pytest.raises(ValueError):
        induced_packing_greedy(5, template_F_from_G(3, 4), faithful=True, q=2)
    with pytest.raises(ValueError):
        induced_packing_greedy(5, template_F_from_G(3, 4), faithful=True)


def test_verify_detects_violations():
    T = template_F_from_G(3, 3)  # t=2, F = all pairs of [3]
    P = InducedPacking(T, 5, 2, None)
    P.copies = [_copy_from_embedding(T, (1, 2, 3)), _copy_from_embedding(T, (1, 2, 4))]
    checks = verify_induced_packing(P)
    assert not checks["iii"]  # the edge {1,2} is shared
    assert not checks["v"]


def test_refute_names_the_failing_step():
    T = template_F_from_G(3, 3)
    P = InducedPacking(T, 5, 2, None)
    P.copies = [_copy_from_embedding(T, e) for e in [(1, 2, 3), (1, 2, 4), (1, 3, 5)]]
    w = find_focal(P.family(), 3)
    assert w is not None
    assert "condition v" in refute_witness(P, w)


def test_builds_are_deterministic():
    a = build_induced_family(3, 9, 4, seed=5, restarts=2)
    b = build_induced_family(3, 9, 4, seed=5, restarts=2)
    assert a.packing.family() == b.packing.family()
    assert a.seeds_tried == [5, 5 + 1_000_003]
    assert a.to_dict()["focalFree"]
    c = build_induced_code(3, 4, 3, seed=2)
    assert c.packing.code() == focal_free_code_build_packing(3, 4, 3, seed=2)
    assert focal_free_family_build(3, 9, 4, seed=5, restarts=2) == a.packing.family()


def test_more_restarts_never_worse():
    one = build_induced_family(4, 10, 5, seed=0, restarts=1).size
    many = build_induced_family(4, 10, 5, seed=0, restarts=4).size
    assert many >= one
