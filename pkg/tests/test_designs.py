from itertools import combinations

import pytest

from focal_lab.core import UniformFamily, binom, threshold_t
from focal_lab.designs import (
    bose_sts,
    design_small,
    fano_plane,
    greedy_packing,
    is_design,
    is_packing,
    skolem_sts,
    sqs8,
)
from focal_lab.focal import find_focal


def pair_counts(fam):
    counts = {}
    for e in fam.edges:
        for p in combinations(e, 2):
            counts[p] = counts.get(p, 0) + 1
    return counts


@pytest.mark.parametrize("v", [7, 9, 13, 15, 19, 21, 25, 27])
def test_steiner_triple_systems(v):
    fam = design_small(v, 3, 2)
    assert fam is not None
    assert len(fam) == v * (v - 1) // 6
    counts = pair_counts(fam)
    assert len(counts) == binom(v, 2) and set(counts.values()) == {1}


def test_named_constructions_are_designs():
    assert is_design(fano_plane(), 2)
    assert is_design(bose_sts(9), 2) and is_design(skolem_sts(13), 2)
    assert is_design(sqs8(), 3) and len(sqs8()) == 14
    with pytest.raises(ValueError):
        bose_sts(7)
    with pytest.raises(ValueError):
        skolem_sts(9)


def test_catalog_trivial_cases_and_gaps():
    assert len(design_small(5, 2, 2)) == 10
    assert len(design_small(4, 4, 3)) == 1
    assert len(design_small(6, 3, 1)) == 2
    assert design_small(7, 3, 1) is None
    assert design_small(8, 3, 2) is None
    assert design_small(9, 4, 3) is None
    assert design_small(3, 4, 2) is None


def test_is_packing_and_is_design_reject():
    f = UniformFamily(5, 3, ((1, 2, 3), (1, 2, 4)))
    assert not is_packing(f, 2) and is_packing(f, 3)
    assert not is_design(f, 2)


@pytest.mark.parametrize("n,k,t", [(7, 3, 2), (9, 4, 3), (10, 3, 2), (12, 5, 4), (8, 4, 2)])
def test_greedy_packing_valid_and_deterministic(n, k, t):
    a = greedy_packing(n, k, t, seed=4)
    assert is_packing(a, t)
    assert a == greedy_packing(n, k, t, seed=4)
    # maximal: every other k-set meets some member in >= t points
    masks = a.masks()
    for e in combinations(range(1, n + 1), k):
        if e in a.edges:
            continue
        m = sum(1 << (v - 1) for v in e)
        assert any((m & b).bit_count() >= t for b in masks)
    assert len(a) <= binom(n, t) // binom(k, t)


def test_greedy_packing_rejects_bad_parameters():
    with pytest.raises(ValueError):
        greedy_packing(6, 3, 1)
    with pytest.raises(ValueError):
        greedy_packing(6, 3, 3)


@pytest.mark.parametrize("r,k", [(3, 3), (3, 4), (4, 4), (4, 5), (3, 5)])
def test_packings_with_threshold_are_focal_free(r, k):
    t = threshold_t(r, k)
    for seed in range(3):
        fam = greedy_packing(k + 4, k, t, seed=seed)
        assert find_focal(fam, r) is None
