import json
from fractions import Fraction
from pathlib import Path

import pytest

from focal_lab.bounds import NotAPacking, code_bounds, hypergraph_bounds, packing_is_focal_free_check, exact_code_conditions
from focal_lab.core import UniformFamily, binom, lambda_of, threshold_t
from focal_lab.designs import fano_plane, greedy_packing
from focal_lab.matching import m_bruteforce, m_formula

def _load_exact():
    doc = json.loads((Path(__file__).parent / "data" / "exact_values.json").read_text())
    hyper: dict = {}
    code: dict = {}
    for v in doc["values"]:
        if v["side"] == "hypergraph":
            hyper.setdefault((v["r"], v["k"]), {})[v["n"]] = v["value"]
        else:
            code.setdefault((v["r"], v["q"]), {})[v["n"]] = v["value"]
    return hyper, code


# exact optima from the search, frozen with how they were obtained
F_HYPER, F_CODE = _load_exact()


def test_fano_parameters():
    rep = hypergraph_bounds(3, 7, 3)
    assert (rep.t, rep.lam, rep.matching.value, rep.denominator) == (2, 1, 0, 3)
    assert rep["alonUpper"].value == 14
    assert rep["thm22Upper"].value == 7 and rep["thm22Upper"].valid
    assert rep["limitDensity"].value == Fraction(1, 3)
    assert rep["prop13Exact"].valid and rep["prop13Exact"].value == 7
    assert rep.best_upper() == 7


def test_main_bound_invalid_below_n0():
    rep = hypergraph_bounds(3, 6, 3)
    assert not rep["thm22Upper"].valid and "needs n >= 7" in rep["thm22Upper"].reason
    assert rep["remark23Upper"].valid and rep["remark23Upper"].value == 5 + 6


def test_hypergraph_formulas_by_hand():
    # r=4, k=5: t=4, lam=1, D = C(5,4) = 5, n0 = 5*4+3 = 23
    rep = hypergraph_bounds(4, 30, 5)
    assert (rep.t, rep.lam, rep.denominator) == (4, 1, 5)
    assert rep["thm22Upper"].value == Fraction(binom(30, 4), 5) and rep["thm22Upper"].valid
    assert rep["alonUpper"].value == Fraction(3 * binom(30, 4), 5)
    # r=3, k=4: t=2, lam=2, m(4,2,2) = 3, D = 6 - 3 = 3, n0 = 3*2+1 = 7
    rep = hypergraph_bounds(3, 10, 4)
    assert (rep.t, rep.lam, rep.matching.value, rep.denominator) == (2, 2, 3, 3)
    assert rep["thm22Upper"].value == 15 and rep["thm22Upper"].valid
    assert "prop13Exact" not in rep.values


def test_matching_values_are_exact_where_small():
    for r in range(3, 7):
        for k in range(max(2, r - 2), 9):
            t, lam = threshold_t(r, k), lambda_of(r, k)
            rep = hypergraph_bounds(r, k + 5, k)
            if binom(k, k - t) <= 56:
                assert rep.matching.value == m_bruteforce(k, k - t, lam, cap=56)[0]
            else:
                assert rep.matching.value == m_formula(k, k - t, lam)


def test_degenerate_uniformity():
    rep = hypergraph_bounds(6, 5, 2)
    assert rep.denominator == 0
    assert rep["trivialExact"].valid and rep["trivialExact"].value == binom(5, 2)
    assert not rep["thm22Upper"].valid and rep["thm22Upper"].value is None
    assert rep.best_upper() == 10


def test_invalid_arguments():
    with pytest.raises(ValueError):
        hypergraph_bounds(3, 2, 3)
    with pytest.raises(ValueError):
        hypergraph_bounds(2, 5, 3)
    with pytest.raises(ValueError):
        code_bounds(3, 1, 2)


def test_code_f345():
    rep = code_bounds(3, 5, 4)
    assert rep.t == 3
    assert rep["thm35Upper"].value == 64 and rep["thm35Upper"].valid
    assert rep["thm16Exact"].value == 64 and rep["thm16Exact"].valid
    assert rep["ahCodeUpper"].value == 128
    # the older lower bound needs a prime power q >= n; here q = 4 < 5
    assert not rep["ahCodeLowerPrimePower"].valid
    assert code_bounds(3, 5, 5)["ahCodeLowerPrimePower"].valid


def test_code_limit_constant():
    # n=2: t=1, lam=2, m(2,1,2) = 1, constant C(2,1)/(2-1) = 2
    rep = code_bounds(3, 2, 9)
    assert rep["codeLimitConstant"].value == 2
    # n=4, r=3: t=2, lam=2, m(4,2,2) = 3, constant 6/3 = 2; q threshold 2/3*3 = 2
    rep = code_bounds(3, 4, 5)
    assert rep["codeLimitConstant"].value == 2
    assert rep["thm33Upper"].valid and rep["thm33Upper"].value == 50


def test_exact_code_conditions_composite():
    c = exact_code_conditions(3, 5, 12)
    assert not c["n <= p1^e1 + 1 (p1^e1 = 3)"]
    assert all(exact_code_conditions(3, 5, 20).values())


def test_code_degenerate():
    rep = code_bounds(6, 2, 3)
    assert rep["trivialExact"].valid and rep["trivialExact"].value == 9


@pytest.mark.parametrize("rk", sorted(F_HYPER))
def test_upper_bounds_dominate_exact_values(rk):
    r, k = rk
    for n, f in F_HYPER[rk].items():
        if n < 2 or n < k:
            continue
        rep = hypergraph_bounds(r, n, k)
        for b in rep.valid_upper():
            assert b.floor >= f, (r, n, k, b.name)
        for b in rep.valid_lower():
            assert b.floor <= f, (r, n, k, b.name)


@pytest.mark.parametrize("rq", sorted(F_CODE))
def test_code_bounds_dominate_exact_values(rq):
    r, q = rq
    for n, f in F_CODE[rq].items():
        rep = code_bounds(r, n, q)
        for b in rep.valid_upper():
            assert b.floor >= f, (r, n, q, b.name)
        for b in rep.valid_lower():
            assert b.floor <= f, (r, n, q, b.name)


def test_json_shape():
    d = hypergraph_bounds(3, 7, 3).to_dict()
    assert d["values"]["limitDensity"]["value"] == "1/3"
    assert d["values"]["thm22Upper"]["floor"] == 7
    assert d["params"] == {"r": 3, "n": 7, "k": 3}


def test_packing_check():
    assert packing_is_focal_free_check(fano_plane(), 3)
    assert packing_is_focal_free_check(greedy_packing(9, 4, 3, seed=1), 4)
    with pytest.raises(NotAPacking):
        packing_is_focal_free_check(UniformFamily(4, 3, ((1, 2, 3), (1, 2, 4))), 3)


def test_denominator_positive_exactly_when_nondegenerate():
    for r in range(3, 9):
        for k in range(2, 16):
            rep = hypergraph_bounds(r, k + 3, k)
            assert (rep.denominator > 0) == (k >= r - 2), (r, k)
        for n in range(2, 16):
            rep = code_bounds(r, n, 3)
            assert (rep.denominator > 0) == (n >= r - 2), (r, n)
