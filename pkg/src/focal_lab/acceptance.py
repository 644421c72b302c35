"""The acceptance programs, runnable from the CLI (``repro``) and from pytest.

Each criterion returns a CriterionResult; ``passed`` is the exact check at
the stated tolerance, ``detail`` carries the numbers behind it.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable

from .bounds import code_bounds, hypergraph_bounds, packing_is_focal_free_check
from .core import QaryCode, binom, lambda_of, min_distance, threshold_t
from .designs import design_small, greedy_packing
from .fields import field_make
from .focal import find_focal
from .induced import induced_packing_greedy, template_F_from_G, verify_induced_packing
from .matching import frankl_bound, m_bruteforce, m_formula, matching_number
from .oa import (
    code_from_oa,
    focal_free_code_build,
    oa_compose,
    oa_exists_by_construction,
    oa_for_order,
    oa_prime_power,
)
from .search import exact_f, exact_f_code


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    elapsed: float = 0.0
    limit: float = 0.0  # stated runtime budget in seconds

    @property
    def in_time(self) -> bool:
        return self.elapsed <= self.limit

    def line(self) -> str:
        status = "PASS" if self.passed and self.in_time else "FAIL"
        return f"[{status}] criterion {self.number}: {self.name} ({self.elapsed:.1f}s of {self.limit:.0f}s)"

    def to_dict(self) -> dict:
        return {
            "number": self.number, "name": self.name, "passed": self.passed,
            "inTime": self.in_time, "elapsed": self.elapsed, "limit": self.limit,
            "detail": self.detail,
        }


def exact_code_value() -> dict:
    code = focal_free_code_build(3, 5, 4)
    w_ex = find_focal(code, 3, method="exhaustive")
    w_part = find_focal(code, 3, method="partition")
    rep = code_bounds(3, 5, 4)
    ok = (len(code) == 64 and w_ex is None and w_part is None
          and rep["thm35Upper"].valid and rep["thm35Upper"].value == 64
          and rep["thm16Exact"].valid and rep["thm16Exact"].value == 64)
    return {"passed": ok, "size": len(code), "exhaustiveWitness": w_ex is not None,
            "partitionWitness": w_part is not None, "thm35Upper": str(rep["thm35Upper"].value)}


def exact_hypergraph_value() -> dict:
    fano = design_small(7, 3, 2)
    free = fano is not None and find_focal(fano, 3) is None
    rep = hypergraph_bounds(3, 7, 3)
    b = rep["thm22Upper"]
    res = exact_f(3, 7, 3)
    ok = (fano is not None and len(fano) == 7 and free and b.valid and b.value == 7
          and rep.denominator * rep.t + rep.t - 1 == 7 and res.complete and res.optimum == 7)
    return {"passed": ok, "designSize": None if fano is None else len(fano), "thm22Upper": str(b.value),
            "n0": rep.denominator * rep.t + rep.t - 1, "optimum": res.optimum, "proof": res.proof.value}


def emc_oracle() -> dict:
    bad = []
    checked = 0
    for n, s, lam in product(range(1, 9), range(1, 4), range(1, 4)):
        if n < s * lam:
            continue
        val, fam = m_bruteforce(n, s, lam, cap=binom(n, s))
        checked += 1
        edges = [] if fam is None else list(fam.edges)
        if (val != m_formula(n, s, lam) or val > frankl_bound(n, s, lam)
                or len(edges) != val or (lam >= 1 and edges and matching_number(edges) >= lam)):
            bad.append((n, s, lam, val))
    return {"passed": not bad, "instances": checked, "failures": bad}


def oa_certificates() -> dict:
    A = oa_prime_power(3, 5, field_make(2, 2))
    B = oa_compose(oa_prime_power(2, 3, field_make(2)), oa_prime_power(2, 3, field_make(3)))
    ca, cb = A.certificate, B.certificate
    ok = (ca.mode == "full" and ca.subsets_checked == 10 and ca.passed and ca.max_agreement <= 2
          and A.matrix.shape == (5, 64)
          and cb.mode == "full" and cb.passed and B.q == 6 and B.matrix.shape == (3, 36))
    return {"passed": ok, "oa3_5_4": ca.to_dict(), "oa2_3_6": cb.to_dict()}


def _oa_pool() -> list[tuple[int, QaryCode]]:
    pool = []
    for r, n, q in [(3, 5, 4), (3, 3, 3), (3, 3, 4), (4, 4, 3), (4, 5, 5), (3, 5, 5)]:
        t = threshold_t(r, n)
        pool.append((r, code_from_oa(oa_for_order(t, n, q))))
    return pool


def distance_property(count: int = 500, seed: int = 0, max_size: int = 80) -> dict:
    rng = random.Random(seed)
    pool = _oa_pool()
    failures = []
    for i in range(count):
        r, code = pool[i % len(pool)]
        size = rng.randint(r, min(len(code), max_size))
        sub = code.with_words(rng.sample(code.words, size))
        d = min_distance(sub)
        if d is None or d <= sub.n // (r - 1):
            failures.append((i, "distance"))
            continue
        if find_focal(sub, r) is not None:
            failures.append((i, "focal"))
    return {"passed": not failures, "subcodes": count, "failures": failures}


def _packing_params() -> list[tuple[int, int, int]]:
    out = []
    for r in (3, 4):
        for k in range(3, 7):
            t = threshold_t(r, k)
            if k > t >= 2:
                out.extend((r, k, n) for n in range(k + 1, 13))
    return out


def packing_property(count: int = 100) -> dict:
    params = _packing_params()
    failures = []
    sizes = []
    for i in range(count):
        r, k, n = params[i % len(params)]
        t = threshold_t(r, k)
        P = greedy_packing(n, k, t, seed=i)
        sizes.append(len(P))
        if not packing_is_focal_free_check(P, r):
            failures.append((r, n, k, i))
    return {"passed": not failures, "runs": count, "failures": failures, "maxSize": max(sizes)}


def induced_validity(count: int = 50) -> dict:
    hyper = [(r, k, n) for r in (3, 4) for k in (2, 3, 4, 5) for n in (k + 2, k + 4, 10)
             if template_F_from_G(r, k).size > 0]
    code = [(r, n, q) for r in (3, 4) for n in (2, 3, 4, 5) for q in (2, 3, 4)]
    failures = []
    ratios = []
    for i in range(count):
        if i % 2 == 0:
            r, k, n = hyper[(i // 2) % len(hyper)]
            P = induced_packing_greedy(n, template_F_from_G(r, k), seed=i)
            obj = P.family()
        else:
            r, n, q = code[(i // 2) % len(code)]
            P = induced_packing_greedy(n, template_F_from_G(r, n), seed=i, faithful=True, q=q)
            obj = P.code()
        checks = verify_induced_packing(P)
        if not all(checks.values()) or find_focal(obj, r) is not None:
            failures.append((i, checks))
        ratios.append(round(P.ratio(), 4))
    return {"passed": not failures, "runs": count, "failures": failures,
            "densityRatioMin": min(ratios), "densityRatioMax": max(ratios)}


def _constructions_family(r: int, n: int, k: int) -> dict[str, int]:
    out = {}
    t = threshold_t(r, k)
    d = design_small(n, k, t) if k > t else None
    if d is not None:
        out["design"] = len(d)
    if n >= k > t >= 2:
        out["greedyPacking"] = len(greedy_packing(n, k, t, seed=0))
    T = template_F_from_G(r, k)
    out["inducedPacking"] = len(induced_packing_greedy(n, T, seed=0).copies)
    return out


def _constructions_code(r: int, n: int, q: int) -> dict[str, int]:
    out = {}
    t = threshold_t(r, n)
    if oa_exists_by_construction(t, n, q):
        out["orthogonalArray"] = q ** t
    T = template_F_from_G(r, n)
    out["inducedPacking"] = len(induced_packing_greedy(n, T, seed=0, faithful=True, q=q).copies)
    return out


def sandwich(time_budget: float = 60.0) -> dict:
    rows = []
    failures = []
    skipped = []
    for r, k in product((3, 4), (2, 3)):
        for n in range(k, 9):
            res = exact_f(r, n, k, cap=binom(8, 3), time_budget=time_budget)
            ups = hypergraph_bounds(r, n, k).valid_upper()
            cons = _constructions_family(r, n, k)
            rows.append(("hypergraph", r, n, k, res.optimum, res.proof.value))
            if not res.complete:
                skipped.append(("hypergraph", r, n, k))
                continue
            if any(v > res.optimum for v in cons.values()) or any(b.floor < res.optimum for b in ups):
                failures.append(("hypergraph", r, n, k, res.optimum, cons, [(b.name, b.floor) for b in ups]))
    for r, q in product((3, 4), (2, 3)):
        for n in range(2, 5):
            res = exact_f_code(r, n, q, time_budget=time_budget)
            ups = code_bounds(r, n, q).valid_upper()
            cons = _constructions_code(r, n, q)
            rows.append(("code", r, n, q, res.optimum, res.proof.value))
            if not res.complete:
                skipped.append(("code", r, n, q))
                continue
            if any(v > res.optimum for v in cons.values()) or any(b.floor < res.optimum for b in ups):
                failures.append(("code", r, n, q, res.optimum, cons, [(b.name, b.floor) for b in ups]))
    return {"passed": not failures, "instances": len(rows), "completed": len(rows) - len(skipped),
            "skipped": skipped, "failures": failures, "rows": rows}


def _limit_tuples(count: int = 200) -> list[tuple[int, int, int]]:
    out = []
    for r in (3, 4, 5, 6):
        for k in range(max(2, r - 2), 9):
            for n in range(k, k + 40):
                out.append((r, n, k))
    rng = random.Random(0)
    rng.shuffle(out)
    return sorted(out[:count])


def limit_consistency(count: int = 200) -> dict:
    failures = []
    both_valid = 0
    for r, n, k in _limit_tuples(count):
        rep = hypergraph_bounds(r, n, k)
        t = threshold_t(r, k)
        main, alon, dens = rep["thm22Upper"], rep["alonUpper"], rep["limitDensity"]
        if main.value is None or main.value * rep.denominator != Fraction(binom(n, t)):
            failures.append((r, n, k, "product"))
        elif dens.value * binom(n, t) != main.value:
            failures.append((r, n, k, "density"))
        elif main.value > alon.value:
            failures.append((r, n, k, "improvement"))
        both_valid += main.valid and alon.valid
    return {"passed": not failures, "tuples": count, "bothValid": both_valid, "failures": failures,
            "lambdas": sorted({lambda_of(r, k) for r, _, k in _limit_tuples(count)})}


CRITERIA: list[tuple[int, str, Callable[[], dict], float]] = [
    (1, "exact code value f_3^4(5) = 64", exact_code_value, 30),
    (2, "exact hypergraph value f_3(7,3) = 7", exact_hypergraph_value, 10),
    (3, "matching-number closed form agrees with exact search", emc_oracle, 300),
    (4, "orthogonal-array strength certificates", oa_certificates, 10),
    (5, "large distance implies focal-free on 500 subcodes", distance_property, 60),
    (6, "packings are focal-free on 100 greedy packings", packing_property, 60),
    (7, "induced packings satisfy (i)-(v) and give focal-free objects", induced_validity, 300),
    (8, "constructions <= optimum <= valid upper bounds", sandwich, 600),
    (9, "upper bound / limit density consistency and improvement", limit_consistency, 10),
]

SUITES = {
    "acceptance": [c[0] for c in CRITERIA],
    "quick": [1, 2, 4, 6, 9],
}


def run_criterion(number: int) -> CriterionResult:
    for num, name, fn, limit in CRITERIA:
        if num == number:
            t0 = time.monotonic()
            detail = fn()
            elapsed = time.monotonic() - t0
            return CriterionResult(num, name, bool(detail.pop("passed")), detail, elapsed, limit)
    raise KeyError(f"no criterion {number}")


def run_suite(name: str) -> list[CriterionResult]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return [run_criterion(n) for n in SUITES[name]]
