"""Upper, lower and exact values for f_r(n, k) and f_r^q(n).

Every value is an exact rational together with a validity verdict (the
formula's preconditions) and a provenance flag: ``conjectural`` when it
depends on a matching number known only through the closed form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import (
    UniformFamily,
    binom,
    floor_frac,
    is_prime,
    factorize,
    lambda_of,
    smallest_prime_power,
    threshold_t,
)
from .designs import design_small, is_packing
from .focal import find_focal
from .matching import MatchingNumberResult, m_resolve

UPPER = "upper"
LOWER = "lower"
EXACT = "exact"
LIMIT = "limit"


@dataclass(frozen=True)
class BoundValue:
    name: str
    kind: str  # upper / lower / exact / limit
    value: Fraction | None
    valid: bool
    reason: str
    conjectural: bool = False

    @property
    def floor(self) -> int | None:
        return None if self.value is None else floor_frac(self.value)

    def to_dict(self) -> dict:
        v = self.value
        return {
            "kind": self.kind,
            "value": None if v is None else f"{v.numerator}/{v.denominator}" if v.denominator != 1 else str(v.numerator),
            "decimal": None if v is None else float(v),
            "floor": self.floor,
            "valid": self.valid,
            "reason": self.reason,
            "provenance": "conjectural" if self.conjectural else "exact",
        }


@dataclass(frozen=True)
class BoundReport:
    side: str  # "hypergraph" or "code"
    r: int
    n: int
    k: int | None
    q: int | None
    t: int
    lam: int
    matching: MatchingNumberResult
    denominator: int  # C(k,t) - m  (C(n,t) - m on the code side)
    values: dict[str, BoundValue] = field(default_factory=dict)

    def __getitem__(self, name: str) -> BoundValue:
        return self.values[name]

    def valid_upper(self) -> list[BoundValue]:
        """Valid values that bound the optimum from above (exact values included)."""
        return [b for b in self.values.values() if b.valid and b.kind in (UPPER, EXACT) and b.value is not None]

    def valid_lower(self) -> list[BoundValue]:
        return [b for b in self.values.values() if b.valid and b.kind in (LOWER, EXACT) and b.value is not None]

    def best_upper(self) -> int | None:
        ups = self.valid_upper()
        return min(b.floor for b in ups) if ups else None

    def to_dict(self) -> dict:
        params = {"r": self.r, "n": self.n}
        params["k" if self.side == "hypergraph" else "q"] = self.k if self.side == "hypergraph" else self.q
        return {
            "side": self.side,
            "params": params,
            "t": self.t,
            "lambda": self.lam,
            "m": self.matching.value,
            "mRegime": self.matching.regime.value,
            "mConjectural": self.matching.conjectural,
            "denominator": self.denominator,
            "values": {name: b.to_dict() for name, b in self.values.items()},
        }


def _m(k: int, s: int, lam: int) -> MatchingNumberResult:
    res = m_resolve(k, s, lam, classical=True)
    if s > 0 and not res.hypothesis_holds:
        # the consumption sites always have k >= s*lam; flag if that ever fails
        raise AssertionError(f"m({k},{s},{lam}) consumed outside k >= s*lam")
    return res


def hypergraph_bounds(r: int, n: int, k: int) -> BoundReport:
    """All bounds on f_r(n, k); preconditions are reported, never raised."""
    if r < 3 or k < 2 or n < k:
        raise ValueError(f"need r >= 3 and n >= k >= 2 (r={r}, n={n}, k={k})")
    t = threshold_t(r, k)
    lam = lambda_of(r, k)
    mres = _m(k, k - t, lam)
    m = mres.value
    conj = mres.conjectural
    ckt = binom(k, t)
    cnt = binom(n, t)
    D = ckt - m
    vals: dict[str, BoundValue] = {}

    vals["alonUpper"] = BoundValue("alonUpper", UPPER, Fraction((r - 1) * cnt, ckt), True, "holds for all 0 <= k <= n")
    vals["cheapLowerAsym"] = BoundValue(
        "cheapLowerAsym", LOWER, Fraction(cnt, ckt), False,
        "asymptotic only: (1-o(1)) times this value as n grows",
    )
    if D <= 0:
        why = f"degenerate: C(k,t) - m = {D}; here k < r-2 and every k-uniform family is r-focal-free"
        for name, kind in (("thm22Upper", UPPER), ("remark23Upper", UPPER), ("limitDensity", LIMIT)):
            vals[name] = BoundValue(name, kind, None, False, why, conj)
        vals["trivialExact"] = BoundValue("trivialExact", EXACT, Fraction(binom(n, k)), True,
                                          "k < r-2: no r-focal configuration fits in a k-set", False)
        n0 = None
    else:
        n0 = D * t + t - 1
        main = Fraction(cnt, D)
        ok = n >= max(k, n0)
        vals["thm22Upper"] = BoundValue(
            "thm22Upper", UPPER, main, ok,
            f"n0 = {n0}; " + ("n >= max(k, n0)" if ok else f"needs n >= {max(k, n0)}"), conj,
        )
        vals["remark23Upper"] = BoundValue("remark23Upper", UPPER, main + binom(n, t - 1), True,
                                           "holds for all n >= k", conj)
        vals["limitDensity"] = BoundValue("limitDensity", LIMIT, Fraction(1, D), True,
                                          "limit of f_r(n,k)/C(n,t) as n grows", conj)
    # exact value from a design when lam = 1
    if lam == 1 and n0 is not None:
        ok = n >= max(k, binom(k, k - t) * t + t - 1)
        design = design_small(n, k, t) if k > t and n > k else None
        if ok and design is not None:
            vals["prop13Exact"] = BoundValue("prop13Exact", EXACT, Fraction(cnt, ckt), True,
                                             "lam = 1, n >= max(k, n0), and an (n,k,t)-design exists in the catalog")
        else:
            why = []
            if not ok:
                why.append(f"needs n >= {max(k, n0)}")
            if design is None:
                why.append("no (n,k,t)-design in the catalog")
            vals["prop13Exact"] = BoundValue("prop13Exact", EXACT, Fraction(cnt, ckt), False, "; ".join(why))
    return BoundReport("hypergraph", r, n, k, None, t, lam, mres, D, vals)


def exact_code_conditions(r: int, n: int, q: int) -> dict[str, bool]:
    """Preconditions of the exact code value q^t, with p1^e1 the smallest prime-power factor of q."""
    pe = smallest_prime_power(q)
    return {
        "r-1 | n+1": (n + 1) % (r - 1) == 0,
        "2r-3 < n": 2 * r - 3 < n,
        f"n <= p1^e1 + 1 (p1^e1 = {pe})": n <= pe + 1,
        "q >= r-1": q >= r - 1,
    }


def _is_prime_power(q: int) -> bool:
    fac = factorize(q)
    return len(fac) == 1 and is_prime(fac[0][0])


def code_bounds(r: int, n: int, q: int) -> BoundReport:
    """All bounds on f_r^q(n); preconditions are reported, never raised."""
    if r < 3 or n < 2 or q < 2:
        raise ValueError(f"need r >= 3, n >= 2, q >= 2 (r={r}, n={n}, q={q})")
    t = threshold_t(r, n)
    lam = lambda_of(r, n)
    mres = _m(n, n - t, lam)
    m = mres.value
    conj = mres.conjectural
    cnt = binom(n, t)
    D = cnt - m
    qt = q ** t
    vals: dict[str, BoundValue] = {}

    vals["ahCodeUpper"] = BoundValue("ahCodeUpper", UPPER, Fraction((r - 1) * qt), True, "holds for all q, n")
    if D <= 0:
        why = f"degenerate: C(n,t) - m = {D}; here n < r-2 and every code is r-focal-free"
        for name, kind in (("thm33Upper", UPPER), ("remark3Upper", UPPER), ("codeLimitConstant", LIMIT)):
            vals[name] = BoundValue(name, kind, None, False, why, conj)
        vals["trivialExact"] = BoundValue("trivialExact", EXACT, Fraction(q ** n), True,
                                          "n < r-2: no r-focal configuration fits", False)
    else:
        const = Fraction(cnt, D)
        qmin = Fraction(t, n - t + 1) * D
        ok = q >= qmin
        vals["thm33Upper"] = BoundValue(
            "thm33Upper", UPPER, const * qt, ok,
            f"q threshold t/(n-t+1)*(C(n,t)-m) = {float(qmin):g}; " + ("met" if ok else "not met"), conj,
        )
        vals["remark3Upper"] = BoundValue("remark3Upper", UPPER, const * qt + binom(n, t - 1) * q ** (t - 1),
                                          True, "holds for all q", conj)
        vals["codeLimitConstant"] = BoundValue("codeLimitConstant", LIMIT, const, True,
                                               "limit of f_r^q(n)/q^t as q grows", conj)
    small_q_conds = {"q >= r-1": q >= r - 1, "r-1 | n+1": (n + 1) % (r - 1) == 0}
    vals["thm35Upper"] = BoundValue(
        "thm35Upper", UPPER, Fraction(qt), all(small_q_conds.values()),
        "; ".join(f"{c}: {'yes' if v else 'no'}" for c, v in small_q_conds.items()),
    )
    exact_conds = exact_code_conditions(r, n, q)
    vals["thm16Exact"] = BoundValue(
        "thm16Exact", EXACT, Fraction(qt), all(exact_conds.values()),
        "; ".join(f"{c}: {'yes' if v else 'no'}" for c, v in exact_conds.items()),
    )
    pp = _is_prime_power(q)
    vals["ahCodeLowerPrimePower"] = BoundValue(
        "ahCodeLowerPrimePower", LOWER, Fraction(qt), pp and q >= n,
        f"prime power: {'yes' if pp else 'no'}; q >= n: {'yes' if q >= n else 'no'}",
    )
    return BoundReport("code", r, n, None, q, t, lam, mres, D, vals)


class NotAPacking(ValueError):
    pass


def packing_is_focal_free_check(P: UniformFamily, r: int) -> bool:
    """Whether an (n,k,t)-packing with t = threshold_t(r,k) is r-focal-free, by direct search.

    Raises NotAPacking if two members share t or more points.
    """
    t = threshold_t(r, P.k)
    if not is_packing(P, t):
        raise NotAPacking(f"two members share >= {t} points")
    return find_focal(P, r) is None
