"""Orthogonal arrays OA(t, n, q) and the codes they give.

An OA(t, n, q) here is an ``n x q**t`` matrix over the symbols ``1..q`` in
which every choice of t rows shows each vector of ``[q]^t`` exactly once as a
column. Prime-power orders come from polynomial evaluation; other orders are
obtained by composing the arrays for the prime-power factors.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations, product

import numpy as np

from .core import QaryCode, binom, factorize, min_distance, smallest_prime_power, threshold_t
from .fields import PrimePowerField, field_make
from .focal import find_focal

DEFAULT_CERT_CAP = 2_000_000
DEFAULT_SAMPLE = 200


@dataclass(frozen=True)
class StrengthCertificate:
    mode: str  # "full" or "sampled"
    subsets_checked: int
    subsets_total: int
    passed: bool
    max_agreement: int

    @property
    def coverage(self) -> float:
        return self.subsets_checked / self.subsets_total if self.subsets_total else 1.0

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "subsetsChecked": self.subsets_checked,
            "subsetsTotal": self.subsets_total,
            "coverage": self.coverage,
            "passed": self.passed,
            "maxAgreement": self.max_agreement,
        }


@dataclass(frozen=True)
class OrthogonalArray:
    t: int
    n: int
    q: int
    matrix: np.ndarray = field(repr=False, compare=False)
    certificate: StrengthCertificate | None = field(default=None, compare=False)

    @property
    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in col) for col in self.matrix.T]


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.setflags(write=False)
    return a


def max_column_agreement(matrix: np.ndarray) -> int:
    """Largest number of rows in which two distinct columns agree (exact pairwise scan)."""
    cols = matrix.T
    best = 0
    for i in range(len(cols) - 1):
        agree = (cols[i + 1:] == cols[i]).sum(axis=1)
        if agree.size:
            best = max(best, int(agree.max()))
    return best


def _subset_ok(matrix: np.ndarray, rows: tuple[int, ...], q: int) -> bool:
    sub = matrix[list(rows)] - 1
    keys = np.zeros(sub.shape[1], dtype=np.int64)
    for row in sub:
        keys = keys * q + row
    return np.unique(keys).size == q ** len(rows) == sub.shape[1]


def certify(
    matrix: np.ndarray,
    t: int,
    q: int,
    cap: int = DEFAULT_CERT_CAP,
    sample: int = DEFAULT_SAMPLE,
    seed: int = 0,
) -> StrengthCertificate:
    """Check the strength-t property: fully when C(n,t)*q^t <= cap, else on a seeded sample of row subsets."""
    n, ncols = matrix.shape
    if ncols != q ** t:
        return StrengthCertificate("full", 0, binom(n, t), False, n)
    if matrix.size and (matrix.min() < 1 or matrix.max() > q):
        return StrengthCertificate("full", 0, binom(n, t), False, n)
    total = binom(n, t)
    if total * q ** t <= cap:
        subsets = list(combinations(range(n), t))
        mode = "full"
    else:
        rng = random.Random(seed)
        subsets = {tuple(sorted(rng.sample(range(n), t))) for _ in range(sample)}
        subsets = sorted(subsets)
        mode = "sampled"
    passed = all(_subset_ok(matrix, rows, q) for rows in subsets)
    agree = max_column_agreement(matrix)
    passed = passed and agree <= t - 1
    return StrengthCertificate(mode, len(subsets), total, passed, agree)


def _make(t: int, n: int, q: int, matrix: np.ndarray, verify: bool) -> OrthogonalArray:
    matrix = _freeze(matrix)
    cert = certify(matrix, t, q) if verify else None
    if cert is not None and not cert.passed:
        raise AssertionError(f"constructed array fails the OA({t},{n},{q}) certificate: {cert}")
    return OrthogonalArray(t, n, q, matrix, cert)


def oa_prime_power(t: int, n: int, fld: PrimePowerField, verify: bool = True) -> OrthogonalArray:
    """Evaluation construction over GF(q).

    Rows are evaluation points (field elements in increasing order, then the
    point at infinity, which reads the coefficient of x^(t-1)); columns are
    the polynomials of degree < t, enumerated by their coefficient vectors
    (c_0, ..., c_{t-1}) in lexicographic order.
    """
    q = fld.q
    if not 1 <= t <= q:
        raise ValueError(f"need 1 <= t <= q (t={t}, q={q})")
    if not t <= n <= q + 1:
        raise ValueError(f"need t <= n <= q+1 (t={t}, n={n}, q={q})")
    polys = np.asarray(list(product(range(q), repeat=t)), dtype=np.int64)  # (q^t, t)
    mat = np.zeros((n, q ** t), dtype=np.int64)
    npts = min(n, q)
    for row, x in enumerate(range(npts)):
        acc = np.zeros(q ** t, dtype=np.int64)
        for j in range(t - 1, -1, -1):
            acc = fld.add_table[fld.mul_table[acc, x], polys[:, j]]
        mat[row] = acc
    if n == q + 1:
        mat[q] = polys[:, t - 1]
    return _make(t, n, q, mat + 1, verify)


def trivial_oa(t: int, n: int) -> OrthogonalArray:
    """The OA(t, n, 1): a single all-ones column."""
    return _make(t, n, 1, np.ones((n, 1), dtype=np.int64), True)


def oa_compose(A: OrthogonalArray, B: OrthogonalArray, verify: bool = True) -> OrthogonalArray:
    """Symbol-pairing product: columns are all pairs (a, b); symbol (x, y) becomes (x-1)*q_B + y."""
    if A.t != B.t or A.n != B.n:
        raise ValueError(f"shape mismatch: OA({A.t},{A.n},{A.q}) vs OA({B.t},{B.n},{B.q})")
    ma, mb = A.matrix, B.matrix
    left = np.repeat(ma, mb.shape[1], axis=1)
    right = np.tile(mb, (1, ma.shape[1]))
    return _make(A.t, A.n, A.q * B.q, (left - 1) * B.q + right, verify)


def oa_exists_by_construction(t: int, n: int, q: int) -> bool:
    """Whether the evaluation + composition route applies: t <= p1^e1 and t <= n <= p1^e1 + 1."""
    if q < 2:
        return False
    pe = smallest_prime_power(q)
    return 1 <= t <= pe and t <= n <= pe + 1


def oa_for_order(t: int, n: int, q: int, verify: bool = True) -> OrthogonalArray:
    """OA(t, n, q) for any q whose smallest prime-power factor p1^e1 has t <= p1^e1 and n <= p1^e1 + 1.

    Factors are composed left to right in increasing prime-power order.
    """
    if not oa_exists_by_construction(t, n, q):
        raise ValueError(f"no OA({t},{n},{q}) by evaluation + composition "
                         f"(need t <= p1^e1 = {smallest_prime_power(q) if q >= 2 else '-'} and t <= n <= p1^e1 + 1)")
    parts = [oa_prime_power(t, n, field_make(p, e), verify=verify) for p, e in factorize(q)]
    return reduce(lambda a, b: oa_compose(a, b, verify=verify), parts)


def code_from_oa(A: OrthogonalArray, verify_distance: bool = True, cap: int = 20_000) -> QaryCode:
    """The columns of A as a code of length n; d >= n - t + 1 is checked exactly below ``cap`` words."""
    code = QaryCode(A.n, A.q, tuple(A.columns))
    if len(code) != A.q ** A.t:
        raise AssertionError("OA has repeated columns")
    if verify_distance and len(code) <= cap:
        d = min_distance(code)
        if d is not None and d < A.n - A.t + 1:
            raise AssertionError(f"code distance {d} below n - t + 1 = {A.n - A.t + 1}")
    return code


def oa_code_preconditions(r: int, n: int, q: int) -> dict[str, bool]:
    pe = smallest_prime_power(q) if q >= 2 else 0
    return {
        "r-1 | n+1": (n + 1) % (r - 1) == 0,
        "2r-3 < n": 2 * r - 3 < n,
        "n <= p1^e1 + 1": n <= pe + 1,
        "q >= r-1": q >= r - 1,
    }


class PreconditionError(ValueError):
    def __init__(self, failed: list[str]):
        super().__init__("preconditions unmet: " + ", ".join(failed))
        self.failed = failed


def focal_free_code_build(r: int, n: int, q: int, check_cap: int = 10_000) -> QaryCode:
    """A code of size q^t, t = ceil((r-2)n/(r-1)), built from an OA(t, n, q).

    Its minimum distance n - t + 1 exceeds floor(n/(r-1)), which makes it
    r-focal-free; both facts are re-checked (the focal scan runs when the code
    has at most ``check_cap`` words).
    """
    pre = oa_code_preconditions(r, n, q)
    failed = [name for name, ok in pre.items() if not ok]
    if failed:
        raise PreconditionError(failed)
    t = threshold_t(r, n)
    code = code_from_oa(oa_for_order(t, n, q), verify_distance=False)
    d = min_distance(code)
    if d is not None and d < n - t + 1:
        raise AssertionError(f"code distance {d} below n - t + 1 = {n - t + 1}")
    if d is None or d <= n // (r - 1):
        raise AssertionError(f"distance {d} does not exceed floor(n/(r-1)) = {n // (r - 1)}")
    if len(code) <= check_cap:
        w = find_focal(code, r, method="partition")
        if w is not None:
            raise AssertionError(f"OA code contains a focal configuration: {w}")
    return code
