"""Ground types and parameter arithmetic shared by every other module.

Vertices and symbols are 1-based throughout the public API: a family lives on
``[n] = {1, ..., n}`` and a code on ``[q]^n`` with symbols ``1..q``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Sequence


def _require_r(r: int) -> None:
    if r < 3:
        raise ValueError(f"focal order r must be >= 3, got {r}")


def threshold_t(r: int, k: int) -> int:
    """Return ceil((r-2)k/(r-1)), computed as k - floor(k/(r-1))."""
    _require_r(r)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    t = k - k // (r - 1)
    # integer ceiling of (r-2)k/(r-1), kept as a cross-check of the closed form
    assert t == -((-(r - 2) * k) // (r - 1))
    return t


def lambda_of(r: int, k: int) -> int:
    """The unique lam in [r-1] with k + lam == 0 (mod r-1)."""
    _require_r(r)
    lam = (-k) % (r - 1)
    if lam == 0:
        lam = r - 1
    t = threshold_t(r, k) if k >= 1 else 0
    if k >= 1:
        assert lam * (k - t) + (r - 1 - lam) * (k - t + 1) == k
    return lam


def binom(n: int, k: int) -> int:
    """Exact binomial coefficient; 0 when k > n or either argument is negative."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


@dataclass(frozen=True)
class ExactParams:
    t: int
    lam: int

    @classmethod
    def of(cls, r: int, k: int) -> "ExactParams":
        return cls(threshold_t(r, k), lambda_of(r, k))


@dataclass(frozen=True)
class Params:
    r: int
    n: int
    k: int | None = None
    q: int | None = None

    def __post_init__(self) -> None:
        _require_r(self.r)
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.k is not None:
            if self.k < 2:
                raise ValueError("k must be >= 2")
            if self.n < self.k:
                raise ValueError(f"hypergraph side requires n >= k (n={self.n}, k={self.k})")
        if self.q is not None and self.q < 2:
            raise ValueError("q must be >= 2")


def edge_mask(edge: Iterable[int]) -> int:
    m = 0
    for v in edge:
        m |= 1 << (v - 1)
    return m


@dataclass(frozen=True)
class UniformFamily:
    """A k-uniform family on [n]; edges are sorted tuples kept in lexicographic order."""

    n: int
    k: int
    edges: tuple[tuple[int, ...], ...] = ()
    require_cover: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        canon = []
        for e in self.edges:
            s = tuple(sorted(e))
            if len(set(s)) != self.k or len(s) != self.k:
                raise ValueError(f"edge {e!r} does not have exactly {self.k} distinct elements")
            if s[0] < 1 or s[-1] > self.n:
                raise ValueError(f"edge {e!r} has an element outside [1, {self.n}]")
            canon.append(s)
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise ValueError(f"duplicate edge {a!r}")
        if self.require_cover:
            covered = {v for e in canon for v in e}
            missing = set(range(1, self.n + 1)) - covered
            if missing:
                raise ValueError(f"vertices {sorted(missing)} are covered by no edge")
        object.__setattr__(self, "edges", tuple(canon))

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def __contains__(self, edge) -> bool:
        return tuple(sorted(edge)) in set(self.edges)

    def masks(self) -> list[int]:
        return [edge_mask(e) for e in self.edges]

    def index(self, edge: Sequence[int]) -> int:
        return self.edges.index(tuple(sorted(edge)))

    def with_edges(self, edges: Iterable[Sequence[int]]) -> "UniformFamily":
        return UniformFamily(self.n, self.k, tuple(tuple(e) for e in edges))

    @classmethod
    def complete(cls, n: int, k: int) -> "UniformFamily":
        return cls(n, k, tuple(combinations(range(1, n + 1), k)))


@dataclass(frozen=True)
class QaryCode:
    """A duplicate-free set of words in [q]^n, kept in lexicographic order."""

    n: int
    q: int
    words: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self) -> None:
        canon = []
        for w in self.words:
            w = tuple(int(x) for x in w)
            if len(w) != self.n:
                raise ValueError(f"word {w!r} does not have length {self.n}")
            if any(x < 1 or x > self.q for x in w):
                raise ValueError(f"word {w!r} has a symbol outside [1, {self.q}]")
            canon.append(w)
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise ValueError(f"duplicate word {a!r}")
        object.__setattr__(self, "words", tuple(canon))

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __contains__(self, word) -> bool:
        return tuple(word) in set(self.words)

    def index(self, word: Sequence[int]) -> int:
        return self.words.index(tuple(word))

    def with_words(self, words: Iterable[Sequence[int]]) -> "QaryCode":
        return QaryCode(self.n, self.q, tuple(tuple(w) for w in words))


def hamming(x: Sequence[int], y: Sequence[int]) -> int:
    return sum(a != b for a, b in zip(x, y))


def min_distance(code: QaryCode) -> int | None:
    """Minimum Hamming distance by a full pairwise scan; None for fewer than two words."""
    if len(code) < 2:
        return None
    import numpy as np

    w = np.asarray(code.words, dtype=np.int64)
    best = code.n
    for i in range(len(w) - 1):
        d = (w[i + 1:] != w[i]).sum(axis=1).min()
        if d < best:
            best = int(d)
    return best


def floor_frac(x: Fraction) -> int:
    return x.numerator // x.denominator


def factorize(q: int) -> list[tuple[int, int]]:
    """Trial-division factorization as (p, e) pairs ordered by increasing p**e."""
    if q < 2:
        raise ValueError("factorize needs q >= 2")
    out = []
    m, p = q, 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1
    if m > 1:
        out.append((m, 1))
    out.sort(key=lambda pe: pe[0] ** pe[1])
    return out


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return factorize(p) == [(p, 1)]


def smallest_prime_power(q: int) -> int:
    """p_1^{e_1}: the smallest prime-power factor in the canonical factorization of q."""
    p, e = factorize(q)[0]
    return p ** e
