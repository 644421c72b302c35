"""Small explicit designs and seeded greedy packings.

An (n, k, t)-packing is a k-uniform family on [n] whose members pairwise
share fewer than t points; it is a design when it has C(n,t)/C(k,t) members,
i.e. it covers every t-set exactly once.
"""

from __future__ import annotations

import random
from itertools import combinations

from .core import UniformFamily, binom, edge_mask


def fano_plane() -> UniformFamily:
    """The lines {i, i+1, i+3} mod 7, relabelled to [7]."""
    lines = [tuple(sorted((i + d) % 7 + 1 for d in (0, 1, 3))) for i in range(7)]
    return UniformFamily(7, 3, tuple(lines))


def bose_sts(v: int) -> UniformFamily:
    """Steiner triple system for v = 3 (mod 6) from the idempotent commutative quasigroup on Z_{v/3}."""
    if v % 6 != 3:
        raise ValueError("Bose construction needs v = 3 (mod 6)")
    m = v // 3
    half = (m + 1) // 2

    def pt(x: int, i: int) -> int:
        return (i % 3) * m + x + 1

    def op(x: int, y: int) -> int:
        return ((x + y) * half) % m

    blocks = [(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(m)]
    for x, y in combinations(range(m), 2):
        for i in range(3):
            blocks.append((pt(x, i), pt(y, i), pt(op(x, y), i + 1)))
    return UniformFamily(v, 3, tuple(tuple(sorted(b)) for b in blocks))


def skolem_sts(v: int) -> UniformFamily:
    """Steiner triple system for v = 1 (mod 6) from the half-idempotent commutative quasigroup on Z_{2m}."""
    if v % 6 != 1 or v < 7:
        raise ValueError("Skolem construction needs v = 1 (mod 6), v >= 7")
    m = (v - 1) // 6
    order = 2 * m
    inf = v

    def pt(x: int, i: int) -> int:
        return (i % 3) * order + x + 1

    def op(x: int, y: int) -> int:
        s = (x + y) % order
        return s // 2 + m * (s % 2)

    blocks = [(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(m)]
    for x in range(m):
        for i in range(3):
            blocks.append((inf, pt(x + m, i), pt(x, i + 1)))
    for x, y in combinations(range(order), 2):
        for i in range(3):
            blocks.append((pt(x, i), pt(y, i), pt(op(x, y), i + 1)))
    return UniformFamily(v, 3, tuple(tuple(sorted(b)) for b in blocks))


def sqs8() -> UniformFamily:
    """The (8,4,3) design: Fano lines plus the point 8, and the complements of the lines in [7]."""
    lines = fano_plane().edges
    full = set(range(1, 8))
    blocks = [tuple(sorted(L + (8,))) for L in lines]
    blocks += [tuple(sorted(full - set(L))) for L in lines]
    return UniformFamily(8, 4, tuple(blocks))


def is_packing(fam: UniformFamily, t: int) -> bool:
    """Whether every two distinct members share fewer than t points."""
    masks = fam.masks()
    return all((a & b).bit_count() < t for a, b in combinations(masks, 2))


def is_design(fam: UniformFamily, t: int) -> bool:
    """Exact check that every t-subset of [n] lies in exactly one member."""
    seen: set[tuple[int, ...]] = set()
    for e in fam.edges:
        for T in combinations(e, t):
            if T in seen:
                return False
            seen.add(T)
    return len(seen) == binom(fam.n, t)


def design_small(n: int, k: int, t: int) -> UniformFamily | None:
    """An explicit (n, k, t)-design from the built-in catalog, or None.

    Catalog: trivial designs (k = t: all t-sets; n = k: one block; t = 1 with
    k | n: a partition), Steiner triple systems for every admissible v (Fano
    for v = 7, Bose for v = 3 mod 6, Skolem for v = 1 mod 6), and the (8,4,3)
    design. Every output is verified as an exact design.
    """
    if not 1 <= t <= k <= n:
        return None
    fam: UniformFamily | None = None
    if k == t:
        fam = UniformFamily.complete(n, k)
    elif n == k:
        fam = UniformFamily(n, k, (tuple(range(1, n + 1)),))
    elif t == 1:
        if n % k == 0:
            fam = UniformFamily(n, k, tuple(tuple(range(i + 1, i + k + 1)) for i in range(0, n, k)))
    elif (k, t) == (3, 2):
        if n == 7:
            fam = fano_plane()
        elif n % 6 == 3:
            fam = bose_sts(n)
        elif n % 6 == 1:
            fam = skolem_sts(n)
    elif (n, k, t) == (8, 4, 3):
        fam = sqs8()
    if fam is None:
        return None
    if len(fam) * binom(k, t) != binom(n, t) or not is_design(fam, t):
        raise AssertionError(f"catalog entry ({n},{k},{t}) failed design verification")
    return fam


def greedy_packing(n: int, k: int, t: int, seed: int = 0) -> UniformFamily:
    """Seeded randomized greedy (n, k, t)-packing.

    The k-subsets of [n] are shuffled, and each is kept when it shares at most
    t-1 points with every kept one. No optimality is claimed.
    """
    if not n >= k > t >= 2:
        raise ValueError(f"need n >= k > t >= 2 (n={n}, k={k}, t={t})")
    cands = list(combinations(range(1, n + 1), k))
    random.Random(seed).shuffle(cands)
    kept: list[tuple[int, ...]] = []
    masks: list[int] = []
    for e in cands:
        m = edge_mask(e)
        if all((m & x).bit_count() < t for x in masks):
            kept.append(e)
            masks.append(m)
    fam = UniformFamily(n, k, tuple(kept))
    if not is_packing(fam, t):
        raise AssertionError("greedy output is not a packing")
    return fam
