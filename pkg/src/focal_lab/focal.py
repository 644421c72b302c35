"""Detecting r-focal configurations in uniform families and q-ary codes.

Both object kinds are handled through one view: fix a candidate focus ``A`` of
width ``w`` (``w = k`` positions of an edge, or ``w = n`` coordinates of a
word) and record, for every other member ``B``, the *difference mask* of the
positions of ``A`` that ``B`` misses (for codes: the coordinates where ``B``
disagrees). ``A`` is the focus of an r-focal configuration exactly when some
r-1 members miss no position twice.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .core import QaryCode, UniformFamily, binom

Obj = UniformFamily | QaryCode

DEFAULT_EXHAUSTIVE_THRESHOLD = 10_000
DEFAULT_PARTITION_CAP = 20_000


@dataclass(frozen=True)
class FocalWitness:
    kind: str
    focus: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]
    match_counts: tuple[int, ...]
    verified: bool = False

    @property
    def r(self) -> int:
        return len(self.members) + 1

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "r": self.r,
            "focus": list(self.focus),
            "members": [list(m) for m in self.members],
            "matchCounts": list(self.match_counts),
            "verified": self.verified,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass(frozen=True)
class OwnSubsetReport:
    item: tuple[int, ...]
    s: int
    own_count: int
    non_own: tuple[tuple[int, ...], ...]

    @property
    def total(self) -> int:
        return self.own_count + len(self.non_own)


def _kind(obj: Obj) -> str:
    return "family" if isinstance(obj, UniformFamily) else "code"


def is_focal_tuple(focus: Sequence[int], members: Sequence[Sequence[int]], kind: str = "family"):
    """Check the focal condition directly from the definition.

    Returns ``(is_focal, match_counts)`` where ``match_counts[j]`` counts the
    members containing the j-th element of the (sorted) focus, or agreeing
    with the focus in coordinate j for codes.
    """
    r = len(members) + 1
    if r < 3:
        raise ValueError("need at least two members (r >= 3)")
    if kind == "family":
        f = tuple(sorted(focus))
        ms = [frozenset(m) for m in members]
        if any(len(m) != len(f) for m in ms):
            raise ValueError("shape mismatch: all sets must have the same size")
        allsets = [frozenset(f)] + ms
        if len(set(allsets)) != r:
            raise ValueError("focal configurations need r distinct sets")
        counts = tuple(sum(x in m for m in ms) for x in f)
    elif kind == "code":
        f = tuple(focus)
        ms = [tuple(m) for m in members]
        if any(len(m) != len(f) for m in ms):
            raise ValueError("shape mismatch: all words must have the same length")
        if len(set([f] + ms)) != r:
            raise ValueError("focal configurations need r distinct words")
        counts = tuple(sum(m[i] == f[i] for m in ms) for i in range(len(f)))
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return all(c >= r - 2 for c in counts), counts


class _DiffView:
    """Difference masks of every member relative to a chosen focus."""

    def __init__(self, obj: Obj):
        self.obj = obj
        self.kind = _kind(obj)
        if self.kind == "family":
            self.items = list(obj.edges)
            self.width = obj.k
            inc = np.zeros((len(self.items), obj.n + 1), dtype=bool)
            for i, e in enumerate(self.items):
                inc[i, list(e)] = True
            self._inc = inc
        else:
            self.items = list(obj.words)
            self.width = obj.n
            self._w = np.asarray(self.items, dtype=np.int64).reshape(len(self.items), obj.n)
        self._weights = (1 << np.arange(self.width, dtype=np.int64))

    def __len__(self) -> int:
        return len(self.items)

    def masks(self, a: int) -> np.ndarray:
        """Masks of all members (index a included, where it is 0)."""
        if self.kind == "family":
            agree = self._inc[:, list(self.items[a])]
        else:
            agree = self._w == self._w[a]
        return (~agree).astype(np.int64) @ self._weights


@lru_cache(maxsize=256)
def _partitions(w: int, p: int) -> np.ndarray:
    """All partitions of {0..w-1} into p nonempty blocks, as rows of block masks.

    Generated from restricted growth strings in lexicographic order.
    """
    out: list[tuple[int, ...]] = []
    blocks = [0] * p

    def rec(i: int, used: int) -> None:
        if w - i < p - used:
            return
        if i == w:
            if used == p:
                out.append(tuple(blocks))
            return
        for b in range(min(used + 1, p)):
            blocks[b] |= 1 << i
            rec(i + 1, max(used, b + 1))
            blocks[b] &= ~(1 << i)

    rec(0, 0)
    return np.asarray(out, dtype=np.int64).reshape(len(out), p)


def stirling2(w: int, p: int) -> int:
    s = [[0] * (p + 1) for _ in range(w + 1)]
    s[0][0] = 1
    for i in range(1, w + 1):
        for j in range(1, min(i, p) + 1):
            s[i][j] = j * s[i - 1][j] + s[i - 1][j - 1]
    return s[w][p]


def _covered_table(masks: Iterable[int], w: int) -> np.ndarray:
    """cov[T] is True iff some mask is a subset of T."""
    cov = np.zeros(1 << w, dtype=bool)
    if not isinstance(masks, np.ndarray):
        masks = np.fromiter(masks, dtype=np.int64)
    cov[masks] = True
    for b in range(w):
        v = cov.reshape(-1, 2, 1 << b)
        v[:, 1, :] |= v[:, 0, :]
    return cov


def _disjoint_pick(masks: list[int], p: int) -> list[int] | None:
    """Indices of p pairwise disjoint masks among the minimal ones, or None."""
    uniq = sorted(set(masks), key=lambda m: (m.bit_count(), m))
    minimal: list[int] = []
    for m in uniq:
        if not any(x & m == x for x in minimal):
            minimal.append(m)
    chosen: list[int] = []

    def rec(start: int, used: int) -> bool:
        if len(chosen) == p:
            return True
        for i in range(start, len(minimal)):
            if minimal[i] & used == 0:
                chosen.append(minimal[i])
                if rec(i + 1, used | minimal[i]):
                    return True
                chosen.pop()
        return False

    if not rec(0, 0):
        return None
    return [masks.index(m) for m in chosen]


def _witness(view: _DiffView, a: int, idx: Sequence[int], r: int) -> FocalWitness:
    focus = view.items[a]
    members = [view.items[i] for i in idx]
    ok, counts = is_focal_tuple(focus, members, view.kind)
    if not ok:
        raise AssertionError(f"internal error: rejected witness {focus} {members}")
    return FocalWitness(view.kind, tuple(focus), tuple(tuple(m) for m in members), counts, True)


def _focus_partition(view: _DiffView, a: int, r: int, partition_cap: int) -> FocalWitness | None:
    p = r - 1
    w = view.width
    if w < p:
        return None
    allm = view.masks(a)
    others = np.delete(np.arange(len(view)), a)
    om = allm[others]
    if stirling2(w, p) <= partition_cap:
        parts = _partitions(w, p)
        cov = _covered_table(om, w)
        ok = cov[parts].all(axis=1)
        hit = np.flatnonzero(ok)
        if hit.size == 0:
            return None
        blocks = parts[hit[0]]
        idx = [int(others[np.flatnonzero((om & ~int(T)) == 0)[0]]) for T in blocks]
        return _witness(view, a, idx, r)
    pick = _disjoint_pick(om.tolist(), p)
    if pick is None:
        return None
    return _witness(view, a, [int(others[i]) for i in pick], r)


def _focus_exhaustive(view: _DiffView, a: int, r: int) -> FocalWitness | None:
    allm = view.masks(a).tolist()
    others = [i for i in range(len(view)) if i != a]
    om = [allm[i] for i in others]
    for combo in combinations(range(len(others)), r - 1):
        # a position missed by two members has match count r-3 < r-2
        seen = 0
        for j in combo:
            m = om[j]
            if seen & m:
                break
            seen |= m
        else:
            return _witness(view, a, [others[j] for j in combo], r)
    return None


def find_focal(
    obj: Obj,
    r: int,
    method: str = "auto",
    exhaustive_threshold: int = DEFAULT_EXHAUSTIVE_THRESHOLD,
    partition_cap: int = DEFAULT_PARTITION_CAP,
    foci: Iterable[int] | None = None,
) -> FocalWitness | None:
    """Return the first r-focal configuration of ``obj``, or None if it is r-focal-free.

    Foci are tried in canonical order. ``method`` is ``"partition"`` (test
    every partition of the focus into r-1 nonempty parts whose complements
    are non-own), ``"exhaustive"`` (scan every (r-1)-tuple of other members),
    or ``"auto"``, which scans exhaustively when ``C(|obj|-1, r-1)`` is at
    most ``exhaustive_threshold`` and uses the partition test otherwise.
    """
    if r < 3:
        raise ValueError("r must be >= 3")
    if method not in ("auto", "partition", "exhaustive"):
        raise ValueError(f"unknown method {method!r}")
    if len(obj) < r:
        return None
    if method == "auto":
        method = "exhaustive" if binom(len(obj) - 1, r - 1) <= exhaustive_threshold else "partition"
    view = _DiffView(obj)
    for a in (range(len(view)) if foci is None else foci):
        if method == "partition":
            w = _focus_partition(view, a, r, partition_cap)
        else:
            w = _focus_exhaustive(view, a, r)
        if w is not None:
            return w
    return None


def is_focal_free(obj: Obj, r: int, **kw) -> bool:
    return find_focal(obj, r, **kw) is None


def own_subsets(A: Sequence[int], family: UniformFamily, s: int) -> OwnSubsetReport:
    """Classify every s-subset of edge A as own/non-own with respect to ``family``."""
    A = tuple(sorted(A))
    if A not in set(family.edges):
        raise ValueError(f"{A} is not an edge of the family")
    if not 0 <= s <= family.k:
        raise ValueError(f"s must lie in [0, {family.k}]")
    others = [frozenset(B) for B in family.edges if B != A]
    non_own = []
    own = 0
    for T in combinations(A, s):
        ts = frozenset(T)
        if any(ts <= B for B in others):
            non_own.append(T)
        else:
            own += 1
    return OwnSubsetReport(A, s, own, tuple(non_own))


def own_subsequences(x: Sequence[int], code: QaryCode, s: int) -> OwnSubsetReport:
    """Classify every s-set of coordinates T (1-based) by whether x_T is own in ``code``."""
    x = tuple(x)
    if x not in set(code.words):
        raise ValueError(f"{x} is not a codeword")
    if not 0 <= s <= code.n:
        raise ValueError(f"s must lie in [0, {code.n}]")
    others = [y for y in code.words if y != x]
    non_own = []
    own = 0
    for T in combinations(range(code.n), s):
        if any(all(y[i] == x[i] for i in T) for y in others):
            non_own.append(tuple(i + 1 for i in T))
        else:
            own += 1
    return OwnSubsetReport(x, s, own, tuple(non_own))


def _own_restriction_flags(code: QaryCode, S: Sequence[int]) -> list[bool]:
    """For each word, whether its restriction to coordinates S (1-based) is own."""
    keys = [tuple(w[i - 1] for i in S) for w in code.words]
    counts: dict[tuple[int, ...], int] = {}
    for key in keys:
        counts[key] = counts.get(key, 0) + 1
    return [counts[key] == 1 for key in keys]


def us_profile(code: QaryCode, d: int) -> dict[tuple[int, ...], int]:
    """Map each (n-d)-set S of coordinates to |U_S|, the number of words whose restriction to S is own."""
    if not 0 <= d <= code.n:
        raise ValueError(f"d must lie in [0, {code.n}]")
    return {
        S: sum(_own_restriction_flags(code, S))
        for S in combinations(range(1, code.n + 1), code.n - d)
    }


def partition_cover_holds(code: QaryCode, partition: Sequence[Iterable[int]]) -> bool:
    """Whether every word lies in some U_{[n] minus T_i} for the given coordinate partition.

    This holds for every partition into nonempty parts when the code is
    (len(partition)+1)-focal-free.
    """
    parts = [frozenset(T) for T in partition]
    full = frozenset(range(1, code.n + 1))
    if any(not T for T in parts) or frozenset().union(*parts) != full or sum(map(len, parts)) != code.n:
        raise ValueError("not a partition of [n] into nonempty parts")
    covered = [False] * len(code)
    for T in parts:
        flags = _own_restriction_flags(code, sorted(full - T))
        covered = [c or f for c, f in zip(covered, flags)]
    return all(covered)
