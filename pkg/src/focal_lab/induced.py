"""Induced packings of the F-from-G template and the focal-free objects they give.

The template: take G, a largest (k-t)-uniform family on [k] without lam
pairwise disjoint edges, and let F be the t-subsets of [k] whose complements
are not in G. An induced F-packing in C([n], t) is a set of edge-disjoint
copies of F whose vertex sets meet in at most t points, and never in an edge
of either copy when they meet in exactly t. The vertex sets of such a packing
form an r-focal-free k-uniform family.

On the code side the same template lives on the n coordinates, the host is
the complete n-partite t-uniform hypergraph with parts {i} x [q], and a
faithful copy is fixed by a word a in [q]^n: vertex set {(i, a_i)}, edges
{(i, a_i) : i in A} for A in F. The words then form an r-focal-free code.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from math import factorial

import numpy as np

from .core import QaryCode, UniformFamily, binom, edge_mask, lambda_of, threshold_t
from .focal import FocalWitness, find_focal
from .matching import m_resolve, matching_number

DEFAULT_TRIES_PER_SET = 24
ENUMERATE_WORDS_LIMIT = 200_000


@dataclass(frozen=True)
class Template:
    r: int
    k: int
    t: int
    lam: int
    F: tuple[tuple[int, ...], ...]
    G: tuple[tuple[int, ...], ...]
    m_value: int
    exact: bool  # False when m is only the conjectured closed form
    source: str  # "formula" or "bruteforce"

    @property
    def size(self) -> int:
        return len(self.F)

    def to_dict(self) -> dict:
        return {
            "r": self.r, "k": self.k, "t": self.t, "lambda": self.lam,
            "F": [list(e) for e in self.F], "G": [list(e) for e in self.G],
            "m": self.m_value, "exact": self.exact, "source": self.source,
        }


def _formula_extremal(k: int, s: int, lam: int) -> list[tuple[int, ...]]:
    """The larger of the two closed-form candidates; ties go to the first.

    All s-sets meeting {1..lam-1}, or all s-subsets of {1..s*lam-1}.
    """
    if lam == 1:
        return []
    if s == 0:
        return [()]
    meets = [e for e in combinations(range(1, k + 1), s) if e[0] <= lam - 1]
    inside = list(combinations(range(1, min(k, s * lam - 1) + 1), s))
    return meets if len(meets) >= len(inside) else inside


def template_F_from_G(r: int, k: int, prefer: str = "formula", cap: int = 100) -> Template:
    """Build F = C([k], t) minus the complements of an extremal G.

    ``prefer="formula"`` takes the closed-form candidate whenever it is known
    to be extremal; ``"bruteforce"`` takes the family found by exact search
    (when C(k, k-t) <= cap).
    """
    if prefer not in ("formula", "bruteforce"):
        raise ValueError(f"unknown preference {prefer!r}")
    t = threshold_t(r, k)
    lam = lambda_of(r, k)
    s = k - t
    res = m_resolve(k, s, lam, cap=cap, classical=prefer == "formula")
    cand = _formula_extremal(k, s, lam)
    if prefer == "bruteforce" and res.extremal_family is not None:
        G = list(res.extremal_family.edges)
        source = "bruteforce"
    elif res.exact_value is None or len(cand) == res.exact_value:
        G = cand
        source = "formula"
    elif res.extremal_family is not None:
        G = list(res.extremal_family.edges)
        source = "bruteforce"
    else:
        raise AssertionError(f"closed-form candidate has {len(cand)} edges but m = {res.exact_value}")
    if s > 0 and matching_number(G) >= lam:
        raise AssertionError("G contains lam pairwise disjoint edges")
    full = set(range(1, k + 1))
    Gc = {tuple(sorted(full - set(A))) for A in G}
    F = tuple(T for T in combinations(range(1, k + 1), t) if T not in Gc)
    # the complements of the non-template t-sets recover G
    back = sorted(tuple(sorted(full - set(T))) for T in combinations(range(1, k + 1), t) if T not in set(F))
    if back != sorted(G) or (s > 0 and matching_number(back) >= lam):
        raise AssertionError("template complement check failed")
    if not F:
        raise ValueError(f"empty template for r={r}, k={k}: C(k,t) - m = 0 (degenerate, k < r-2)")
    return Template(r, k, t, lam, F, tuple(G), len(G), not res.conjectural, source)


@dataclass(frozen=True)
class Copy:
    vertices: tuple  # sorted ints, or (coordinate, symbol) pairs on the multipartite host
    edges: frozenset  # frozensets of vertices
    embedding: tuple  # image of template vertex i (1-based) at position i-1


@dataclass
class InducedPacking:
    template: Template
    n: int
    t: int
    q: int | None  # part size of the multipartite host; None for C([n], t)
    copies: list[Copy] = field(default_factory=list)
    attempts: int = 0

    @property
    def faithful(self) -> bool:
        return self.q is not None

    def target(self) -> float:
        """C(n,t)/|F| (times q^t on the multipartite host): the asymptotic packing size."""
        base = binom(self.n, self.t) / self.template.size
        return base * (self.q ** self.t if self.faithful else 1)

    def ratio(self) -> float:
        return len(self.copies) / self.target()

    def family(self) -> UniformFamily:
        if self.faithful:
            raise ValueError("multipartite packings give codes, not families")
        return UniformFamily(self.n, self.template.k, tuple(c.vertices for c in self.copies))

    def code(self) -> QaryCode:
        if not self.faithful:
            raise ValueError("only multipartite packings give codes")
        return QaryCode(self.n, self.q, tuple(tuple(x for _, x in c.vertices) for c in self.copies))


def _copy_from_embedding(template: Template, phi: tuple) -> Copy:
    edges = frozenset(frozenset(phi[i - 1] for i in A) for A in template.F)
    return Copy(tuple(sorted(phi)), edges, tuple(phi))


def verify_induced_packing(P: InducedPacking) -> dict[str, bool]:
    """Check conditions (i)-(v) of an induced packing over every copy and every pair of copies."""
    T = P.template
    ok = {"i": True, "ii": True, "iii": True, "iv": True, "v": True}
    for c in P.copies:
        vs = set(c.vertices)
        if P.faithful:
            ok["i"] &= all(1 <= i <= P.n and 1 <= x <= P.q for i, x in vs)
            ok["i"] &= all(len(e) == P.t and len({i for i, _ in e}) == P.t for e in c.edges)
            # faithful: template vertex i lands in part i
            ok["ii"] &= len(c.embedding) == T.k and all(c.embedding[i][0] == i + 1 for i in range(T.k))
        else:
            ok["i"] &= all(1 <= v <= P.n for v in vs) and all(len(e) == P.t for e in c.edges)
            ok["ii"] &= len(c.embedding) == T.k
        ok["i"] &= all(e <= vs for e in c.edges)
        ok["ii"] &= len(set(c.embedding)) == T.k and set(c.embedding) == vs
        ok["ii"] &= c.edges == _copy_from_embedding(T, c.embedding).edges
    for a, b in combinations(P.copies, 2):
        if a.edges & b.edges:
            ok["iii"] = False
        inter = frozenset(a.vertices) & frozenset(b.vertices)
        if len(inter) > P.t:
            ok["iv"] = False
        elif len(inter) == P.t and (inter in a.edges or inter in b.edges):
            ok["v"] = False
    return ok


def _greedy_complete(template: Template, n: int, rng: random.Random, tries_per_set: int) -> InducedPacking:
    k, t = template.k, template.t
    P = InducedPacking(template, n, t, None)
    Fsets = [frozenset(A) for A in template.F]
    accepted: list[tuple[int, frozenset, frozenset]] = []  # (vertex mask, vertex set, edges)
    cands = list(combinations(range(1, n + 1), k))
    rng.shuffle(cands)
    all_perms = factorial(k) <= tries_per_set
    for V in cands:
        P.attempts += 1
        vm = edge_mask(V)
        vset = frozenset(V)
        forbidden: list[frozenset] = []
        fits = True
        for wm, wset, wedges in accepted:
            c = (vm & wm).bit_count()
            if c > t:
                fits = False
                break
            if c == t:
                inter = vset & wset
                if inter in wedges:
                    fits = False
                    break
                forbidden.append(inter)
        if not fits:
            continue
        if all_perms:
            orders = list(permutations(V))
            rng.shuffle(orders)
        else:
            orders = []
            for _ in range(tries_per_set):
                o = list(V)
                rng.shuffle(o)
                orders.append(tuple(o))
        for phi in orders:
            pos = {v: i + 1 for i, v in enumerate(phi)}
            if all(frozenset(pos[v] for v in I) not in Fsets for I in forbidden):
                cp = _copy_from_embedding(template, phi)
                P.copies.append(cp)
                accepted.append((vm, vset, cp.edges))
                break
    return P


def _greedy_faithful(template: Template, n: int, q: int, rng: random.Random, attempts: int | None) -> InducedPacking:
    t = template.t
    if template.k != n:
        raise ValueError(f"faithful packings need a template on the n = {n} coordinates (got k = {template.k})")
    P = InducedPacking(template, n, t, q)
    Fcoords = {frozenset(i - 1 for i in A) for A in template.F}
    if q ** n <= ENUMERATE_WORDS_LIMIT and attempts is None:
        cands = [tuple(w) for w in product(range(1, q + 1), repeat=n)]
        rng.shuffle(cands)
    else:
        cands = [tuple(rng.randrange(1, q + 1) for _ in range(n)) for _ in range(attempts or 20_000)]
    words = np.zeros((len(cands), n), dtype=np.int64)
    m = 0
    for a in cands:
        P.attempts += 1
        arr = np.asarray(a, dtype=np.int64)
        if m:
            agree = words[:m] == arr
            cnt = agree.sum(axis=1)
            if (cnt > t).any():
                continue
            bad = False
            for j in np.flatnonzero(cnt == t):
                if frozenset(np.flatnonzero(agree[j]).tolist()) in Fcoords:
                    bad = True
                    break
            if bad:
                continue
        words[m] = arr
        m += 1
        phi = tuple((i + 1, a[i]) for i in range(n))
        P.copies.append(_copy_from_embedding(template, phi))
    return P


def induced_packing_greedy(
    n: int,
    template: Template,
    seed: int = 0,
    faithful: bool = False,
    q: int | None = None,
    tries_per_set: int = DEFAULT_TRIES_PER_SET,
    attempts: int | None = None,
) -> InducedPacking:
    """Seeded randomized greedy induced packing; the result is verified against (i)-(v).

    Host C([n], t): k-subsets of [n] are visited in shuffled order, and for
    each up to ``tries_per_set`` vertex orders are tried as embeddings.
    Multipartite host (``faithful``): words of [q]^n are visited in shuffled
    order (or ``attempts`` random words when the cube is large).
    """
    rng = random.Random(seed)
    if faithful:
        if q is None or q < 1:
            raise ValueError("faithful packings need the part size q")
        P = _greedy_faithful(template, n, q, rng, attempts)
    else:
        if n < template.k:
            raise ValueError(f"need n >= k (n={n}, k={template.k})")
        P = _greedy_complete(template, n, rng, tries_per_set)
    checks = verify_induced_packing(P)
    if not all(checks.values()):
        raise AssertionError(f"greedy packing violates {[c for c, v in checks.items() if not v]}")
    return P


def refute_witness(P: InducedPacking, w: FocalWitness) -> str:
    """Run the focal-freeness argument on a would-be witness and name the step that breaks.

    Steps: the differences from the focus are pairwise disjoint; each has
    size >= k - t; at least lam of them have size exactly k - t; those
    t-point overlaps avoid the focus copy's edges; and then lam disjoint
    complements lie in G, which is impossible.
    """
    T = P.template
    k, t, lam = T.k, T.t, T.lam
    if P.faithful:
        focus = tuple(w.focus)
        members = [tuple(m) for m in w.members]
        diffs = [frozenset(i for i in range(P.n) if m[i] != focus[i]) for m in members]
        inters = [frozenset(range(P.n)) - d for d in diffs]
        # overlap as vertices of the host
        fcopy = next(c for c in P.copies if tuple(x for _, x in c.vertices) == focus)
        as_vertices = [frozenset((i + 1, focus[i]) for i in I) for I in inters]
    else:
        fv = frozenset(w.focus)
        diffs = [fv - frozenset(m) for m in w.members]
        inters = [fv & frozenset(m) for m in w.members]
        fcopy = next(c for c in P.copies if frozenset(c.vertices) == fv)
        as_vertices = inters
    if any(a & b for a, b in combinations(diffs, 2)):
        return "differences not pairwise disjoint"
    if any(len(d) < k - t for d in diffs):
        return "overlap larger than t (condition iv)"
    tight = [i for i, d in enumerate(diffs) if len(d) == k - t]
    if len(tight) < lam:
        return "fewer than lam differences of size k - t"
    if any(as_vertices[i] in fcopy.edges for i in tight):
        return "t-point overlap is an edge of the focus copy (condition v)"
    return "lam pairwise disjoint complements of non-template t-sets (contradicts the choice of G)"


@dataclass
class InducedBuild:
    packing: InducedPacking
    seed: int
    restarts: int
    seeds_tried: list[int]
    focal_free: bool

    @property
    def size(self) -> int:
        return len(self.packing.copies)

    def to_dict(self) -> dict:
        P = self.packing
        return {
            "size": self.size,
            "target": P.target(),
            "ratio": P.ratio(),
            "seed": self.seed,
            "restarts": self.restarts,
            "seedsTried": self.seeds_tried,
            "template": P.template.to_dict(),
            "faithful": P.faithful,
            "inducedChecks": verify_induced_packing(P),
            "focalFree": self.focal_free,
        }


def _restart_seeds(seed: int, restarts: int) -> list[int]:
    return [seed + 1_000_003 * i for i in range(max(1, restarts))]


def _best(packings: list[InducedPacking], key) -> InducedPacking:
    # largest wins; ties go to the canonically smallest object
    return min(packings, key=lambda P: (-len(P.copies), key(P)))


def build_induced_family(r: int, n: int, k: int, seed: int = 0, restarts: int = 1,
                         prefer: str = "formula") -> InducedBuild:
    T = template_F_from_G(r, k, prefer=prefer)
    seeds = _restart_seeds(seed, restarts)
    runs = [induced_packing_greedy(n, T, seed=s) for s in seeds]
    P = _best(runs, lambda P: P.family().edges)
    fam = P.family()
    w = find_focal(fam, r)
    if w is not None:
        raise AssertionError(f"induced-packing family has a focal configuration; argument breaks at: {refute_witness(P, w)}")
    return InducedBuild(P, seed, restarts, seeds, True)


def build_induced_code(r: int, n: int, q: int, seed: int = 0, restarts: int = 1,
                       prefer: str = "formula", attempts: int | None = None) -> InducedBuild:
    T = template_F_from_G(r, n, prefer=prefer)
    seeds = _restart_seeds(seed, restarts)
    runs = [induced_packing_greedy(n, T, seed=s, faithful=True, q=q, attempts=attempts) for s in seeds]
    P = _best(runs, lambda P: P.code().words)
    code = P.code()
    w = find_focal(code, r)
    if w is not None:
        raise AssertionError(f"induced-packing code has a focal configuration; argument breaks at: {refute_witness(P, w)}")
    return InducedBuild(P, seed, restarts, seeds, True)


def focal_free_family_build(r: int, n: int, k: int, seed: int = 0, restarts: int = 1) -> UniformFamily:
    """The vertex sets of a greedy induced packing of the F-from-G template, verified r-focal-free."""
    return build_induced_family(r, n, k, seed, restarts).packing.family()


def focal_free_code_build_packing(r: int, n: int, q: int, seed: int = 0, restarts: int = 1) -> QaryCode:
    """The words of a greedy faithful induced packing, verified r-focal-free."""
    return build_induced_code(r, n, q, seed, restarts).packing.code()
