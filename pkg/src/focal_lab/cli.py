"""focal-lab: bounds, constructions, verification and exact search for focal-free families and codes.

Exit codes: 0 success / focal-free, 1 semantic negative (a focal
configuration, a failed criterion, unmet preconditions), 2 input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

from . import __version__
from .acceptance import SUITES, run_criterion
from .bounds import code_bounds, hypergraph_bounds
from .core import QaryCode, UniformFamily, binom, threshold_t
from .designs import design_small, greedy_packing, is_packing
from .focal import find_focal
from .induced import build_induced_code, build_induced_family, template_F_from_G
from .io import FormatError, format_code, format_family, read_any
from .matching import CapExceeded, m_resolve
from .oa import PreconditionError, code_from_oa, focal_free_code_build, oa_exists_by_construction, oa_for_order
from .search import exact_f, exact_f_code

SCHEMA_PREFIX = "focal-lab"
SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


def schema_id(kind: str) -> str:
    return f"{SCHEMA_PREFIX}/{kind}/v{SCHEMA_VERSION}"


@dataclass
class RunManifest:
    command: list[str]
    params: dict
    seeds: list[int]
    version: str
    verification: dict
    wall_time: float
    threads: int
    artifacts: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["schema"] = schema_id("manifest")
        d["wallTime"] = d.pop("wall_time")
        return d


def _threads(args) -> int:
    if getattr(args, "threads", None):
        if args.threads < 1:
            raise UsageError("--threads must be >= 1")
        return args.threads
    env = os.environ.get("FOCAL_LAB_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"FOCAL_LAB_THREADS must be an integer, got {env!r}")
    return os.cpu_count() or 1


def _dump(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2)


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(_dump(payload))
    else:
        print(text)


def _write_artifact(args, obj: UniformFamily | QaryCode, params: dict, seeds: list[int],
                    verification: dict, t0: float) -> list[str]:
    body = format_family(obj) if isinstance(obj, UniformFamily) else format_code(obj)
    if not args.out:
        if not args.json:
            sys.stdout.write(body)
        return []
    path = Path(args.out)
    path.write_text(body, encoding="utf-8")
    man = RunManifest(sys.argv[:] if args.argv is None else list(args.argv), params, seeds, __version__,
                      verification, time.monotonic() - t0, _threads(args), [path.name])
    side = path.with_name(path.name + ".manifest.json")
    side.write_text(_dump(man.to_dict()) + "\n", encoding="utf-8")
    return [str(path), str(side)]


# ---- bounds / mnum ---------------------------------------------------------

def cmd_bounds(args) -> int:
    if args.side == "hypergraph":
        rep = hypergraph_bounds(args.r, args.n, args.k)
    else:
        rep = code_bounds(args.r, args.n, args.q)
    payload = rep.to_dict()
    payload["schema"] = schema_id("bounds")
    lines = [f"{rep.side} r={rep.r} n={rep.n} " + (f"k={rep.k}" if rep.k is not None else f"q={rep.q}")
             + f"  t={rep.t} lambda={rep.lam} m={rep.matching.value} ({rep.matching.regime.value})"]
    for name, b in rep.values.items():
        val = "-" if b.value is None else str(b.value)
        lines.append(f"  {name:24s} {b.kind:6s} {val:>14s}  {'valid' if b.valid else 'INVALID'}  {b.reason}")
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_mnum(args) -> int:
    try:
        res = m_resolve(args.n, args.s, args.lam, cap=args.cap, exact=args.exact, classical=args.classical)
    except CapExceeded as e:
        raise UsageError(str(e))
    payload = res.to_dict()
    payload["schema"] = schema_id("mnum")
    text = (f"m({args.n},{args.s},{args.lam}) = {res.value}  [{res.regime.value}"
            f"{', conjectural' if res.conjectural else ''}]  Frankl bound {res.frankl_bound}")
    if not res.hypothesis_holds:
        text += f"  (n < s*lambda: the closed form is outside its range)"
    _emit(args, payload, text)
    return 0


# ---- construct -------------------------------------------------------------

def cmd_construct(args) -> int:
    t0 = time.monotonic()
    seeds: list[int] = []
    kind = args.what
    if kind == "oa":
        if not oa_exists_by_construction(args.t, args.n, args.q):
            raise UsageError(f"no OA({args.t},{args.n},{args.q}) by evaluation + composition")
        A = oa_for_order(args.t, args.n, args.q)
        obj = code_from_oa(A)
        params = {"t": args.t, "n": args.n, "q": args.q}
        verification = {"certificate": A.certificate.to_dict() if A.certificate else None}
    elif kind == "code":
        try:
            obj = focal_free_code_build(args.r, args.n, args.q)
        except PreconditionError as e:
            print(f"preconditions unmet: {', '.join(e.failed)}", file=sys.stderr)
            return 1
        params = {"r": args.r, "n": args.n, "q": args.q}
        verification = {"focalFree": len(obj) > 10_000 or find_focal(obj, args.r) is None}
    elif kind == "design":
        obj = design_small(args.n, args.k, args.t)
        if obj is None:
            print(f"no ({args.n},{args.k},{args.t})-design in the catalog", file=sys.stderr)
            return 1
        params = {"n": args.n, "k": args.k, "t": args.t}
        verification = {"exactDesign": True}
    elif kind == "packing":
        try:
            obj = greedy_packing(args.n, args.k, args.t, seed=args.seed)
        except ValueError as e:
            raise UsageError(str(e))
        seeds = [args.seed]
        params = {"n": args.n, "k": args.k, "t": args.t}
        verification = {"packing": is_packing(obj, args.t)}
    elif kind == "family":
        try:
            b = build_induced_family(args.r, args.n, args.k, seed=args.seed, restarts=args.restarts)
        except ValueError as e:
            raise UsageError(str(e))
        obj = b.packing.family()
        seeds = b.seeds_tried
        params = {"r": args.r, "n": args.n, "k": args.k, "restarts": args.restarts}
        verification = b.to_dict()
    elif kind == "code-packing":
        try:
            b = build_induced_code(args.r, args.n, args.q, seed=args.seed, restarts=args.restarts)
        except ValueError as e:
            raise UsageError(str(e))
        obj = b.packing.code()
        seeds = b.seeds_tried
        params = {"r": args.r, "n": args.n, "q": args.q, "restarts": args.restarts}
        verification = b.to_dict()
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(f"unknown construction {kind}")
    files = _write_artifact(args, obj, params, seeds, verification, t0)
    if args.json:
        items = obj.edges if isinstance(obj, UniformFamily) else obj.words
        print(_dump({"schema": schema_id("construct"), "construction": kind, "params": params,
                     "size": len(obj), "seeds": seeds, "verification": verification,
                     "items": [list(x) for x in items], "files": files}))
    elif args.out:
        print(f"{kind}: {len(obj)} members written to {args.out}")
    return 0


# ---- verify ----------------------------------------------------------------

def cmd_verify(args) -> int:
    try:
        obj = read_any(args.input)
    except (FormatError, OSError, ValueError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    w = find_focal(obj, args.r, method=args.method)
    kind = "family" if isinstance(obj, UniformFamily) else "code"
    payload = {"schema": schema_id("verify"), "kind": kind, "r": args.r, "size": len(obj),
               "focalFree": w is None, "witness": None if w is None else w.to_dict()}
    if w is None:
        _emit(args, payload, f"focal-free: {kind} of {len(obj)} members has no {args.r}-focal configuration")
        return 0
    _emit(args, payload, w.to_json())
    return 1


# ---- search ----------------------------------------------------------------

def cmd_search(args) -> int:
    kw = dict(node_budget=args.budget, time_budget=args.time, seed_construction=args.seed_construction,
              exhaustive=args.exhaustive)
    try:
        if args.side == "hypergraph":
            res = exact_f(args.r, args.n, args.k, cap=args.cap or 40, **kw)
        else:
            res = exact_f_code(args.r, args.n, args.q, cap=args.cap or (1 << 20), **kw)
    except ValueError as e:
        raise UsageError(str(e))
    payload = res.to_dict()
    payload["schema"] = schema_id("search")
    payload["elapsed"] = res.elapsed
    proof = payload["proofOfMaximality"]
    _emit(args, payload, f"optimum {res.optimum}  [{proof}, closed by {res.closed_by}, "
                         f"{res.nodes} nodes, seed {res.seed_source} of size {res.seed_size}]")
    return 0


# ---- table -----------------------------------------------------------------

HYPER_BOUNDS = ["alonUpper", "cheapLowerAsym", "thm22Upper", "remark23Upper", "limitDensity", "prop13Exact"]
CODE_BOUNDS = ["ahCodeUpper", "thm33Upper", "remark3Upper", "codeLimitConstant", "thm35Upper", "thm16Exact",
               "ahCodeLowerPrimePower"]


def _cell(rep, name: str) -> tuple[str, str]:
    b = rep.values.get(name)
    if b is None or b.value is None:
        return "", ""
    return str(b.value), "1" if b.valid else "0"


def table_rows(args) -> tuple[list[str], list[list]]:
    names = HYPER_BOUNDS if args.side == "hypergraph" else CODE_BOUNDS
    head = ["side", "r", "n", "k" if args.side == "hypergraph" else "q", "t", "lambda", "m", "mProvenance"]
    for nm in names:
        head += [nm, nm + "Valid"]
    head += ["bestUpper", "construction", "constructionSize", "exact", "exactProof"]
    rows = []
    if args.side == "hypergraph":
        grid = [(args.r, n, args.k) for n in range(args.n_min, args.n_max + 1)]
    else:
        grid = [(args.r, args.n, q) for q in range(args.q_min, args.q_max + 1)]
    for r, n, x in grid:
        if args.side == "hypergraph":
            rep = hypergraph_bounds(r, n, x)
            cname, csize = _family_construction(r, n, x, args.seed)
            feasible = binom(n, x) <= args.exact_cap
        else:
            rep = code_bounds(r, n, x)
            cname, csize = _code_construction(r, n, x, args.seed)
            feasible = x ** n <= args.exact_cap
        row = [args.side, r, n, x, rep.t, rep.lam, rep.matching.value,
               "conjectural" if rep.matching.conjectural else "exact"]
        for nm in names:
            row += list(_cell(rep, nm))
        row += [rep.best_upper(), cname, csize]
        if args.exact and feasible:
            if args.side == "hypergraph":
                res = exact_f(r, n, x, cap=args.exact_cap, time_budget=args.time)
            else:
                res = exact_f_code(r, n, x, search_cap=args.exact_cap, time_budget=args.time)
            row += [res.optimum, res.to_dict()["proofOfMaximality"]]
        else:
            row += ["", ""]
        rows.append(row)
    return head, rows


def _family_construction(r: int, n: int, k: int, seed: int) -> tuple[str, int]:
    t = threshold_t(r, k)
    d = design_small(n, k, t) if k > t else None
    if d is not None:
        return "design", len(d)
    try:
        return "induced-packing", len(build_induced_family(r, n, k, seed=seed).packing.copies)
    except ValueError:
        return "complete", binom(n, k)


def _code_construction(r: int, n: int, q: int, seed: int) -> tuple[str, int]:
    t = threshold_t(r, n)
    if oa_exists_by_construction(t, n, q):
        return "orthogonal-array", q ** t
    try:
        return "induced-packing", len(build_induced_code(r, n, q, seed=seed).packing.copies)
    except ValueError:
        return "complete", q ** n


def cmd_table(args) -> int:
    head, rows = table_rows(args)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(head)
    w.writerows(rows)
    sys.stdout.write(buf.getvalue())
    return 0


# ---- repro -----------------------------------------------------------------

def cmd_repro(args) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(sorted(SUITES))}")
    t0 = time.monotonic()
    results = []
    for num in SUITES[args.suite]:
        res = run_criterion(num)
        results.append(res)
        if not args.json:
            print(res.line(), flush=True)
    ok = all(r.passed and r.in_time for r in results)
    man = RunManifest(list(args.argv) if args.argv is not None else sys.argv[:], {"suite": args.suite}, [0],
                      __version__, {str(r.number): r.to_dict() for r in results}, time.monotonic() - t0,
                      _threads(args))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        path = out / f"repro-{args.suite}.manifest.json"
        man.artifacts = [path.name]
        path.write_text(_dump(man.to_dict()) + "\n", encoding="utf-8")
    if args.json:
        print(_dump({"schema": schema_id("repro"), "suite": args.suite, "passed": ok,
                     "criteria": [r.to_dict() for r in results]}))
    else:
        print(f"{sum(r.passed and r.in_time for r in results)}/{len(results)} criteria passed")
    return 0 if ok else 1


# ---- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: $FOCAL_LAB_THREADS or all cores)")

    p = argparse.ArgumentParser(prog="focal-lab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bounds", help="bound formulas with validity flags")
    bs = b.add_subparsers(dest="side", required=True)
    bh = bs.add_parser("hypergraph", parents=[common])
    bh.add_argument("--r", type=int, required=True)
    bh.add_argument("--n", type=int, required=True)
    bh.add_argument("--k", type=int, required=True)
    bc = bs.add_parser("code", parents=[common])
    bc.add_argument("--r", type=int, required=True)
    bc.add_argument("--n", type=int, required=True)
    bc.add_argument("--q", type=int, required=True)
    b.set_defaults(func=cmd_bounds)

    m = sub.add_parser("mnum", parents=[common], help="Erdős matching number m(n, s, lambda)")
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--s", type=int, required=True)
    m.add_argument("--lambda", dest="lam", type=int, required=True)
    m.add_argument("--exact", action="store_true", help="brute force when C(n,s) <= --cap")
    m.add_argument("--cap", type=int, default=30)
    m.add_argument("--classical", action="store_true", help="also accept values settled by classical theorems")
    m.set_defaults(func=cmd_mnum)

    c = sub.add_parser("construct", help="build a lower-bound object")
    cs = c.add_subparsers(dest="what", required=True)

    def con(name: str, *opts: str, seed: bool = False, restarts: bool = False):
        sp = cs.add_parser(name, parents=[common])
        for o in opts:
            sp.add_argument(f"--{o}", type=int, required=True)
        if seed:
            sp.add_argument("--seed", type=int, default=0)
        if restarts:
            sp.add_argument("--restarts", type=int, default=1)
        sp.add_argument("--out", default=None, help="write the object here, with a .manifest.json sidecar")
        return sp

    con("oa", "t", "n", "q")
    con("code", "r", "n", "q")
    con("design", "n", "k", "t")
    con("packing", "n", "k", "t", seed=True)
    con("family", "r", "n", "k", seed=True, restarts=True)
    con("code-packing", "r", "n", "q", seed=True, restarts=True)
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", parents=[common], help="check a family or code file for focal configurations")
    v.add_argument("input")
    v.add_argument("--r", type=int, required=True)
    v.add_argument("--method", choices=["auto", "partition", "exhaustive"], default="auto")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="exact maximum by branch and bound")
    ss = s.add_subparsers(dest="side", required=True)
    for side, third in (("hypergraph", "k"), ("code", "q")):
        sp = ss.add_parser(side, parents=[common])
        sp.add_argument("--r", type=int, required=True)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument(f"--{third}", type=int, required=True)
        sp.add_argument("--budget", type=int, default=None, help="node budget")
        sp.add_argument("--time", type=float, default=None, help="time budget in seconds")
        sp.add_argument("--cap", type=int, default=None, help="candidate cap")
        sp.add_argument("--seed-construction", dest="seed_construction", action="store_true", default=True)
        sp.add_argument("--no-seed-construction", dest="seed_construction", action="store_false")
        sp.add_argument("--exhaustive", action="store_true", help="enumerate every focal-free subset")
    s.set_defaults(func=cmd_search)

    t = sub.add_parser("table", help="CSV sweep of bounds, constructions and exact values")
    ts = t.add_subparsers(dest="side", required=True)
    th = ts.add_parser("hypergraph", parents=[common])
    th.add_argument("--r", type=int, required=True)
    th.add_argument("--k", type=int, required=True)
    th.add_argument("--n-min", type=int, required=True)
    th.add_argument("--n-max", type=int, required=True)
    tc = ts.add_parser("code", parents=[common])
    tc.add_argument("--r", type=int, required=True)
    tc.add_argument("--n", type=int, required=True)
    tc.add_argument("--q-min", type=int, required=True)
    tc.add_argument("--q-max", type=int, required=True)
    for sp in (th, tc):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--exact", dest="exact", action="store_true", default=True)
        sp.add_argument("--no-exact", dest="exact", action="store_false")
        sp.add_argument("--exact-cap", type=int, default=40, help="largest candidate count searched exactly")
        sp.add_argument("--time", type=float, default=10.0, help="time budget per exact search")
    t.set_defaults(func=cmd_table)

    r = sub.add_parser("repro", parents=[common], help="run an acceptance suite")
    r.add_argument("suite", help=f"one of: {', '.join(sorted(SUITES))}")
    r.add_argument("--out", default=None, help="directory for the run manifest")
    r.set_defaults(func=cmd_repro)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    args.argv = None if argv is None else ["focal-lab", *argv]
    try:
        # the search is single-threaded; the count is validated and recorded in manifests
        args.threads = _threads(args)
        return args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except (ValueError, CapExceeded) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
