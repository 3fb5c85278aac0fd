"""twforge command line.

Every command prints a JSON run report on stdout (``tw`` prints the bare
value unless ``--json``).  Exit codes: 0 verified success, 1 verified
negative, 2 unknown or budget exhausted, 3 input error.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import blocks, connectifier, connectify, formats, generators, pattern, starforest, treewidth
from .budget import Budget, BudgetExhausted, ExtractionFailed
from .graph import Graph, delete_vertices, girth

SCHEMA = 1
EXIT_OK, EXIT_NEGATIVE, EXIT_UNKNOWN, EXIT_INPUT = 0, 1, 2, 3
VERTEX_ORDER = "0-based, in input order"


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


# ---------------------------------------------------------------- plumbing

def digest(g: Graph) -> str:
    return hashlib.sha256(formats.encode_graph6(g)).hexdigest()[:16]


def jsonable(obj):
    if isinstance(obj, dict):
        return {str(k) if not isinstance(k, (str, int)) else k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (frozenset, set)):
        return sorted(jsonable(x) for x in obj)
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if hasattr(obj, "as_dict"):
        return jsonable(obj.as_dict())
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return jsonable({f.name: getattr(obj, f.name) for f in dataclasses.fields(obj)})
    return obj


def read_graph(path: str, fmt: str) -> Graph:
    try:
        data = sys.stdin.buffer.read() if path == "-" else open(path, "rb").read()
    except OSError as e:
        raise InputError(str(e)) from None
    if fmt == "auto":
        fmt = formats.sniff(data)
    try:
        return formats.parse_graph(data, fmt)
    except (formats.FormatError, ValueError, UnicodeDecodeError) as e:
        raise InputError(f"cannot parse {fmt} input: {e}") from None


def vertex_list(text: str | None, g: Graph, name: str) -> list | None:
    """``1,2,3`` or ``@file.json:key`` (a list stored in a sidecar)."""
    if text is None:
        return None
    if text.startswith("@"):
        path, _, key = text[1:].partition(":")
        try:
            data = json.load(open(path))
        except (OSError, ValueError) as e:
            raise InputError(f"{name}: {e}") from None
        for part in key.split(".") if key else []:
            if part not in data:
                raise InputError(f"{name}: key {key!r} not in {path}")
            data = data[part]
        out = list(data)
    else:
        try:
            out = [int(x) for x in text.split(",") if x.strip()]
        except ValueError:
            raise InputError(f"{name}: expected comma-separated integers") from None
    bad = [v for v in out if not 0 <= v < g.n]
    if bad:
        raise InputError(f"{name}: vertices {bad} out of range for n={g.n}")
    return out


def int_list(text: str, name: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"{name}: expected comma-separated integers") from None


def load_cert(path: str, g: Graph) -> dict:
    try:
        data = json.load(open(path))
    except (OSError, ValueError) as e:
        raise InputError(f"certificate: {e}") from None
    cert = data.get("certificate", data)
    if not isinstance(cert, dict):
        raise InputError("certificate: no certificate object")
    d = cert.get("graph_digest") or data.get("digest")
    if d is not None and d != digest(g):
        raise InputError("certificate was issued for a different graph or vertex order")
    return cert


def budget_limit(args, required: bool) -> int | None:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("TWFORGE_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError("TWFORGE_BUDGET must be an integer") from None
    if required:
        raise InputError("this search is unbounded: pass --budget N or set TWFORGE_BUDGET")
    return None


class Report:
    def __init__(self, argv, g: Graph | None):
        self.data = {"schema": SCHEMA, "command": list(argv), "input_digest": None if g is None else digest(g)}
        if g is not None:
            self.data["graph"] = {"n": g.n, "m": g.m, "vertex_order": VERTEX_ORDER}
        self.start = time.perf_counter()

    def finish(self, result: str, certificate=None, budget: Budget | None = None, **extra) -> dict:
        self.data["result"] = result
        if certificate is not None:
            cert = jsonable(certificate)
            if isinstance(cert, dict) and self.data.get("input_digest"):
                cert.setdefault("graph_digest", self.data["input_digest"])
                cert.setdefault("vertex_order", VERTEX_ORDER)
            self.data["certificate"] = cert
        if budget is not None:
            self.data["budget"] = {"limit": budget.limit, "used": budget.used}
        self.data.update(jsonable(extra))
        self.data["wall_time"] = round(time.perf_counter() - self.start, 4)
        return self.data


def emit(report: dict) -> None:
    print(json.dumps(report, sort_keys=True))


# ---------------------------------------------------------------- gen

def _forest_roles(F) -> dict:
    return {"roots": list(F.roots), "components": [{"root": c.root, "stems": [list(s) for s in c.stems]} for c in F.components]}


def cmd_gen(args, argv) -> int:
    what = args.what
    if what == "wall":
        g, roles = generators.make_wall(args.t)
        roles = jsonable(roles)
    elif what == "davies":
        g, r = generators.make_davies(args.rho, args.sigma, args.theta)
        roles = {"paths": r.paths, "marks": r.marks, "hubs": r.hubs}
    elif what == "starforest":
        F = generators.make_star_forest(args.theta, args.delta, args.lam)
        g, roles = F.host, _forest_roles(F)
    elif what == "caterpillar":
        legs = int_list(args.legs, "--legs") if args.legs else None
        g, r = generators.make_caterpillar(int_list(args.gaps, "--gaps"), args.sigma, legs)
        roles = {"spine": r.spine, "leaves": r.leaves, "branch": r.branch}
    elif what == "connectification":
        F = generators.make_star_forest(args.theta, args.delta, args.lam)
        pi = None
        if args.pi:
            order = int_list(args.pi, "--pi")
            if sorted(order) != list(range(args.theta)):
                raise InputError("--pi must be a permutation of 0..theta-1")
            pi = [F.roots[i] for i in order]
        g, cert = connectify.build_connectification(F, pi, args.kind, args.sigma)
        roles = {"certificate": dict(jsonable(cert), graph_digest=digest(g), vertex_order=VERTEX_ORDER)}
    elif what == "random":
        rng = random.Random(args.seed)
        edges = [(u, v) for u in range(args.n) for v in range(u + 1, args.n) if rng.random() < args.p]
        g, roles = Graph(args.n, edges), {}
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(what)
    params = {k: v for k, v in vars(args).items() if k not in ("func", "command", "what", "out", "roles", "format", "json")}
    side = {"schema": SCHEMA, "generator": what, "params": params, "vertex_order": VERTEX_ORDER, "digest": digest(g), **jsonable(roles)}
    payload = formats.emit_graph(g, args.format if args.format != "auto" else "graph6")
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(payload if payload.endswith(b"\n") else payload + b"\n")
    else:
        sys.stdout.write(payload.decode().rstrip("\n") + "\n")
    side_path = args.roles or (args.out + ".json" if args.out else None)
    if side_path:
        with open(side_path, "w") as fh:
            json.dump(side, fh, sort_keys=True)
    print(f"generated {what}: n={g.n} m={g.m}", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------- check

def _clean_search(job):
    g, t, kind, limit = job
    wall, _ = generators.make_wall(t)
    b = Budget(limit)
    try:
        if kind == "wall-subdivision":
            w = pattern.find_induced_subdivision(g, wall, 1, b)
        elif kind == "line-of-wall-subdivision":
            w = pattern.find_induced_line_subdivision(g, wall, 1, b)
        elif kind == "biclique":
            w = pattern.find_induced_biclique(g, t, b)
        else:
            w = pattern.find_clique(g, t, b)
    except BudgetExhausted:
        return kind, "exhausted", None, b.used
    return kind, "found" if w is not None else "absent", jsonable(w), b.used


def check_clean(g: Graph, t: int, limit, jobs: int) -> pattern.ObstructionReport:
    """Same answer as pattern.is_t_clean; the searches may run in parallel."""
    if jobs <= 1:
        return pattern.is_t_clean(g, t, limit)
    kinds = ["wall-subdivision", "line-of-wall-subdivision", "biclique", "clique"]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        results = list(ex.map(_clean_search, [(g, t, k, limit) for k in kinds]))
    rep = pattern.ObstructionReport("none")
    for kind, status, w, used in results:
        rep.notes.append(f"{kind}: {used} expansions")
        if status == "found":
            return pattern.ObstructionReport(kind, w, notes=rep.notes)
        if status == "exhausted":
            rep.budget_exhausted = True
    return rep


def cmd_check(args, argv) -> int:
    g = read_graph(args.graph, args.format)
    rep = Report(argv, g)
    what = args.what
    if what == "clean":
        limit = budget_limit(args, True)
        r = check_clean(g, args.t, limit, args.jobs)
        status = {True: "clean", False: "obstruction", None: "unknown"}[r.clean]
        emit(rep.finish(status, {"kind": r.kind, "witness": r.witness, "notes": r.notes}))
        return {True: EXIT_OK, False: EXIT_NEGATIVE, None: EXIT_UNKNOWN}[r.clean]
    if what == "feeble":
        ok, w = pattern.is_feeble(g)
        emit(rep.finish("feeble" if ok else "not-feeble", {"witness": w}))
        return EXIT_OK if ok else EXIT_NEGATIVE
    if what == "girth":
        gi = girth(g)
        value = None if gi == float("inf") else gi
        ok = args.min is None or value is None or value >= args.min
        emit(rep.finish("ok" if ok else "below-minimum", {"girth": value, "min": args.min}))
        return EXIT_OK if ok else EXIT_NEGATIVE
    if not args.cert:
        raise InputError(f"check {what} needs --cert FILE")
    cert = load_cert(args.cert, g)
    try:
        problems = _verify_payload(what, g, cert, args)
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"malformed certificate: {e}") from None
    emit(rep.finish("verified" if not problems else "rejected", None, problems=problems))
    return EXIT_OK if not problems else EXIT_NEGATIVE


def _cert_connectifier(d: dict) -> connectifier.ConnectifierCert:
    return connectifier.ConnectifierCert(int(d["kind"]), frozenset(d["H"]), tuple(d["s_hits"]), int(d["eta"]), int(d["sigma"]))


def _cert_block(d: dict) -> blocks.StrongBlockCert:
    paths = {frozenset(p["pair"]): tuple(tuple(q) for q in p["paths"]) for p in d["paths"]}
    return blocks.StrongBlockCert(frozenset(d["B"]), paths)


def _forest(g: Graph, comps) -> generators.RootedStarForest:
    return generators.RootedStarForest(g, tuple(generators.StarComponent(c["root"], tuple(tuple(s) for s in c["stems"])) for c in comps))


def _verify_payload(what: str, g: Graph, cert: dict, args) -> list:
    """Re-verify an emitted certificate against ``g`` with the module checkers."""
    for key in ("H", "B", "J", "Xi", "S", "A", "cycle"):
        if key in cert and any(not 0 <= v < g.n for v in cert[key]):
            raise ValueError(f"{key} mentions a vertex outside the graph")
    if what == "bloated":
        res = connectifier.verify_bloated_tree(g, cert["J"])
        return [] if res else [f"{res.clause}: {res.detail}"]
    if what == "connectifier":
        S = cert["S"] if args.S is None else vertex_list(args.S, g, "--S")
        return connectifier.verify_connectifier(g, _cert_connectifier(cert), S)
    if what == "strongblock":
        k = args.k if args.k is not None else cert["k"]
        ok, why = blocks.verify_strong_block(g, _cert_block(cert), k)
        return [] if ok else [why]
    if what == "connectification":
        F = _forest(g, cert["forest"])
        c = cert["connectifier"]
        ok, why, _ = connectify.recognize_connectification(g, cert["Xi"], F, cert["X"], cert["pi"], int(c["sigma"]), int(c["kind"]))
        return [] if ok else [why]
    if what == "dstable":
        A, S, d = set(cert["A"]), cert["S"], int(cert["d"])
        h, old = delete_vertices(g, A)
        pos = {v: i for i, v in enumerate(old)}
        if any(v in A for v in S):
            return ["S meets A"]
        ok, path = blocks.is_d_stable(h, [pos[v] for v in S], d)
        out = [] if ok else [f"short path {[old[v] for v in path]}"]
        if cert.get("block"):
            ok, why = blocks.verify_block_after_deletion(g, _cert_block(cert["block"]), A, int(cert["k"]))
            if not ok:
                out.append(why)
        return out
    if what == "forest":
        pc = starforest.PlantedForestCert(_forest(g, cert["components"]), frozenset(cert["S"]))
        return starforest.verify_planted(g, pc, cert.get("theta"), cert.get("delta"), cert.get("lam"))
    if what == "hole":
        cyc, lam = cert["cycle"], int(cert["lam"])
        out = []
        if not pattern.is_hole(g, cyc):
            out.append("not an induced cycle of length >= 4")
        if len(cyc) < lam + 3:
            out.append(f"length {len(cyc)} < lambda + 3")
        return out
    if what == "decomposition":
        td = treewidth.TreeDecomposition.make(cert["tree_edges"], [frozenset(b) for b in cert["bags"]])
        ok, problems = treewidth.validate_decomposition(g, td)
        if ok and "width" in cert and td.width != cert["width"]:
            problems = [f"claimed width {cert['width']} but bags give {td.width}"]
        return problems
    raise ValueError(f"unknown certificate type {what}")


# ---------------------------------------------------------------- tw

def _td_payload(td) -> dict:
    return {"tree_edges": [list(e) for e in td.tree.edges()], "bags": [sorted(b) for b in td.bags], "width": td.width}


def cmd_tw(args, argv) -> int:
    g = read_graph(args.graph, args.format)
    rep = Report(argv, g)
    limit = budget_limit(args, False)
    b = Budget(limit)
    if args.what == "lower":
        value = treewidth.minor_min_width(g)
        out = rep.finish("lower-bound", {"lower_bound": value}, b)
    else:
        try:
            res = treewidth.exact_treewidth(g, args.limit, b)
        except BudgetExhausted:
            res = None
        if res is None or not res.known:
            emit(rep.finish("unknown", None, b)) if args.json else print("unknown")
            return EXIT_UNKNOWN
        value = res.value
        out = rep.finish("exact", dict(_td_payload(res.decomposition), treewidth=value), b)
    if args.json:
        emit(out)
    else:
        print(value)
    return EXIT_OK


# ---------------------------------------------------------------- extract / certify

def _need(val, flag):
    if val is None:
        raise InputError(f"missing {flag}")
    return val


def cmd_extract(args, argv) -> int:
    g = read_graph(args.graph, args.format)
    rep = Report(argv, g)
    b = Budget(budget_limit(args, True))
    what = args.what
    try:
        if what == "connectifier":
            S = _need(vertex_list(args.S, g, "--S"), "--S")
            c = connectifier.extract_connectifier(g, S, _need(args.eta, "--eta"), args.sigma, b)
            emit(rep.finish("found", dict(c.as_dict(), S=sorted(S)), b))
        elif what == "dstable":
            if args.block_cert:
                blk = _cert_block(load_cert(args.block_cert, g))
            else:
                B = vertex_list(args.B, g, "--B")
                blk = blocks.StrongBlockCert(frozenset(B), {}) if B else None
            if blk is None:
                raise InputError("extract dstable needs --B or --block-cert")
            k = _need(args.k, "--k")
            xs = args.xsize or len(blk.B)
            res = blocks.distance_refine(g, blk.B, xs, _need(args.d, "--d"), k, blk if blk.paths else None)
            payload = {"A": res.A, "S": res.S, "d": args.d, "k": k, "stable_method": res.stable_method, "block": res.block}
            emit(rep.finish("found", payload, b))
        elif what == "forest":
            S = _need(vertex_list(args.S, g, "--S"), "--S")
            pc = starforest.plant_forest(g, S, args.theta, args.delta, args.lam)
            emit(rep.finish("found", dict(pc.as_dict(), theta=args.theta, delta=args.delta, lam=args.lam), b))
        elif what == "hole":
            S = _need(vertex_list(args.S, g, "--S"), "--S")
            cyc = starforest.extract_long_hole(g, S, args.lam)
            emit(rep.finish("found", {"cycle": cyc, "lam": args.lam}, b))
    except ExtractionFailed as e:
        emit(rep.finish("failed", None, b, failure=e.as_dict()))
        return EXIT_NEGATIVE
    except BudgetExhausted:
        emit(rep.finish("unknown", None, b))
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_certify(args, argv) -> int:
    g = read_graph(args.graph, args.format)
    rep = Report(argv, g)
    what = args.what
    b = Budget(budget_limit(args, what in ("strongblock", "bloated")))
    try:
        if what == "strongblock":
            k = _need(args.k, "--k")
            cert = blocks.find_strong_block(g, k, b, size=args.size)
            if cert is None:
                emit(rep.finish("unknown", None, b))
                return EXIT_UNKNOWN
            emit(rep.finish("found", dict(cert.as_dict(), k=k), b))
        elif what == "kblock":
            B = blocks.find_k_block(g, _need(args.k, "--k"))
            emit(rep.finish("found" if B else "none", {"B": B}, b))
            return EXIT_OK if B else EXIT_NEGATIVE
        elif what == "bloated":
            S = _need(vertex_list(args.S, g, "--S"), "--S")
            res = connectifier.find_bloated_tree(g, S, _need(args.k, "--k"), b)
            if res is None:
                emit(rep.finish("unknown", None, b))
                return EXIT_UNKNOWN
            emit(rep.finish("found", {"J": res.J, "big_cliques": res.big_cliques}, b))
        elif what == "triple":
            X = _need(vertex_list(args.S, g, "--S"), "--S")
            w = connectifier.minimal_connected_triple(g, X)
            emit(rep.finish("found", {"shape": w.shape, "H": w.H, "centre": w.centre, "paths": w.paths}, b))
        elif what == "decomposition":
            res = treewidth.exact_treewidth(g, args.limit, b)
            if not res.known:
                emit(rep.finish("unknown", None, b))
                return EXIT_UNKNOWN
            emit(rep.finish("found", _td_payload(res.decomposition), b))
    except BudgetExhausted:
        emit(rep.finish("unknown", None, b))
        return EXIT_UNKNOWN
    except ExtractionFailed as e:
        emit(rep.finish("failed", None, b, failure=e.as_dict()))
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_pipeline(args, argv) -> int:
    g = read_graph(args.graph, args.format)
    rep = Report(argv, g)
    limit = budget_limit(args, True)
    F = generators.make_star_forest(args.theta, args.delta, args.lam)
    knobs = connectify.PipelineKnobs(clean_budget=limit, search_budget=limit)
    try:
        cert = connectify.pipeline(g, args.t, F, args.sigma, knobs=knobs)
    except ExtractionFailed as e:
        refused = any(s.get("step") == "clean" and "failed" in s for a in e.trace for s in a.get("trace", []))
        emit(rep.finish("not-clean" if refused else "failed", None, None, failure=e.as_dict()))
        return EXIT_NEGATIVE
    except BudgetExhausted:
        emit(rep.finish("unknown", None, None))
        return EXIT_UNKNOWN
    emit(rep.finish("found", cert))
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("auto",) + formats.FORMATS, default="auto")
    common.add_argument("--budget", type=int, default=None, help="node-expansion budget (overrides TWFORGE_BUDGET)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)

    p = _Parser(prog="twforge", description="Obstructions, connectifiers and certificates for clean graph classes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", parents=[common], help="generate a graph and a role sidecar")
    gen.add_argument("what", choices=("wall", "davies", "starforest", "caterpillar", "connectification", "random"))
    gen.add_argument("--t", type=int, default=3)
    gen.add_argument("--rho", type=int, default=0)
    gen.add_argument("--sigma", type=int, default=1)
    gen.add_argument("--theta", type=int, default=2)
    gen.add_argument("--delta", type=int, default=3)
    gen.add_argument("--lam", type=int, default=1)
    gen.add_argument("--gaps", default="2,2")
    gen.add_argument("--legs", default=None)
    gen.add_argument("--kind", type=int, default=2, choices=(1, 2, 3, 4))
    gen.add_argument("--pi", default=None, help="root order as a permutation of 0..theta-1")
    gen.add_argument("--n", type=int, default=10)
    gen.add_argument("--p", type=float, default=0.3)
    gen.add_argument("--out", default=None)
    gen.add_argument("--roles", default=None)
    gen.set_defaults(func=cmd_gen)

    chk = sub.add_parser("check", parents=[common], help="verify a property or a certificate")
    chk.add_argument("what", choices=("clean", "feeble", "girth", "bloated", "connectifier", "strongblock",
                                      "connectification", "dstable", "forest", "hole", "decomposition"))
    chk.add_argument("graph")
    chk.add_argument("--t", type=int, default=4)
    chk.add_argument("--min", type=int, default=None)
    chk.add_argument("--cert", default=None)
    chk.add_argument("--S", default=None)
    chk.add_argument("--k", type=int, default=None)
    chk.set_defaults(func=cmd_check)

    tw = sub.add_parser("tw", parents=[common], help="treewidth")
    tw.add_argument("what", choices=("exact", "lower"))
    tw.add_argument("graph")
    tw.add_argument("--limit", type=int, default=18)
    tw.add_argument("--json", action="store_true")
    tw.set_defaults(func=cmd_tw)

    ex = sub.add_parser("extract", parents=[common], help="run a constructive procedure")
    ex.add_argument("what", choices=("connectifier", "dstable", "forest", "hole"))
    ex.add_argument("graph")
    ex.add_argument("--S", default=None)
    ex.add_argument("--B", default=None)
    ex.add_argument("--block-cert", default=None)
    ex.add_argument("--eta", type=int, default=None)
    ex.add_argument("--sigma", type=int, default=1)
    ex.add_argument("--xsize", type=int, default=None)
    ex.add_argument("--d", type=int, default=None)
    ex.add_argument("--k", type=int, default=None)
    ex.add_argument("--theta", type=int, default=2)
    ex.add_argument("--delta", type=int, default=2)
    ex.add_argument("--lam", type=int, default=1)
    ex.set_defaults(func=cmd_extract)

    ce = sub.add_parser("certify", parents=[common], help="search for a certificate")
    ce.add_argument("what", choices=("strongblock", "kblock", "bloated", "triple", "decomposition"))
    ce.add_argument("graph")
    ce.add_argument("--k", type=int, default=None)
    ce.add_argument("--size", type=int, default=None)
    ce.add_argument("--S", default=None)
    ce.add_argument("--limit", type=int, default=18)
    ce.set_defaults(func=cmd_certify)

    pl = sub.add_parser("pipeline", parents=[common], help="find a connectification of theta S_{delta,lam}")
    pl.add_argument("graph")
    pl.add_argument("--t", type=int, default=4)
    pl.add_argument("--theta", type=int, default=2)
    pl.add_argument("--delta", type=int, default=3)
    pl.add_argument("--lam", type=int, default=1)
    pl.add_argument("--sigma", type=int, default=1)
    pl.set_defaults(func=cmd_pipeline)
    return p


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code not in (0, None) else EXIT_OK
    if getattr(args, "jobs", 1) < 1:
        print("twforge: --jobs must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args, ["twforge"] + argv)
    except InputError as e:
        print(f"twforge: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as e:
        print(f"twforge: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
