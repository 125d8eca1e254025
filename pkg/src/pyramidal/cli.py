"""Line-oriented file formats and the command-line front end.

Instance files::

    # comment
    vertex r demand 1
    vertex a demand 2
    edge r a cost 3/2
    root r

Routing files hold ``path v0 v1 ... vk`` lines.  Certificate files hold
``tree lambda p/q`` blocks, each followed by the tree routing's path lines,
then an optional ``target`` block and a ``target-cost p/q`` summary.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .graph import Graph, GraphError, edge, sort_edges, vkey
from .outerplanar import classify
from .routing import Certificate, Instance, Routing, ValidationError, routing_cost, routing_violations
from .solvers import SearchReport

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class ParseError(ValueError):
    """Malformed input file; the message carries the line number."""


def fmt(x) -> str:
    """Integers bare, other rationals as ``p/q``."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _vertex(tok: str):
    return int(tok) if tok.isdigit() else tok


def _rational(tok: str, lineno: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"line {lineno}: bad number {tok!r}") from None


def _lines(text: str):
    for i, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield i, line.split()


# ---------------------------------------------------------------- instances

def parse_instance(text: str) -> Instance:
    demands: dict = {}
    edges: dict = {}
    root = None
    root_line = 0
    for i, tok in _lines(text):
        kind = tok[0]
        if kind == "vertex":
            if len(tok) != 4 or tok[2] != "demand":
                raise ParseError(f"line {i}: expected 'vertex <id> demand <int>'")
            v = _vertex(tok[1])
            if v in demands:
                raise ParseError(f"line {i}: duplicate vertex {v}")
            b = _rational(tok[3], i)
            if b.denominator != 1 or b < 0:
                raise ParseError(f"line {i}: demand must be a nonnegative integer")
            demands[v] = int(b)
        elif kind == "edge":
            if len(tok) != 5 or tok[3] != "cost":
                raise ParseError(f"line {i}: expected 'edge <id> <id> cost <c>'")
            a, b = _vertex(tok[1]), _vertex(tok[2])
            for x in (a, b):
                if x not in demands:
                    raise ParseError(f"line {i}: unknown vertex {x}")
            if a == b:
                raise ParseError(f"line {i}: loop at {a}")
            e = edge(a, b)
            if e in edges:
                raise ParseError(f"line {i}: duplicate edge {a} {b}")
            c = _rational(tok[4], i)
            if c < 0:
                raise ParseError(f"line {i}: negative cost")
            edges[e] = c
        elif kind == "root":
            if len(tok) != 2:
                raise ParseError(f"line {i}: expected 'root <id>'")
            if root is not None:
                raise ParseError(f"line {i}: second root line")
            root, root_line = _vertex(tok[1]), i
            if root not in demands:
                raise ParseError(f"line {i}: unknown vertex {root}")
        else:
            raise ParseError(f"line {i}: unknown keyword {kind!r}")
    if root is None:
        raise ParseError("missing root line")
    if sum(demands.values()) < 1:
        raise ParseError("k must be ≥ 1")
    if demands[root] < 1:
        raise ParseError(f"line {root_line}: root {root} has demand 0 (the root must be a terminal)")
    g = Graph.from_edges(edges, demands)
    return Instance(g, root, demands, edges)


def emit_instance(inst: Instance) -> str:
    out = [f"vertex {v} demand {inst.demands[v]}" for v in inst.graph.order]
    out += [f"edge {a} {b} cost {fmt(inst.costs[(a, b)])}" for a, b in inst.graph.edge_list]
    out.append(f"root {inst.root}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- routings

def _path_line(p) -> str:
    return "path " + " ".join(str(v) for v in p)


def parse_routing(text: str) -> Routing:
    paths = []
    for i, tok in _lines(text):
        if tok[0] != "path" or len(tok) < 2:
            raise ParseError(f"line {i}: expected 'path <v0> ... <vk>'")
        paths.append(tuple(_vertex(t) for t in tok[1:]))
    return Routing(paths)


def emit_routing(rt) -> str:
    return "".join(_path_line(p) + "\n" for p in Routing(rt))


# ---------------------------------------------------------------- certificates

def parse_certificate(text: str) -> Certificate:
    entries: list = []
    target = None
    cur = None  # list receiving path lines
    for i, tok in _lines(text):
        kind = tok[0]
        if kind == "tree":
            if len(tok) != 3 or tok[1] != "lambda":
                raise ParseError(f"line {i}: expected 'tree lambda <p/q>'")
            cur = []
            entries.append((cur, _rational(tok[2], i)))
        elif kind == "target":
            if len(tok) != 1 or target is not None:
                raise ParseError(f"line {i}: unexpected 'target' line")
            cur = target = []
        elif kind == "path":
            if cur is None:
                raise ParseError(f"line {i}: path outside a tree block")
            cur.append(tuple(_vertex(t) for t in tok[1:]))
        elif kind == "target-cost":
            if len(tok) != 2:
                raise ParseError(f"line {i}: expected 'target-cost <p/q>'")
            _rational(tok[1], i)
            cur = None
        else:
            raise ParseError(f"line {i}: unknown keyword {kind!r}")
    if not entries:
        raise ParseError("certificate has no trees")
    total = sum(lam for _, lam in entries)
    if total != 1:
        raise ParseError(f"coefficients sum to {fmt(total)}, not 1")
    return Certificate(tuple((Routing(p), lam) for p, lam in entries),
                       None if target is None else Routing(target))


def emit_certificate(cert: Certificate, inst: Instance | None = None) -> str:
    out = []
    for t, lam in cert.entries:
        out.append(f"tree lambda {fmt(lam)}")
        out += [_path_line(p) for p in t]
    if isinstance(cert.target, Routing):
        out.append("target")
        out += [_path_line(p) for p in cert.target]
        if inst is not None:
            out.append(f"target-cost {fmt(routing_cost(inst, cert.target))}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- reports

def emit_report(obj, inst: Instance | None = None) -> str:
    if isinstance(obj, Certificate):
        return emit_certificate(obj, inst)
    if not isinstance(obj, SearchReport):
        raise TypeError(f"cannot report {type(obj).__name__}")
    out = []
    if obj.truncated:
        out.append("TRUNCATED: enumeration hit its cap; results cover a partial sweep")
    caps = " ".join(f"{k}={v}" for k, v in sorted(obj.caps.items()))
    for edges, dem, msg in obj.violations:
        es = " ".join(f"{a}-{b}" for a, b in sort_edges(edges))
        ds = " ".join(f"{v}:{b}" for v, b in sorted(dem.items(), key=lambda kv: vkey(kv[0])))
        out.append(f"violation: edges {es} demands {ds}: {msg}")
    out.append(f"{len(obj.violations)} violations / {obj.instances_checked} instances"
               + (f" (seed {obj.seed}; {caps})" if caps else ""))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- commands

def _read(path: str) -> str:
    return Path(path).read_text()


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pyramidal", description="Pyramidal routing toolkit")
    sub = p.add_subparsers(dest="cmd", required=True)
    s = sub.add_parser("solve", help="optimal routing (or tree routing) by enumeration")
    s.add_argument("instance")
    s.add_argument("--tree", action="store_true")
    d = sub.add_parser("dominate", help="certificate of tree routings dominating a routing")
    d.add_argument("instance")
    d.add_argument("routing")
    v = sub.add_parser("verify", help="check a certificate exactly")
    v.add_argument("instance")
    v.add_argument("routing")
    v.add_argument("certificate")
    c = sub.add_parser("check", help="compare routing and tree routing optima on a sweep")
    c.add_argument("--max-vertices", type=int, default=5)
    c.add_argument("--demand-max", type=int, default=1)
    c.add_argument("--costs", type=int, default=5)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--k-max", type=int, default=None)
    c.add_argument("--cap", type=int, default=200_000)
    c.add_argument("--allow-non-outerplanar", action="store_true")
    k = sub.add_parser("classify", help="cycle, ladder, outerplanar-other or non-outerplanar")
    k.add_argument("instance")
    return p


def run_command(argv, out=None, err=None) -> int:
    """Run one subcommand; returns the exit code (0 ok, 1 failure, 2 bad input)."""
    from .dominate import DominationError, dominate
    from .routing import verify_certificate
    from .solvers import check_conjecture, optimal_routing, optimal_tree_routing

    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    try:
        if args.cmd == "check":
            rep = check_conjecture(args.max_vertices, args.demand_max, args.costs, args.seed,
                                   k_max=args.k_max, cap=args.cap,
                                   allow_non_outerplanar=args.allow_non_outerplanar)
            out.write(emit_report(rep))
            return EXIT_OK if rep.ok else EXIT_FAIL
        inst = parse_instance(_read(args.instance))
        if args.cmd == "classify":
            out.write(classify(inst.graph) + "\n")
            return EXIT_OK
        if args.cmd == "solve":
            opt = optimal_tree_routing(inst) if args.tree else optimal_routing(inst)
            if opt.truncated:
                out.write("TRUNCATED: enumeration hit its cap\n")
            out.write(emit_routing(opt.routing))
            out.write(f"cost {fmt(opt.cost)}\n")
            return EXIT_OK
        rt = parse_routing(_read(args.routing))
        bad = routing_violations(inst, rt)
        if bad:
            err.write(f"routing: {bad[0]}\n")
            return EXIT_INPUT
        if args.cmd == "dominate":
            out.write(emit_certificate(dominate(inst, rt), inst))
            return EXIT_OK
        cert = parse_certificate(_read(args.certificate))
        bad = verify_certificate(inst, rt, cert)
        if bad:
            out.write(f"certificate rejected: {bad[0]}\n")
            return EXIT_FAIL
        n = len(cert)
        out.write(f"certificate verified: {n} tree{'s' if n != 1 else ''}\n")
        return EXIT_OK
    except (ParseError, GraphError, ValidationError, DominationError, OSError, ValueError) as e:
        err.write(f"error: {e}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))
