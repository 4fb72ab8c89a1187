"""Command-line interface; see ``addposet --help``.

Exit status: 0 on success, 1 on a domain error, 2 on a parse or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import formats, homology as hom, invariants as inv, plainness as pl, poset as ps
from . import realization as rz, structure as st
from .corpus import connected_multigraphs, random_multigraphs
from .errors import ParseError, PosetError
from .gf2 import bits_of, to_bitstring


class _Fail(PosetError):
    pass


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _guard(A: ps.AdditivePoset, args) -> ps.AdditivePoset:
    if A.dim > args.max_dim:
        raise _Fail(f"dim {A.dim} exceeds --max-dim {args.max_dim}")
    return A


def _load_poset(path: str, args) -> ps.AdditivePoset:
    A = formats.parse_poset_file(path)
    _guard(A, args)
    return A


# ---------- poset


def _make(args) -> int:
    kind, params = args.kind, args.params
    n = int(params[0]) if params else None

    def need(k: int) -> None:
        if len(params) != k:
            raise _Fail(f"`poset make {kind}` takes {k} parameter(s)")

    if kind == "powerset":
        need(1)
        A = ps.powerset(n)
    elif kind == "even":
        need(1)
        A = ps.even_powerset(n)
    elif kind == "trivial":
        need(1)
        A = ps.trivial_poset(n)
    elif kind == "pointed":
        need(2)
        A = ps.pointed_poset(n, params[1])
    elif kind == "subspace":
        if len(params) < 3:
            raise _Fail("`poset make subspace` takes N A0 H1 [H2 ...]")
        A = ps.subspace_pointed_poset(n, [params[i] for i in range(2, len(params))], params[1])
    elif kind == "functionals":
        if not params:
            raise _Fail("`poset make functionals` takes N S1 [S2 ...]")
        A = ps.from_functionals(n, [ps.BitVec.from_str(s) for s in params[1:]])
    else:
        raise _Fail(f"unknown construction {kind}")
    _guard(A, args)
    text = formats.serialize_poset(A)
    if args.json:
        _emit({"dim": A.dim, "name": A.name, "file": text})
    else:
        sys.stdout.write(text)
    return 0


def _oracle_poset(A: ps.AdditivePoset) -> dict:
    mism = 0
    for a in A.elements():
        for b in A.elements():
            if st.covers(A, a, b) != st.covers_by_definition(A, a, b):
                mism += 1
    for a in range(1, A.size):
        st.tile_report(A, a)
        st.mobius_atom_expansion(A, a)
    return {"cover_mismatches": mism, "tile_criteria_consistent": True,
            "mobius_expansions_exact": True}


def _analyze(args) -> int:
    A = _load_poset(args.file, args)
    rep = ps.verify_axioms(A, exhaustive=True)
    at = st.atoms(A)
    tiles = [a for a in range(1, A.size) if st.is_tile(A, a)]
    out = {
        "dim": A.dim,
        "axioms": rep.to_json(),
        "atoms": [A.fmt(a) for a in at],
        "tiles": [A.fmt(a) for a in tiles],
        "hasse_edges": len(st.hasse_edges(A)),
        "invariants": inv.invariant_report(A).to_json(),
        "plain": bool(pl.is_plain(A, with_embedding=False)),
    }
    if args.oracle:
        out["oracle"] = _oracle_poset(A)
    _emit(out)
    return 0


def _invariants(args) -> int:
    A = _load_poset(args.file, args)
    _emit(inv.invariant_report(A).to_json())
    return 0


def _complexity(args) -> int:
    A = _load_poset(args.file, args)
    res = pl.complexity(A, time_limit=args.time_limit)
    out = res.to_json()
    w = inv.width(A)[0]
    out["width"] = w
    out["sperner_bound_holds"] = pl.sperner_bound(A, res.value, w)
    _emit(out)
    return 0


def _plain(args) -> int:
    A = _load_poset(args.file, args)
    res = pl.is_plain(A)
    out = {"plain": res.plain,
           "order_preserving": [A.fmt(s) for s in res.functionals]}
    if res.plain:
        out["embedding"] = {A.fmt(a): to_bitstring(res.embedding(a), len(res.functionals))
                            for a in A.elements()}
    else:
        a, b = res.counterexample
        out["unseparated_pair"] = [A.fmt(a), A.fmt(b)]
    _emit(out)
    return 0


def _hasse(args) -> int:
    A = _load_poset(args.file, args)
    edges = st.hasse_edges(A)
    if args.dot and not args.json:
        print("digraph hasse {")
        print("  rankdir=BT;")
        for a in A.elements():
            print(f'  n{a} [label="{A.fmt(a)}"];')
        for a, b in edges:
            print(f"  n{b} -> n{a};")
        print("}")
    else:
        _emit({"dim": A.dim, "edges": [[A.fmt(a), A.fmt(b)] for a, b in edges]})
    return 0


def _iso(args) -> int:
    A = _load_poset(args.file, args)
    B = _load_poset(args.other, args)
    res = ps.is_isomorphic(A, B)
    out = {"status": res.status, "reason": res.reason}
    if res.images is not None:
        out["images"] = [B.fmt(x) for x in res.images]
    _emit(out)
    return 0


# ---------- graph


def _load_graph(path: str, args) -> tuple[hom.Graph, hom.HomologyPoset]:
    G = formats.parse_graph_file(path)
    P = hom.h1_poset(G)
    if P.dim > args.max_dim:
        raise _Fail(f"dim H1 = {P.dim} exceeds --max-dim {args.max_dim}")
    return G, P


def _edges_str(P: hom.HomologyPoset, z: int) -> list[int]:
    return list(bits_of(z))


def _h1(args) -> int:
    G, P = _load_graph(args.file, args)
    A = P.poset
    trivial = all(t <= 2 for t in A.tail_sizes)
    _emit({"vertices": G.n_vertices, "edges": G.n_edges, "dim": P.dim,
           "order": "trivial" if trivial else "nontrivial",
           "basis": [_edges_str(P, z) for z in P.basis],
           "functionals": [to_bitstring(s, P.dim) for s in A.functionals]})
    return 0


def _check_geometry(G, P, a: int, oracle: bool) -> tuple[bool, bool]:
    z = P.cycle(a)
    atom = hom.is_atom_class(G, z)
    tile = hom.is_tile_class(G, z)
    if oracle:
        if atom != st.is_atom(P.poset, a) or tile != st.is_tile(P.poset, a):
            raise AssertionError(f"geometric and poset tests disagree on class {a}")
    return atom, tile


def _atoms(args) -> int:
    G, P = _load_graph(args.file, args)
    out = [_edges_str(P, P.cycle(a)) for a in range(1, 1 << P.dim)
           if _check_geometry(G, P, a, args.oracle)[0]]
    _emit({"dim": P.dim, "atoms": out, "count": len(out)})
    return 0


def _tiles(args) -> int:
    G, P = _load_graph(args.file, args)
    out = [_edges_str(P, P.cycle(a)) for a in range(1, 1 << P.dim)
           if _check_geometry(G, P, a, args.oracle)[1]]
    _emit({"dim": P.dim, "tiles": out, "count": len(out)})
    return 0


def _circle(args) -> int:
    G, P = _load_graph(args.file, args)
    try:
        idx = [int(x) for x in args.edges.split(",") if x.strip()]
    except ValueError:
        raise ParseError(f"edge list {args.edges!r} is not comma-separated integers", 0, 0)
    for e in idx:
        if not 0 <= e < G.n_edges:
            raise _Fail(f"edge {e} out of range")
    cls = hom.class_from_edges(P, idx)
    c = hom.find_embedded_circle(G, cls)
    _emit({"class": _edges_str(P, cls.cycle), "circle": _edges_str(P, c)})
    return 0


def _scan(args) -> int:
    if args.max_edges is not None:
        graphs = connected_multigraphs(args.max_edges)
        checked = disagreements = 0
        for G in graphs:
            P = hom.h1_poset(G)
            for a in range(1, 1 << P.dim):
                z = P.cycle(a)
                checked += 1
                if (hom.is_atom_class(G, z) != st.is_atom(P.poset, a)
                        or hom.is_tile_class(G, z) != st.is_tile(P.poset, a)):
                    disagreements += 1
        _emit({"graphs": len(graphs), "classes": checked, "disagreements": disagreements})
        return 0
    graphs = random_multigraphs(args.count, args.seed, min_cycle_rank=args.min_dim)
    _emit(rz.scan_nontriviality(graphs, args.min_dim).to_json())
    return 0


# ---------- complex / realize


def _hn(args) -> int:
    X = formats.parse_complex_file(args.file)
    P = hom.hn_poset(X)
    if P.dim > args.max_dim:
        raise _Fail(f"dim H_n = {P.dim} exceeds --max-dim {args.max_dim}")
    A = P.poset.materialize()
    _emit({"n": X.n, "dim": P.dim,
           "basis": [to_bitstring(z, P.ncells) for z in P.basis],
           "atoms": len(st.atoms(A)),
           "poset": formats.serialize_poset(P.poset)})
    return 0


def _check(args) -> int:
    X = formats.parse_complex_file(args.file)
    _emit({"n": X.n, "cells": list(X.cells), "boundary_squared_zero": True})
    return 0


def _realize(args) -> int:
    A = _load_poset(args.file, args)
    r = rz.realize_complex(A, args.n, use_all=args.all)
    text = formats.serialize_complex(r.complex)
    witness = r.to_json(A.dim)
    if args.witness:
        Path(args.witness).write_text(json.dumps(witness, indent=2, sort_keys=True) + "\n")
    if args.out:
        Path(args.out).write_text(text)
    if args.json:
        _emit({"complex": text, "witness": witness})
    elif not args.out:
        sys.stdout.write(text)
    return 0


# ---------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="force JSON output")
    common.add_argument("--dot", action="store_true", help="DOT output (hasse)")
    common.add_argument("--max-dim", type=int, default=ps.SOFT_CAP,
                        help="refuse inputs above this dimension (default %(default)s)")
    common.add_argument("--seed", type=int, default=0, help="corpus seed")
    common.add_argument("--oracle", action="store_true", help="run brute-force cross-checks")

    p = argparse.ArgumentParser(prog="addposet", description="Additive posets over GF(2).")
    top = p.add_subparsers(dest="group", required=True)

    pp = top.add_parser("poset").add_subparsers(dest="cmd", required=True)
    m = pp.add_parser("make", parents=[common], help="emit a named construction")
    m.add_argument("kind", choices=["powerset", "even", "trivial", "pointed", "subspace",
                                    "functionals"])
    m.add_argument("params", nargs="*")
    m.set_defaults(func=_make)
    for name, func in (("analyze", _analyze), ("invariants", _invariants),
                       ("complexity", _complexity), ("plain", _plain), ("hasse", _hasse)):
        s = pp.add_parser(name, parents=[common])
        s.add_argument("file")
        s.set_defaults(func=func)
        if name == "complexity":
            s.add_argument("--time-limit", type=float, default=None)
    s = pp.add_parser("iso", parents=[common])
    s.add_argument("file")
    s.add_argument("other")
    s.set_defaults(func=_iso)

    gp = top.add_parser("graph").add_subparsers(dest="cmd", required=True)
    for name, func in (("h1", _h1), ("atoms", _atoms), ("tiles", _tiles)):
        s = gp.add_parser(name, parents=[common])
        s.add_argument("file")
        s.set_defaults(func=func)
    s = gp.add_parser("circle", parents=[common])
    s.add_argument("file")
    s.add_argument("edges", help="comma-separated edge indices of a cycle")
    s.set_defaults(func=_circle)
    s = gp.add_parser("scan", parents=[common])
    s.add_argument("--count", type=int, default=1000)
    s.add_argument("--min-dim", type=int, default=5)
    s.add_argument("--max-edges", type=int, default=None,
                   help="check atom/tile theorems on all connected multigraphs instead")
    s.set_defaults(func=_scan)

    cp = top.add_parser("complex").add_subparsers(dest="cmd", required=True)
    for name, func in (("hn", _hn), ("check", _check)):
        s = cp.add_parser(name, parents=[common])
        s.add_argument("file")
        s.set_defaults(func=func)

    r = top.add_parser("realize", parents=[common])
    r.add_argument("file")
    r.add_argument("-n", type=int, default=2, help="top degree (>= 2)")
    r.add_argument("--all", action="store_true", help="use every order-preserving functional")
    r.add_argument("--out", help="write the complex file here")
    r.add_argument("--witness", help="write the JSON isomorphism witness here")
    r.set_defaults(func=_realize)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except (PosetError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
