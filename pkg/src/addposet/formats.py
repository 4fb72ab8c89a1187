"""Text formats for posets, graphs and chain complexes.

Every file may start with the version line ``# addposet-format 1``; other
``#`` lines and blank lines are ignored.  Bit strings are little-endian and
``-`` stands for the empty string.

poset::

    poset <dim>
    functionals            | relations
    <s>                    | <a> <b>      (meaning a <= b)

graph::

    graph <V> <E>
    <u> <v>                (0-based, u = v is a loop)

complex::

    complex <n>
    cells <c0> ... <cn>    (optional unless n = 0)
    boundary <k> <rows> <cols>
    <row>                  (rows lines of cols bits)
"""

from __future__ import annotations

from pathlib import Path

from .errors import ParseError
from .gf2 import BitMatrix, to_bitstring
from .homology import ChainComplex, Graph
from .poset import AdditivePoset, check_axioms, from_functionals, from_relations

VERSION = 1
HEADER = f"# addposet-format {VERSION}"


class _Lines:
    def __init__(self, text: str, path: str | None):
        self.path = path
        self.items: list[tuple[int, list[tuple[int, str]]]] = []
        for no, raw in enumerate(text.splitlines(), start=1):
            s = raw.strip()
            if s.startswith("# addposet-format"):
                ver = s.split()[-1]
                if ver != str(VERSION):
                    raise ParseError(f"unsupported format version {ver}", no, 1, path)
                continue
            if not s or s.startswith("#"):
                continue
            toks, col = [], 0
            for part in raw.split():
                col = raw.index(part, col)
                toks.append((col + 1, part))
                col += len(part)
            self.items.append((no, toks))
        self.pos = 0

    def done(self) -> bool:
        return self.pos >= len(self.items)

    def next(self, what: str) -> tuple[int, list[tuple[int, str]]]:
        if self.done():
            last = self.items[-1][0] if self.items else 0
            raise ParseError(f"unexpected end of file, expected {what}", last + 1, 1, self.path)
        item = self.items[self.pos]
        self.pos += 1
        return item

    def peek_word(self) -> str | None:
        return None if self.done() else self.items[self.pos][1][0][1]

    def error(self, msg: str, line: int, col: int) -> ParseError:
        return ParseError(msg, line, col, self.path)

    def int_tok(self, tok: tuple[int, str], line: int, what: str, minimum: int = 0) -> int:
        col, s = tok
        try:
            v = int(s)
        except ValueError:
            raise self.error(f"expected integer {what}, got {s!r}", line, col) from None
        if v < minimum:
            raise self.error(f"{what} must be at least {minimum}", line, col)
        return v

    def bits_tok(self, tok: tuple[int, str], line: int, length: int) -> int:
        col, s = tok
        if s == "-":
            if length:
                raise self.error(f"dimension mismatch: empty string where {length} bits expected",
                                 line, col)
            return 0
        for i, ch in enumerate(s):
            if ch not in "01":
                raise self.error(f"non-bit character {ch!r}", line, col + i)
        if len(s) != length:
            raise self.error(f"dimension mismatch: {len(s)} bits where {length} expected",
                             line, col)
        return sum(1 << i for i, ch in enumerate(s) if ch == "1")

    def expect_arity(self, toks, n: int, line: int, form: str) -> None:
        if len(toks) != n:
            col = toks[min(len(toks), n) - 1][0] if toks else 1
            raise self.error(f"expected `{form}`", line, col)


# ---------- posets


def parse_poset(text: str, path: str | None = None, verify: bool = True) -> AdditivePoset:
    L = _Lines(text, path)
    line, toks = L.next("`poset <dim>`")
    if toks[0][1] != "poset":
        raise L.error("expected `poset <dim>` header", line, toks[0][0])
    L.expect_arity(toks, 2, line, "poset <dim>")
    dim = L.int_tok(toks[1], line, "dimension")
    line, toks = L.next("`functionals` or `relations`")
    kind = toks[0][1]
    if kind not in ("functionals", "relations") or len(toks) != 1:
        raise L.error("expected `functionals` or `relations`", line, toks[0][0])
    items = []
    while not L.done():
        line, toks = L.next("entry")
        if kind == "functionals":
            L.expect_arity(toks, 1, line, "<bits>")
            items.append(L.bits_tok(toks[0], line, dim))
        else:
            L.expect_arity(toks, 2, line, "<a> <b>")
            items.append((L.bits_tok(toks[0], line, dim), L.bits_tok(toks[1], line, dim)))
    if kind == "functionals":
        return from_functionals(dim, items)
    A = from_relations(dim, items)
    return check_axioms(A) if verify else A


def serialize_poset(A: AdditivePoset) -> str:
    out = [HEADER, f"poset {A.dim}"]
    if A.functionals is not None:
        out.append("functionals")
        out += [to_bitstring(s, A.dim) for s in A.functionals]
    else:
        out.append("relations")
        out += [f"{A.fmt(a)} {A.fmt(b)}" for a, b in A.relations()]
    return "\n".join(out) + "\n"


# ---------- graphs


def parse_graph(text: str, path: str | None = None) -> Graph:
    L = _Lines(text, path)
    line, toks = L.next("`graph <V> <E>`")
    if toks[0][1] != "graph":
        raise L.error("expected `graph <V> <E>` header", line, toks[0][0])
    L.expect_arity(toks, 3, line, "graph <V> <E>")
    nv = L.int_tok(toks[1], line, "vertex count")
    ne = L.int_tok(toks[2], line, "edge count")
    edges = []
    while not L.done():
        line, toks = L.next("edge")
        L.expect_arity(toks, 2, line, "<u> <v>")
        u = L.int_tok(toks[0], line, "vertex")
        v = L.int_tok(toks[1], line, "vertex")
        for tok, x in ((toks[0], u), (toks[1], v)):
            if x >= nv:
                raise L.error(f"vertex {x} out of range 0..{nv - 1}", line, tok[0])
        edges.append((u, v))
    if len(edges) != ne:
        raise L.error(f"header declares {ne} edges, found {len(edges)}", line if edges else 1, 1)
    return Graph(nv, tuple(edges))


def serialize_graph(G: Graph) -> str:
    out = [HEADER, f"graph {G.n_vertices} {G.n_edges}"]
    out += [f"{u} {v}" for u, v in G.edges]
    return "\n".join(out) + "\n"


# ---------- complexes


def parse_complex(text: str, path: str | None = None) -> ChainComplex:
    L = _Lines(text, path)
    line, toks = L.next("`complex <n>`")
    if toks[0][1] != "complex":
        raise L.error("expected `complex <n>` header", line, toks[0][0])
    L.expect_arity(toks, 2, line, "complex <n>")
    n = L.int_tok(toks[1], line, "degree")
    cells: list[int] | None = None
    if L.peek_word() == "cells":
        line, toks = L.next("cells")
        L.expect_arity(toks, n + 2, line, "cells " + " ".join(f"<c{k}>" for k in range(n + 1)))
        cells = [L.int_tok(t, line, "cell count") for t in toks[1:]]
    elif n == 0:
        raise L.error("a degree-0 complex needs a `cells` line", line, 1)
    mats: dict[int, BitMatrix] = {}
    while not L.done():
        line, toks = L.next("boundary block")
        if toks[0][1] != "boundary":
            raise L.error("expected `boundary <k> <rows> <cols>`", line, toks[0][0])
        L.expect_arity(toks, 4, line, "boundary <k> <rows> <cols>")
        k = L.int_tok(toks[1], line, "degree", 1)
        if k > n:
            raise L.error(f"boundary degree {k} exceeds {n}", line, toks[1][0])
        if k in mats:
            raise L.error(f"duplicate boundary {k}", line, toks[1][0])
        r = L.int_tok(toks[2], line, "row count")
        c = L.int_tok(toks[3], line, "column count")
        if cells is not None and (r, c) != (cells[k - 1], cells[k]):
            raise L.error(f"boundary {k} shape {r}x{c} does not match the cell counts",
                          line, toks[2][0])
        rows = []
        for _ in range(r):
            rl, rt = L.next(f"row of boundary {k}")
            L.expect_arity(rt, 1, rl, "<bits>")
            rows.append(L.bits_tok(rt[0], rl, c))
        mats[k] = BitMatrix(r, c, tuple(rows))
    if cells is None:
        missing = [k for k in range(1, n + 1) if k not in mats]
        if missing:
            raise L.error(f"boundary {missing[0]} missing and no `cells` line given", line, 1)
        cells = [mats[1].nrows] + [mats[k].ncols for k in range(1, n + 1)]
        for k in range(2, n + 1):
            if mats[k].nrows != mats[k - 1].ncols:
                raise L.error(f"boundary {k} rows do not match boundary {k - 1} columns", line, 1)
    return ChainComplex.build(cells, mats)


def serialize_complex(X: ChainComplex) -> str:
    out = [HEADER, f"complex {X.n}", "cells " + " ".join(str(c) for c in X.cells)]
    for k in range(1, X.n + 1):
        d = X.d(k)
        out.append(f"boundary {k} {d.nrows} {d.ncols}")
        out += [to_bitstring(r, d.ncols) for r in d.rows]
    return "\n".join(out) + "\n"


def _read(path: str | Path) -> str:
    return Path(path).read_text()


def parse_poset_file(path: str | Path, verify: bool = True) -> AdditivePoset:
    return parse_poset(_read(path), str(path), verify)


def parse_graph_file(path: str | Path) -> Graph:
    return parse_graph(_read(path), str(path))


def parse_complex_file(path: str | Path) -> ChainComplex:
    return parse_complex(_read(path), str(path))
