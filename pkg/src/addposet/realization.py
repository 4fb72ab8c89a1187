"""Realizing plain additive posets as homological posets.

Functional sets are transformed by two moves:
``M1(a, b)`` adds ``a + b``, and ``M2(a, b)`` replaces ``a`` by ``a + b``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import NotPlainError, PosetError
from .gf2 import BitMatrix, Solver, bits_of, kernel_rows, rank_of, to_bitstring
from .homology import (ChainComplex, Graph, HomologyPoset, fundamental_cycles, h1_poset,
                       hn_poset, k33, k4, loop_graph, theta_graph)
from .plainness import complexity, is_plain
from .poset import AdditivePoset, check_isomorphism, is_isomorphic, trivial_poset


@dataclass(frozen=True)
class Move:
    kind: str  # "M1" or "M2"
    a: int
    b: int

    def to_json(self, dim: int) -> list:
        return [self.kind, to_bitstring(self.a, dim), to_bitstring(self.b, dim)]


def apply_move(S: Iterable[int], m: Move) -> frozenset[int]:
    S = frozenset(S)
    if m.a not in S or m.b not in S:
        raise PosetError(f"{m.kind} operands must both be present")
    if m.a == m.b:
        raise PosetError(f"{m.kind} operands must be distinct")
    c = m.a ^ m.b
    if m.kind == "M1":
        return S | {c}
    if m.kind == "M2":
        return (S - {m.a}) | {c}
    raise PosetError(f"unknown move {m.kind}")


@dataclass
class MoveScript:
    dim: int
    initial: list[int]
    moves: list[Move] = field(default_factory=list)

    def replay(self) -> frozenset[int]:
        """Apply the moves in order, checking each intermediate set."""
        S = frozenset(self.initial)
        for i, m in enumerate(self.moves):
            S = apply_move(S, m)
            if 0 in S:
                raise PosetError(f"move {i} introduced the zero functional")
            if rank_of(S) != self.dim:
                raise PosetError(f"set after move {i} does not span")
        return S

    def to_json(self) -> dict:
        return {"initial": [to_bitstring(s, self.dim) for s in self.initial],
                "moves": [m.to_json(self.dim) for m in self.moves]}


def plan_moves(dim: int, S: Iterable[int]) -> MoveScript:
    """Moves that grow a basis inside ``S`` into all of ``S``.

    Targets are added largest first (size = number of basis summands); a
    target ``s1 + ... + sk`` costs ``M1(s1, s2)`` then ``M2`` steps adding
    ``s3, ..., sk`` to the running sum.
    """
    S = sorted(set(S))
    if 0 in S:
        raise PosetError("the zero functional cannot be realized")
    if rank_of(S) != dim:
        raise PosetError("functionals do not span the dual")
    basis: list[int] = []
    for s in S:
        if rank_of(basis + [s]) > len(basis):
            basis.append(s)
    solver = Solver(basis)

    def summands(v: int) -> list[int]:
        return [basis[i] for i in bits_of(solver.solve(v))]

    targets = [s for s in S if s not in set(basis)]
    parts = {t: summands(t) for t in targets}
    targets.sort(key=lambda t: (-len(parts[t]), t))
    script = MoveScript(dim, list(basis))
    for t in targets:
        ps = sorted(parts[t])
        acc = ps[0] ^ ps[1]
        script.moves.append(Move("M1", ps[0], ps[1]))
        for s in ps[2:]:
            script.moves.append(Move("M2", acc, s))
            acc ^= s
    if script.replay() != frozenset(S):
        raise AssertionError("move script does not reproduce the target set")
    return script


@dataclass
class Realization:
    complex: ChainComplex
    functionals: list[int]
    images: list[int]
    script: MoveScript
    homology: HomologyPoset

    def to_json(self, dim: int) -> dict:
        return {
            "top_cells": len(self.functionals),
            "functionals": [to_bitstring(s, dim) for s in self.functionals],
            "isomorphism": [to_bitstring(x, self.homology.dim) for x in self.images],
            "moves": self.script.to_json(),
        }


def realize_complex(A: AdditivePoset, n: int = 2, *, use_all: bool = False,
                    functionals: Sequence[int] | None = None) -> Realization:
    """Complex whose top homological poset is isomorphic to ``A``.

    With ``S`` separating, ``phi(a) = {s : s(a) = 1}`` embeds ``A`` in the
    powerset of ``S``; the top boundary has the annihilator of ``phi(A)`` as
    rows, so its kernel is exactly ``phi(A)``.
    """
    if n < 2:
        raise PosetError("realization needs n >= 2; graphs do not realize every plain poset")
    plain = is_plain(A, with_embedding=False)
    if not plain:
        raise NotPlainError("only plain posets can be realized")
    if functionals is not None:
        S = list(functionals)
    elif use_all:
        S = plain.functionals
    else:
        S = complexity(A).functionals
    k = len(S)
    phi_basis = []
    for i in range(A.dim):
        m = 0
        for j, s in enumerate(S):
            if (s >> i) & 1:
                m |= 1 << j
        phi_basis.append(m)
    rows = kernel_rows(phi_basis, k)
    cells = [1] + [0] * (n - 2) + [len(rows), k]
    X = ChainComplex.build(cells, {n: BitMatrix(len(rows), k, tuple(rows))})
    H = hn_poset(X)
    if H.dim != A.dim:
        raise AssertionError("kernel of the top boundary has the wrong dimension")
    images = [H.coordinates(z) for z in phi_basis]
    if A.dim <= 8 and not check_isomorphism(A, H.poset, images):
        raise AssertionError("realization is not an order isomorphism")
    script = plan_moves(A.dim, S) if S else MoveScript(A.dim, [])
    return Realization(X, list(S), images, script, H)


_TRIVIAL_GRAPHS = {1: loop_graph, 2: theta_graph, 3: k4, 4: k33}


def realize_graph_trivial(m: int) -> Graph:
    """Graph whose H1 carries the trivial order in dimension ``m``."""
    if m <= 0:
        raise PosetError("dimension must be positive")
    if m >= 5:
        raise PosetError(
            "no graph has a trivially ordered first homology of dimension 5 or more")
    G = _TRIVIAL_GRAPHS[m]()
    if is_isomorphic(h1_poset(G).poset.materialize(), trivial_poset(m)).status != "yes":
        raise AssertionError("fixture graph does not realize the trivial order")
    return G


def disjoint_cycle_pair(G: Graph) -> tuple[int, int] | None:
    """Two nonzero edge-disjoint cycles, found by scanning cycles by size."""
    P = h1_poset(G)
    all_edges = (1 << G.n_edges) - 1
    cycles = sorted((P.cycle(a) for a in range(1, 1 << P.dim)), key=lambda z: (z.bit_count(), z))
    for z in cycles:
        rest = all_edges & ~z
        sub = Graph(G.n_vertices, tuple(G.edges[i] for i in bits_of(rest)))
        if sub.cycle_rank() > 0:
            idx = list(bits_of(rest))
            w = fundamental_cycles(sub)[0]
            b = 0
            for j in bits_of(w):
                b |= 1 << idx[j]
            return z, b
    return None


@dataclass
class ScanReport:
    scanned: int = 0
    skipped: int = 0
    witnesses: int = 0
    counterexamples: list[Graph] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"scanned": self.scanned, "skipped": self.skipped, "witnesses": self.witnesses,
                "counterexamples": [{"vertices": g.n_vertices, "edges": [list(e) for e in g.edges]}
                                    for g in self.counterexamples]}


def scan_nontriviality(graphs: Iterable[Graph], min_dim: int = 5) -> ScanReport:
    """Look for a relation ``a < a + b`` in each graph of cycle rank ``>= min_dim``.

    Such a pair is a pair of nonzero edge-disjoint cycles; graphs where none
    exists are collected as counterexamples.
    """
    rep = ScanReport()
    for G in graphs:
        if G.cycle_rank() < min_dim:
            rep.skipped += 1
            continue
        rep.scanned += 1
        pair = disjoint_cycle_pair(G)
        if pair is None:
            rep.counterexamples.append(G)
            continue
        P = h1_poset(G)
        a, b = P.coordinates(pair[0]), P.coordinates(pair[1])
        if not (b and P.leq(a, a ^ b)):
            raise AssertionError("edge-disjoint cycles failed to give a relation")
        rep.witnesses += 1
    return rep
