"""Tails, independence, atoms, covers, tiles, chains and the Möbius function."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .errors import PosetError
from .gf2 import bits_of, rank_of, rref
from .poset import AdditivePoset


# ---------- tails and independence


def tail(A: AdditivePoset, a) -> list[int]:
    """The subgroup of all ``b <= a``, ascending."""
    a = A.elem(a)
    members = list(bits_of(A.tail_mask(a)))
    if len(members) != 1 << rank_of(members):
        raise PosetError(f"tail of {A.fmt(a)} is not a subgroup")
    return members


def independent(A: AdditivePoset, a, b) -> bool:
    a, b = A.elem(a), A.elem(b)
    return A.leq(a, a ^ b)


def independents_mask(A: AdditivePoset, a: int) -> int:
    out = 0
    for x in bits_of(A.up_mask(a)):
        out |= 1 << (a ^ x)
    return out


def independents_of(A: AdditivePoset, a) -> list[int]:
    """The subgroup ``A^a`` of vectors independent from ``a``."""
    a = A.elem(a)
    m = independents_mask(A, a)
    if m & A.tail_mask(a) != 1:
        raise PosetError(f"A^a meets the tail of {A.fmt(a)} beyond zero")
    return list(bits_of(m))


# ---------- atoms, covers, Hasse diagram


def atoms(A: AdditivePoset) -> list[int]:
    sizes = A.tail_sizes
    return [a for a in A.elements() if sizes[a] == 2]


def atom_mask(A: AdditivePoset) -> int:
    return A.atom_mask


def is_atom(A: AdditivePoset, a) -> bool:
    a = A.elem(a)
    return a != 0 and A.tail_sizes[a] == 2


def tail_atoms(A: AdditivePoset, a: int) -> list[int]:
    return list(bits_of(A.tail_mask(a) & atom_mask(A)))


def covers(A: AdditivePoset, a, b) -> bool:
    """``a`` covers ``b``, tested through the atom ``a + b`` below ``a``."""
    a, b = A.elem(a), A.elem(b)
    c = a ^ b
    return is_atom(A, c) and A.leq(c, a)


def covers_by_definition(A: AdditivePoset, a, b) -> bool:
    a, b = A.elem(a), A.elem(b)
    if a == b or not A.leq(b, a):
        return False
    between = A.tail_mask(a) & A.up_mask(b)
    return between == (1 << a) | (1 << b)


def hasse_edges(A: AdditivePoset) -> list[tuple[int, int]]:
    """Pairs ``(a, b)`` with ``a`` covering ``b``, sorted."""
    am = atom_mask(A)
    edges = []
    for a in A.elements():
        for c in bits_of(A.tail_mask(a) & am):
            edges.append((a, a ^ c))
    edges.sort()
    return edges


# ---------- Möbius function


class MobiusTable:
    """Möbius function of the order, filled one row at a time on demand."""

    def __init__(self, A: AdditivePoset):
        self.A = A
        self._rows: dict[int, dict[int, int]] = {}
        self._cols: dict[int, dict[int, int]] = {}

    def _order(self, mask: int, reverse: bool = False) -> list[int]:
        sizes = self.A.tail_sizes
        return sorted(bits_of(mask), key=lambda x: (sizes[x], x), reverse=reverse)

    def row(self, a) -> dict[int, int]:
        """``{b: mu(a, b)}`` over the up-set of ``a``."""
        a = self.A.elem(a)
        if a not in self._rows:
            members = self._order(self.A.up_mask(a))
            vals = kernels.incidence_inverse(self.A.down, np.array(members, dtype=np.int64))
            self._rows[a] = dict(zip(members, (int(v) for v in vals)))
        return self._rows[a]

    def column(self, b) -> dict[int, int]:
        """``{a: mu(a, b)}`` over the tail of ``b``."""
        b = self.A.elem(b)
        if b not in self._cols:
            members = self._order(self.A.tail_mask(b), reverse=True)
            vals = kernels.incidence_inverse(self.A.up, np.array(members, dtype=np.int64))
            self._cols[b] = dict(zip(members, (int(v) for v in vals)))
        return self._cols[b]

    def __getitem__(self, pair) -> int:
        a, b = pair
        return self.row(a).get(self.A.elem(b), 0)

    def fill(self) -> "MobiusTable":
        for a in self.A.elements():
            self.row(a)
        return self

    def items(self):
        for a in self.A.elements():
            for b, v in self.row(a).items():
                yield (a, b), v


def mobius(A: AdditivePoset) -> MobiusTable:
    A.require_exhaustive()
    return MobiusTable(A)


def mobius_column(A: AdditivePoset, b) -> dict[int, int]:
    return MobiusTable(A).column(b)


def mobius_atom_expansion(A: AdditivePoset, a, table: MobiusTable | None = None
                          ) -> list[tuple[int, int]]:
    """Atoms of the tail of ``a`` with ``mu(atom, a) mod 2``.

    The atoms with coefficient 1 sum to ``a``; this is checked.
    """
    a = A.elem(a)
    col = (table or MobiusTable(A)).column(a)
    out = [(c, col[c] & 1) for c in tail_atoms(A, a)]
    total = 0
    for c, k in out:
        if k:
            total ^= c
    if total != a:
        raise PosetError(f"Möbius expansion of {A.fmt(a)} sums to {A.fmt(total)}")
    return out


# ---------- decompositions into independent atoms


def _check_decomposition(A: AdditivePoset, a: int, parts: Sequence[int]) -> None:
    total = 0
    for i, x in enumerate(parts):
        total ^= x
        if not A.leq(x, a):
            raise PosetError(f"atom {A.fmt(x)} is not below {A.fmt(a)}")
        for y in parts[i + 1 :]:
            if not independent(A, x, y):
                raise PosetError(f"atoms {A.fmt(x)}, {A.fmt(y)} are not independent")
    if total != a:
        raise PosetError("decomposition does not sum to the element")


def independent_atom_decomposition(A: AdditivePoset, a) -> list[int]:
    """Atoms read off a saturated chain ``0 < c1 < ... < a``.

    Each step moves to the smallest (as an int) minimal element strictly
    above the current one inside the tail of ``a``.
    """
    a = A.elem(a)
    if a == 0:
        raise PosetError("zero has no atom decomposition")
    region = A.tail_mask(a)
    c, parts = 0, []
    while c != a:
        above = region & A.up_mask(c) & ~(1 << c)
        nxt = None
        for x in bits_of(above):
            if A.tail_mask(x) & above == 1 << x:
                nxt = x
                break
        parts.append(c ^ nxt)
        c = nxt
    _check_decomposition(A, a, parts)
    return parts


def all_decompositions(A: AdditivePoset, a) -> list[tuple[int, ...]]:
    """Every set of pairwise independent atoms below ``a`` summing to ``a``.

    Sets are sorted tuples, listed in increasing order.
    """
    a = A.elem(a)
    if a == 0:
        raise PosetError("zero has no atom decomposition")
    cand = tail_atoms(A, a)
    region = A.tail_mask(a)
    found: list[tuple[int, ...]] = []

    def dfs(start: int, chosen: list[int], total: int, allowed: int) -> None:
        if total == a:
            found.append(tuple(chosen))
            return
        for i in range(start, len(cand)):
            x = cand[i]
            if not (allowed >> x) & 1:
                continue
            t = total ^ x
            if not (region >> t) & 1:
                continue
            chosen.append(x)
            dfs(i + 1, chosen, t, allowed & independents_mask(A, x))
            chosen.pop()

    dfs(0, [], 0, (1 << A.size) - 1)
    return found


# ---------- tiles


def is_tile(A: AdditivePoset, a) -> bool:
    a = A.elem(a)
    if a == 0:
        raise PosetError("zero is not a tile")
    ts = tail_atoms(A, a)
    return all(independent(A, x, y) for i, x in enumerate(ts) for y in ts[i + 1 :])


def _tail_is_powerset(A: AdditivePoset, a: int) -> bool:
    # any isomorphism from a powerset sends singletons to atoms, so it
    # suffices to test the map generated by the atoms of the tail
    ts = tail_atoms(A, a)
    k = A.tail_sizes[a].bit_length() - 1
    if len(ts) != k or rank_of(ts) != k:
        return False
    img = [0] * (1 << k)
    for J in range(1, 1 << k):
        low = J & -J
        img[J] = img[J ^ low] ^ ts[low.bit_length() - 1]
    for J in range(1 << k):
        for K in range(1 << k):
            if A.leq(img[J], img[K]) != (J & ~K == 0):
                return False
    return True


@dataclass
class TileReport:
    element: int
    definition: bool
    tail_powerset: bool
    independent_atoms_sum: bool
    unique_decomposition: bool
    decompositions: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def values(self) -> tuple[bool, bool, bool, bool]:
        return (self.definition, self.tail_powerset, self.independent_atoms_sum,
                self.unique_decomposition)

    @property
    def consistent(self) -> bool:
        return len(set(self.values)) == 1

    @property
    def is_tile(self) -> bool:
        return self.definition


def tile_report(A: AdditivePoset, a) -> TileReport:
    """Evaluate the four equivalent tile criteria; raises if they disagree."""
    a = A.elem(a)
    if a == 0:
        raise PosetError("zero is not a tile")
    ts = tail_atoms(A, a)
    pairwise = all(independent(A, x, y) for i, x in enumerate(ts) for y in ts[i + 1 :])
    total = 0
    for x in ts:
        total ^= x
    decs = all_decompositions(A, a)
    rep = TileReport(a, pairwise, _tail_is_powerset(A, a), pairwise and total == a,
                     len(decs) == 1, decs)
    if not rep.consistent:
        raise PosetError(f"tile criteria disagree at {A.fmt(a)}: {rep.values}")
    return rep


def tile_embedding(A: AdditivePoset, a) -> dict[int, int]:
    """Map subsets of the tail atoms (bitmask over their sorted list) into the tail."""
    a = A.elem(a)
    if a == 0 or not is_tile(A, a):
        raise PosetError(f"{A.fmt(a)} is not a tile")
    ts = tail_atoms(A, a)
    k = len(ts)
    emb = {0: 0}
    for J in range(1, 1 << k):
        low = J & -J
        emb[J] = emb[J ^ low] ^ ts[low.bit_length() - 1]
    if len(set(emb.values())) != len(emb):
        raise PosetError("tile embedding is not injective")
    for J in emb:
        for K in emb:
            if A.leq(emb[J], emb[K]) != (J & ~K == 0):
                raise PosetError("tile embedding is not an order embedding")
    return emb


# ---------- chains


@dataclass(frozen=True)
class ChainRecord:
    elements: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.elements) - 1


def check_chain(A: AdditivePoset, chain: Sequence[int]) -> ChainRecord:
    chain = [A.elem(x) for x in chain]
    if not chain:
        raise PosetError("empty chain")
    for i in range(1, len(chain)):
        if not A.lt(chain[i - 1], chain[i]):
            raise PosetError(f"chain breaks at index {i}")
    return ChainRecord(tuple(chain))


def chain_to_vectors(A: AdditivePoset, chain: Sequence[int]) -> list[int]:
    """Consecutive differences of a chain; these are pairwise independent
    and independent from its bottom element."""
    rec = check_chain(A, chain)
    e = rec.elements
    vecs = [e[i - 1] ^ e[i] for i in range(1, len(e))]
    if vectors_to_chain(A, e[0], vecs).elements != e:
        raise PosetError("chain round trip failed")
    return vecs


def vectors_to_chain(A: AdditivePoset, a, vectors: Sequence[int]) -> ChainRecord:
    """Partial sums ``a, a+b1, a+b1+b2, ...`` of pairwise independent
    nonzero vectors from ``A^a``."""
    a = A.elem(a)
    vs = [A.elem(v) for v in vectors]
    ind_a = independents_mask(A, a)
    for i, v in enumerate(vs):
        if v == 0:
            raise PosetError(f"vector {i} is zero")
        if not (ind_a >> v) & 1:
            raise PosetError(f"vector {i} is not independent from the base")
        for j in range(i):
            if not independent(A, vs[j], v):
                raise PosetError(f"vector {i} is not independent from vector {j}")
    out = [a]
    for v in vs:
        out.append(out[-1] ^ v)
    return check_chain(A, out)


def chains(A: AdditivePoset, max_length: int, start: int | None = None) -> list[tuple[int, ...]]:
    """All chains with at most ``max_length`` steps (optionally from ``start``)."""
    out = []

    def grow(ch: list[int]) -> None:
        out.append(tuple(ch))
        if len(ch) - 1 == max_length:
            return
        top = ch[-1]
        for y in bits_of(A.up_mask(top) & ~(1 << top)):
            ch.append(y)
            grow(ch)
            ch.pop()

    for s in ([start] if start is not None else A.elements()):
        grow([s])
    return out
