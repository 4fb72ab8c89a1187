"""Numerical invariants: height, width, weight, coweight and m-width."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from . import kernels
from .errors import PosetError
from .gf2 import bits_of, span_elements, to_bitstring
from .poset import AdditivePoset
from .structure import independents_mask


def height(A: AdditivePoset) -> tuple[int, list[int]]:
    """Length of a longest chain, with one such chain from 0 upward."""
    A.require_exhaustive()
    am = A.atom_mask
    h = [0] * A.size
    prev = [-1] * A.size
    for a in A.linear_extension:
        for c in bits_of(A.down_masks[a] & am):
            b = a ^ c
            if h[b] + 1 > h[a]:
                h[a], prev[a] = h[b] + 1, b
    top = max(A.elements(), key=lambda x: (h[x], -x))
    chain = [top]
    while prev[chain[-1]] >= 0:
        chain.append(prev[chain[-1]])
    return h[top], chain[::-1]


def max_independent_family(A: AdditivePoset) -> list[int]:
    """Largest set of pairwise independent nonzero vectors (exhaustive)."""
    A.require_exhaustive(8)
    nbr = [independents_mask(A, a) & ~1 for a in A.elements()]
    best: list[int] = []

    def grow(chosen: list[int], cand: int) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        # pairwise independent families are linearly independent
        if len(chosen) + min(cand.bit_count(), A.dim - len(chosen)) <= len(best):
            return
        while cand:
            low = cand & -cand
            x = low.bit_length() - 1
            cand ^= low
            chosen.append(x)
            grow(chosen, cand & nbr[x])
            chosen.pop()
            if len(chosen) + min(cand.bit_count(), A.dim - len(chosen)) <= len(best):
                return

    grow([], ((1 << A.size) - 1) & ~1)
    return best


def _antichain_from_masks(elements: Sequence[int], down: dict[int, int]) -> list[int]:
    """Maximum antichain among ``elements`` via Dilworth / König."""
    n = len(elements)
    if n == 0:
        return []
    index = {x: i for i, x in enumerate(elements)}
    rows, cols = [], []
    for j, y in enumerate(elements):
        for x in bits_of(down[y] & ~(1 << y)):
            i = index.get(x)
            if i is not None:
                rows.append(i)
                cols.append(j)
    g = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    match_left = maximum_bipartite_matching(g, perm_type="column")
    match_right = np.full(n, -1, dtype=np.int64)
    for i, j in enumerate(match_left):
        if j >= 0:
            match_right[j] = i
    seen_l = np.zeros(n, dtype=bool)
    seen_r = np.zeros(n, dtype=bool)
    stack = [i for i in range(n) if match_left[i] < 0]
    seen_l[stack] = True
    indptr, indices = g.indptr, g.indices
    while stack:
        i = stack.pop()
        for j in indices[indptr[i] : indptr[i + 1]]:
            if not seen_r[j]:
                seen_r[j] = True
                k = match_right[j]
                if k >= 0 and not seen_l[k]:
                    seen_l[k] = True
                    stack.append(k)
    chain = [elements[i] for i in range(n) if seen_l[i] and not seen_r[i]]
    if len(chain) != n - int((match_left >= 0).sum()):
        raise PosetError("König witness has the wrong size")
    return chain


def width(A: AdditivePoset) -> tuple[int, list[int]]:
    """Size of a largest antichain, with a witness."""
    A.require_exhaustive()
    anti = _antichain_from_masks(list(A.elements()), dict(enumerate(A.down_masks)))
    return len(anti), anti


def subset_width(A: AdditivePoset, elements: Sequence[int]) -> int:
    return len(_antichain_from_masks(list(elements), dict(enumerate(A.down_masks))))


def weight(A: AdditivePoset) -> int:
    A.require_exhaustive()
    return A.atom_mask.bit_count()


def dimension(A: AdditivePoset) -> int:
    return A.dim


def weight_of(A: AdditivePoset, a) -> int:
    """Atoms below ``a``; equals the out-degree of ``a`` in the Hasse diagram."""
    a = A.elem(a)
    return (A.tail_mask(a) & A.atom_mask).bit_count()


def coweight_of(A: AdditivePoset, a) -> int:
    """Atoms independent from ``a``; equals the in-degree of ``a``."""
    a = A.elem(a)
    c = (independents_mask(A, a) & A.atom_mask).bit_count()
    if weight_of(A, a) + c > weight(A):
        raise PosetError("weight and coweight exceed the total weight")
    return c


def subspaces(n: int, m: int):
    """Yield the RREF bases of every ``m``-dimensional subspace of GF(2)^n."""
    for pivots in combinations(range(n), m):
        pivset = set(pivots)
        free = [[f for f in range(p + 1, n) if f not in pivset] for p in pivots]
        slots = [(i, f) for i, fs in enumerate(free) for f in fs]
        for choice in product((0, 1), repeat=len(slots)):
            rows = [1 << p for p in pivots]
            for (i, f), bit in zip(slots, choice):
                if bit:
                    rows[i] |= 1 << f
            yield rows


def m_width(A: AdditivePoset, m: int) -> int:
    """Largest antichain whose span has dimension at most ``m``."""
    A.require_exhaustive(8)
    if m < 1 or m > A.dim:
        raise PosetError(f"m must lie in 1..{A.dim}")
    down = dict(enumerate(A.down_masks))
    best = 0
    for basis in subspaces(A.dim, m):
        best = max(best, len(_antichain_from_masks(span_elements(basis), down)))
    return best


@dataclass
class InvariantReport:
    height: int
    dim: int
    weight: int
    width: int
    chain: list[int] = field(default_factory=list)
    atoms: list[int] = field(default_factory=list)
    antichain: list[int] = field(default_factory=list)

    @property
    def chain_holds(self) -> bool:
        return self.height <= self.dim <= self.weight <= self.width

    def to_json(self) -> dict:
        f = lambda xs: [to_bitstring(x, self.dim) for x in xs]
        return {
            "height": self.height,
            "dim": self.dim,
            "weight": self.weight,
            "width": self.width,
            "inequalities_hold": self.chain_holds,
            "witnesses": {"chain": f(self.chain), "atoms": f(self.atoms),
                          "antichain": f(self.antichain)},
        }


def invariant_report(A: AdditivePoset) -> InvariantReport:
    h, chain = height(A)
    w, anti = width(A)
    at = list(bits_of(A.atom_mask))
    rep = InvariantReport(h, A.dim, len(at), w, chain, at, anti)
    if not rep.chain_holds:
        raise PosetError(f"invariant chain fails: h={h} dim={A.dim} wt={len(at)} w={w}")
    return rep
