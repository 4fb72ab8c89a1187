"""Order-preserving functionals, separating sets, plainness and complexity."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Mapping, Sequence

import numpy as np

from . import kernels
from .errors import NotPlainError, PosetError
from .gf2 import BitVec, bits_of, parity, to_bitstring
from .poset import AdditivePoset, _phi_table, _row_to_int


def _tail_basis_array(A: AdditivePoset) -> np.ndarray:
    bases = A.tail_bases
    m = max(1, max(len(b) for b in bases))
    arr = np.zeros((A.size, m), dtype=np.uint64)
    for a, b in enumerate(bases):
        arr[a, : len(b)] = b
    return arr


def order_preserving_functionals(A: AdditivePoset) -> list[int]:
    """Every ``s`` with ``a <= b => s(a) <= s(b)``, ascending; includes 0."""
    A.require_exhaustive()
    flags = kernels.order_preserving(_tail_basis_array(A), A.dim)
    return [int(s) for s in np.flatnonzero(flags)]


def is_order_preserving(A: AdditivePoset, s: int) -> bool:
    for a in A.elements():
        if not parity(s & a) and any(parity(s & t) for t in A.tail_bases[a]):
            return False
    return True


@dataclass
class SeparatingCertificate:
    dim: int
    functionals: list[int]

    def witness(self, a: int, b: int) -> int | None:
        """Index of the first functional with ``s(a) = 1`` and ``s(b) = 0``."""
        for i, s in enumerate(self.functionals):
            if parity(s & a) and not parity(s & b):
                return i
        return None

    def coverage(self, A: AdditivePoset) -> dict[tuple[int, int], int]:
        out = {}
        for a in A.elements():
            for b in A.elements():
                if not A.leq(a, b):
                    out[(a, b)] = self.witness(a, b)
        return out

    def to_json(self) -> dict:
        return {"size": len(self.functionals),
                "functionals": [to_bitstring(s, self.dim) for s in self.functionals]}


@dataclass
class SeparationFailure:
    reason: str
    pair: tuple[int, int] | None = None
    functional: int | None = None

    def __bool__(self) -> bool:
        return False


def _coerce(A: AdditivePoset, S: Sequence) -> list[int]:
    out = []
    for s in S:
        if isinstance(s, BitVec):
            if s.n != A.dim:
                raise PosetError(f"functional length {s.n} != dim {A.dim}")
            s = s.bits
        if s < 0 or s >> A.dim:
            raise PosetError(f"functional {s} outside the dual")
        out.append(int(s))
    return out


def induced_down(dim: int, S: Sequence[int]) -> np.ndarray:
    return kernels.subset_table(_phi_table(dim, S))


def is_separating(A: AdditivePoset, S: Sequence) -> SeparatingCertificate | SeparationFailure:
    """Certificate if ``S`` is separating, else the first failure found.

    Non-order-preserving members are reported first (lowest such ``s``);
    otherwise the uncovered pair ``(a, b)``, ``a`` then ``b`` ascending.
    """
    A.require_exhaustive()
    S = _coerce(A, S)
    op = set(order_preserving_functionals(A))
    for s in S:
        if s not in op:
            return SeparationFailure("functional is not order-preserving", functional=s)
    ind = induced_down(A.dim, S)
    if np.array_equal(ind, A.down):
        return SeparatingCertificate(A.dim, list(S))
    extra = kernels.transpose_table(ind & ~A.down, A.size)
    for a in A.elements():
        row = _row_to_int(extra[a])
        if row:
            b = (row & -row).bit_length() - 1
            return SeparationFailure("pair not separated", pair=(a, b))
    raise AssertionError("unreachable")


@dataclass
class Embedding:
    """``a -> {s in S : s(a) = 1}`` with images as bitmasks over ``S``."""

    dim: int
    functionals: list[int]
    images: list[int]

    def __call__(self, a: int) -> int:
        return self.images[a]

    def subset(self, a: int) -> list[int]:
        return [self.functionals[i] for i in bits_of(self.images[a])]


def embed_powerset(A: AdditivePoset, S: Sequence) -> Embedding:
    cert = is_separating(A, S)
    if not cert:
        raise PosetError(f"not separating: {cert.reason}")
    S = cert.functionals
    imgs = [0] * A.size
    for a in A.elements():
        m = 0
        for i, s in enumerate(S):
            if parity(s & a):
                m |= 1 << i
        imgs[a] = m
    if len(set(imgs)) != A.size:
        raise PosetError("embedding is not injective")
    for a in range(A.size):
        for b in range(A.size):
            if imgs[a ^ b] != imgs[a] ^ imgs[b]:
                raise PosetError("embedding is not additive")
    return Embedding(A.dim, list(S), imgs)


@dataclass
class PlainResult:
    plain: bool
    functionals: list[int]
    counterexample: tuple[int, int] | None = None
    embedding: Embedding | None = None

    def __bool__(self) -> bool:
        return self.plain


def is_plain(A: AdditivePoset, with_embedding: bool = True) -> PlainResult:
    S = [s for s in order_preserving_functionals(A) if s]
    res = is_separating(A, S)
    if not res:
        return PlainResult(False, S, res.pair)
    emb = embed_powerset(A, S) if with_embedding else None
    return PlainResult(True, S, None, emb)


# ---------- exact complexity


class SearchBudgetExceeded(PosetError):
    pass


def _violation_covers(A: AdditivePoset, cands: Sequence[int]) -> tuple[int, list[int]]:
    n = A.size
    universe = 0
    for b in A.elements():
        non = ~A.down_masks[b] & ((1 << n) - 1)
        for a in bits_of(non):
            universe |= 1 << (a * n + b)
    val = [[parity(s & x) for x in range(n)] for s in cands]
    covers = []
    for v in val:
        ones = [x for x in range(n) if v[x]]
        zeros = [x for x in range(n) if not v[x]]
        m = 0
        for a in ones:
            base = a * n
            for b in zeros:
                m |= 1 << (base + b)
        covers.append(m & universe)
    return universe, covers


def _greedy(universe: int, covers: list[int]) -> list[int]:
    left, picked = universe, []
    while left:
        i = max(range(len(covers)), key=lambda j: ((covers[j] & left).bit_count(), -j))
        if not covers[i] & left:
            return []
        picked.append(i)
        left &= ~covers[i]
    return picked


class _Budget:
    def __init__(self, seconds: float | None):
        self.deadline = None if seconds is None else time.monotonic() + seconds
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.deadline is not None and self.nodes & 1023 == 0 and time.monotonic() > self.deadline:
            raise SearchBudgetExceeded("complexity search exceeded its time budget")


def _feasible(universe: int, covers: list[int], k: int, budget: _Budget) -> list[int] | None:
    """Branch on the most constrained uncovered pair."""
    n_c = len(covers)
    maxcov = max((c.bit_count() for c in covers), default=0)

    def rec(left: int, slots: int, banned: int, chosen: list[int]) -> list[int] | None:
        budget.tick()
        if not left:
            return list(chosen)
        if slots == 0 or left.bit_count() > slots * maxcov:
            return None
        gains = sorted(((covers[i] & left).bit_count() for i in range(n_c)
                        if not (banned >> i) & 1), reverse=True)
        if sum(gains[:slots]) < left.bit_count():
            return None
        best_e, best_opts = None, None
        probe = left
        for _ in range(64):
            if not probe:
                break
            e = probe & -probe
            probe ^= e
            opts = [i for i in range(n_c) if not (banned >> i) & 1 and covers[i] & e]
            if best_opts is None or len(opts) < len(best_opts):
                best_e, best_opts = e, opts
                if len(opts) <= 1:
                    break
        if not best_opts:
            return None
        best_opts.sort(key=lambda i: (-(covers[i] & left).bit_count(), i))
        for i in best_opts:
            chosen.append(i)
            r = rec(left & ~covers[i], slots - 1, banned, chosen)
            chosen.pop()
            if r is not None:
                return r
            banned |= 1 << i
        return None

    return rec(universe, k, 0, [])


def _lex_smallest(universe: int, covers: list[int], k: int, budget: _Budget) -> list[int]:
    n_c = len(covers)
    suffix = [0] * (n_c + 1)
    for i in range(n_c - 1, -1, -1):
        suffix[i] = suffix[i + 1] | covers[i]

    def rec(start: int, left: int, slots: int, chosen: list[int]) -> list[int] | None:
        budget.tick()
        if not left:
            return list(chosen)
        if slots == 0 or left & ~suffix[start]:
            return None
        for i in range(start, n_c):
            if not covers[i] & left:
                continue
            chosen.append(i)
            r = rec(i + 1, left & ~covers[i], slots - 1, chosen)
            chosen.pop()
            if r is not None:
                return r
            if left & ~suffix[i + 1]:
                break
        return None

    out = rec(0, universe, k, [])
    if out is None:
        raise AssertionError("a cover of the optimal size must exist")
    return out


@dataclass
class ComplexityResult:
    value: int
    functionals: list[int]
    dim: int
    nodes: int = 0

    def to_json(self) -> dict:
        return {"complexity": self.value,
                "functionals": [to_bitstring(s, self.dim) for s in self.functionals],
                "search_nodes": self.nodes}


def complexity(A: AdditivePoset, *, time_limit: float | None = None) -> ComplexityResult:
    """Minimum size of a separating set; ties go to the smallest sorted tuple.

    Raises :class:`NotPlainError` when no separating set exists and
    :class:`SearchBudgetExceeded` if ``time_limit`` seconds run out.
    """
    A.require_exhaustive()
    plain = is_plain(A, with_embedding=False)
    if not plain:
        a, b = plain.counterexample
        raise NotPlainError(
            f"poset is not plain: {A.fmt(a)} </= {A.fmt(b)} is not separated by any functional")
    cands = plain.functionals
    universe, covers = _violation_covers(A, cands)
    budget = _Budget(time_limit)
    if not universe:
        return ComplexityResult(0, [], A.dim)
    upper = len(_greedy(universe, covers))
    k = A.dim
    while k < upper:
        if _feasible(universe, covers, k, budget) is not None:
            break
        k += 1
    pick = _lex_smallest(universe, covers, k, budget)
    S = sorted(cands[i] for i in pick)
    if k < A.dim:
        raise AssertionError("complexity below dimension")
    return ComplexityResult(k, S, A.dim, budget.nodes)


def sperner_bound(A: AdditivePoset, c: int | None = None, w: int | None = None) -> bool:
    """``C(c, c // 2) >= w`` for the complexity ``c`` and width ``w``."""
    from .invariants import width

    if c is None:
        c = complexity(A).value
    if w is None:
        w = width(A)[0]
    return comb(c, c // 2) >= w


def trivial_upper_bound_functionals(m: int) -> list[int]:
    """Separating set of size ``m(m+1)/2`` for the trivial order on ``GF(2)^m``:
    the coordinate functionals and all sums of two of them."""
    out = [1 << i for i in range(m)]
    out += [(1 << i) | (1 << j) for i, j in combinations(range(m), 2)]
    return sorted(out)


# ---------- rank functions


@dataclass
class RankReport:
    violations: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)
    kmax: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self, dim: int) -> dict:
        return {"ok": self.ok, "kmax": self.kmax,
                "violations": [{"condition": c, "elements": [to_bitstring(x, dim) for x in w]}
                               for c, w in self.violations]}


def rank_from_embedding(emb: Embedding) -> list[int]:
    return [m.bit_count() for m in emb.images]


def check_rank(A: AdditivePoset, r: Mapping[int, int] | Sequence[int], kmax: int = 3,
               max_violations: int = 20) -> RankReport:
    """Test the necessary conditions on a candidate rank function.

    The alternating-sum condition is checked for sets ``K`` of distinct
    nonzero elements with ``|K| <= kmax``.
    """
    A.require_exhaustive()
    if kmax > 5:
        raise PosetError("kmax is capped at 5")
    vals = [int(r[a]) for a in A.elements()]
    rep = RankReport(kmax=kmax)

    def bad(cond: str, w: tuple[int, ...]) -> bool:
        rep.violations.append((cond, w))
        return len(rep.violations) >= max_violations

    for a in A.elements():
        if vals[a] < 0 or (vals[a] == 0) != (a == 0):
            if bad("zero_set", (a,)):
                return rep
    from .structure import independents_mask

    for a in A.elements():
        for b in bits_of(independents_mask(A, a)):
            if b > a and vals[a ^ b] != vals[a] + vals[b]:
                if bad("additive_on_independent", (a, b)):
                    return rep
    nonzero = list(range(1, A.size))
    for k in range(1, kmax + 1):
        for K in combinations(nonzero, k):
            total = 0
            for J in range(1, 1 << k):
                x = 0
                for i in bits_of(J):
                    x ^= K[i]
                total += vals[x] if J.bit_count() % 2 else -vals[x]
            if total < 0 or total % (1 << (k - 1)):
                if bad("alternating_sum", K):
                    return rep
    return rep
