from __future__ import annotations

from itertools import combinations
from math import comb
from pathlib import Path

import pytest

from addposet import invariants as I
from addposet import plainness as L
from addposet import poset as P
from addposet.errors import NotPlainError, PosetError
from addposet.formats import parse_poset_file
from addposet.homology import h1_poset, named_graphs

import oracles
from shared import corpus

FIX = Path(__file__).resolve().parent.parent / "fixtures"


def test_order_preserving_examples():
    for n in range(1, 4):
        assert L.order_preserving_functionals(P.trivial_poset(n)) == list(range(1 << n))
    for n in range(1, 5):
        ops = L.order_preserving_functionals(P.powerset(n))
        assert ops == [0] + [1 << i for i in range(n)]


def test_order_preserving_matches_oracle():
    for A in corpus():
        if A.dim > 5:
            continue
        assert L.order_preserving_functionals(A) == oracles.order_preserving(A)


def test_separating_examples():
    for n in range(1, 5):
        assert L.is_separating(P.powerset(n), [1 << i for i in range(n)])
    x, y, z = 1, 2, 4
    r = L.is_separating(P.trivial_poset(3), [x, y, z, x | y, x | z])
    assert not r and r.pair is not None
    a, b = r.pair
    assert not P.trivial_poset(3).leq(a, b)
    assert L.is_separating(P.powerset(0), [])
    assert not L.is_separating(P.powerset(1), [])
    bad = L.is_separating(P.powerset(2), [0b11])
    assert not bad and bad.functional == 0b11


def test_certificate_coverage_is_total():
    A = P.trivial_poset(3)
    cert = L.is_separating(A, L.trivial_upper_bound_functionals(3))
    cov = cert.coverage(A)
    assert cov and all(i is not None for i in cov.values())


def test_is_plain_examples():
    fams = [P.powerset(n) for n in range(4)] + [P.even_powerset(n) for n in range(2, 6)]
    fams += [P.trivial_poset(n) for n in range(1, 5)] + [P.pointed_poset(3, 5)]
    for A in fams:
        res = L.is_plain(A)
        assert res and res.embedding is not None
    assert L.is_plain(P.powerset(0)).functionals == []
    for G in named_graphs().values():
        assert L.is_plain(h1_poset(G).poset)


def test_nonplain_fixture():
    A = parse_poset_file(FIX / "nonplain4.poset")
    assert all(oracles.axioms_hold(oracles.relation_sets(A)).values())
    # not closed under addition: 2 + 3 = 1 is missing
    assert L.order_preserving_functionals(A) == oracles.order_preserving(A) == [0, 2, 3, 6, 11, 12]
    res = L.is_plain(A)
    assert not res
    a, b = res.counterexample
    assert not A.leq(a, b)
    ops = oracles.order_preserving(A)
    assert not any(oracles.parity(s & a) and not oracles.parity(s & b) for s in ops)
    with pytest.raises(NotPlainError):
        L.complexity(A)


def test_embedding_examples():
    emb = L.embed_powerset(P.powerset(3), [1, 2, 4])
    assert emb.images == list(range(8)) and emb(0) == 0
    T = P.trivial_poset(2)
    c = L.complexity(T)
    emb = L.embed_powerset(T, c.functionals)
    imgs = [emb(a) for a in range(1, 4)]
    assert c.value == 3
    assert all(x & ~y and y & ~x for x, y in combinations(imgs, 2))
    with pytest.raises(PosetError):
        L.embed_powerset(T, [1, 2])


@pytest.mark.parametrize("n", range(0, 6))
def test_complexity_powerset(n):
    r = L.complexity(P.powerset(n))
    assert r.value == n and L.is_separating(P.powerset(n), r.functionals)


@pytest.mark.parametrize("m,want", [(1, 1), (2, 3), (3, 6)])
def test_complexity_trivial(m, want):
    A = P.trivial_poset(m)
    r = L.complexity(A)
    assert r.value == want
    assert L.is_separating(A, r.functionals)
    assert oracles.no_separating_set_of_size(A, want - 1)


def test_complexity_tie_break_is_lexicographic():
    A = P.trivial_poset(2)
    r = L.complexity(A)
    cands = [s for s in range(1, 4)]
    best = min(sorted(S) for S in combinations(cands, 3) if oracles.separates(A, S))
    assert r.functionals == list(best)


def test_complexity_matches_oracle_on_small_corpus():
    for A in corpus():
        if A.dim > 3:
            continue
        r = L.complexity(A)
        assert r.value == oracles.min_separating_size(A, r.value)
        assert r.value >= A.dim
        if not P.is_isomorphic(A, P.powerset(A.dim)):
            assert r.value >= A.dim + 1


def test_time_limit():
    with pytest.raises(L.SearchBudgetExceeded):
        L.complexity(P.trivial_poset(5), time_limit=0.05)


def test_trivial_upper_bound():
    for m in range(1, 6):
        S = L.trivial_upper_bound_functionals(m)
        assert len(S) == m * (m + 1) // 2
        assert L.is_separating(P.trivial_poset(m), S)


def test_sperner_examples():
    assert L.sperner_bound(P.trivial_poset(2))
    assert comb(3, 1) == I.width(P.trivial_poset(2))[0]
    assert L.sperner_bound(P.trivial_poset(3), c=6)
    for n in range(1, 5):
        assert L.sperner_bound(P.powerset(n))
    assert not L.sperner_bound(P.trivial_poset(3), c=4)


def test_rank_examples():
    A = P.pointed_poset(3, 7)
    emb = L.is_plain(A).embedding
    assert L.check_rank(A, L.rank_from_embedding(emb), kmax=4).ok
    zero = L.check_rank(A, [0] * A.size)
    assert not zero.ok and zero.violations[0][0] == "zero_set"
    B = P.powerset(2)
    rep = L.check_rank(B, [0, 1, 1, 1])
    assert ("additive_on_independent", (1, 2)) in rep.violations
    with pytest.raises(PosetError):
        L.check_rank(B, [0, 1, 1, 2], kmax=6)
