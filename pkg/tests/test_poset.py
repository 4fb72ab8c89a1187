from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from addposet import poset as P
from addposet.errors import AxiomError, PosetError, TooLargeError
from addposet.gf2 import BitVec

from oracles import axioms_hold, leq_from_functionals, relation_sets
from shared import corpus


def test_leq_examples():
    A = P.powerset(3)
    assert all(A.leq(0, a) for a in A.elements())
    assert A.leq("100", "101") and not A.leq("100", "011")
    assert not P.trivial_poset(2).leq("10", "11")


def test_elem_coercion():
    A = P.powerset(3)
    assert A.elem("101") == A.elem(BitVec.from_str("101")) == 5
    with pytest.raises(PosetError):
        A.elem("10")
    with pytest.raises(PosetError):
        A.elem(8)


def test_powerset_shapes():
    assert P.powerset(0).size == 1
    A = P.powerset(3)
    assert A.size == 8 and all(A.leq(a, 0b111) for a in A.elements())


def test_even_powerset():
    B = P.even_powerset(3)
    ij, jk = P.even_from_subset(3, 0b011), P.even_from_subset(3, 0b110)
    assert not B.leq(ij, jk) and not B.leq(jk, ij)
    for x in B.elements():
        assert P.even_from_subset(3, P.even_to_subset(3, x)) == x
    assert P.is_isomorphic(P.even_powerset(2), P.powerset(1))


def test_trivial_pointed_subspace():
    T = P.trivial_poset(2)
    full = [(a, b) for a in T.elements() for b in T.elements() if T.leq(a, b)]
    assert len(full) == 7  # 0 below each of the 4 elements, plus 3 reflexive pairs
    assert len([p for p in full if p[0] == 0]) == 4
    assert T.relations() == []
    Q = P.pointed_poset(2, "11")
    assert Q.leq("10", "11") and Q.leq("01", "11") and not Q.leq("10", "01")
    S = P.subspace_pointed_poset(3, ["110"], "110")
    extra = {(a, b) for a, b in S.relations()} - set(P.trivial_poset(3).relations())
    assert extra == set()  # H of dim 1: the only addition a0 <= a0 was already reflexive
    S2 = P.subspace_pointed_poset(3, ["100", "010"], "110")
    assert S2.leq("100", "110") and S2.leq("010", "110") and not S2.leq("001", "110")
    with pytest.raises(PosetError):
        P.pointed_poset(2, 0)
    with pytest.raises(PosetError):
        P.subspace_pointed_poset(3, ["100"], "010")


def test_from_functionals_examples():
    n = 3
    assert P.from_functionals(n, list(range(1, 8))).materialize().table_equal(P.trivial_poset(3))
    assert P.from_functionals(n, [1, 2, 4]).table_equal(P.powerset(3))
    a0 = 0b101
    S = [s for s in range(8) if bin(s & a0).count("1") % 2]
    assert P.from_functionals(n, S).table_equal(P.pointed_poset(3, a0))


def test_from_functionals_kernel_error_names_vector():
    with pytest.raises(PosetError, match="kernel") as e:
        P.from_functionals(3, [0b011])
    word = [t for t in str(e.value).split() if set(t) <= {"0", "1"} and len(t) == 3]
    v = int(word[0][::-1], 2)
    assert v and bin(v & 0b011).count("1") % 2 == 0


def test_direct_sum():
    A = P.even_powerset(3)
    assert P.is_isomorphic(P.direct_sum(A, P.trivial_poset(0)), A)
    assert P.direct_sum(P.powerset(1), P.powerset(1)).table_equal(P.powerset(2))
    D = P.direct_sum(P.trivial_poset(1), P.trivial_poset(1))
    assert D.leq(0b01, 0b11) and not D.table_equal(P.trivial_poset(2))


def test_boolean_ring():
    n = 3
    mult = [[x & y for y in range(8)] for x in range(8)]
    assert P.from_boolean_ring(mult).table_equal(P.powerset(n))
    assert P.from_boolean_ring([[0]]).size == 1
    assert P.from_boolean_ring([[0, 0], [0, 1]]).table_equal(P.powerset(1))
    with pytest.raises(PosetError):
        P.from_boolean_ring([[0, 0], [0, 0]])


def test_verify_axioms_examples():
    assert P.verify_axioms(P.powerset(3)).ok
    bad = P.from_relations(2, [(0b01, 0b10), (0b10, 0b01)])
    rep = P.verify_axioms(bad)
    assert not rep.ok and "antisymmetric" in rep.failures()
    star = P.from_relations(2, [(0b10, 0b11)])  # "01" <= "11" in bit-string notation
    rep = P.verify_axioms(star)
    assert not rep.ok and "star" in rep.failures()
    a, b, c = rep.failures()["star"]
    down = relation_sets(star)
    assert b in down[a] and c in down[a] and (b ^ c) not in down[a]
    with pytest.raises(AxiomError):
        P.check_axioms(bad)


def test_verify_axioms_cap():
    A = P.from_functionals(13, [1 << i for i in range(13)])
    rep = P.verify_axioms(A)
    assert rep.ok and rep.certified_by
    with pytest.raises(TooLargeError, match="too large"):
        P.verify_axioms(A, exhaustive=True)


def test_axiom_report_matches_oracle_on_corpus():
    for A in corpus():
        if A.dim > 5:
            continue
        assert all(axioms_hold(relation_sets(A)).values()), A
        assert P.verify_axioms(A, exhaustive=True).ok


def test_functional_order_matches_oracle():
    for A in corpus():
        if A.functionals is None or A.dim > 4:
            continue
        for a in A.elements():
            for b in A.elements():
                assert A.leq(a, b) == leq_from_functionals(A.functionals, a, b)


def test_isomorphism_examples():
    A = P.pointed_poset(3, 5)
    r = P.is_isomorphic(A, A)
    assert r.status == "yes" and P.check_isomorphism(A, A, r.images)
    r = P.is_isomorphic(P.even_powerset(4), P.powerset(3))
    assert r.status == "no" and not r
    big = P.powerset(6)
    assert P.is_isomorphic(big, P.trivial_poset(6)).status == "no"
    assert P.is_isomorphic(big, big).status in ("yes", "unknown")


def test_isomorphism_finds_relabelling():
    # conjugate powerset(3) by an invertible change of basis
    cols = [0b011, 0b110, 0b111]

    def phi(x):
        out = 0
        for i in range(3):
            if (x >> i) & 1:
                out ^= cols[i]
        return out

    B = P.from_relations(3, [(phi(a), phi(b)) for a, b in P.powerset(3).relations()])
    r = P.is_isomorphic(P.powerset(3), B)
    assert r and P.check_isomorphism(P.powerset(3), B, r.images)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(1, (1 << n) - 1), min_size=n, max_size=8))))
def test_functional_posets_satisfy_axioms(args):
    n, S = args
    S = S + [1 << i for i in range(n)]
    A = P.from_functionals(n, S, materialize=True)
    checks = axioms_hold(relation_sets(A))
    assert all(checks.values())
    assert P.verify_axioms(A, exhaustive=True).ok


def test_tables_are_packed_words():
    A = P.powerset(7)
    assert A.down.dtype == np.uint64 and A.down.shape == (128, 2)
