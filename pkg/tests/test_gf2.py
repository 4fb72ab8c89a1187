from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from addposet.gf2 import (BitMatrix, BitVec, Solver, annihilator_basis, dot, enumerate_span,
                          kernel_basis, kernel_rows, rank, rank_of, rref)
from addposet.homology import theta_graph

from oracles import kernel_by_enumeration, span_by_closure

V = BitVec.from_str


def test_bitstrings_are_little_endian():
    v = V("1011")
    assert v.bits == 0b1101 and str(v) == "1011"
    assert [v[i] for i in range(4)] == [1, 0, 1, 1]


def test_dot_examples():
    assert dot(V("0000"), V("1011")) == 0
    assert dot(V("1100"), V("1010")) == 1
    assert dot(V("1110"), V("0111")) == 0


def test_dot_length_mismatch():
    with pytest.raises(ValueError):
        dot(V("10"), V("101"))


def test_addition_is_involution():
    v = V("10110")
    assert (v + v).is_zero()
    with pytest.raises(ValueError):
        V("1") + V("10")


def test_kernel_examples():
    assert len(kernel_basis(BitMatrix.zeros(1, 3))) == 3
    assert kernel_basis(BitMatrix.identity(3)) == []
    assert len(kernel_basis(theta_graph().boundary())) == 2


def test_kernel_is_reduced_echelon():
    M = BitMatrix.from_strings(["1100", "0110"])
    ker = [v.bits for v in kernel_basis(M)]
    assert ker == rref(ker)
    pivots = [k & -k for k in ker]
    assert pivots == sorted(pivots)
    for i, k in enumerate(ker):
        for j, p in enumerate(pivots):
            assert bool(k & p) == (i == j)


def test_rank_examples():
    assert rank(BitMatrix.zeros(3, 3)) == 0
    assert rank(BitMatrix.identity(4)) == 4
    assert rank(BitMatrix.from_strings(["110", "011", "101"])) == 2


def test_annihilator_examples():
    assert len(annihilator_basis([], 3)) == 3
    assert annihilator_basis([V("100"), V("010"), V("001")], 3) == []
    ann = annihilator_basis([V("110")], 3)
    assert len(ann) == 2
    assert all(dot(w, V("110")) == 0 for w in ann)


def test_enumerate_span_examples():
    assert enumerate_span([], 3) == [BitVec(3, 0)]
    assert len(enumerate_span([V("10"), V("01")])) == 4
    got = {str(v) for v in enumerate_span([V("110"), V("011")])}
    assert got == {"000", "110", "011", "101"}
    with pytest.raises(ValueError):
        enumerate_span([V("110"), V("110")])


def test_solver_roundtrip():
    basis = [0b1101, 0b0110, 0b1000]
    s = Solver(basis)
    for c in range(8):
        v = 0
        for i in range(3):
            if (c >> i) & 1:
                v ^= basis[i]
        assert s.solve(v) == c


rows_st = st.lists(st.integers(0, (1 << 7) - 1), max_size=6)


@given(rows_st)
def test_kernel_matches_enumeration(rows):
    ker = kernel_rows(rows, 7)
    assert span_by_closure(ker) == set(kernel_by_enumeration(rows, 7))
    assert len(ker) + rank_of(rows) == 7


@given(st.lists(st.integers(0, (1 << 10) - 1), max_size=8))
def test_double_annihilator_is_span(vectors):
    once = kernel_rows(vectors, 10)
    twice = kernel_rows(once, 10)
    assert twice == rref(vectors)


@given(st.integers(0, 255), st.integers(0, 255), st.integers(0, 255))
def test_dot_bilinear_symmetric(a, b, c):
    A, B, C = BitVec(8, a), BitVec(8, b), BitVec(8, c)
    assert dot(A, B) == dot(B, A)
    assert dot(A + B, C) == dot(A, C) ^ dot(B, C)
