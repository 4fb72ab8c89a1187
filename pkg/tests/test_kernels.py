"""Both kernel backends must agree bit for bit, counterexamples included."""

from __future__ import annotations

import random

import numpy as np
import pytest

from addposet import _pykernels as py
from addposet import kernels
from addposet.poset import _int_to_rows, even_powerset, pointed_poset, powerset, trivial_poset
from addposet.plainness import _tail_basis_array

ck = kernels.implementations().get("cython")
pytestmark = pytest.mark.skipif(ck is None, reason="compiled kernels not built")


def random_table(rng, n, density):
    masks = [1 | (1 << a) for a in range(n)]
    for b in range(n):
        for a in range(n):
            if rng.random() < density:
                masks[b] |= 1 << a
    return _int_to_rows(masks, n)


@pytest.mark.parametrize("dim", [0, 1, 2, 3, 5, 7])
def test_subset_and_transpose_agree(dim):
    rng = np.random.default_rng(dim)
    phi = rng.integers(0, 2**63, size=(1 << dim, 2), dtype=np.uint64)
    assert np.array_equal(py.subset_table(phi), ck.subset_table(phi))
    t = py.subset_table(phi)
    assert np.array_equal(py.transpose_table(t, 1 << dim), ck.transpose_table(t, 1 << dim))


@pytest.mark.parametrize("seed", range(12))
def test_axiom_scan_agrees_on_random_tables(seed):
    rng = random.Random(seed)
    n = rng.choice([2, 4, 8, 16, 128])
    down = random_table(rng, n, rng.choice([0.02, 0.1, 0.4]))
    up = py.transpose_table(down, n)
    assert np.array_equal(py.axiom_scan(down, up, n), ck.axiom_scan(down, up, n))


@pytest.mark.parametrize("A", [powerset(4), even_powerset(5), trivial_poset(3),
                               pointed_poset(7, 5)], ids=repr)
def test_kernels_agree_on_posets(A):
    n = A.size
    assert not py.axiom_scan(A.down, A.up, n)[:, 0].any()
    assert np.array_equal(py.axiom_scan(A.down, A.up, n), ck.axiom_scan(A.down, A.up, n))
    tb = _tail_basis_array(A)
    assert np.array_equal(py.order_preserving(tb, A.dim), ck.order_preserving(tb, A.dim))
    members = np.array(sorted(range(n), key=lambda x: (A.tail_sizes[x], x)), dtype=np.int64)
    ups = members[[bool((A.up_masks[0] >> int(m)) & 1) for m in members]]
    assert np.array_equal(py.incidence_inverse(A.down, ups), ck.incidence_inverse(A.down, ups))


def test_incidence_inverse_empty():
    t = np.zeros((1, 1), dtype=np.uint64)
    for impl in (py, ck):
        assert impl.incidence_inverse(t, np.array([], dtype=np.int64)).shape == (0,)


def test_backend_selection_reports_cython():
    assert kernels.BACKEND in ("cython", "python")
    assert "python" in kernels.implementations()
