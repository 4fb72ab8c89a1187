"""Acceptance suite: one test per criterion, summarized at the end of the run.

Set ``ADDPOSET_SLOW=1`` to also run the exact search for c(A_5).
"""

from __future__ import annotations

import os
import random
import time
from itertools import combinations
from math import comb

import pytest

from addposet import corpus as C
from addposet import homology as H
from addposet import invariants as I
from addposet import plainness as L
from addposet import poset as P
from addposet import realization as R
from addposet import structure as S

import oracles
from shared import corpus, graphs_up_to

LIMIT = 60.0
COMPUTED: dict[str, tuple[P.AdditivePoset, int]] = {}


def detail(request, text: str) -> None:
    request.node.user_properties.append(("detail", text))


def timed_complexity(A):
    t = time.perf_counter()
    r = L.complexity(A)
    return r, time.perf_counter() - t


def named_graph_family():
    out = dict(H.named_graphs())
    for k in range(2, 5):
        out[f"wedge{k}x2"] = H.wedge_of_circles(k, 2)
    for length in (1, 2, 4):
        out[f"eight{length}"] = H.figure_eight(length)
    return out


def test_criterion_01_trivial_complexity(request):
    got = []
    for m, want in [(1, 1), (2, 3), (3, 6)]:
        A = P.trivial_poset(m)
        r, dt = timed_complexity(A)
        assert r.value == want and dt < LIMIT
        assert L.is_separating(A, r.functionals)
        assert oracles.separates(A, r.functionals)
        assert oracles.no_separating_set_of_size(A, want - 1)
        COMPUTED[f"trivial{m}"] = (A, r.value)
        got.append(f"c(A{m})={r.value} ({dt:.2f}s)")
    detail(request, ", ".join(got))


def test_criterion_02_powerset_complexity(request):
    worst = 0.0
    for n in range(0, 6):
        A = P.powerset(n)
        r, dt = timed_complexity(A)
        worst = max(worst, dt)
        assert r.value == n and dt < LIMIT and oracles.separates(A, r.functionals)
        COMPUTED[f"powerset{n}"] = (A, r.value)
    for n in (3, 4, 5):
        A = P.even_powerset(n)
        r, dt = timed_complexity(A)
        worst = max(worst, dt)
        assert r.value == n and dt < LIMIT and oracles.separates(A, r.functionals)
        # dim is n - 1, so minimality means no separating set of that size
        assert oracles.no_separating_set_of_size(A, n - 1)
        COMPUTED[f"even{n}"] = (A, r.value)
    detail(request, f"powerset(0..5) and even(3..5) exact, slowest {worst:.2f}s")


def test_criterion_03_mobius_expansion(request):
    count = 0
    for A in corpus():
        table = S.mobius(A)
        ref = oracles.mobius(A) if A.dim <= 4 else None
        for a in range(1, A.size):
            exp = S.mobius_atom_expansion(A, a, table)
            total = 0
            for c, k in exp:
                if ref is not None:
                    assert k == ref(c, a) % 2
                if k:
                    total ^= c
            assert total == a
            count += 1
    detail(request, f"{count} elements across {len(corpus())} posets")


def test_criterion_04_independent_atom_decomposition(request):
    count = 0
    for A in corpus():
        ats = set(oracles.atoms(A))
        for a in range(1, A.size):
            parts = S.independent_atom_decomposition(A, a)
            total = 0
            for x in parts:
                assert x in ats and A.leq(x, a)
                total ^= x
            assert total == a
            for x, y in combinations(parts, 2):
                assert A.leq(x, x ^ y)
            count += 1
    for n in (4, 5, 6):
        B = P.even_powerset(n)
        for quad in combinations(range(n), 4):
            x = P.even_from_subset(n, sum(1 << i for i in quad))
            assert len(S.all_decompositions(B, x)) == 3
    detail(request, f"{count} elements decomposed; 4-sets of even(4..6) split 3 ways")


def test_criterion_05_tile_equivalence(request):
    count = 0
    for A in corpus():
        if A.dim > 6:
            continue
        for a in range(1, A.size):
            assert S.tile_report(A, a).consistent
            count += 1
    detail(request, f"{count} elements, four criteria agree")


def test_criterion_06_invariant_chain(request):
    for A in corpus():
        rep = I.invariant_report(A)
        assert rep.height <= rep.dim <= rep.weight <= rep.width
        if A.dim <= 4:
            assert rep.height == oracles.height(A) and rep.width == oracles.width(A)
    for n in range(0, 6):
        A = P.powerset(n)
        assert I.height(A)[0] == I.weight(A) == I.dimension(A) == n
        assert I.width(A)[0] == comb(n, n // 2)
    for m in range(1, 6):
        assert I.width(P.trivial_poset(m))[0] == 2**m - 1
    detail(request, f"chain holds on {len(corpus())} posets; named values exact")


def test_criterion_07_cover_characterization(request):
    pairs = 0
    for A in corpus():
        if A.dim > 6:
            continue
        want = oracles.cover_pairs(A)
        for a in A.elements():
            for b in A.elements():
                assert S.covers(A, a, b) == ((a, b) in want)
                pairs += 1
    detail(request, f"{pairs} ordered pairs")


def test_criterion_08_chain_bijection(request):
    A = P.powerset(4)
    chains = [c for c in S.chains(A, 4) if len(c) >= 2]
    for ch in chains:
        vecs = S.chain_to_vectors(A, ch)
        assert S.vectors_to_chain(A, ch[0], vecs).elements == tuple(ch)
        assert [ch[i] ^ ch[i + 1] for i in range(len(ch) - 1)] == vecs
    detail(request, f"{len(chains)} chains of length 1..4")


def test_criterion_09_graph_atoms_and_tiles(request):
    graphs = list(graphs_up_to(7)) + list(named_graph_family().values())
    classes = 0
    for G in graphs:
        Pg = H.h1_poset(G)
        for a in range(1, 1 << Pg.dim):
            z = Pg.cycle(a)
            assert S.is_atom(Pg.poset, a) == H.is_atom_class(G, z)
            assert S.is_tile(Pg.poset, a) == H.is_tile_class(G, z)
            classes += 1
    detail(request, f"{len(graphs)} graphs, {classes} classes, zero disagreements")


def _dd_zero(X) -> bool:
    for k in range(2, X.n + 1):
        lo, hi = X.d(k - 1), X.d(k)
        for j in range(hi.ncols):
            col = 0
            for i in range(hi.nrows):
                if (hi.rows[i] >> j) & 1:
                    col ^= 1 << i
            for r in lo.rows:
                if bin(r & col).count("1") % 2:
                    return False
    return True


def test_criterion_10_realization_round_trip(request):
    posets = C.random_functional_posets(50, seed=10, max_dim=5)
    posets += [P.powerset(3), P.even_powerset(4), P.trivial_poset(3), P.pointed_poset(3, 7),
               P.subspace_pointed_poset(4, [1, 2], 3)]
    for A in posets:
        r = R.realize_complex(A, 2)
        Hn = H.hn_poset(r.complex)
        assert P.is_isomorphic(A, Hn.poset)
        assert P.check_isomorphism(A, Hn.poset, r.images)
        assert _dd_zero(r.complex)
    detail(request, f"{len(posets)} posets realized and recovered")


def test_criterion_11_graph_realization(request):
    for m in range(1, 5):
        G = R.realize_graph_trivial(m)
        assert P.is_isomorphic(H.h1_poset(G).poset, P.trivial_poset(m))
    graphs = C.random_multigraphs(1000, seed=11)
    rep = R.scan_nontriviality(graphs, min_dim=5)
    assert rep.scanned == 1000 and rep.counterexamples == []
    for G in graphs[:200]:
        za, zb = R.disjoint_cycle_pair(G)
        assert za and zb and not za & zb
        assert G.odd_vertex(za) is None and G.odd_vertex(zb) is None
    detail(request, f"m=1..4 trivial; {rep.witnesses}/1000 random graphs nontrivial")


def _triple(G):
    out = G
    for e in range(G.n_edges):
        out = H.subdivide_edge(out, e)
        out = H.subdivide_edge(out, e)
    return out


def test_criterion_12_subdivision_invariance(request):
    names = []
    for name, G in named_graph_family().items():
        G3 = _triple(G)
        assert G3.n_edges == 3 * G.n_edges
        assert P.is_isomorphic(H.h1_poset(G).poset, H.h1_poset(G3).poset)
        step = G
        for _ in range(3):
            step, _images = H.subdivision_map(step, 0)
        names.append(name)
    detail(request, f"{len(names)} fixture graphs")


def test_criterion_13_sperner_and_sums(request):
    for key in [f"trivial{m}" for m in (1, 2, 3)] + [f"powerset{n}" for n in range(6)] \
            + [f"even{n}" for n in (3, 4, 5)]:
        if key not in COMPUTED:
            A = {"t": P.trivial_poset, "p": P.powerset, "e": P.even_powerset}[key[0]](
                int(key[-1]))
            COMPUTED[key] = (A, L.complexity(A).value)
    for A in corpus():
        if A.dim <= 4:
            COMPUTED[f"corpus{id(A)}"] = (A, L.complexity(A).value)
    a4 = L.complexity(P.trivial_poset(4))
    assert 6 <= a4.value <= 10
    COMPUTED["trivial4"] = (P.trivial_poset(4), a4.value)
    for A, c in COMPUTED.values():
        assert L.sperner_bound(A, c=c)

    rng = random.Random(13)
    pool = [P.powerset(1), P.powerset(2), P.trivial_poset(1), P.trivial_poset(2),
            P.trivial_poset(3), P.even_powerset(3), P.pointed_poset(2, 3), P.pointed_poset(3, 7)]
    pool += C.random_functional_posets(10, seed=13, max_dim=3)
    pairs = 0
    while pairs < 20:
        A, B = rng.choice(pool), rng.choice(pool)
        if A.dim + B.dim > 6:
            continue
        cs = L.complexity(P.direct_sum(A, B)).value
        assert cs <= L.complexity(A).value + L.complexity(B).value
        pairs += 1

    # c(A_5): a verified separating set bounds it above, Sperner bounds it below
    A5 = P.trivial_poset(5)
    S13 = [1, 2, 3, 4, 5, 8, 9, 16, 18, 20, 26, 28, 31]
    assert L.is_separating(A5, S13) and oracles.separates(A5, S13)
    lower = next(c for c in range(1, 32) if comb(c, c // 2) >= 31)
    assert 7 <= lower and len(S13) <= 15
    detail(request, f"Sperner on {len(COMPUTED)} values; 20 sums; c(A4)={a4.value}; "
                    f"{lower} <= c(A5) <= 13")


@pytest.mark.slow
@pytest.mark.skipif(not os.environ.get("ADDPOSET_SLOW"), reason="set ADDPOSET_SLOW=1")
def test_criterion_13_exact_a5(request):
    r = L.complexity(P.trivial_poset(5))
    assert 7 <= r.value <= 15 and L.sperner_bound(P.trivial_poset(5), c=r.value)
    detail(request, f"exact c(A5)={r.value}")


def test_criterion_14_disjoint_circles(request):
    pairs = 0
    for G in graphs_up_to(7):
        Pg = H.h1_poset(G)
        ats = [Pg.cycle(a) for a in range(1, 1 << Pg.dim) if H.is_atom_class(G, Pg.cycle(a))]
        for zb, zc in combinations(ats, 2):
            vb = {v for i in range(G.n_edges) if (zb >> i) & 1 for v in G.edges[i]}
            vc = {v for i in range(G.n_edges) if (zc >> i) & 1 for v in G.edges[i]}
            assert H.disjoint_circles(G, Pg, zb, zc).criterion == (not vb & vc)
            pairs += 1
    detail(request, f"{pairs} atom pairs")
