"""Pure numpy implementations of the hot kernels.

Every function mirrors the signature and results of ``_ckernels`` exactly,
including which counterexample is reported first.

Tables are ``uint64`` arrays of shape ``(N, W)`` with ``W = ceil(N / 64)``;
bit ``b`` of row ``a`` lives in word ``b >> 6`` at position ``b & 63``.
"""

from __future__ import annotations

import numpy as np

AXIOMS = ("reflexive", "antisymmetric", "transitive", "zero_least", "star", "star_star")


def words_for(n_elements: int) -> int:
    return max(1, (n_elements + 63) // 64)


def unpack(table: np.ndarray, n_elements: int) -> np.ndarray:
    raw = np.ascontiguousarray(table, dtype="<u8").view(np.uint8)
    bits = np.unpackbits(raw, axis=1, bitorder="little")
    return bits[:, :n_elements].astype(bool)


def pack(mask: np.ndarray) -> np.ndarray:
    n_rows, n_cols = mask.shape
    w = words_for(n_cols)
    packed = np.packbits(mask, axis=1, bitorder="little")
    out = np.zeros((n_rows, w * 8), dtype=np.uint8)
    out[:, : packed.shape[1]] = packed
    return out.view("<u8").astype(np.uint64)


def _parity64(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.uint64)
    for shift in (32, 16, 8, 4, 2, 1):
        x = x ^ (x >> np.uint64(shift))
    return (x & np.uint64(1)).astype(np.uint8)


def subset_table(phi: np.ndarray) -> np.ndarray:
    """Row ``b`` holds every ``a`` whose ``phi[a]`` is a subset of ``phi[b]``."""
    phi = np.ascontiguousarray(phi, dtype=np.uint64)
    n = phi.shape[0]
    mask = np.empty((n, n), dtype=bool)
    for b in range(n):
        mask[b] = ~((phi & ~phi[b]).any(axis=1))
    return pack(mask)


def transpose_table(table: np.ndarray, n_elements: int) -> np.ndarray:
    return pack(np.ascontiguousarray(unpack(table, n_elements).T))


def _first_pair(bad: np.ndarray):
    idx = int(np.argmax(bad))
    return divmod(idx, bad.shape[1])


def axiom_scan(down: np.ndarray, up: np.ndarray, n_elements: int) -> np.ndarray:
    """First counterexample for each axiom; row is ``(found, a, b, c)``.

    Scan order is ``a`` ascending, then ``b``, then ``c``.  The triples are
    reflexive ``(a)``, antisymmetric ``(a, b)``, transitive ``(a, b, c)`` with
    ``c <= b <= a``, zero_least ``(a)``, star ``(a, b, c)`` with ``b, c <= a``,
    star_star ``(a, b, c)`` with ``a <= b, c``.
    """
    n = n_elements
    res = np.zeros((6, 4), dtype=np.int64)
    d = unpack(down, n)
    u = unpack(up, n)
    idx = np.arange(n)

    diag = d[idx, idx]
    if not diag.all():
        res[0] = (1, int(np.argmin(diag)), 0, 0)
    if n and not d[:, 0].all():
        res[3] = (1, int(np.argmin(d[:, 0])), 0, 0)

    for a in range(n):
        tail = np.flatnonzero(d[a])
        if not res[1, 0]:
            both = d[tail, a] & (tail != a)
            if both.any():
                res[1] = (1, a, int(tail[np.argmax(both)]), 0)
        if not res[2, 0]:
            leak = d[tail] & ~d[a]
            if leak.any():
                i, c = _first_pair(leak)
                res[2] = (1, a, int(tail[i]), int(c))
        if not res[4, 0]:
            closed = d[a][tail[:, None] ^ tail[None, :]]
            if not closed.all():
                i, j = _first_pair(~closed)
                res[4] = (1, a, int(tail[i]), int(tail[j]))
        if not res[5, 0]:
            ups = np.flatnonzero(u[a])
            closed = u[a][a ^ ups[:, None] ^ ups[None, :]]
            if not closed.all():
                i, j = _first_pair(~closed)
                res[5] = (1, a, int(ups[i]), int(ups[j]))
        if res[1, 0] and res[2, 0] and res[4, 0] and res[5, 0]:
            break
    return res


def order_preserving(tail_basis: np.ndarray, dim: int) -> np.ndarray:
    """Flag functionals ``s`` whose kernel is closed downward.

    ``tail_basis[a]`` lists a basis of the tail of ``a`` padded with zeros.
    A functional is order-preserving iff every ``a`` with ``s(a) = 0`` has
    its whole tail inside ``ker s``.
    """
    n = 1 << dim
    tb = np.ascontiguousarray(tail_basis, dtype=np.uint64)
    elems = np.arange(n, dtype=np.uint64)
    out = np.zeros(n, dtype=np.uint8)
    for s in range(n):
        sv = np.uint64(s)
        in_kernel = _parity64(elems & sv) == 0
        out[s] = not _parity64(tb[in_kernel] & sv).any()
    return out


def incidence_inverse(table: np.ndarray, members: np.ndarray) -> np.ndarray:
    """Solve ``f[0] = 1``, ``f[j] = -sum f[i]`` over earlier ``i`` related to ``j``.

    ``members`` must be a linear extension starting at the source element;
    ``i`` is related to ``j`` when bit ``members[i]`` is set in
    ``table[members[j]]``.  With ``table = down`` and ``members`` the up-set of
    ``x`` in ascending order this yields ``mu(x, .)``; with ``table = up`` and
    the tail of ``x`` in descending order it yields ``mu(., x)``.
    """
    members = np.asarray(members, dtype=np.int64)
    k = members.shape[0]
    out = np.zeros(k, dtype=np.int64)
    if k == 0:
        return out
    rows = table[members]
    words = (members >> 6).astype(np.int64)
    shifts = (members & 63).astype(np.uint64)
    rel = ((rows[:, words] >> shifts[None, :]) & np.uint64(1)).astype(bool)
    out[0] = 1
    limit = 1 << 62
    for j in range(1, k):
        acc = int(out[:j][rel[j, :j]].sum())
        if abs(acc) > limit:
            raise OverflowError("incidence inverse exceeds 62-bit range")
        out[j] = -acc
    return out
