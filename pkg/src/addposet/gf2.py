"""Linear algebra over GF(2) on int-packed bit vectors.

Bit ``i`` of an int is coordinate ``i``.  Strings are little-endian:
``"1011"`` is ``e1 + e3 + e4`` (character ``i`` is coordinate ``i``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


def parity(x: int) -> int:
    return x.bit_count() & 1


def bits_of(x: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def to_bitstring(x: int, n: int) -> str:
    if n == 0:
        return "-"
    return "".join("1" if (x >> i) & 1 else "0" for i in range(n))


def from_bitstring(s: str) -> tuple[int, int]:
    """Parse a little-endian bit string; returns ``(value, length)``."""
    if s == "-":
        return 0, 0
    value = 0
    for i, ch in enumerate(s):
        if ch == "1":
            value |= 1 << i
        elif ch != "0":
            raise ValueError(f"non-bit character {ch!r} at position {i}")
    return value, len(s)


@dataclass(frozen=True)
class BitVec:
    """A vector of fixed length ``n`` over GF(2)."""

    n: int
    bits: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative length")
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"bits beyond length {self.n}")

    @classmethod
    def from_str(cls, s: str) -> "BitVec":
        value, n = from_bitstring(s)
        return cls(n, value)

    @classmethod
    def unit(cls, n: int, i: int) -> "BitVec":
        return cls(n, 1 << i)

    def __str__(self) -> str:
        return to_bitstring(self.bits, self.n)

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def _same(self, other: "BitVec") -> None:
        if not isinstance(other, BitVec):
            raise TypeError(f"expected BitVec, got {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"length mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "BitVec") -> "BitVec":
        self._same(other)
        return BitVec(self.n, self.bits ^ other.bits)

    __xor__ = __add__

    def weight(self) -> int:
        return self.bits.bit_count()

    def is_zero(self) -> bool:
        return self.bits == 0


@dataclass(frozen=True)
class BitMatrix:
    """Row-major GF(2) matrix; each row is an int of ``ncols`` bits."""

    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise ValueError("row count mismatch")
        for r in self.rows:
            if r < 0 or r >> self.ncols:
                raise ValueError(f"row wider than {self.ncols} columns")

    @classmethod
    def from_rows(cls, rows: Sequence[int], ncols: int) -> "BitMatrix":
        return cls(len(rows), ncols, tuple(rows))

    @classmethod
    def from_vectors(cls, vectors: Sequence[BitVec], ncols: int | None = None) -> "BitMatrix":
        if ncols is None:
            if not vectors:
                raise ValueError("column count needed for an empty matrix")
            ncols = vectors[0].n
        for v in vectors:
            if v.n != ncols:
                raise ValueError(f"length mismatch: {v.n} vs {ncols}")
        return cls(len(vectors), ncols, tuple(v.bits for v in vectors))

    @classmethod
    def from_strings(cls, rows: Sequence[str], ncols: int | None = None) -> "BitMatrix":
        parsed = [from_bitstring(r) for r in rows]
        if ncols is None:
            ncols = parsed[0][1] if parsed else 0
        for _, n in parsed:
            if n != ncols:
                raise ValueError(f"row length {n} != {ncols}")
        return cls(len(parsed), ncols, tuple(v for v, _ in parsed))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    def row(self, i: int) -> BitVec:
        return BitVec(self.ncols, self.rows[i])

    def apply(self, v: int | BitVec) -> int:
        """Return ``M v`` packed as an int of ``nrows`` bits."""
        if isinstance(v, BitVec):
            if v.n != self.ncols:
                raise ValueError(f"length mismatch: {v.n} vs {self.ncols}")
            v = v.bits
        out = 0
        for i, r in enumerate(self.rows):
            if parity(r & v):
                out |= 1 << i
        return out

    def transpose(self) -> "BitMatrix":
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            for j in bits_of(r):
                cols[j] |= 1 << i
        return BitMatrix(self.ncols, self.nrows, tuple(cols))

    def matmul(self, other: "BitMatrix") -> "BitMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        for r in self.rows:
            acc = 0
            for j in bits_of(r):
                acc ^= other.rows[j]
            out.append(acc)
        return BitMatrix(self.nrows, other.ncols, tuple(out))

    def is_zero(self) -> bool:
        return not any(self.rows)

    def to_strings(self) -> list[str]:
        return [to_bitstring(r, self.ncols) for r in self.rows]


# ---------- int-level elimination


def rref(vectors: Iterable[int]) -> list[int]:
    """Reduced row echelon basis of the span, pivots at lowest set bits.

    The result is the unique canonical basis of the span, sorted by pivot.
    """
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            if v & (b & -b):
                v ^= b
        if not v:
            continue
        pivot = v & -v
        basis = [b ^ v if b & pivot else b for b in basis]
        basis.append(v)
    basis.sort(key=lambda b: b & -b)
    return basis


def reduce(v: int, basis: Sequence[int]) -> int:
    """Reduce ``v`` against an echelon basis with lowest-bit pivots."""
    for b in basis:
        if v & (b & -b):
            v ^= b
    return v


def in_span(v: int, basis: Sequence[int]) -> bool:
    return reduce(v, basis) == 0


def rank_of(vectors: Iterable[int]) -> int:
    return len(rref(vectors))


def coordinates(v: int, basis: Sequence[int]) -> int:
    """Coordinates of ``v`` in an RREF basis (bit ``i`` for ``basis[i]``).

    Raises ``ValueError`` if ``v`` is outside the span.
    """
    coeff = 0
    for i, b in enumerate(basis):
        if v & (b & -b):
            v ^= b
            coeff |= 1 << i
    if v:
        raise ValueError("vector not in span")
    return coeff


def combine(coeffs: int, basis: Sequence[int]) -> int:
    out = 0
    for i in bits_of(coeffs):
        out ^= basis[i]
    return out


def kernel_rows(rows: Sequence[int], ncols: int) -> list[int]:
    """Canonical (RREF) basis of ``{v : r . v = 0 for every row r}``."""
    red = rref(rows)
    pivots = 0
    for r in red:
        pivots |= r & -r
    out = []
    for f in range(ncols):
        if (pivots >> f) & 1:
            continue
        v = 1 << f
        for r in red:
            if (r >> f) & 1:
                v |= r & -r
        out.append(v)
    return rref(out)


def span_elements(basis: Sequence[int]) -> list[int]:
    """All ``2**k`` combinations; index ``i`` uses ``basis[j]`` iff bit ``j`` of ``i``."""
    out = [0]
    for b in basis:
        out += [x ^ b for x in out]
    return out


# ---------- BitVec / BitMatrix facing operations


def dot(u: BitVec, v: BitVec) -> int:
    """Evaluate the pairing ``sum u_i v_i`` mod 2."""
    u._same(v)
    return parity(u.bits & v.bits)


def rank(m: BitMatrix) -> int:
    return rank_of(m.rows)


def kernel_basis(m: BitMatrix) -> list[BitVec]:
    return [BitVec(m.ncols, v) for v in kernel_rows(m.rows, m.ncols)]


def annihilator_basis(vectors: Sequence[BitVec], ambient: int) -> list[BitVec]:
    for v in vectors:
        if v.n != ambient:
            raise ValueError(f"length mismatch: {v.n} vs {ambient}")
    return [BitVec(ambient, w) for w in kernel_rows([v.bits for v in vectors], ambient)]


def enumerate_span(basis: Sequence[BitVec], n: int | None = None) -> list[BitVec]:
    """List the span of a linearly independent family.

    Order is lexicographic over little-endian coefficient vectors, so the
    element at index ``i`` uses ``basis[j]`` exactly when bit ``j`` of ``i``
    is set.
    """
    if n is None:
        if not basis:
            raise ValueError("ambient length needed for an empty basis")
        n = basis[0].n
    for v in basis:
        if v.n != n:
            raise ValueError(f"length mismatch: {v.n} vs {n}")
    if rank_of(v.bits for v in basis) != len(basis):
        raise ValueError("basis is linearly dependent")
    return [BitVec(n, x) for x in span_elements([v.bits for v in basis])]


class Solver:
    """Express vectors in a fixed independent family ``basis``.

    ``solve(v)`` returns the bitmask of indices ``i`` with ``v = sum basis[i]``.
    """

    def __init__(self, basis: Sequence[int]):
        self.basis = list(basis)
        # rows (pivot, vector, combination); each is reduced against the
        # earlier pivots, so one ordered pass reduces any vector
        self._rows: list[tuple[int, int, int]] = []
        for j, z in enumerate(self.basis):
            v, c = self._reduce(z, 1 << j)
            if not v:
                raise ValueError("basis is linearly dependent")
            self._rows.append(((v & -v).bit_length() - 1, v, c))

    def _reduce(self, v: int, c: int = 0) -> tuple[int, int]:
        for p, w, cw in self._rows:
            if (v >> p) & 1:
                v, c = v ^ w, c ^ cw
        return v, c

    def solve(self, v: int) -> int:
        r, c = self._reduce(v)
        if r:
            raise ValueError("vector not in span")
        return c
