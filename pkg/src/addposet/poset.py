"""Additive posets: order backends, axiom checks and the standard constructors.

Elements are ints of ``dim`` bits.  A poset either stores an explicit
relation table (one bit per ordered pair) or a list of functionals ``S`` in
the dual, with ``a <= b`` iff every ``s`` with ``s(a) = 1`` has ``s(b) = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import AxiomError, PosetError, TooLargeError
from .gf2 import BitVec, bits_of, kernel_rows, parity, rank_of, rref, span_elements, to_bitstring

SOFT_CAP = 12
ISO_CAP = 5


def _row_to_int(row: np.ndarray) -> int:
    return int.from_bytes(np.ascontiguousarray(row, dtype="<u8").tobytes(), "little")


def _int_to_rows(masks: Sequence[int], n: int) -> np.ndarray:
    w = kernels.words_for(n)
    out = np.zeros((len(masks), w), dtype=np.uint64)
    for i, m in enumerate(masks):
        out[i] = np.frombuffer(m.to_bytes(w * 8, "little"), dtype="<u8")
    return out


def _phi_table(dim: int, functionals: Sequence[int]) -> np.ndarray:
    """``phi[a]`` = bitmask over ``S`` of the functionals with ``s(a) = 1``."""
    k = len(functionals)
    w = max(1, (k + 63) // 64)
    per_coord = []
    for i in range(dim):
        m = 0
        for j, s in enumerate(functionals):
            if (s >> i) & 1:
                m |= 1 << j
        per_coord.append(m)
    gens = _int_to_rows(per_coord, w * 64) if per_coord else np.zeros((0, w), np.uint64)
    phi = np.zeros((1 << dim, w), dtype=np.uint64)
    for i in range(dim):
        half = 1 << i
        phi[half : 2 * half] = phi[:half] ^ gens[i]
    return phi


class AdditivePoset:
    """A finite additive poset on ``GF(2)**dim``.

    Construct through :func:`from_table`, :func:`from_functionals` or the
    named constructors rather than directly.
    """

    def __init__(self, dim: int, *, table: np.ndarray | None = None,
                 functionals: Sequence[int] | None = None, name: str = ""):
        if dim < 0:
            raise PosetError("negative dimension")
        if (table is None) == (functionals is None):
            raise PosetError("exactly one of table / functionals is required")
        self.dim = dim
        self.name = name
        self.functionals = None if functionals is None else tuple(functionals)
        self._down = table

    # ---- basics

    @property
    def size(self) -> int:
        return 1 << self.dim

    @property
    def backend(self) -> str:
        return "functionals" if self.functionals is not None else "explicit"

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<AdditivePoset{label} dim={self.dim} backend={self.backend}>"

    def elem(self, a: int | BitVec | str) -> int:
        """Coerce an element given as int, :class:`BitVec` or bit string."""
        if isinstance(a, str):
            a = BitVec.from_str(a) if a != "-" else BitVec(0, 0)
        if isinstance(a, BitVec):
            if a.n != self.dim:
                raise PosetError(f"element length {a.n} != dim {self.dim}")
            return a.bits
        a = int(a)
        if a < 0 or a >> self.dim:
            raise PosetError(f"element {a} outside GF(2)^{self.dim}")
        return a

    def fmt(self, a: int) -> str:
        return to_bitstring(a, self.dim)

    def elements(self) -> range:
        return range(self.size)

    def require_exhaustive(self, cap: int = SOFT_CAP) -> None:
        if self.dim > cap:
            raise TooLargeError(
                f"dim {self.dim} too large for exhaustive verification (cap {cap})")

    # ---- order

    def leq(self, a, b) -> bool:
        a, b = self.elem(a), self.elem(b)
        if self._down is not None:
            return bool((int(self._down[b, a >> 6]) >> (a & 63)) & 1)
        for s in self.functionals:
            if parity(s & a) and not parity(s & b):
                return False
        return True

    def lt(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    @property
    def down(self) -> np.ndarray:
        """Packed table whose row ``a`` is the tail of ``a``."""
        if self._down is None:
            self.require_exhaustive()
            phi = _phi_table(self.dim, self.functionals)
            self._down = kernels.subset_table(phi)
        return self._down

    @cached_property
    def up(self) -> np.ndarray:
        return kernels.transpose_table(self.down, self.size)

    @cached_property
    def down_masks(self) -> list[int]:
        return [_row_to_int(r) for r in self.down]

    @cached_property
    def up_masks(self) -> list[int]:
        return [_row_to_int(r) for r in self.up]

    def tail_mask(self, a) -> int:
        return self.down_masks[self.elem(a)]

    def up_mask(self, a) -> int:
        return self.up_masks[self.elem(a)]

    @cached_property
    def tail_sizes(self) -> list[int]:
        return [m.bit_count() for m in self.down_masks]

    @cached_property
    def atom_mask(self) -> int:
        return sum(1 << a for a, t in enumerate(self.tail_sizes) if t == 2)

    @cached_property
    def linear_extension(self) -> list[int]:
        # a < b forces a strictly smaller tail
        return sorted(self.elements(), key=lambda a: (self.tail_sizes[a], a))

    @cached_property
    def tail_bases(self) -> list[list[int]]:
        return [rref(bits_of(m)) for m in self.down_masks]

    def materialize(self) -> "AdditivePoset":
        """Explicit-table copy of this poset."""
        return AdditivePoset(self.dim, table=self.down.copy(), name=self.name)

    def table_equal(self, other: "AdditivePoset") -> bool:
        return self.dim == other.dim and np.array_equal(self.down, other.down)

    def relations(self) -> list[tuple[int, int]]:
        """All pairs ``a <= b`` with ``a != b`` and ``a != 0``."""
        out = []
        for b in self.elements():
            for a in bits_of(self.down_masks[b]):
                if a and a != b:
                    out.append((a, b))
        return out


# ---------- construction from data


def from_table(dim: int, down: np.ndarray, name: str = "") -> AdditivePoset:
    n = 1 << dim
    down = np.ascontiguousarray(down, dtype=np.uint64)
    if down.shape != (n, kernels.words_for(n)):
        raise PosetError(f"table shape {down.shape} does not fit dim {dim}")
    return AdditivePoset(dim, table=down, name=name)


def from_tail_masks(dim: int, masks: Sequence[int], name: str = "") -> AdditivePoset:
    return from_table(dim, _int_to_rows(masks, 1 << dim), name)


def from_relations(dim: int, pairs: Iterable[tuple[int, int]], name: str = "") -> AdditivePoset:
    """Explicit poset from ``a <= b`` pairs, closed only under reflexivity
    and ``0 <= a``.  Nothing else is inferred; run :func:`verify_axioms`."""
    n = 1 << dim
    masks = [(1 << a) | 1 for a in range(n)]
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise PosetError(f"relation ({a}, {b}) outside GF(2)^{dim}")
        masks[b] |= 1 << a
    return from_tail_masks(dim, masks, name)


def from_functionals(n: int, functionals: Sequence[int | BitVec], *, materialize: bool = False,
                     name: str = "") -> AdditivePoset:
    """Poset induced by a set of functionals with trivial common kernel."""
    S = []
    for s in functionals:
        if isinstance(s, BitVec):
            if s.n != n:
                raise PosetError(f"functional length {s.n} != dim {n}")
            s = s.bits
        if s < 0 or s >> n:
            raise PosetError(f"functional {s} outside the dual of GF(2)^{n}")
        S.append(s)
    if rank_of(S) != n:
        witness = kernel_rows(S, n)[0]
        raise PosetError(
            f"functionals have a nontrivial common kernel containing {to_bitstring(witness, n)}")
    p = AdditivePoset(n, functionals=S, name=name)
    return p.materialize() if materialize else p


# ---------- named constructors


def powerset(n: int) -> AdditivePoset:
    if n < 0:
        raise PosetError("negative size")
    phi = np.arange(1 << n, dtype=np.uint64).reshape(-1, 1)
    return from_table(n, kernels.subset_table(phi), name=f"powerset({n})")


def even_to_subset(n: int, c: int) -> int:
    """Staircase coordinates of the even powerset of ``n`` points -> subset mask.

    Basis vector ``j`` is the pair ``{j, j+1}``.
    """
    return (c ^ (c << 1)) & ((1 << n) - 1) if n else 0


def even_from_subset(n: int, x: int) -> int:
    if x.bit_count() % 2:
        raise PosetError("odd subset is not in the even powerset")
    c = 0
    acc = 0
    for j in range(max(n - 1, 0)):
        acc ^= (x >> j) & 1
        c |= acc << j
    return c


def even_powerset(n: int) -> AdditivePoset:
    if n < 0:
        raise PosetError("negative size")
    m = max(n - 1, 0)
    phi = np.array([[even_to_subset(n, c)] for c in range(1 << m)], dtype=np.uint64)
    return from_table(m, kernels.subset_table(phi), name=f"even_powerset({n})")


def trivial_poset(n: int) -> AdditivePoset:
    if n < 0:
        raise PosetError("negative dimension")
    return from_tail_masks(n, [1 | (1 << a) for a in range(1 << n)], name=f"trivial({n})")


def pointed_poset(n: int, a0) -> AdditivePoset:
    p = trivial_poset(n)
    a0 = p.elem(a0)
    if a0 == 0:
        raise PosetError("pointed poset needs a nonzero a0")
    masks = [1 | (1 << a) for a in range(1 << n)]
    masks[a0] = (1 << (1 << n)) - 1
    return from_tail_masks(n, masks, name=f"pointed({n},{to_bitstring(a0, n)})")


def subspace_pointed_poset(n: int, H: Sequence, a0) -> AdditivePoset:
    p = trivial_poset(n)
    a0 = p.elem(a0)
    hs = [p.elem(h) for h in H]
    if a0 == 0:
        raise PosetError("subspace pointed poset needs a nonzero a0")
    basis = rref(hs)
    if rank_of(basis + [a0]) != len(basis):
        raise PosetError("a0 is not in the span of H")
    masks = [1 | (1 << a) for a in range(1 << n)]
    for h in span_elements(basis):
        masks[a0] |= 1 << h
    return from_tail_masks(n, masks, name=f"subspace_pointed({n})")


def direct_sum(A: AdditivePoset, B: AdditivePoset) -> AdditivePoset:
    """Cartesian order on ``A + B``; ``(a, b)`` is packed as ``a | b << dim A``."""
    m = A.dim
    name = f"({A.name or 'A'})+({B.name or 'B'})"
    if A.functionals is not None and B.functionals is not None:
        S = list(A.functionals) + [t << m for t in B.functionals]
        return AdditivePoset(m + B.dim, functionals=S, name=name)
    da, db = A.down_masks, B.down_masks
    na = A.size
    masks = []
    for b in range(B.size):
        tb = list(bits_of(db[b]))
        for a in range(na):
            acc = 0
            ta = da[a]
            for y in tb:
                acc |= ta << (y * na)
            masks.append(acc)
    return from_tail_masks(m + B.dim, masks, name=name)


def from_boolean_ring(mult: Sequence[Sequence[int]]) -> AdditivePoset:
    """Poset ``x <= y`` iff ``x = xy`` from a Boolean ring multiplication table.

    Addition is XOR of the indices.  Idempotency is always checked; the
    remaining ring axioms are checked when the ring has at most 256 elements.
    """
    n_el = len(mult)
    dim = n_el.bit_length() - 1
    if n_el == 0 or 1 << dim != n_el:
        raise PosetError("ring size must be a power of two")
    for row in mult:
        if len(row) != n_el:
            raise PosetError("multiplication table is not square")
    for x in range(n_el):
        if mult[x][x] != x:
            raise PosetError(f"table is not idempotent at x={x}")
    if n_el <= 256:
        for x, y in product(range(n_el), repeat=2):
            if mult[x][y] != mult[y][x]:
                raise PosetError(f"multiplication not commutative at ({x}, {y})")
            for z in range(n_el):
                if mult[x][y ^ z] != mult[x][y] ^ mult[x][z]:
                    raise PosetError(f"multiplication not distributive at ({x}, {y}, {z})")
                if mult[mult[x][y]][z] != mult[x][mult[y][z]]:
                    raise PosetError(f"multiplication not associative at ({x}, {y}, {z})")
    masks = [0] * n_el
    for x in range(n_el):
        for y in range(n_el):
            if mult[x][y] == x:
                masks[y] |= 1 << x
    return from_tail_masks(dim, masks, name="boolean_ring")


# ---------- axioms


@dataclass
class AxiomReport:
    """Outcome per axiom; a failing entry carries its counterexample tuple."""

    dim: int
    checks: dict[str, tuple[bool, tuple[int, ...] | None]] = field(default_factory=dict)
    certified_by: str = "exhaustive scan"

    @property
    def ok(self) -> bool:
        return all(passed for passed, _ in self.checks.values())

    def failures(self) -> dict[str, tuple[int, ...]]:
        return {k: w for k, (passed, w) in self.checks.items() if not passed}

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "certified_by": self.certified_by,
            "checks": {
                k: {"pass": passed,
                    "counterexample": None if w is None else [to_bitstring(x, self.dim) for x in w]}
                for k, (passed, w) in self.checks.items()
            },
        }


_ARITY = {"reflexive": 1, "antisymmetric": 2, "transitive": 3, "zero_least": 1,
          "star": 3, "star_star": 3}


def verify_axioms(A: AdditivePoset, *, exhaustive: bool | None = None,
                  cap: int = SOFT_CAP) -> AxiomReport:
    """Check the poset and additivity axioms.

    Functional-backed posets are certified by their trivial common kernel;
    pass ``exhaustive=True`` to scan their materialized table as well.
    """
    report = AxiomReport(A.dim)
    if A.functionals is not None and not exhaustive:
        r = rank_of(A.functionals)
        witness = None if r == A.dim else (kernel_rows(A.functionals, A.dim)[0],)
        report.checks["trivial_common_kernel"] = (r == A.dim, witness)
        report.certified_by = "functional construction"
        return report
    A.require_exhaustive(cap)
    n = A.size
    res = kernels.axiom_scan(A.down, A.up, n)
    for name, row in zip(kernels.AXIOMS, res):
        found = bool(row[0])
        witness = tuple(int(x) for x in row[1 : 1 + _ARITY[name]]) if found else None
        report.checks[name] = (not found, witness)
    return report


def check_axioms(A: AdditivePoset) -> AdditivePoset:
    """Raise :class:`AxiomError` naming the first failed axiom."""
    report = verify_axioms(A)
    if not report.ok:
        name, w = next(iter(report.failures().items()))
        shown = ", ".join(A.fmt(x) for x in w) if w else ""
        raise AxiomError(f"axiom {name} fails at ({shown})")
    return A


# ---------- isomorphism


@dataclass
class IsoResult:
    """``status`` is ``"yes"``, ``"no"`` or ``"unknown"``.

    For ``"yes"``, ``images[i]`` is the image of the basis vector ``e_i``.
    """

    status: str
    images: tuple[int, ...] | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.status == "yes"

    def apply(self, a: int) -> int:
        out = 0
        for i in bits_of(a):
            out ^= self.images[i]
        return out


def fingerprint(A: AdditivePoset) -> dict:
    """Isomorphism invariants used to rule out isomorphisms cheaply."""
    from .invariants import height, width

    atoms = [a for a in A.elements() if A.tail_sizes[a] == 2]
    atom_mask = sum(1 << c for c in atoms)
    degrees = sorted(
        ((A.down_masks[a] & atom_mask).bit_count(), (A.up_masks[a] & atom_mask).bit_count())
        for a in A.elements())
    return {
        "atoms": len(atoms),
        "height": height(A)[0],
        "width": width(A)[0],
        "degrees": degrees,
        "tail_sizes": sorted(A.tail_sizes),
        "up_sizes": sorted(m.bit_count() for m in A.up_masks),
    }


def _cheap_print(A: AdditivePoset) -> tuple:
    return (sorted(A.tail_sizes), sorted(m.bit_count() for m in A.up_masks))


def is_isomorphic(A: AdditivePoset, B: AdditivePoset, *, max_dim: int = ISO_CAP) -> IsoResult:
    """Search for a linear order-isomorphism ``A -> B``.

    Up to ``max_dim`` the search is exhaustive (atoms generate, and any
    isomorphism carries atoms to atoms, so only atom images are tried).
    Above it only invariant fingerprints are compared.
    """
    if A.dim != B.dim:
        return IsoResult("no", reason="dimensions differ")
    if A.dim > max_dim:
        if fingerprint(A) != fingerprint(B):
            return IsoResult("no", reason="fingerprints differ")
        return IsoResult("unknown", reason=f"dim {A.dim} above exhaustive cap {max_dim}")
    if _cheap_print(A) != _cheap_print(B):
        return IsoResult("no", reason="tail/up-set size profiles differ")
    n = A.dim
    if n == 0:
        return IsoResult("yes", ())
    atoms_a = [a for a in A.elements() if A.tail_sizes[a] == 2]
    atoms_b = [b for b in B.elements() if B.tail_sizes[b] == 2]
    gens: list[int] = []
    span: list[int] = []
    for a in atoms_a:
        if rank_of(span + [a]) > len(span):
            span = rref(span + [a])
            gens.append(a)
    if len(gens) != n:
        raise PosetError("atoms do not span; input fails the axioms")

    da, ua, db, ub = A.down_masks, A.up_masks, B.down_masks, B.up_masks
    tsa, tsb = A.tail_sizes, B.tail_sizes
    usa = [m.bit_count() for m in ua]
    usb = [m.bit_count() for m in ub]

    def extend(fmap: dict[int, int], g: int, h: int) -> dict[int, int] | None:
        new = {}
        for x, fx in fmap.items():
            y, fy = x ^ g, fx ^ h
            if fy in fmap.values() or fy in new.values():
                return None
            if tsa[y] != tsb[fy] or usa[y] != usb[fy]:
                return None
            new[y] = fy
        merged = dict(fmap)
        merged.update(new)
        for y, fy in new.items():
            for x, fx in merged.items():
                if bool((da[x] >> y) & 1) != bool((db[fx] >> fy) & 1):
                    return None
                if bool((da[y] >> x) & 1) != bool((db[fy] >> fx) & 1):
                    return None
        return merged

    def search(k: int, fmap: dict[int, int]) -> dict[int, int] | None:
        if k == n:
            return fmap
        g = gens[k]
        for h in atoms_b:
            if usa[g] != usb[h]:
                continue
            nxt = extend(fmap, g, h)
            if nxt is not None:
                found = search(k + 1, nxt)
                if found is not None:
                    return found
        return None

    fmap = search(0, {0: 0})
    if fmap is None:
        return IsoResult("no", reason="exhaustive search found no isomorphism")
    return IsoResult("yes", tuple(fmap[1 << i] for i in range(n)))


def check_isomorphism(A: AdditivePoset, B: AdditivePoset, images: Sequence[int]) -> bool:
    """Verify that the linear map ``e_i -> images[i]`` is an order isomorphism."""
    if A.dim != B.dim or len(images) != A.dim:
        return False
    if rank_of(images) != A.dim:
        return False
    f = [0] * A.size
    for a in range(1, A.size):
        low = a & -a
        f[a] = f[a ^ low] ^ images[low.bit_length() - 1]
    for a in A.elements():
        for b in A.elements():
            if A.leq(a, b) != B.leq(f[a], f[b]):
                return False
    return True
