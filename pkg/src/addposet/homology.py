"""Graphs, mod-2 chain complexes and their homological additive posets.

Classes are identified with their unique cycle representatives: a bitmask
over the top cells (edges, for graphs).  Loops have zero boundary and count
twice toward a vertex degree.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .errors import PosetError
from .gf2 import BitMatrix, Solver, bits_of, kernel_rows, rank_of, to_bitstring
from .poset import AdditivePoset, check_isomorphism, from_functionals


# ---------- graphs


@dataclass(frozen=True)
class Graph:
    """Multigraph with loops; edge ``i`` joins ``edges[i] = (u, v)``."""

    n_vertices: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n_vertices < 0:
            raise PosetError("negative vertex count")
        norm = []
        for i, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise PosetError(f"edge {i} has an endpoint outside 0..{self.n_vertices - 1}")
            norm.append((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def incident(self, v: int) -> list[int]:
        return [i for i, e in enumerate(self.edges) if v in e]

    def degree(self, v: int, mask: int | None = None) -> int:
        d = 0
        for i, (x, y) in enumerate(self.edges):
            if mask is not None and not (mask >> i) & 1:
                continue
            d += (x == v) + (y == v)
        return d

    def degrees(self, mask: int | None = None) -> list[int]:
        d = [0] * self.n_vertices
        for i, (x, y) in enumerate(self.edges):
            if mask is None or (mask >> i) & 1:
                d[x] += 1
                d[y] += 1
        return d

    def boundary(self) -> BitMatrix:
        """``d1`` as a ``V x E`` matrix; a loop column is zero."""
        rows = [0] * self.n_vertices
        for i, (u, v) in enumerate(self.edges):
            if u != v:
                rows[u] |= 1 << i
                rows[v] |= 1 << i
        return BitMatrix(self.n_vertices, self.n_edges, tuple(rows))

    def odd_vertex(self, mask: int) -> int | None:
        for v, d in enumerate(self.degrees(mask)):
            if d % 2:
                return v
        return None

    def components(self) -> list[list[int]]:
        adj = [[] for _ in range(self.n_vertices)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = [False] * self.n_vertices
        out = []
        for s in range(self.n_vertices):
            if seen[s]:
                continue
            comp, dq = [], deque([s])
            seen[s] = True
            while dq:
                x = dq.popleft()
                comp.append(x)
                for y in adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        dq.append(y)
            out.append(sorted(comp))
        return out

    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges

    def cycle_rank(self) -> int:
        return self.n_edges - self.n_vertices + len(self.components())


def spanning_forest(G: Graph) -> tuple[list[int], list[int], list[int]]:
    """BFS forest from the lowest unvisited vertex, lowest edge index first.

    Returns ``(parent_edge, depth, non_tree_edges)``; ``parent_edge`` is -1
    at roots.
    """
    inc = [[] for _ in range(G.n_vertices)]
    for i, (u, v) in enumerate(G.edges):
        inc[u].append(i)
        if v != u:
            inc[v].append(i)
    parent = [-1] * G.n_vertices
    depth = [-1] * G.n_vertices
    tree = set()
    for root in range(G.n_vertices):
        if depth[root] >= 0:
            continue
        depth[root] = 0
        dq = deque([root])
        while dq:
            x = dq.popleft()
            for i in inc[x]:
                u, v = G.edges[i]
                y = v if u == x else u
                if depth[y] < 0:
                    depth[y] = depth[x] + 1
                    parent[y] = i
                    tree.add(i)
                    dq.append(y)
    non_tree = [i for i in range(G.n_edges) if i not in tree]
    return parent, depth, non_tree


def fundamental_cycles(G: Graph) -> list[int]:
    parent, depth, non_tree = spanning_forest(G)

    def path_to_root(x: int) -> int:
        m = 0
        while parent[x] >= 0:
            i = parent[x]
            m ^= 1 << i
            u, v = G.edges[i]
            x = u if v == x else v
        return m

    return [(1 << f) ^ path_to_root(G.edges[f][0]) ^ path_to_root(G.edges[f][1]) for f in non_tree]


# ---------- chain complexes


@dataclass(frozen=True)
class ChainComplex:
    """Cells per degree ``0..n`` and ``d_k: C_k -> C_{k-1}`` as
    ``cells[k-1] x cells[k]`` matrices for ``k = 1..n``."""

    cells: tuple[int, ...]
    boundaries: tuple[BitMatrix, ...]

    def __post_init__(self):
        if not self.cells:
            raise PosetError("complex needs at least degree 0")
        if any(c < 0 for c in self.cells):
            raise PosetError("negative cell count")
        if len(self.boundaries) != len(self.cells) - 1:
            raise PosetError("need one boundary matrix per positive degree")
        for k, d in enumerate(self.boundaries, start=1):
            if (d.nrows, d.ncols) != (self.cells[k - 1], self.cells[k]):
                raise PosetError(
                    f"boundary {k} has shape {d.nrows}x{d.ncols}, "
                    f"expected {self.cells[k - 1]}x{self.cells[k]}")
        for k in range(2, len(self.cells)):
            if not self.d(k - 1).matmul(self.d(k)).is_zero():
                raise PosetError(f"boundary {k - 1} composed with boundary {k} is nonzero")

    @property
    def n(self) -> int:
        return len(self.cells) - 1

    def d(self, k: int) -> BitMatrix:
        return self.boundaries[k - 1]

    @classmethod
    def build(cls, cells: Sequence[int], boundaries: dict[int, BitMatrix] | None = None
              ) -> "ChainComplex":
        """Fill unspecified boundaries with zero matrices."""
        boundaries = boundaries or {}
        mats = []
        for k in range(1, len(cells)):
            mats.append(boundaries.get(k) or BitMatrix.zeros(cells[k - 1], cells[k]))
        return cls(tuple(cells), tuple(mats))

    @classmethod
    def from_graph(cls, G: Graph) -> "ChainComplex":
        return cls((G.n_vertices, G.n_edges), (G.boundary(),))

    def top_boundary_of(self, chain: int) -> int:
        if self.n == 0:
            return 0
        return self.d(self.n).apply(chain)


# ---------- homological posets


class HomologyPoset:
    """Cycle space of the top degree, ordered by inclusion of supports.

    Poset coordinate ``j`` is ``basis[j]``; the poset is built from one
    functional per top cell (drop zero ones, they separate nothing).
    """

    def __init__(self, basis: Sequence[int], ncells: int, *, graph: Graph | None = None,
                 complex_: ChainComplex | None = None):
        self.basis = list(basis)
        self.ncells = ncells
        self.graph = graph
        self.complex = complex_
        d = len(self.basis)
        if rank_of(self.basis) != d:
            raise PosetError("cycle basis is dependent")
        self.cell_functionals = []
        for e in range(ncells):
            s = 0
            for j, z in enumerate(self.basis):
                if (z >> e) & 1:
                    s |= 1 << j
            self.cell_functionals.append(s)
        S = sorted({s for s in self.cell_functionals if s})
        self.poset: AdditivePoset = from_functionals(d, S, name="homology")
        self._solver = Solver(self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def cycle(self, a: int) -> int:
        z = 0
        for j in bits_of(a):
            z ^= self.basis[j]
        return z

    def coordinates(self, cycle: int) -> int:
        try:
            return self._solver.solve(cycle)
        except ValueError:
            raise PosetError("chain is not a cycle in this space") from None

    def classes(self) -> range:
        return range(1 << self.dim)

    def leq(self, a: int, b: int) -> bool:
        return self.poset.leq(a, b)

    def fmt_cycle(self, z: int) -> str:
        return to_bitstring(z, self.ncells)


@dataclass(frozen=True)
class HomologyClass:
    owner: HomologyPoset = field(repr=False, compare=False)
    coords: int
    cycle: int

    def __add__(self, other: "HomologyClass") -> "HomologyClass":
        return HomologyClass(self.owner, self.coords ^ other.coords, self.cycle ^ other.cycle)

    def is_zero(self) -> bool:
        return self.cycle == 0


def h1_poset(G: Graph) -> HomologyPoset:
    return HomologyPoset(fundamental_cycles(G), G.n_edges, graph=G,
                         complex_=ChainComplex.from_graph(G))


def hn_poset(X: ChainComplex) -> HomologyPoset:
    if X.n == 0:
        basis = [1 << i for i in range(X.cells[0])]
    else:
        basis = kernel_rows(X.d(X.n).rows, X.cells[X.n])
    return HomologyPoset(basis, X.cells[X.n], complex_=X)


def class_of(P: HomologyPoset, a: int) -> HomologyClass:
    return HomologyClass(P, a, P.cycle(a))


def class_from_edges(P: HomologyPoset, edges: int | Sequence[int]) -> HomologyClass:
    """Class of a cycle given as a bitmask or a list of cell indices."""
    if not isinstance(edges, int):
        m = 0
        for e in edges:
            m ^= 1 << e
        edges = m
    if edges >> P.ncells:
        raise PosetError("chain mentions cells that do not exist")
    if P.graph is not None:
        v = P.graph.odd_vertex(edges)
        if v is not None:
            raise PosetError(f"not a cycle: vertex {v} meets an odd number of its edges")
    elif P.complex is not None and P.complex.top_boundary_of(edges):
        raise PosetError("not a cycle: nonzero boundary")
    return HomologyClass(P, P.coordinates(edges), edges)


def _cycle_of(x) -> int:
    return x.cycle if isinstance(x, HomologyClass) else int(x)


@dataclass
class Support:
    edges: tuple[int, ...]
    vertices: tuple[int, ...]
    graph: Graph

    @property
    def euler(self) -> int:
        return len(self.vertices) - len(self.edges)


def support(G: Graph, a) -> Support:
    """Subgraph spanned by the edges of the cycle, relabeled densely."""
    z = _cycle_of(a)
    es = tuple(bits_of(z))
    vs = sorted({v for i in es for v in G.edges[i]})
    idx = {v: j for j, v in enumerate(vs)}
    sub = Graph(len(vs), tuple((idx[G.edges[i][0]], idx[G.edges[i][1]]) for i in es))
    return Support(es, tuple(vs), sub)


def find_embedded_circle(G: Graph, a) -> int:
    """A nonzero cycle below ``a`` whose support is an embedded circle."""
    z = _cycle_of(a)
    if z == 0:
        raise PosetError("zero class contains no circle")
    for i in bits_of(z):
        if G.edges[i][0] == G.edges[i][1]:
            return 1 << i
    inc: dict[int, list[int]] = {}
    for i in bits_of(z):
        for v in G.edges[i]:
            inc.setdefault(v, []).append(i)
    start = min(inc)
    path_v = [start]
    path_e: list[int] = []
    used = 0
    pos = {start: 0}
    x = start
    while True:
        e = min(i for i in inc[x] if not (used >> i) & 1)
        used |= 1 << e
        u, v = G.edges[e]
        y = v if u == x else u
        path_e.append(e)
        if y in pos:
            out = 0
            for i in path_e[pos[y] :]:
                out |= 1 << i
            return out
        pos[y] = len(path_v)
        path_v.append(y)
        x = y


def is_atom_class(G: Graph, a) -> bool:
    """Support is connected and every support vertex has degree 2."""
    z = _cycle_of(a)
    if z == 0:
        return False
    sup = support(G, z)
    return len(sup.graph.components()) == 1 and all(d == 2 for d in sup.graph.degrees())


def blocks(G: Graph) -> list[list[int]]:
    """Edge sets of the biconnected blocks; every loop is its own block."""
    adj = [[] for _ in range(G.n_vertices)]
    out: list[list[int]] = []
    for i, (u, v) in enumerate(G.edges):
        if u == v:
            out.append([i])
        else:
            adj[u].append((v, i))
            adj[v].append((u, i))
    disc = [-1] * G.n_vertices
    low = [0] * G.n_vertices
    timer = 0
    for root in range(G.n_vertices):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(adj[root]))]
        estack: list[int] = []
        while stack:
            x, pe, it = stack[-1]
            advanced = False
            for y, i in it:
                if i == pe:
                    continue
                if disc[y] < 0:
                    estack.append(i)
                    disc[y] = low[y] = timer
                    timer += 1
                    stack.append((y, i, iter(adj[y])))
                    advanced = True
                    break
                if disc[y] < disc[x]:
                    estack.append(i)
                    low[x] = min(low[x], disc[y])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[x])
                if low[x] >= disc[p]:
                    blk = []
                    while True:
                        i = estack.pop()
                        blk.append(i)
                        if i == pe:
                            break
                    out.append(sorted(blk))
    out.sort()
    return out


def is_geometric_tile(G: Graph) -> bool:
    """Nonempty graph without isolated vertices whose blocks are all cycles."""
    if G.n_edges == 0:
        return False
    if any(d == 0 for d in G.degrees()):
        return False
    for blk in blocks(G):
        vs: dict[int, int] = {}
        for i in blk:
            u, v = G.edges[i]
            vs[u] = vs.get(u, 0) + 1
            vs[v] = vs.get(v, 0) + 1
        if len(vs) != len(blk) or any(d != 2 for d in vs.values()):
            return False
    return True


def is_tile_class(G: Graph, a) -> bool:
    z = _cycle_of(a)
    if z == 0:
        raise PosetError("zero class is not a tile")
    return is_geometric_tile(support(G, z).graph)


@dataclass
class DisjointResult:
    criterion: bool
    geometric: bool
    euler: int

    def __bool__(self) -> bool:
        return self.criterion


def disjoint_circles(G: Graph, P: HomologyPoset, b, c) -> DisjointResult:
    """Euler-characteristic test for two atoms having disjoint supports,
    checked against the supports themselves."""
    zb, zc = _cycle_of(b), _cycle_of(c)
    if not (is_atom_class(G, zb) and is_atom_class(G, zc)):
        raise PosetError("both classes must be atoms")
    if zb == zc:
        raise PosetError("atoms must be distinct")
    cb, cc = P.coordinates(zb), P.coordinates(zc)
    indep = P.leq(cb, cb ^ cc)
    sup = support(G, zb ^ zc)
    crit = indep and is_tile_class(G, zb ^ zc) and sup.euler == 0
    vb = {v for i in bits_of(zb) for v in G.edges[i]}
    vc = {v for i in bits_of(zc) for v in G.edges[i]}
    geo = not (vb & vc)
    if crit != geo:
        raise AssertionError(f"circle criterion {crit} disagrees with geometry {geo}")
    return DisjointResult(crit, geo, sup.euler)


def disjoint_union_of_circles(G: Graph, P: HomologyPoset, a) -> bool:
    z = _cycle_of(a)
    if z == 0:
        raise PosetError("zero class rejected")
    v = G.odd_vertex(z)
    if v is not None:
        raise PosetError(f"not a cycle: vertex {v} meets an odd number of its edges")
    below = [P.cycle(x) for x in P.classes()
             if x and is_atom_class(G, P.cycle(x)) and P.cycle(x) & ~z == 0]
    crit = is_tile_class(G, z) and all(
        disjoint_circles(G, P, x, y).criterion
        for i, x in enumerate(below) for y in below[i + 1 :])
    geo = all(d in (0, 2) for d in G.degrees(z))
    if crit != geo:
        raise AssertionError("disjoint-circle criterion disagrees with geometry")
    return crit


# ---------- maps between graphs


def subdivide_edge(G: Graph, e: int) -> Graph:
    """Edge ``e`` becomes ``(u, w)`` and a new last edge ``(w, v)``; ``w`` is new."""
    if not 0 <= e < G.n_edges:
        raise PosetError(f"edge index {e} out of range")
    u, v = G.edges[e]
    w = G.n_vertices
    edges = list(G.edges)
    edges[e] = (u, w)
    edges.append((w, v))
    return Graph(w + 1, tuple(edges))


def _induced_images(P: HomologyPoset, Q: HomologyPoset, chain_map) -> list[int]:
    return [Q.coordinates(chain_map(z)) for z in P.basis]


def subdivision_map(G: Graph, e: int) -> tuple[Graph, list[int]]:
    """Subdivide ``e`` and return the induced isomorphism on H1 (checked)."""
    G2 = subdivide_edge(G, e)
    P, Q = h1_poset(G), h1_poset(G2)
    new = 1 << G.n_edges
    images = _induced_images(P, Q, lambda z: z | new if (z >> e) & 1 else z)
    if not check_isomorphism(P.poset, Q.poset, images):
        raise AssertionError("subdivision did not induce an order isomorphism")
    return G2, images


def inclusion_pushforward(G: Graph, H: Graph, vertex_map: Sequence[int],
                          edge_map: Sequence[int]) -> list[int]:
    """Images of the basis classes of ``G`` under an inclusion ``G -> H``.

    Checks that the maps form an inclusion, that the induced map is an order
    embedding, and that atoms and tiles go to atoms and tiles.
    """
    if len(vertex_map) != G.n_vertices or len(edge_map) != G.n_edges:
        raise PosetError("maps must cover every vertex and edge")
    if len(set(vertex_map)) != len(vertex_map) or len(set(edge_map)) != len(edge_map):
        raise PosetError("maps must be injective")
    for i, (u, v) in enumerate(G.edges):
        j = edge_map[i]
        if not 0 <= j < H.n_edges:
            raise PosetError(f"edge {i} maps outside the target")
        if sorted((vertex_map[u], vertex_map[v])) != list(H.edges[j]):
            raise PosetError(f"edge {i} is not carried onto an edge with matching ends")
    P, Q = h1_poset(G), h1_poset(H)

    def push(z: int) -> int:
        out = 0
        for i in bits_of(z):
            out |= 1 << edge_map[i]
        return out

    images = _induced_images(P, Q, push)
    f = [0] * (1 << P.dim)
    for a in range(1, 1 << P.dim):
        low = a & -a
        f[a] = f[a ^ low] ^ images[low.bit_length() - 1]
    for a in P.classes():
        for b in P.classes():
            if P.leq(a, b) != Q.leq(f[a], f[b]):
                raise AssertionError("pushforward is not an order embedding")
    from .structure import is_atom, is_tile

    if P.dim <= 8 and Q.dim <= 10:
        for a in range(1, 1 << P.dim):
            if is_atom(P.poset, a) and not is_atom(Q.poset, f[a]):
                raise AssertionError("an atom was not carried to an atom")
            if is_tile(P.poset, a) and not is_tile(Q.poset, f[a]):
                raise AssertionError("a tile was not carried to a tile")
    return images


# ---------- named fixtures


def loop_graph() -> Graph:
    return Graph(1, ((0, 0),))


def theta_graph() -> Graph:
    return Graph(2, ((0, 1), (0, 1), (0, 1)))


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def k4() -> Graph:
    return complete_graph(4)


def k33() -> Graph:
    """Vertices 0-2 on one side, 3-5 on the other."""
    return Graph(6, tuple((i, j) for i in range(3) for j in range(3, 6)))


def cycle_graph(length: int) -> Graph:
    if length < 1:
        raise PosetError("cycle length must be positive")
    if length == 1:
        return loop_graph()
    return Graph(length, tuple((i, (i + 1) % length) for i in range(length)))


def _glue(parts: Sequence[Graph], shared: bool) -> Graph:
    edges, n = [], 1 if shared else 0
    for P in parts:
        off = n - 1 if shared else n
        relabel = lambda x: (0 if x == 0 else x + off) if shared else x + off
        edges += [(relabel(u), relabel(v)) for u, v in P.edges]
        n += P.n_vertices - 1 if shared else P.n_vertices
    return Graph(n, tuple(edges))


def wedge_of_circles(k: int, length: int = 1) -> Graph:
    """``k`` circles of ``length`` edges sharing vertex 0."""
    if k < 1:
        raise PosetError("k must be at least 1")
    return _glue([cycle_graph(length)] * k, shared=True)


def figure_eight(length: int = 1) -> Graph:
    return wedge_of_circles(2, length)


def disjoint_circles_graph(k: int, length: int = 1) -> Graph:
    if k < 1:
        raise PosetError("k must be at least 1")
    return _glue([cycle_graph(length)] * k, shared=False)


def named_graphs() -> dict[str, Graph]:
    return {
        "loop": loop_graph(),
        "theta": theta_graph(),
        "K4": k4(),
        "K33": k33(),
        "wedge2": wedge_of_circles(2),
        "wedge3": wedge_of_circles(3, 3),
        "figure_eight": figure_eight(3),
        "disjoint2": disjoint_circles_graph(2, 3),
        "disjoint3": disjoint_circles_graph(3, 2),
    }


def wedge_of_spheres(k: int, n: int) -> ChainComplex:
    if k < 1 or n < 1:
        raise PosetError("parameters must be at least 1")
    cells = [1] + [0] * (n - 1) + [k]
    return ChainComplex.build(cells)


def glued_balls(k: int, n: int) -> ChainComplex:
    """``k`` n-balls attached along one common boundary sphere."""
    if k < 1 or n < 1:
        raise PosetError("parameters must be at least 1")
    ones = (1 << k) - 1
    if n == 1:
        return ChainComplex.build([2, k], {1: BitMatrix(2, k, (ones, ones))})
    cells = [1] + [0] * (n - 1) + [k]
    cells[n - 1] = 1
    return ChainComplex.build(cells, {n: BitMatrix(1, k, (ones,))})


def named_complexes() -> dict[str, ChainComplex]:
    return {
        "spheres3_2": wedge_of_spheres(3, 2),
        "balls4_2": glued_balls(4, 2),
        "balls3_3": glued_balls(3, 3),
    }
