"""Dense simple graphs, named constructions, and strong-regularity checks.

A :class:`Graph` wraps a symmetric :class:`~srgkit.exactmat.BitMatrix` with
zero diagonal.  Vertex orders of the constructors are fixed and documented,
because block-structure computations downstream depend on them.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, ParseError
from .exactmat import BitMatrix

__all__ = [
    "Graph",
    "SrgCertificate",
    "SrgCheck",
    "MAX_VERTICES",
    "diagnose_srg",
    "verify_srg",
    "cycle",
    "path",
    "complete",
    "complete_bipartite",
    "empty",
    "petersen",
    "windmill",
    "generalized_windmill",
    "line_graph",
    "complement",
    "disjoint_union",
    "subconstituent",
    "closed_neighborhood",
    "local_cliques",
    "encode_graph6",
    "decode_graph6",
    "read_graph6",
    "write_graph6",
    "to_dot",
]

MAX_VERTICES = 1024


class Graph:
    """Undirected simple graph on vertices ``0 .. n-1``; immutable."""

    __slots__ = ("_adj", "_nbrs")

    def __init__(self, adjacency):
        adj = adjacency if isinstance(adjacency, BitMatrix) else BitMatrix(adjacency)
        n, m = adj.shape
        if n != m:
            raise ValueError("adjacency matrix must be square")
        if n > MAX_VERTICES:
            raise DomainError(f"graphs are capped at {MAX_VERTICES} vertices")
        arr = adj.array
        if n and (arr.diagonal().any() or not np.array_equal(arr, arr.T)):
            raise ValueError("adjacency must be symmetric with zero diagonal")
        self._adj = adj
        self._nbrs = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        arr = np.zeros((n, n), dtype=np.uint8)
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            arr[u, v] = arr[v, u] = 1
        return cls(arr)

    @property
    def n(self) -> int:
        return self._adj.shape[0]

    @property
    def adj(self) -> BitMatrix:
        return self._adj

    def adjacency(self) -> np.ndarray:
        """Read-only ``uint8`` adjacency array."""
        return self._adj.array

    @property
    def row_bits(self) -> tuple[int, ...]:
        return self._adj.row_bits

    def neighbors(self, v: int) -> list[int]:
        if self._nbrs is None:
            self._nbrs = tuple(np.flatnonzero(r).tolist() for r in self._adj.array)
        return list(self._nbrs[v])

    def degree(self, v: int) -> int:
        return self.row_bits[v].bit_count()

    def degrees(self) -> list[int]:
        return [b.bit_count() for b in self.row_bits]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj.array[u, v])

    def edges(self) -> list[tuple[int, int]]:
        iu, ju = np.nonzero(np.triu(self._adj.array, 1))
        return list(zip(iu.tolist(), ju.tolist()))

    def num_edges(self) -> int:
        return int(self._adj.array.sum()) // 2

    def induced(self, vertices: Sequence[int]) -> Graph:
        idx = np.asarray(vertices, dtype=np.intp)
        return Graph(self._adj.array[np.ix_(idx, idx)])

    def is_connected(self) -> bool:
        n = self.n
        if n == 0:
            return True
        bits = self.row_bits
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= bits[low.bit_length() - 1]
                f ^= low
            frontier = nxt & ~seen
            seen |= frontier
        return seen == (1 << n) - 1

    def components(self) -> list[list[int]]:
        bits = self.row_bits
        left = (1 << self.n) - 1
        comps = []
        while left:
            start = left & -left
            comp = start
            frontier = start
            while frontier:
                nxt = 0
                f = frontier
                while f:
                    low = f & -f
                    nxt |= bits[low.bit_length() - 1]
                    f ^= low
                frontier = nxt & ~comp
                comp |= frontier
            left &= ~comp
            comps.append([i for i in range(self.n) if comp >> i & 1])
        return comps

    def triangles_per_vertex(self) -> list[int]:
        A = self._adj.array.astype(np.int64)
        return [int(x) // 2 for x in np.diag(A @ A @ A)]

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self):
        return hash(self._adj)

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.num_edges()})"


# -- strong regularity ------------------------------------------------------


@dataclass(frozen=True)
class SrgCertificate:
    n: int
    k: int
    a: int
    c: int
    connected: bool = True
    identity_checked: bool = True

    @property
    def params(self) -> tuple[int, int, int, int]:
        return (self.n, self.k, self.a, self.c)


@dataclass(frozen=True)
class SrgCheck:
    """Outcome of :func:`diagnose_srg`; ``witness`` is the first bad vertex or pair."""

    certificate: SrgCertificate | None
    reason: str = ""
    witness: tuple[int, ...] | None = None

    @property
    def ok(self) -> bool:
        return self.certificate is not None


def _matrix_identity_holds(G: Graph, k: int, a: int, c: int) -> bool:
    A = G.adjacency().astype(np.int64)
    n = G.n
    J = np.ones((n, n), dtype=np.int64)
    lhs = A @ A - (a - c) * A - (k - c) * np.eye(n, dtype=np.int64)
    return bool(np.array_equal(lhs, c * J) and np.array_equal(A @ J, k * J))


def diagnose_srg(G: Graph) -> SrgCheck:
    """Check strong regularity, reporting the first violation found.

    Pair counts are taken by popcount on row bitsets; the identity
    ``A^2 - (a-c)A - (k-c)I = cJ`` is then checked by an exact integer
    matrix product, and both must agree.
    """
    n = G.n
    if n < 3:
        return SrgCheck(None, "fewer than 3 vertices")
    bits = G.row_bits
    k = bits[0].bit_count()
    for v in range(1, n):
        if bits[v].bit_count() != k:
            return SrgCheck(None, f"not regular: deg(0) = {k}, deg({v}) = {bits[v].bit_count()}", (0, v))
    if k == n - 1:
        return SrgCheck(None, "complete graph")
    if not G.is_connected():
        return SrgCheck(None, "not connected")
    a = c = None
    for u in range(n):
        bu = bits[u]
        for v in range(u + 1, n):
            common = (bu & bits[v]).bit_count()
            if bu >> v & 1:
                if a is None:
                    a = common
                elif common != a:
                    return SrgCheck(None, f"adjacent pair has {common} common neighbours, expected {a}", (u, v))
            else:
                if c is None:
                    c = common
                elif common != c:
                    return SrgCheck(None, f"non-adjacent pair has {common} common neighbours, expected {c}", (u, v))
    if a is None:
        a = 0
    if not c:
        return SrgCheck(None, "non-adjacent pairs have no common neighbour")
    identity = _matrix_identity_holds(G, k, a, c)
    assert identity, "pair counts and matrix identity disagree"
    return SrgCheck(SrgCertificate(n, k, a, c, True, identity))


def verify_srg(G: Graph) -> SrgCertificate | None:
    """Certificate if ``G`` is connected, non-complete and strongly regular, else None."""
    return diagnose_srg(G).certificate


# -- constructors -------------------------------------------------------------


def _need(cond, msg):
    if not cond:
        raise DomainError(msg)


def empty(n: int) -> Graph:
    _need(n >= 0, "n must be nonnegative")
    return Graph(np.zeros((n, n), dtype=np.uint8))


def cycle(n: int) -> Graph:
    """C_n with edges ``i ~ i+1 (mod n)``."""
    _need(n >= 3, "a cycle needs at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    _need(n >= 1, "a path needs at least 1 vertex")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def complete(n: int) -> Graph:
    _need(n >= 1, "K_n needs n >= 1")
    arr = np.ones((n, n), dtype=np.uint8)
    np.fill_diagonal(arr, 0)
    return Graph(arr)


def complete_bipartite(m: int, p: int | None = None) -> Graph:
    """K_{m,p}; the first ``m`` vertices form one side."""
    p = m if p is None else p
    _need(m >= 1 and p >= 1, "both sides must be nonempty")
    n = m + p
    arr = np.zeros((n, n), dtype=np.uint8)
    arr[:m, m:] = 1
    arr[m:, :m] = 1
    return Graph(arr)


def petersen() -> Graph:
    """Outer 5-cycle on 0..4, inner pentagram on 5..9, spokes ``i ~ i+5``."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    return Graph.from_edges(10, edges)


def generalized_windmill(e: int, blades: int | None = None) -> Graph:
    """``blades`` copies of K_{e+1} sharing one vertex (default ``e^2+2e+2``).

    Vertex 0 is the hub; blade ``i`` occupies vertices ``1 + i*e .. (i+1)*e``.
    """
    _need(e >= 1, "e must be positive")
    blades = e * e + 2 * e + 2 if blades is None else blades
    _need(blades >= 1, "need at least one blade")
    n = 1 + blades * e
    arr = np.zeros((n, n), dtype=np.uint8)
    arr[0, 1:] = 1
    arr[1:, 0] = 1
    for i in range(blades):
        lo = 1 + i * e
        arr[lo:lo + e, lo:lo + e] = 1
    np.fill_diagonal(arr, 0)
    return Graph(arr)


def windmill(t: int) -> Graph:
    """``t`` triangles sharing the hub 0 (friendship graph)."""
    return generalized_windmill(2, blades=t)


def line_graph(G: Graph) -> Graph:
    """Line graph; vertex ``i`` is the ``i``-th edge of ``G.edges()`` (lexicographic)."""
    edges = G.edges()
    m = len(edges)
    arr = np.zeros((m, m), dtype=np.uint8)
    for i, j in combinations(range(m), 2):
        if set(edges[i]) & set(edges[j]):
            arr[i, j] = arr[j, i] = 1
    return Graph(arr)


def complement(G: Graph) -> Graph:
    arr = 1 - G.adjacency()
    np.fill_diagonal(arr, 0)
    return Graph(arr)


def disjoint_union(*graphs: Graph) -> Graph:
    n = sum(g.n for g in graphs)
    arr = np.zeros((n, n), dtype=np.uint8)
    off = 0
    for g in graphs:
        arr[off:off + g.n, off:off + g.n] = g.adjacency()
        off += g.n
    return Graph(arr)


# -- local structure ---------------------------------------------------------


def subconstituent(G: Graph, v: int, distance: int) -> tuple[Graph, list[int]]:
    """Induced subgraph on the vertices at ``distance`` (1 or 2) from ``v``.

    Returns the subgraph and the list mapping its vertices back to ``G``.
    """
    if not 0 <= v < G.n:
        raise IndexError(f"vertex {v} out of range")
    if distance not in (1, 2):
        raise DomainError("distance must be 1 or 2")
    bits = G.row_bits
    first = bits[v]
    if distance == 1:
        mask = first
    else:
        reach = 0
        f = first
        while f:
            low = f & -f
            reach |= bits[low.bit_length() - 1]
            f ^= low
        mask = reach & ~first & ~(1 << v)
    verts = [i for i in range(G.n) if mask >> i & 1]
    return G.induced(verts), verts


def closed_neighborhood(G: Graph, v: int) -> Graph:
    """Induced subgraph on ``v`` and its neighbours, with ``v`` as vertex 0."""
    if not 0 <= v < G.n:
        raise IndexError(f"vertex {v} out of range")
    return G.induced([v] + G.neighbors(v))


def local_cliques(G: Graph, v: int) -> list[int] | None:
    """Component sizes of the first subconstituent if each is a clique.

    Returns the sizes sorted in nonincreasing order, or ``None`` when some
    component of ``X_1(v)`` is not complete.
    """
    sub, _ = subconstituent(G, v, 1)
    bits = sub.row_bits
    sizes = []
    for comp in sub.components():
        s = len(comp)
        if any(bits[i].bit_count() != s - 1 for i in comp):
            return None
        sizes.append(s)
    return sorted(sizes, reverse=True)


# -- graph6 ------------------------------------------------------------------

_G6_HEADER = ">>graph6<<"


def _encode_n(n: int) -> bytes:
    if n < 63:
        return bytes([63 + n])
    if n < 258048:
        return bytes([126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)])
    return bytes([126, 126] + [63 + (n >> s & 63) for s in (30, 24, 18, 12, 6, 0)])


def encode_graph6(G: Graph) -> str:
    """graph6 text for ``G`` (no header, no newline).

    >>> encode_graph6(complete(2))
    'A_'
    """
    n = G.n
    arr = G.adjacency()
    if n > 1:
        iu, ju = np.triu_indices(n, 1)
        # column-major upper triangle: order by j, then i
        order = np.lexsort((iu, ju))
        bits = arr[iu[order], ju[order]]
    else:
        bits = np.zeros(0, dtype=np.uint8)
    pad = (-len(bits)) % 6
    bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)]).reshape(-1, 6)
    vals = bits @ np.array([32, 16, 8, 4, 2, 1]) + 63
    return (_encode_n(n) + bytes(vals.astype(np.uint8).tolist())).decode("ascii")


def decode_graph6(text: str) -> Graph:
    """Parse one graph6 line (an optional ``>>graph6<<`` header is accepted)."""
    line = text.strip()
    base = 0
    if line.startswith(_G6_HEADER):
        line = line[len(_G6_HEADER):]
        base = len(_G6_HEADER)
    try:
        data = line.encode("ascii")
    except UnicodeEncodeError as exc:
        raise ParseError("non-ASCII character in graph6 text", base + exc.start) from None
    if not data:
        raise ParseError("empty graph6 text", base)
    for i, b in enumerate(data):
        if not 63 <= b <= 126:
            raise ParseError(f"byte {b!r} outside graph6 range 63..126", base + i)
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise ParseError("truncated 8-byte vertex count", base + len(data))
        n = 0
        for b in data[2:8]:
            n = n << 6 | (b - 63)
        pos = 8
    else:
        if len(data) < 4:
            raise ParseError("truncated 4-byte vertex count", base + len(data))
        n = 0
        for b in data[1:4]:
            n = n << 6 | (b - 63)
        pos = 4
    if n > MAX_VERTICES:
        raise ParseError(f"graph has {n} vertices, cap is {MAX_VERTICES}", base)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise ParseError(f"expected {need} data bytes for n={n}, found {len(body)}", base + pos + min(len(body), need))
    vals = np.frombuffer(body, dtype=np.uint8).astype(np.int64) - 63
    bits = ((vals[:, None] >> np.arange(5, -1, -1)) & 1).reshape(-1)
    if bits[nbits:].any():
        raise ParseError("nonzero padding bits", base + pos + need - 1)
    arr = np.zeros((n, n), dtype=np.uint8)
    if n > 1:
        iu, ju = np.triu_indices(n, 1)
        order = np.lexsort((iu, ju))
        arr[iu[order], ju[order]] = bits[:nbits]
        arr |= arr.T
    return Graph(arr)


def read_graph6(path) -> list[Graph]:
    graphs = []
    with open(path, encoding="ascii") as fh:
        for line in fh:
            if line.strip():
                graphs.append(decode_graph6(line))
    return graphs


def write_graph6(path, graphs: Iterable[Graph]) -> None:
    with open(path, "w", encoding="ascii") as fh:
        for g in graphs:
            fh.write(encode_graph6(g) + "\n")


def to_dot(G: Graph, name: str = "G") -> str:
    """Graphviz DOT text; restricted to small graphs (n <= 30)."""
    if G.n > 30:
        raise DomainError("DOT export is limited to 30 vertices")
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in range(G.n)]
    lines += [f"  {u} -- {v};" for u, v in G.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"
