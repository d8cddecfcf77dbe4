"""Star complements and graph reconstruction.

If ``Q`` is a star complement for the eigenvalue ``e`` of a graph with
adjacency ``[[A_P, B.T], [B, A_Q]]`` then

    e I - A_P = B.T (e I - A_Q)^{-1} B,

so the whole graph is determined by ``A_Q`` and ``B``.  For a strongly
regular graph with parameters ``(a, c, e)`` the block ``B`` must in addition
be a 0/1 matrix with ``B B.T = R`` where

    R = c J + e(e+c-a) I + (a-c) A_Q - A_Q^2.

This module builds ``R``, searches for every 0/1 factor ``B`` up to column
permutation, reconstructs ``A_P`` from each, and certifies the result.
"""

from __future__ import annotations

import enum
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import DomainError, NotPSD, NotZeroOne
from .exactmat import BitMatrix, ExactMatrix, det, gram, inverse, psd_check
from .graphs import (
    Graph,
    SrgCertificate,
    closed_neighborhood,
    decode_graph6,
    diagnose_srg,
    encode_graph6,
)
from .params import ParamTriple, derive, _as_triple

__all__ = [
    "ReconstructionProblem",
    "SearchStatus",
    "BSearchResult",
    "BlockHints",
    "Rflat",
    "VerificationFailed",
    "star_complement_check",
    "r_matrix",
    "r_flat",
    "windmill_r_flat",
    "windmill_block_hints",
    "b_search",
    "reconstruct",
    "assemble",
    "assemble_and_verify",
    "partition_blocks",
    "closed_nbhd_theorem_check",
    "ClosedNbhdReport",
    "Reconstruction",
    "run_reconstruction",
    "load_fixture",
    "fixture_names",
    "fixture_to_json",
    "fixture_from_json",
    "Fixture",
    "DEFAULT_NODE_CAP",
]

DEFAULT_NODE_CAP = 10**7


def _as_matrix(A) -> ExactMatrix:
    if isinstance(A, Graph):
        return A.adj.to_exact()
    if isinstance(A, BitMatrix):
        return A.to_exact()
    if isinstance(A, ExactMatrix):
        return A
    return ExactMatrix(A)


def _shifted(A: ExactMatrix, e: int) -> ExactMatrix:
    """``e I - A``."""
    return ExactMatrix.identity(A.shape[0]) * e - A


# -- R matrices ---------------------------------------------------------------


def r_matrix(A_Q, t) -> ExactMatrix:
    """Gram target ``cJ + e(e+c-a)I + (a-c)A_Q - A_Q^2``."""
    t = _as_triple(t)
    A = _as_matrix(A_Q)
    n = A.shape[0]
    a, c, e = t.a, t.c, t.e
    return (
        ExactMatrix.ones(n) * c
        + ExactMatrix.identity(n) * (e * (e + c - a))
        + A * (a - c)
        - A @ A
    )


def star_complement_check(A_Q, t) -> bool:
    """True iff ``|Q| = m2 + 1`` and ``e`` is not an eigenvalue of ``A_Q``."""
    t = _as_triple(t)
    A = _as_matrix(A_Q)
    d = derive(t)
    if A.shape[0] != d.m2 + 1:
        return False
    return det(_shifted(A, t.e)) != 0


@dataclass(frozen=True)
class Rflat:
    matrix: ExactMatrix
    hub: int


def r_flat(A_N, hub: int, t) -> Rflat:
    """R with the hub row and column removed, for a closed neighbourhood ``N``.

    The hub must be adjacent to every other vertex of ``N``.  The removed row
    and column of the full R are checked to vanish.
    """
    t = _as_triple(t)
    A = _as_matrix(A_N)
    n = A.shape[0]
    if any(A[hub, j] != 1 for j in range(n) if j != hub):
        raise DomainError(f"vertex {hub} is not adjacent to every other vertex")
    R = r_matrix(A, t)
    bad = [j for j in range(n) if R[hub, j] != 0]
    if bad:
        raise DomainError(
            f"hub row of R is nonzero at column {bad[0]} (value {R[hub, bad[0]]}); "
            "N is not a closed neighbourhood for these parameters"
        )
    A1 = A.delete(hub)
    A2 = (A @ A).delete(hub)
    k = n - 1
    a, c, e = t.a, t.c, t.e
    flat = (
        ExactMatrix.ones(k) * c
        + ExactMatrix.identity(k) * (e * (e + c - a))
        + A1 * (a - c)
        - A2
    )
    assert flat == R.delete(hub)
    return Rflat(flat, hub)


def windmill_r_flat(e: int) -> ExactMatrix:
    """Block-circulant ``bcirc[U, V, ..., V]`` with ``e^2+2e+2`` blocks of size ``e``.

    ``U = e(e+1)^2 I`` and ``V = (e^2+e-1) J``.
    """
    if e < 1:
        raise DomainError("e must be positive")
    blocks = e * e + 2 * e + 2
    size = blocks * e
    u = e * (e + 1) ** 2
    v = e * e + e - 1
    rows = []
    for i in range(size):
        bi = i // e
        rows.append([
            (u if i == j else 0) if j // e == bi else v for j in range(size)
        ])
    return ExactMatrix(rows, (size, size))


# -- search -------------------------------------------------------------------


class SearchStatus(enum.Enum):
    COMPLETE = "Complete"
    CAPPED = "CappedInconclusive"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class BlockHints:
    """Column-block structure imposed on B.

    Columns are split into consecutive blocks of the given ``widths``.
    Columns in different blocks are never interchanged, and every column in
    block ``i`` must sum to ``col_sums[i]`` when that entry is not None.
    """

    widths: tuple[int, ...]
    col_sums: tuple[int | None, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "widths", tuple(self.widths))
        sums = tuple(self.col_sums) or (None,) * len(self.widths)
        if len(sums) != len(self.widths):
            raise ValueError("one column sum per block")
        object.__setattr__(self, "col_sums", sums)

    @property
    def m(self) -> int:
        return sum(self.widths)

    def canonical(self, B: BitMatrix) -> BitMatrix:
        """Sort columns into nonincreasing order within each block."""
        parts = []
        off = 0
        for w in self.widths:
            sub = BitMatrix(B.array[:, off:off + w]).sort_columns()
            parts.append(sub.array)
            off += w
        return BitMatrix(np.hstack(parts)) if parts else B


def windmill_block_hints(e: int) -> BlockHints:
    """Hints for B when the star complement is a generalized windmill.

    The second subconstituent splits into ``e(e+2)`` cliques of size ``e+1``
    (block Y) followed by ``e(e+1)^2`` cliques of size ``e`` (block Z); every
    column sums to ``c = e(e+1)``.
    """
    c = e * (e + 1)
    return BlockHints(
        widths=(e * (e + 2) * (e + 1), e * (e + 1) ** 2 * e),
        col_sums=(c, c),
    )


@dataclass
class BSearchResult:
    status: SearchStatus
    solutions: list[BitMatrix] = field(default_factory=list)
    nodes_explored: int = 0

    @property
    def complete(self) -> bool:
        return self.status is SearchStatus.COMPLETE


class _CapReached(Exception):
    pass


@dataclass
class _Class:
    size: int
    block: int
    colsum: int
    ones: int  # bitmask of rows where this class has a 1


class _Searcher:
    def __init__(self, R: list[list[int]], col_targets: list[int | None], node_cap: int):
        self.R = R
        self.nrows = len(R)
        self.targets = col_targets
        self.node_cap = node_cap
        self.nodes = 0
        self.solutions: list[tuple[_Class, ...]] = []

    def tick(self):
        self.nodes += 1
        if self.nodes > self.node_cap:
            raise _CapReached

    def row_choices(self, i: int, classes: Sequence[_Class]):
        """Yield every per-class count vector valid for row ``i``."""
        R = self.R
        prev = list(range(i))
        need_dots = [R[i][r] for r in prev]
        left_after = self.nrows - i - 1
        nc = len(classes)

        lo_hi = []
        for cl in classes:
            t = self.targets[cl.block]
            lo, hi = 0, cl.size
            if t is not None:
                if cl.colsum + 1 > t:
                    hi = 0
                if cl.colsum + left_after < t:
                    lo = cl.size
            lo_hi.append((lo, hi))
        if any(lo > hi for lo, hi in lo_hi):
            return

        # suffix capacities for pruning
        cap_sum = [0] * (nc + 1)
        min_sum = [0] * (nc + 1)
        cap_dot = [[0] * len(prev) for _ in range(nc + 1)]
        min_dot = [[0] * len(prev) for _ in range(nc + 1)]
        for j in range(nc - 1, -1, -1):
            lo, hi = lo_hi[j]
            cap_sum[j] = cap_sum[j + 1] + hi
            min_sum[j] = min_sum[j + 1] + lo
            ones = classes[j].ones
            for idx, r in enumerate(prev):
                has = ones >> r & 1
                cap_dot[j][idx] = cap_dot[j + 1][idx] + (hi if has else 0)
                min_dot[j][idx] = min_dot[j + 1][idx] + (lo if has else 0)

        counts = [0] * nc

        def rec(j, rem_sum, rem_dots):
            self.tick()
            if not min_sum[j] <= rem_sum <= cap_sum[j]:
                return
            for idx, rd in enumerate(rem_dots):
                if not min_dot[j][idx] <= rd <= cap_dot[j][idx]:
                    return
            if j == nc:
                yield tuple(counts)
                return
            lo, hi = lo_hi[j]
            ones = classes[j].ones
            # larger counts first: lexicographically larger rows come out first
            for x in range(min(hi, rem_sum), lo - 1, -1):
                counts[j] = x
                nd = [rd - x if ones >> r & 1 else rd for rd, r in zip(rem_dots, prev)]
                yield from rec(j + 1, rem_sum - x, nd)
            counts[j] = 0

        yield from rec(0, R[i][i], need_dots)

    @staticmethod
    def split(i: int, classes: Sequence[_Class], counts: Sequence[int]) -> tuple[_Class, ...]:
        out = []
        bit = 1 << i
        for cl, x in zip(classes, counts):
            if x:
                out.append(_Class(x, cl.block, cl.colsum + 1, cl.ones | bit))
            if cl.size - x:
                out.append(_Class(cl.size - x, cl.block, cl.colsum, cl.ones))
        return tuple(out)

    def dfs(self, i: int, classes: tuple[_Class, ...]):
        if i == self.nrows:
            if all(self.targets[cl.block] in (None, cl.colsum) for cl in classes):
                self.solutions.append(classes)
            return
        for counts in self.row_choices(i, classes):
            self.dfs(i + 1, self.split(i, classes, counts))


def _classes_to_matrix(classes: Sequence[_Class], nrows: int, widths: Sequence[int]) -> BitMatrix:
    cols_by_block: list[list[list[int]]] = [[] for _ in widths]
    for cl in classes:
        col = [cl.ones >> r & 1 for r in range(nrows)]
        cols_by_block[cl.block].extend([col] * cl.size)
    cols = [c for block in cols_by_block for c in block]
    if not cols:
        return BitMatrix.zeros(nrows, 0)
    return BitMatrix(np.array(cols, dtype=np.uint8).T)


def _search_subtree(args):
    R, targets, cap, start_row, classes = args
    s = _Searcher(R, targets, cap)
    try:
        s.dfs(start_row, classes)
        capped = False
    except _CapReached:
        capped = True
    return s.solutions, s.nodes, capped


def b_search(
    R: ExactMatrix,
    m: int,
    node_cap: int = DEFAULT_NODE_CAP,
    block_hints: BlockHints | None = None,
    jobs: int = 1,
) -> BSearchResult:
    """Find every 0/1 matrix B with ``m`` columns and ``B B.T = R``.

    Rows of B are fixed; solutions are reported once per orbit under column
    permutations (within each hint block), as the representative whose
    columns are in nonincreasing lexicographic order.  Raises
    :class:`~srgkit.errors.NotPSD` before searching when R is indefinite.

    The search stops after ``node_cap`` nodes and then reports
    ``SearchStatus.CAPPED`` with whatever solutions were found so far.
    """
    R = _as_matrix(R)
    if not R.is_square or not R.is_integral():
        raise ValueError("R must be a square integer matrix")
    if m < 1:
        raise DomainError("B needs at least one column")
    if not psd_check(R):
        raise NotPSD("R is not positive semi-definite; no factor B exists")
    nrows = R.shape[0]
    Rl = [list(r) for r in R.rows]
    if any(Rl[i][i] < 0 for i in range(nrows)):
        raise DomainError("R has a negative diagonal entry")

    hints = block_hints or BlockHints((m,))
    if hints.m != m:
        raise DomainError(f"block widths sum to {hints.m}, expected m = {m}")
    targets = list(hints.col_sums)
    start = tuple(_Class(w, b, 0, 0) for b, w in enumerate(hints.widths) if w)

    if jobs <= 1:
        solutions, nodes, capped = _search_subtree((Rl, targets, node_cap, 0, start))
    else:
        solutions, nodes, capped = _parallel_search(Rl, targets, node_cap, start, jobs)

    mats = [_classes_to_matrix(cls, nrows, hints.widths) for cls in solutions]
    for B in mats:
        assert gram(B) == R
    mats.sort(key=lambda B: B.to_strings(), reverse=True)
    status = SearchStatus.CAPPED if capped else SearchStatus.COMPLETE
    return BSearchResult(status, mats, nodes)


def _parallel_search(R, targets, node_cap, start, jobs):
    # expand the tree breadth-first until there is enough work to share
    s = _Searcher(R, targets, node_cap)
    frontier = [(0, start)]
    solutions = []
    try:
        while frontier and len(frontier) < 4 * jobs:
            row, classes = frontier[0]
            if row == s.nrows:
                break
            nxt = []
            for row, classes in frontier:
                if row == s.nrows:
                    s.dfs(row, classes)
                    continue
                for counts in s.row_choices(row, classes):
                    nxt.append((row + 1, s.split(row, classes, counts)))
            frontier = nxt
    except _CapReached:
        return s.solutions, s.nodes, True
    solutions.extend(s.solutions)
    nodes = s.nodes
    capped = False
    tasks = [(R, targets, max(node_cap - nodes, 0), row, cls) for row, cls in frontier]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for sols, n, cap in pool.map(_search_subtree, tasks):
            solutions.extend(sols)
            nodes += n
            capped = capped or cap
    if nodes > node_cap:
        capped = True
    return solutions, nodes, capped


# -- reconstruction -----------------------------------------------------------


def reconstruct(A_Q, B: BitMatrix, e: int) -> ExactMatrix:
    """Return ``A_P = e I - B.T (e I - A_Q)^{-1} B``.

    Raises :class:`~srgkit.errors.Singular` if ``e`` is an eigenvalue of
    ``A_Q`` and :class:`~srgkit.errors.NotZeroOne` (carrying the first bad
    entry) if the result is not a symmetric 0/1 matrix with zero diagonal.
    """
    A = _as_matrix(A_Q)
    if B.shape[0] != A.shape[0]:
        raise DomainError(f"B has {B.shape[0]} rows but Q has {A.shape[0]} vertices")
    Minv = inverse(_shifted(A, e))
    Bx = B.to_exact()
    X = Bx.T @ Minv @ Bx
    m = B.shape[1]
    A_P = ExactMatrix.identity(m) * e - X
    for i in range(m):
        for j in range(m):
            x = A_P[i, j]
            ok = x == 0 if i == j else x in (0, 1)
            if not ok or x != A_P[j, i]:
                raise NotZeroOne(f"A_P[{i}, {j}] = {x} is not a valid adjacency entry", (i, j, x))
    return A_P


def assemble(A_P, B: BitMatrix, A_Q) -> Graph:
    """Graph with adjacency ``[[A_P, B.T], [B, A_Q]]`` (P vertices first)."""
    AP = _as_matrix(A_P).to_numpy()
    AQ = _as_matrix(A_Q).to_numpy()
    Bn = B.array.astype(np.int64)
    full = np.block([[AP, Bn.T], [Bn, AQ]])
    return Graph(full.astype(np.uint8))


class VerificationFailed(Exception):
    """Assembled graph is not the expected strongly regular graph."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def assemble_and_verify(A_P, B: BitMatrix, A_Q, t) -> tuple[Graph, SrgCertificate]:
    """Assemble the full graph, certify it, and match it against ``derive(t)``."""
    t = _as_triple(t)
    G = assemble(A_P, B, A_Q)
    check = diagnose_srg(G)
    if not check.ok:
        raise VerificationFailed(f"assembled graph is not strongly regular: {check.reason}", check.witness)
    cert = check.certificate
    d = derive(t)
    if (cert.n, cert.k, cert.a, cert.c) != (d.n, d.k, d.a, d.c):
        raise VerificationFailed(
            f"certified SR{cert.params} but parameters give SR({d.n}, {d.k}, {d.a}, {d.c})"
        )
    return G, cert


def partition_blocks(G: Graph, Q: Sequence[int]) -> tuple[ExactMatrix, BitMatrix, ExactMatrix]:
    """Split ``G`` along ``Q`` into ``(A_P, B, A_Q)``; P keeps increasing order."""
    qs = list(Q)
    qset = set(qs)
    ps = [v for v in range(G.n) if v not in qset]
    arr = G.adjacency()
    A_P = ExactMatrix.from_numpy(arr[np.ix_(ps, ps)].astype(np.int64))
    A_Q = ExactMatrix.from_numpy(arr[np.ix_(qs, qs)].astype(np.int64))
    B = BitMatrix(arr[np.ix_(qs, ps)])
    return A_P, B, A_Q


# -- closed neighbourhoods --------------------------------------------------------


@dataclass(frozen=True)
class ClosedNbhdReport:
    a: int
    e: int
    c: int
    k: int
    m2: int
    m2_equals_k: bool
    char_value: int  # e^2 - a e - k
    char_formula_holds: bool  # char_value == -e (e+1)^2
    printed_form_holds: bool  # char_value == -e^2 (e+3); true only for e = 1
    vertices_checked: int = 0
    failures: tuple[int, ...] = ()

    @property
    def ok(self) -> bool:
        return self.m2_equals_k and self.char_formula_holds and self.char_value != 0 and not self.failures


def closed_nbhd_theorem_check(a: int, e: int, graph: Graph | None = None) -> ClosedNbhdReport:
    """Check that closed neighbourhoods are star complements when ``c = e(e+1)``.

    Always verifies ``m2 = k`` and ``e^2 - ae - k = -e(e+1)^2``, which is
    nonzero, so ``e`` is not a root of ``x^2 - ax - k``.  (The often-quoted
    closed form ``-e^2(e+3)`` agrees only at ``e = 1``; it is reported in
    ``printed_form_holds``.)  If ``graph`` is given, every closed
    neighbourhood is also run through :func:`star_complement_check`.
    """
    if not e > a >= 0:
        raise DomainError(f"need e > a >= 0, got a={a}, e={e}")
    c = e * (e + 1)
    t = ParamTriple(a, c, e)
    d = derive(t)
    assert (d.k - e) * (e + 1) == c * (c + 2 * e - a)
    char_value = e * e - a * e - d.k
    failures = []
    checked = 0
    if graph is not None:
        for v in range(graph.n):
            N = closed_neighborhood(graph, v)
            if not star_complement_check(N, t):
                failures.append(v)
            checked += 1
    return ClosedNbhdReport(
        a=a, e=e, c=c, k=d.k, m2=d.m2, m2_equals_k=d.m2 == d.k,
        char_value=char_value, char_formula_holds=char_value == -e * (e + 1) ** 2,
        printed_form_holds=char_value == -e * e * (e + 3),
        vertices_checked=checked, failures=tuple(failures),
    )


# -- end-to-end pipeline ------------------------------------------------------------


@dataclass(frozen=True)
class ReconstructionProblem:
    params: ParamTriple
    A_Q: ExactMatrix
    R: ExactMatrix
    m: int

    @classmethod
    def from_star_complement(cls, A_Q, t) -> ReconstructionProblem:
        t = _as_triple(t)
        A = _as_matrix(A_Q)
        d = derive(t)
        if not isinstance(d.m2, int) or not isinstance(d.n, int):
            raise DomainError(f"{t} has non-integral multiplicities")
        if A.shape[0] != d.m2 + 1:
            raise DomainError(f"star complement must have m2 + 1 = {d.m2 + 1} vertices, got {A.shape[0]}")
        if det(_shifted(A, t.e)) == 0:
            raise DomainError(f"e = {t.e} is an eigenvalue of the proposed star complement")
        return cls(t, A, r_matrix(A, t), d.n - A.shape[0])


@dataclass
class Reconstruction:
    search: BSearchResult
    graphs: list[Graph] = field(default_factory=list)
    certificates: list[SrgCertificate] = field(default_factory=list)
    factors: list[BitMatrix] = field(default_factory=list)
    rejected: int = 0


def run_reconstruction(
    problem: ReconstructionProblem,
    node_cap: int = DEFAULT_NODE_CAP,
    block_hints: BlockHints | None = None,
    jobs: int = 1,
) -> Reconstruction:
    """Search for B, reconstruct A_P from each solution, keep certified graphs.

    Identical adjacency matrices produced by different B are reported once.
    """
    res = b_search(problem.R, problem.m, node_cap=node_cap, block_hints=block_hints, jobs=jobs)
    out = Reconstruction(res)
    seen = set()
    for B in res.solutions:
        try:
            A_P = reconstruct(problem.A_Q, B, problem.params.e)
            G, cert = assemble_and_verify(A_P, B, problem.A_Q, problem.params)
        except (NotZeroOne, VerificationFailed):
            out.rejected += 1
            continue
        key = encode_graph6(G)
        if key in seen:
            continue
        seen.add(key)
        out.graphs.append(G)
        out.certificates.append(cert)
        out.factors.append(B)
    return out


# -- fixtures -----------------------------------------------------------------------


@dataclass(frozen=True)
class Fixture:
    """A star-complement problem as shipped on disk."""

    name: str
    params: ParamTriple
    Q: Graph
    R: ExactMatrix | None = None
    B: BitMatrix | None = None
    hints: BlockHints | None = None
    note: str = ""


def fixture_to_json(fx: Fixture) -> str:
    data = {
        "name": fx.name,
        "a": fx.params.a,
        "c": fx.params.c,
        "e": fx.params.e,
        "Q": encode_graph6(fx.Q),
    }
    if fx.R is not None:
        data["R"] = [" ".join(str(x) for x in row) for row in fx.R.rows]
    if fx.B is not None:
        data["B"] = fx.B.to_strings()
    if fx.hints is not None:
        data["hints"] = {"widths": list(fx.hints.widths), "col_sums": list(fx.hints.col_sums)}
    if fx.note:
        data["note"] = fx.note
    return json.dumps(data, indent=2) + "\n"


def fixture_from_json(text: str) -> Fixture:
    data = json.loads(text)
    hints = data.get("hints")
    return Fixture(
        name=data["name"],
        params=ParamTriple(int(data["a"]), int(data["c"]), int(data["e"])),
        Q=decode_graph6(data["Q"]),
        R=ExactMatrix([int(x) for x in row.split()] for row in data["R"]) if "R" in data else None,
        B=BitMatrix.from_strings(data["B"]) if "B" in data else None,
        hints=BlockHints(tuple(hints["widths"]), tuple(hints["col_sums"])) if hints else None,
        note=data.get("note", ""),
    )


def fixture_names() -> list[str]:
    return sorted(
        p.name[:-5] for p in resources.files("srgkit.data").iterdir() if p.name.endswith(".json")
    )


def load_fixture(name_or_path) -> Fixture:
    """Load a bundled fixture by name (e.g. ``"petersen_c5"``) or from a path."""
    p = Path(str(name_or_path))
    if p.suffix == ".json" and p.exists():
        return fixture_from_json(p.read_text())
    return fixture_from_json(resources.files("srgkit.data").joinpath(f"{name_or_path}.json").read_text())
