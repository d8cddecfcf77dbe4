"""Cayley graphs on 2x2 Hermitian matrices over GF(q^2).

A Hermitian matrix ``[[m11, m12], [conj(m12), m22]]`` has ``m11, m22`` in
GF(q) and ``m12`` in GF(q^2), so there are ``q^4`` of them.  Two matrices
are adjacent when their difference is nonzero and singular.  The result is
strongly regular with parameters ``(q^4, (q-1)(q^2+1), q-2, q(q-1))``.

Vertex numbering: matrix ``(m11, m22, m12)`` gets index
``(i11 * q + i22) * q^2 + i12`` where ``i11, i22`` index GF(q) elements
(as returned by :func:`srgkit.finitefield.make_field`) and ``i12`` indexes
GF(q^2) elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .finitefield import FieldElem, FieldSpec, conj, make_quadratic_extension, norm
from .graphs import Graph

__all__ = ["HermMatrix", "hermitian_field", "all_hermitian", "rank_one_set", "cayley_graph", "vertex_index"]

MAX_Q = 5


@dataclass(frozen=True)
class HermMatrix:
    m11: FieldElem
    m22: FieldElem
    m12: FieldElem

    def __post_init__(self):
        for x in (self.m11, self.m22):
            if conj(x) != x:
                raise DomainError("diagonal entries must lie in the ground field")

    @property
    def m21(self) -> FieldElem:
        return conj(self.m12)

    def det(self) -> FieldElem:
        return self.m11 * self.m22 - norm(self.m12)

    def is_zero(self) -> bool:
        return not (self.m11 or self.m22 or self.m12)

    def __add__(self, other: HermMatrix) -> HermMatrix:
        return HermMatrix(self.m11 + other.m11, self.m22 + other.m22, self.m12 + other.m12)

    def __neg__(self) -> HermMatrix:
        return HermMatrix(-self.m11, -self.m22, -self.m12)

    def __sub__(self, other: HermMatrix) -> HermMatrix:
        return self + (-other)

    def scale(self, alpha: FieldElem) -> HermMatrix:
        """``alpha * M`` for ``alpha`` in the ground field."""
        return HermMatrix(alpha * self.m11, alpha * self.m22, alpha * self.m12)


@lru_cache(maxsize=None)
def hermitian_field(q: int) -> FieldSpec:
    if not 2 <= q <= MAX_Q:
        raise DomainError(f"q must be a prime power <= {MAX_Q}")
    return make_quadratic_extension(q)


def vertex_index(M: HermMatrix) -> int:
    F = M.m12.spec
    q = F.ground_order
    ground = F.ground_indices
    return (ground.index(M.m11.value) * q + ground.index(M.m22.value)) * q * q + M.m12.value


def all_hermitian(q: int) -> list[HermMatrix]:
    """All ``q^4`` Hermitian matrices, in vertex-index order."""
    F = hermitian_field(q)
    ground = [F.elem(i) for i in F.ground_indices]
    return [HermMatrix(x, y, F.elem(z)) for x in ground for y in ground for z in range(F.q)]


def rank_one_set(q: int) -> list[HermMatrix]:
    """Nonzero singular Hermitian matrices, found by exhaustive search."""
    S = [M for M in all_hermitian(q) if not M.is_zero() and not M.det()]
    assert len(S) == (q - 1) * (q * q + 1)
    keys = {vertex_index(M) for M in S}
    assert all(vertex_index(-M) in keys for M in S)
    return S


def cayley_graph(q: int) -> Graph:
    """Cayley graph on the Hermitian matrices with connection set ``rank_one_set(q)``."""
    F = hermitian_field(q)
    q2 = q * q
    n = q2 * q2
    ground_pos = {g: i for i, g in enumerate(F.ground_indices)}
    add = np.array(F.add_table, dtype=np.intp)
    gadd = np.array(
        [[ground_pos[F.add_table[x][y]] for y in F.ground_indices] for x in F.ground_indices],
        dtype=np.intp,
    )

    idx = np.arange(n)
    v11, rest = np.divmod(idx, q * q2)
    v22, v12 = np.divmod(rest, q2)
    arr = np.zeros((n, n), dtype=np.uint8)
    for M in rank_one_set(q):
        s11 = ground_pos[M.m11.value]
        s22 = ground_pos[M.m22.value]
        s12 = M.m12.value
        target = (gadd[v11, s11] * q + gadd[v22, s22]) * q2 + add[v12, s12]
        arr[idx, target] = 1
    return Graph(arr)
