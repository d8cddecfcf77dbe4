import pytest

from srgkit import graphs, params
from srgkit.errors import DomainError
from srgkit.finitefield import conj
from srgkit.hermitian import (
    HermMatrix, all_hermitian, cayley_graph, hermitian_field, rank_one_set, vertex_index)

QS = [2, 3, 4]


def expected(q):
    return (q**4, (q - 1) * (q * q + 1), q - 2, q * (q - 1))


@pytest.fixture(scope="module", params=QS)
def q_graph(request):
    q = request.param
    return q, cayley_graph(q)


class TestMatrices:
    @pytest.mark.parametrize("q", QS + [5])
    def test_count_and_order(self, q):
        H = all_hermitian(q)
        assert len(H) == q**4
        assert [vertex_index(M) for M in H] == list(range(q**4))

    @pytest.mark.parametrize("q,size", [(2, 5), (3, 20), (4, 51), (5, 104)])
    def test_rank_one_set(self, q, size):
        S = rank_one_set(q)
        assert len(S) == size
        keys = {vertex_index(M) for M in S}
        assert all(vertex_index(-M) in keys for M in S)
        assert 0 not in keys

    def test_diagonal_must_be_ground(self):
        F = hermitian_field(2)
        w = F.generator
        with pytest.raises(DomainError):
            HermMatrix(w, F.zero, F.zero)

    def test_determinant(self):
        F = hermitian_field(3)
        for M in all_hermitian(3)[:200]:
            d = M.m11 * M.m22 - M.m12 * M.m21
            assert d == M.det() and conj(d) == d

    def test_q_range(self):
        with pytest.raises(DomainError):
            hermitian_field(7)

    def test_s_is_union_of_scaled_lines(self):
        q = 3
        F = hermitian_field(q)
        ground = [F.elem(i) for i in F.ground_indices if i]
        S = rank_one_set(q)
        lines = {frozenset(vertex_index(M.scale(x)) for x in ground) for M in S}
        assert len(lines) == q * q + 1 and all(len(L) == q - 1 for L in lines)


class TestGraph:
    def test_certificate(self, q_graph):
        q, G = q_graph
        cert = graphs.verify_srg(G)
        assert cert is not None and cert.params == expected(q)

    def test_neighbourhood_of_zero_is_s(self, q_graph):
        q, G = q_graph
        assert set(G.neighbors(0)) == {vertex_index(M) for M in rank_one_set(q)}
        assert graphs.local_cliques(G, 0) == [q - 1] * (q * q + 1)

    def test_local_cliques_uniform(self, q_graph):
        q, G = q_graph
        want = [q - 1] * (q * q + 1)
        assert all(graphs.local_cliques(G, v) == want for v in range(G.n))

    def test_eigenvalue_is_q_minus_one(self, q_graph):
        q, G = q_graph
        cert = graphs.verify_srg(G)
        t = params.triple_from_srg(*cert.params)
        assert t.e == q - 1
        d = params.derive(t)
        assert (d.n, d.k) == (cert.n, cert.k)

    def test_adjacency_is_difference_rule(self):
        q = 2
        G = cayley_graph(q)
        H = all_hermitian(q)
        for i, X in enumerate(H):
            for j, Y in enumerate(H):
                D = X - Y
                assert G.has_edge(i, j) == (not D.is_zero() and not D.det())

    def test_deterministic(self):
        assert graphs.encode_graph6(cayley_graph(3)) == graphs.encode_graph6(cayley_graph(3))


@pytest.mark.slow
def test_q5_extended():
    G = cayley_graph(5)
    assert graphs.verify_srg(G).params == expected(5)
    assert all(graphs.local_cliques(G, v) == [4] * 26 for v in range(0, G.n, 25))
