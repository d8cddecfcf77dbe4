from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import leibniz_det, matmul
from srgkit import graphs
from srgkit.errors import Singular
from srgkit.exactmat import BitMatrix, ExactMatrix, cofactor_det, det, gram, inverse, psd_check

I = ExactMatrix.identity
J = ExactMatrix.ones


def square_ints(max_n=5, lo=-4, hi=4):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)
    )


def bit_matrices(max_rows=6, max_cols=8):
    return st.tuples(st.integers(1, max_rows), st.integers(1, max_cols)).flatmap(
        lambda rc: st.lists(st.lists(st.integers(0, 1), min_size=rc[1], max_size=rc[1]),
                            min_size=rc[0], max_size=rc[0])
    )


C5 = ExactMatrix(graphs.cycle(5).adjacency().tolist())


class TestDet:
    def test_identity(self):
        assert det(I(5)) == 1

    def test_shifted_five_cycle(self):
        M = I(5) - C5
        assert det(M) == -1 == leibniz_det(M.tolist())

    def test_rank_one(self):
        assert det(J(3)) == 0

    def test_rational_entries(self):
        M = ExactMatrix([[Fraction(1, 2), 1], [3, Fraction(2, 3)]])
        assert det(M) == Fraction(1, 3) - 3

    def test_non_square(self):
        with pytest.raises(ValueError):
            det(ExactMatrix([[1, 2, 3]]))

    @given(square_ints(max_n=6, lo=-3, hi=3))
    def test_matches_leibniz(self, rows):
        assert det(ExactMatrix(rows)) == leibniz_det(rows)
        assert cofactor_det(ExactMatrix(rows)) == leibniz_det(rows)

    @given(st.integers(1, 4).flatmap(lambda n: st.tuples(
        st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n),
        st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n))))
    def test_multiplicative(self, pair):
        M, N = (ExactMatrix(x) for x in pair)
        assert det(M @ N) == det(M) * det(N)

    def test_large_entries_stay_exact(self):
        big = 10**30
        M = ExactMatrix([[big, 1], [1, big]])
        assert det(M) == big * big - 1


class TestInverse:
    def test_five_cycle(self):
        assert inverse(I(5) - C5) == C5 + I(5) * 2 - J(5)

    def test_scalar(self):
        assert inverse(I(2) * 2) == I(2) * Fraction(1, 2)

    def test_k33_shift_invertible(self):
        A = ExactMatrix(graphs.complete_bipartite(3).adjacency().tolist())
        M = I(6) - A
        assert det(M) != 0
        assert M @ inverse(M) == I(6)

    def test_singular(self):
        with pytest.raises(Singular):
            inverse(J(3))

    @given(square_ints(max_n=5))
    def test_inverse_is_exact(self, rows):
        M = ExactMatrix(rows)
        if leibniz_det(rows) == 0:
            with pytest.raises(Singular):
                inverse(M)
        else:
            n = M.shape[0]
            assert M @ inverse(M) == I(n)
            assert inverse(M) @ M == I(n)


class TestGramAndPsd:
    def test_identity_gram(self):
        assert gram(BitMatrix.from_exact(I(5))) == I(5)

    def test_zero(self):
        assert gram(BitMatrix.zeros(3, 4)) == ExactMatrix.zeros(3)

    def test_rook_factor(self):
        B = BitMatrix.from_strings(
            ["100100100", "010010010", "001001001", "111000000", "000111000", "000000111"])
        R = ExactMatrix.block([[I(3) * 3, J(3)], [J(3), I(3) * 3]])
        assert gram(B) == R
        assert psd_check(R)

    def test_psd_examples(self):
        assert psd_check(I(5))
        assert not psd_check(ExactMatrix([[2, 2], [2, 1]]))
        assert psd_check(ExactMatrix([[1, 1], [1, 1]]))
        assert not psd_check(ExactMatrix([[0, 1], [1, 0]]))
        assert not psd_check(ExactMatrix([[0, 0], [0, -1]]))

    def test_psd_requires_symmetry(self):
        with pytest.raises(ValueError):
            psd_check(ExactMatrix([[1, 2], [0, 1]]))

    @given(bit_matrices())
    def test_gram_properties(self, rows):
        B = BitMatrix(np.array(rows, dtype=np.uint8))
        G = gram(B)
        assert G.is_symmetric()
        assert G.tolist() == matmul(rows, [list(c) for c in zip(*rows)])
        assert [G[i, i] for i in range(len(rows))] == B.row_sums()
        assert psd_check(G)

    @given(square_ints(max_n=4, lo=-3, hi=3))
    def test_psd_matches_minors(self, rows):
        # M M^T is always PSD; M + M^T is PSD iff every principal minor is >= 0
        M = ExactMatrix(rows)
        assert psd_check(M @ M.T)
        S = M + M.T
        n = S.shape[0]
        minors_ok = all(
            leibniz_det([[S[i, j] for j in idx] for i in idx]) >= 0
            for mask in range(1, 1 << n)
            for idx in [[i for i in range(n) if mask >> i & 1]]
        )
        assert psd_check(S) == minors_ok


class TestValueSemantics:
    def test_operations_do_not_mutate(self):
        A = ExactMatrix([[1, 2], [3, 4]])
        before = A.tolist()
        _ = A + A, A @ A, A * 3, A.T, -A, inverse(A), det(A)
        assert A.tolist() == before

    def test_fraction_normalisation(self):
        A = ExactMatrix([[Fraction(4, 2)]])
        assert type(A[0, 0]) is int and A.is_integral()

    def test_bitmatrix_round_trip(self):
        rows = ["1010", "0111"]
        B = BitMatrix.from_strings(rows)
        assert B.to_strings() == rows
        assert BitMatrix.from_exact(B.to_exact()) == B
        with pytest.raises(ValueError):
            BitMatrix.from_exact(ExactMatrix([[2]]))

    def test_sort_columns(self):
        B = BitMatrix.from_strings(["0110", "1001"])
        assert B.sort_columns().to_strings() == ["1100", "0011"]

    def test_int64_fast_path_agrees(self):
        rng = np.random.default_rng(7)
        x = rng.integers(-1000, 1000, size=(12, 12))
        y = rng.integers(-1000, 1000, size=(12, 12))
        got = (ExactMatrix(x.tolist()) @ ExactMatrix(y.tolist())).tolist()
        assert got == matmul(x.tolist(), y.tolist())

    def test_overflow_path_is_exact(self):
        big = 2**40
        A = ExactMatrix([[big, big], [big, big]])
        assert (A @ A)[0, 0] == 2 * big * big
