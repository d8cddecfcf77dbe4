from collections import Counter
from itertools import product

import pytest

from srgkit.errors import DomainError
from srgkit.finitefield import (
    FieldSpec, conj, is_irreducible, make_field, make_quadratic_extension, norm, prime_power)

ORDERS = [2, 3, 4, 5, 9, 16, 25]


def has_root(poly, p):
    return any(sum(c * x**i for i, c in enumerate(poly)) % p == 0 for x in range(p))


class TestConstruction:
    def test_f4(self):
        F = make_field(4)
        assert F.modulus == (1, 1, 1)
        w = F.generator
        assert w * w == w + 1

    def test_f9(self):
        F = make_field(9)
        assert F.modulus == (1, 0, 1)
        # nothing lexicographically smaller is irreducible: x^2, x^2+1 ... only x^2+1 survives
        smaller = [(c0, c1, 1) for c1, c0 in product(range(3), repeat=2) if (c1, c0) < (0, 1)]
        assert not any(is_irreducible(p, 3) for p in smaller)

    def test_prime_field(self):
        F = make_field(5)
        assert F.k == 1 and [int(x.value) for x in F.elements()] == list(range(5))

    @pytest.mark.parametrize("q", [1, 6, 10, 12, 100])
    def test_not_prime_power(self, q):
        with pytest.raises(DomainError):
            make_field(q)

    def test_size_cap(self):
        with pytest.raises(DomainError):
            make_field(81)

    def test_reducible_modulus_rejected(self):
        with pytest.raises(DomainError):
            FieldSpec(2, 2, (1, 0, 1))

    def test_prime_power(self):
        assert prime_power(64) == (2, 6) and prime_power(25) == (5, 2) and prime_power(7) == (7, 1)

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_irreducible_quadratics_have_no_roots(self, p):
        for c0, c1 in product(range(p), repeat=2):
            poly = (c0, c1, 1)
            assert is_irreducible(poly, p) == (not has_root(poly, p))


@pytest.mark.parametrize("q", ORDERS)
class TestAxioms:
    def test_additive_group(self, q):
        F = make_field(q)
        els = F.elements()
        for x in els:
            assert x + F.zero == x and x + (-x) == F.zero
            for y in els:
                assert x + y == y + x

    def test_multiplicative(self, q):
        F = make_field(q)
        els = F.elements()
        for x in els:
            assert x * F.one == x and x * F.zero == F.zero
            if x:
                assert x * x.inv() == F.one
                assert x ** (q - 1) == F.one
            for y in els:
                assert x * y == y * x
                if x and y:
                    assert x * y  # no zero divisors

    def test_associative_distributive(self, q):
        F = make_field(q)
        els = F.elements()
        for x, y, z in product(els, repeat=3):
            assert (x + y) + z == x + (y + z)
            assert (x * y) * z == x * (y * z)
            assert x * (y + z) == x * y + x * z

    def test_zero_inverse(self, q):
        F = make_field(q)
        with pytest.raises(ZeroDivisionError):
            F.zero.inv()
        with pytest.raises(ZeroDivisionError):
            F.one / F.zero

    def test_multiplicative_group_cyclic(self, q):
        F = make_field(q)
        orders = []
        for x in F.elements()[1:]:
            k = 1
            while x**k != F.one:
                k += 1
            orders.append(k)
        assert max(orders) == q - 1


@pytest.mark.parametrize("q", [2, 3, 4, 5])
class TestConjugation:
    def test_automorphism(self, q):
        F = make_quadratic_extension(q)
        els = F.elements()
        for x in els:
            assert conj(conj(x)) == x
            assert conj(x) == x ** q
            for y in els:
                assert conj(x + y) == conj(x) + conj(y)
                assert conj(x * y) == conj(x) * conj(y)

    def test_ground_field(self, q):
        F = make_quadratic_extension(q)
        fixed = [x for x in F.elements() if conj(x) == x]
        assert len(fixed) == q
        assert sorted(x.value for x in fixed) == sorted(F.ground_indices)
        # the embedding is a ring homomorphism from make_field(q)
        small = make_field(q)
        for i, j in product(range(q), repeat=2):
            s = small.elem(i) * small.elem(j)
            assert F.embed(i) * F.embed(j) == F.embed(s.value)
            s = small.elem(i) + small.elem(j)
            assert F.embed(i) + F.embed(j) == F.embed(s.value)

    def test_norm(self, q):
        F = make_quadratic_extension(q)
        ground = set(F.ground_indices)
        fibres = Counter()
        for x in F.elements():
            nx = norm(x)
            assert nx.value in ground
            fibres[nx.value] += 1
        assert fibres[0] == 1
        assert all(fibres[v] == q + 1 for v in ground if v)


def test_f4_conjugate():
    F = make_quadratic_extension(2)
    w = F.generator
    assert conj(w) == w * w == w + 1


def test_f9_norm_fibres():
    F = make_quadratic_extension(3)
    counts = Counter(norm(x).value for x in F.elements() if x)
    assert sorted(counts.values()) == [4, 4]


def test_conj_needs_quadratic_extension():
    with pytest.raises(DomainError):
        conj(make_field(9).generator)


def test_mixed_fields_rejected():
    with pytest.raises(DomainError):
        make_field(4).one + make_field(8).one
