"""Small finite fields GF(p^k) and quadratic extensions with conjugation.

Elements are coefficient vectors over GF(p) modulo a fixed monic
irreducible polynomial.  Internally each element is also identified with
an integer index ``sum(coeff[i] * p**i)``, which is the enumeration order
used everywhere else (vertex numbering of Cayley graphs, for instance).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

from .errors import DomainError

__all__ = [
    "FieldSpec",
    "FieldElem",
    "make_field",
    "make_quadratic_extension",
    "prime_power",
    "is_irreducible",
    "conj",
    "norm",
]

MAX_ORDER = 64


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``q = p**k``; raise DomainError otherwise."""
    if q < 2:
        raise DomainError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, m = 0, q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise DomainError(f"{q} is not a prime power")
    return p, k


# -- polynomials over GF(p) as coefficient tuples, lowest degree first ----------


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a, m, p):
    a = _trim(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        f = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - f * mi) % p
        a = _trim(a)
    return a


def _polymul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def is_irreducible(poly, p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    poly = _trim(x % p for x in poly)
    d = len(poly) - 1
    if d < 1:
        return False
    for deg in range(1, d // 2 + 1):
        for low in product(range(p), repeat=deg):
            if not _polymod(poly, list(low) + [1], p):
                return False
    return True


def _smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    # lexicographic on (x^k coeff, x^(k-1) coeff, ..., constant)
    for high_to_low in product(range(p), repeat=k):
        poly = tuple(reversed(high_to_low)) + (1,)
        if is_irreducible(poly, p):
            return poly
    raise AssertionError("no irreducible polynomial found")


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """GF(p^k) with a fixed modulus (coefficients lowest degree first).

    For a quadratic extension built by :func:`make_quadratic_extension`,
    ``ground_order`` is the order q of the subfield fixed by ``x -> x^q``.
    """

    p: int
    k: int
    modulus: tuple[int, ...]
    ground_order: int | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if len(self.modulus) != self.k + 1 or self.modulus[-1] != 1:
            raise DomainError("modulus must be monic of degree k")
        if not is_irreducible(self.modulus, self.p):
            raise DomainError(f"modulus {self.modulus} is reducible over GF({self.p})")

    @property
    def q(self) -> int:
        return self.p ** self.k

    @property
    def order(self) -> int:
        return self.q

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.k, self.modulus) == (
            other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"GF({self.q}; modulus={self.modulus})"

    # -- index <-> coefficients --------------------------------------------

    def coeffs(self, index: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            index, r = divmod(index, self.p)
            out.append(r)
        return tuple(out)

    def index(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.k:
            coeffs = _polymod(coeffs, self.modulus, self.p)
        idx = 0
        for c in reversed(coeffs):
            idx = idx * self.p + c % self.p
        return idx

    # -- tables ----------------------------------------------------------

    @cached_property
    def add_table(self) -> tuple[tuple[int, ...], ...]:
        q, p = self.q, self.p
        cs = [self.coeffs(i) for i in range(q)]
        return tuple(
            tuple(self.index((x + y) % p for x, y in zip(cs[i], cs[j])) for j in range(q))
            for i in range(q)
        )

    @cached_property
    def neg_table(self) -> tuple[int, ...]:
        return tuple(self.index((-x) % self.p for x in self.coeffs(i)) for i in range(self.q))

    @cached_property
    def mul_table(self) -> tuple[tuple[int, ...], ...]:
        q, p, m = self.q, self.p, self.modulus
        cs = [list(self.coeffs(i)) for i in range(q)]
        return tuple(
            tuple(self.index(_polymod(_polymul(cs[i], cs[j], p), m, p)) for j in range(q))
            for i in range(q)
        )

    @cached_property
    def inv_table(self) -> tuple[int | None, ...]:
        mul = self.mul_table
        inv = [None] * self.q
        for i in range(1, self.q):
            inv[i] = next(j for j in range(1, self.q) if mul[i][j] == 1)
        return tuple(inv)

    @cached_property
    def frobenius_table(self) -> tuple[int, ...]:
        """Index table of ``x -> x**ground_order`` (quadratic extensions only)."""
        if self.ground_order is None:
            raise DomainError(f"{self!r} is not a quadratic extension")
        return tuple(_pow_index(self, i, self.ground_order) for i in range(self.q))

    @cached_property
    def ground_indices(self) -> tuple[int, ...]:
        """Indices of the subfield GF(ground_order), in embedding order."""
        if self.ground_order is None:
            raise DomainError(f"{self!r} is not a quadratic extension")
        return self._cache["embedding"]

    # -- elements --------------------------------------------------------

    def __call__(self, value) -> FieldElem:
        if isinstance(value, FieldElem):
            if value.spec != self:
                raise DomainError("element belongs to a different field")
            return value
        if isinstance(value, int):
            # integers map through the prime subfield
            return FieldElem(self, self.index([value % self.p]))
        return FieldElem(self, self.index(value))

    def elem(self, index: int) -> FieldElem:
        if not 0 <= index < self.q:
            raise IndexError(index)
        return FieldElem(self, index)

    def elements(self) -> list[FieldElem]:
        return [FieldElem(self, i) for i in range(self.q)]

    @property
    def zero(self) -> FieldElem:
        return FieldElem(self, 0)

    @property
    def one(self) -> FieldElem:
        return FieldElem(self, 1)

    @property
    def generator(self) -> FieldElem:
        """The residue class of ``x`` (reduced, so a constant when k == 1)."""
        return FieldElem(self, self.index([0, 1]))

    def embed(self, small_index: int) -> FieldElem:
        """Image of element ``small_index`` of GF(ground_order) in this field."""
        return FieldElem(self, self.ground_indices[small_index])


def _pow_index(spec: FieldSpec, i: int, n: int) -> int:
    mul = spec.mul_table
    result, base = 1, i
    while n:
        if n & 1:
            result = mul[result][base]
        base = mul[base][base]
        n >>= 1
    return result


@dataclass(frozen=True)
class FieldElem:
    spec: FieldSpec
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.coeffs(self.value)

    def _other(self, y):
        if isinstance(y, int):
            return self.spec(y)
        if not isinstance(y, FieldElem) or y.spec != self.spec:
            raise DomainError("operands belong to different fields")
        return y

    def __add__(self, y):
        y = self._other(y)
        return FieldElem(self.spec, self.spec.add_table[self.value][y.value])

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.spec, self.spec.neg_table[self.value])

    def __sub__(self, y):
        return self + (-self._other(y))

    def __rsub__(self, y):
        return self._other(y) - self

    def __mul__(self, y):
        y = self._other(y)
        return FieldElem(self.spec, self.spec.mul_table[self.value][y.value])

    __rmul__ = __mul__

    def inv(self) -> FieldElem:
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return FieldElem(self.spec, self.spec.inv_table[self.value])

    def __truediv__(self, y):
        return self * self._other(y).inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        if n == 0:
            return self.spec.one
        return FieldElem(self.spec, _pow_index(self.spec, self.value, n))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        terms = [
            (f"{c}" if i == 0 else ("" if c == 1 else f"{c}") + ("x" if i == 1 else f"x^{i}"))
            for i, c in enumerate(self.coeffs) if c
        ]
        return " + ".join(reversed(terms)) or "0"


def make_field(q: int) -> FieldSpec:
    """GF(q) with the lexicographically smallest monic irreducible modulus."""
    p, k = prime_power(q)
    if q > MAX_ORDER:
        raise DomainError(f"field order {q} exceeds {MAX_ORDER}")
    return FieldSpec(p, k, _smallest_irreducible(p, k))


def make_quadratic_extension(q: int) -> FieldSpec:
    """GF(q^2) together with an explicit embedding of GF(q).

    The embedding sends the generator of ``make_field(q)`` to a root of that
    field's modulus, found by exhaustive search.
    """
    small = make_field(q)
    big0 = make_field(q * q)
    big = FieldSpec(big0.p, big0.k, big0.modulus, ground_order=q)
    # images of the small field's basis 1, x, x^2, ...
    root = next(r for r in range(big.q) if _eval_poly(big, small.modulus, r) == 0)
    powers = [1]
    for _ in range(1, small.k):
        powers.append(big.mul_table[powers[-1]][root])
    emb = []
    for i in range(small.q):
        acc = 0
        for c, pw in zip(small.coeffs(i), powers):
            acc = big.add_table[acc][_scalar(big, c, pw)]
        emb.append(acc)
    fixed = {i for i in range(big.q) if _pow_index(big, i, q) == i}
    assert set(emb) == fixed and len(fixed) == q
    big._cache["embedding"] = tuple(emb)
    big._cache["small"] = small
    return big


def _scalar(spec: FieldSpec, c: int, i: int) -> int:
    return spec.mul_table[spec.index([c])][i]


def _eval_poly(spec: FieldSpec, poly, x: int) -> int:
    acc = 0
    for coef in reversed(poly):
        acc = spec.add_table[spec.mul_table[acc][x]][spec.index([coef])]
    return acc


def conj(x: FieldElem) -> FieldElem:
    """Frobenius conjugate ``x**q`` in GF(q^2)."""
    return FieldElem(x.spec, x.spec.frobenius_table[x.value])


def norm(x: FieldElem) -> FieldElem:
    """``x * conj(x)``, an element of the ground field GF(q)."""
    return x * conj(x)
