"""Parameter algebra for strongly regular graphs indexed by (a, c, e).

A strongly regular graph SR(n, k, a, c) with integral eigenvalues is fixed
by three numbers: ``a`` (common neighbours of an adjacent pair), ``c``
(common neighbours of a non-adjacent pair) and ``e``, the positive
restricted eigenvalue.  Everything else follows::

    k  = (e+1)c + e(e-a)          s  = c + 2e - a
    l  = k(k-a-1)/c               n  = 1 + k + l
    lambda2 = a - c - e

This module derives those quantities, evaluates the Krein and integrality
conditions, and enumerates feasible parameter sets.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .errors import DomainError, NotInScope

__all__ = [
    "ParamTriple",
    "DerivedParams",
    "Status",
    "FeasibilityVerdict",
    "derive",
    "krein_eval",
    "krein_c_max",
    "divisibility_ok",
    "special_divisibility",
    "feasibility",
    "feasible_c_list",
    "n_of_c",
    "n_bounds",
    "scan",
    "complement_params",
    "algebraic_family",
    "triple_from_srg",
    "to_record",
    "RECORD_FIELDS",
]


@dataclass(frozen=True, order=True)
class ParamTriple:
    a: int
    c: int
    e: int

    def __post_init__(self):
        for name in ("a", "c", "e"):
            if not isinstance(getattr(self, name), int):
                raise TypeError(f"{name} must be an int")
        if self.a < 0 or self.c < 1 or self.e < 1:
            raise DomainError(f"need a >= 0, c >= 1, e >= 1; got {self}")


def _as_triple(t, c=None, e=None) -> ParamTriple:
    if isinstance(t, ParamTriple):
        return t
    if c is None:
        t, c, e = t
    return ParamTriple(int(t), int(c), int(e))


def _exact(x: Fraction):
    return x.numerator if x.denominator == 1 else x


@dataclass(frozen=True)
class DerivedParams:
    """Every quantity determined by a parameter triple.

    ``l``, ``n``, ``m1`` and ``m2`` are exact rationals (an ``int`` when
    integral); they are ``None`` only for ``m1``/``m2`` when ``s == 0``.
    ``c_prime`` is ``D // c`` when ``c`` divides ``D``.
    """

    a: int
    c: int
    e: int
    k: int
    l: object
    n: object
    s: int
    lambda2: int
    m1: object
    m2: object
    K1: int
    K2: int
    D: int
    E: int
    F: int
    G: int
    H: int
    P: int
    Q: int
    c_prime: int | None

    @property
    def triple(self) -> ParamTriple:
        return ParamTriple(self.a, self.c, self.e)

    @property
    def integral(self) -> bool:
        return all(isinstance(x, int) for x in (self.l, self.m1, self.m2))


def _coefficients(a: int, e: int):
    D = e * (e + 1) * (e - a) * (e - a - 1)
    E = (e + 1) ** 2 * (a * e + 3 * e - a)
    F = (e + 1) * (e * e + 2 * e - a) * (e * e + 3 * e - a)
    G = (e + 1) * (e + 2)
    H = 2 * e**3 + (3 - 2 * a) * e**2 - (1 + 4 * a) * e - a
    P = (e + 1) * (e - a) * (e * e - e + a)
    Q = e**3 + (2 * a + 1) * e + a
    return D, E, F, G, H, P, Q


def _krein_pair(k: int, r: int, s: int) -> tuple[int, int]:
    # r, s are the restricted eigenvalues lambda1, lambda2
    K1 = (k + r) * (s + 1) ** 2 - (r + 1) * (k + r + 2 * r * s)
    K2 = (k + s) * (r + 1) ** 2 - (s + 1) * (k + s + 2 * r * s)
    return K1, K2


def derive(t, c=None, e=None) -> DerivedParams:
    """Compute every derived parameter of a triple exactly.

    Accepts a :class:`ParamTriple`, an ``(a, c, e)`` tuple, or three ints.

    >>> d = derive(0, 1, 1)
    >>> (d.k, d.l, d.n, d.m1, d.m2)
    (3, 6, 10, 5, 4)
    """
    t = _as_triple(t, c, e)
    a, c, e = t.a, t.c, t.e
    k = (e + 1) * c + e * (e - a)
    s = c + 2 * e - a
    lam2 = a - c - e
    l = Fraction(k * (k - a - 1), c)
    n = 1 + k + l
    D, E, F, G, H, P, Q = _coefficients(a, e)

    if s != 0:
        m1 = Fraction(k, 2 * c * s) * ((k + c - a - 1) * (s + c - a) - 2 * c)
        m2 = Fraction(k, 2 * c * s) * ((k + c - a - 1) * (s - c + a) + 2 * c)
        m2_reduced = Fraction(k * (k - e) * (e + 1), c * s)
        assert m2 == m2_reduced, (t, m2, m2_reduced)
        m1, m2 = _exact(m1), _exact(m2)
    else:
        m1 = m2 = None

    K1, K2 = _krein_pair(k, e, lam2)
    assert K2 == P + Q * c - e * c * c, t

    return DerivedParams(
        a=a, c=c, e=e, k=k, l=_exact(l), n=_exact(n), s=s, lambda2=lam2,
        m1=m1, m2=m2, K1=K1, K2=K2, D=D, E=E, F=F, G=G, H=H, P=P, Q=Q,
        c_prime=D // c if D % c == 0 else None,
    )


def krein_eval(t, c=None, e=None) -> tuple[int, int]:
    """Return the Krein values ``(K1, K2)`` of a triple."""
    t = _as_triple(t, c, e)
    a, c, e = t.a, t.c, t.e
    k = (e + 1) * c + e * (e - a)
    K1, K2 = _krein_pair(k, e, a - c - e)
    _, _, _, _, _, P, Q = _coefficients(a, e)
    assert K2 == P + Q * c - e * c * c
    return K1, K2


def krein_c_max(a: int, e: int) -> int:
    """Upper bound on ``c`` implied by ``K2 >= 0``."""
    if a < 0 or e < 1:
        raise DomainError("need a >= 0 and e >= 1")
    return e * e + e + (3 * a if e <= 2 else 2 * a)


def divisibility_ok(t, c=None, e=None) -> bool:
    """True iff ``c | D`` and ``(c + 2e - a) | F`` (``D = 0`` always passes)."""
    t = _as_triple(t, c, e)
    a, c, e = t.a, t.c, t.e
    D, _, F, *_ = _coefficients(a, e)
    s = c + 2 * e - a
    if D % c:
        return False
    if s == 0:
        return F == 0
    return F % s == 0


def special_divisibility(t, c=None, e=None) -> bool:
    """Single divisibility test for the cases ``a = e`` and ``a = e - 1``."""
    t = _as_triple(t, c, e)
    a, c, e = t.a, t.c, t.e
    if a == e:
        return (e * e * (e + 1) ** 2 * (e + 2)) % (c + e) == 0
    if a == e - 1:
        return ((e + 1) ** 3 * (e * e + e + 1)) % (c + e + 1) == 0
    raise DomainError(f"special divisibility needs a = e or a = e - 1, got {t}")


class Status(enum.Enum):
    FEASIBLE = "Feasible"
    FAIL_BASIC = "FailBasic"
    FAIL_KREIN = "FailKrein"
    FAIL_INTEGRALITY = "FailIntegrality"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class FeasibilityVerdict:
    status: Status
    detail: str = ""
    value: object = None

    @property
    def ok(self) -> bool:
        return self.status is Status.FEASIBLE


def _basic_failure(d: DerivedParams):
    if d.k < 3:
        return "k < 3", d.k
    if d.k <= d.c:
        return "k <= c", d.k
    if d.lambda2 >= 0:
        return "lambda2 >= 0", d.lambda2
    if d.l < 1:
        return "l < 1", d.l
    if d.m1 is None or d.m1 < 1:
        return "m1 < 1", d.m1
    if d.m2 < 1:
        return "m2 < 1", d.m2
    return None


def feasibility(t, c=None, e=None) -> tuple[FeasibilityVerdict, DerivedParams]:
    """Classify a triple as Feasible or by the first condition it fails.

    Checks run in the order basic constraints, Krein, integrality.  The
    divisibility test is consulted as a quick filter, but integrality of
    ``l``, ``m1`` and ``m2`` decides.
    """
    d = derive(t, c, e)
    failed = _basic_failure(d)
    if failed:
        return FeasibilityVerdict(Status.FAIL_BASIC, *failed), d
    if d.K1 < 0:
        return FeasibilityVerdict(Status.FAIL_KREIN, "K1 < 0", d.K1), d
    if d.K2 < 0:
        return FeasibilityVerdict(Status.FAIL_KREIN, "K2 < 0", d.K2), d

    divisible = divisibility_ok(d.triple)
    if d.integral:
        assert divisible, f"divisibility necessary but failed at {d.triple}"
        return FeasibilityVerdict(Status.FEASIBLE), d
    if not divisible:
        return FeasibilityVerdict(Status.FAIL_INTEGRALITY, "c | D and (c+2e-a) | F fail"), d
    for name in ("l", "m1", "m2"):
        v = getattr(d, name)
        if not isinstance(v, int):
            return FeasibilityVerdict(Status.FAIL_INTEGRALITY, f"{name} not integral", v), d
    raise AssertionError("unreachable")


def feasible_c_list(a: int, e: int) -> list[tuple[int, DerivedParams]]:
    """All ``c`` up to the Krein bound giving a Feasible triple, ascending."""
    out = []
    for c in range(1, krein_c_max(a, e) + 1):
        verdict, d = feasibility(a, c, e)
        if verdict.ok:
            out.append((c, d))
    return out


def n_of_c(a: int, e: int, c: int):
    """Vertex count written as ``G c + H + D / c``."""
    if c < 1:
        raise DomainError("c must be positive")
    D, _, _, G, H, _, _ = _coefficients(a, e)
    return _exact(G * c + H + Fraction(D, c))


def n_bounds(a: int, e: int) -> tuple[int, int]:
    """Return ``(n_min, n_max)``.

    ``n_min`` is the real minimum ``H + 2 sqrt(DG)`` of ``n(c)`` rounded up,
    computed with integer square roots; ``n_max = (e^2 + 3e - a)^2``.
    """
    if a < 0 or e < 1:
        raise DomainError("need a >= 0 and e >= 1")
    D, _, _, G, H, _, _ = _coefficients(a, e)
    # 2 sqrt(DG) = sqrt(4DG); ceiling via exact integer root
    r = isqrt(4 * D * G)
    if r * r < 4 * D * G:
        r += 1
    return H + r, (e * e + 3 * e - a) ** 2


def complement_params(t, c=None, e=None) -> ParamTriple:
    """Triple of the complementary graph: ``(n-2-2k+c, n-2k+a, c+e-a-1)``."""
    verdict, d = feasibility(t, c, e)
    if not verdict.ok:
        raise DomainError(f"{d.triple} is not feasible: {verdict.detail}")
    n, k = d.n, d.k
    a2, c2, e2 = n - 2 - 2 * k + d.c, n - 2 * k + d.a, d.c + d.e - d.a - 1
    k2 = d.l
    if c2 < 1 or e2 < 1 or a2 < 0 or not k2 > c2 or k2 < 3:
        raise NotInScope(f"complement (a, c, e) = ({a2}, {c2}, {e2}), k = {k2} is out of range")
    out = ParamTriple(a2, c2, e2)
    assert derive(out).k == k2
    return out


def algebraic_family(a: int, e: int) -> DerivedParams:
    """Parameters with ``c = e(e+1)``, where ``n = (e^2 + 3e - a)^2``."""
    if not e > a >= 0:
        raise DomainError(f"need e > a >= 0, got a={a}, e={e}")
    d = derive(a, e * (e + 1), e)
    assert d.k == e * (e * e + 3 * e - a + 1)
    assert d.n == (e * e + 3 * e - a) ** 2
    return d


def triple_from_srg(n: int, k: int, a: int, c: int) -> ParamTriple:
    """Recover ``(a, c, e)`` from SR(n, k, a, c).

    Raises :class:`DomainError` for irrational (conference-type) spectra,
    where ``(a-c)^2 + 4(k-c)`` is not a perfect square.
    """
    disc = (a - c) ** 2 + 4 * (k - c)
    s = isqrt(disc) if disc >= 0 else -1
    if s < 0 or s * s != disc:
        raise DomainError(f"SR({n},{k},{a},{c}) has irrational eigenvalues")
    if (a - c + s) % 2:
        raise DomainError("eigenvalues are not integers")
    e = (a - c + s) // 2
    t = ParamTriple(a, c, e)
    d = derive(t)
    if d.k != k or d.n != n:
        raise DomainError(f"SR({n},{k},{a},{c}) is arithmetically inconsistent")
    return t


# -- scanning --------------------------------------------------------------


@lru_cache(maxsize=None)
def _factor(m: int) -> tuple[tuple[int, int], ...]:
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            out.append((p, k))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def _divisors(*parts: int) -> list[int]:
    exps: dict[int, int] = {}
    for m in parts:
        for p, k in _factor(m):
            exps[p] = exps.get(p, 0) + k
    divs = [1]
    for p, k in exps.items():
        divs = [d * p**i for d in divs for i in range(k + 1)]
    return divs


def _scan_e(e: int, max_n: int) -> list[DerivedParams]:
    # With u = c + e - a = -lambda2, l = (e+1)(u-1) + e(e+1)u(u-1)/c, so
    # integral l forces c | e(e+1)u(u-1); u = 1 gives l = 0.
    found = []
    u = 2
    while 2 + e * u + (e + 1) * (u - 1) <= max_n:
        base = 1 + e * u + (e + 1) * (u - 1)
        W = e * (e + 1) * u * (u - 1)
        for c in _divisors(e, e + 1, u, u - 1):
            a = c + e - u
            if a < 0 or base + c + W // c > max_n:
                continue
            if c > krein_c_max(a, e):
                continue
            k = c + e * u
            s = c + 2 * e - a
            if k < 3 or (k * (k - e) * (e + 1)) % (c * s):
                continue
            verdict, d = feasibility(a, c, e)
            if verdict.ok:
                found.append(d)
        u += 1
    return found


def _sort_key(d: DerivedParams):
    return (d.n, d.k, d.c, d.a)


def scan(max_n: int, jobs: int = 1) -> list[DerivedParams]:
    """Every Feasible triple with ``n <= max_n``, sorted by ``(n, k, c, a)``.

    Candidates are generated from the divisors of ``e(e+1)u(u-1)`` (with
    ``u = -lambda2``) and each is confirmed by :func:`feasibility`.  With
    ``jobs > 1`` the ``e`` range is split across processes; the output is
    identical either way.
    """
    if max_n < 5:
        raise DomainError("max_n must be at least 5")
    es = []
    e = 1
    while 2 + 2 * e + (e + 1) <= max_n:
        es.append(e)
        e += 1
    results: list[DerivedParams] = []
    if jobs > 1 and len(es) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_scan_e, es, [max_n] * len(es)):
                results.extend(part)
    else:
        for e in es:
            results.extend(_scan_e(e, max_n))
    results.sort(key=_sort_key)
    return results


# -- serialization -----------------------------------------------------------

RECORD_FIELDS = ("a", "c", "e", "k", "l", "n", "s", "lambda2", "m1", "m2", "K1", "K2", "status")


def to_record(d: DerivedParams, status=Status.FEASIBLE) -> dict[str, str]:
    """Flat record with every value as a decimal string."""
    rec = {f: str(getattr(d, f)) for f in RECORD_FIELDS[:-1]}
    rec["status"] = str(status)
    return rec
