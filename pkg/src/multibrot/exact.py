"""Exact arithmetic substrate: rationals, p-adic valuations, factorizations.

Every quantity in this package is an exact rational.  The canonical value
type is ``gmpy2.mpq`` when gmpy2 is installed (much faster on big
operands), with ``fractions.Fraction`` as a pure-Python fallback.  Both
keep values in lowest terms with a positive denominator, and they
interoperate (``==``, ``hash``, arithmetic), so callers may pass either.

Valuations take values in the integers extended by infinity:
``padic_valuation(0, p)`` is ``POS_INF``, and the negated valuation of a
zero coefficient downstream is ``NEG_INF``.  Infinities are distinct
singletons, not sentinel integers, so arithmetic with them is total and
unambiguous.
"""

from __future__ import annotations

import math
from typing import Union

try:
    from gmpy2 import mpq as _mpq

    def rational(numerator=0, denominator=1):
        """Exact rational in lowest terms (gmpy2 backend)."""
        return _mpq(numerator, denominator)

    GMP_BACKEND = True
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as _Fraction

    def rational(numerator=0, denominator=1):
        """Exact rational in lowest terms (fractions backend)."""
        return _Fraction(numerator, denominator)

    GMP_BACKEND = False


ZERO = rational(0)
ONE = rational(1)


class SignedInfinity:
    """One of the two infinite endpoints of the extended integers.

    Only the module-level instances ``POS_INF`` and ``NEG_INF`` exist.
    They compare against every int (and each other), negate into each
    other, and absorb finite addends.
    """

    __slots__ = ("_sign",)

    def __init__(self, sign: int):
        self._sign = sign

    def __repr__(self):
        return "+inf" if self._sign > 0 else "-inf"

    def __neg__(self):
        return NEG_INF if self._sign > 0 else POS_INF

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return hash(("SignedInfinity", self._sign))

    def __lt__(self, other):
        if self is other:
            return False
        return self._sign < 0

    def __le__(self, other):
        return self is other or self._sign < 0

    def __gt__(self, other):
        if self is other:
            return False
        return self._sign > 0

    def __ge__(self, other):
        return self is other or self._sign > 0

    def __add__(self, other):
        if isinstance(other, SignedInfinity) and other._sign != self._sign:
            raise ArithmeticError("opposite infinities cannot be added")
        return self

    __radd__ = __add__


POS_INF = SignedInfinity(+1)
NEG_INF = SignedInfinity(-1)

ExtendedInt = Union[int, SignedInfinity]


def is_prime(p: int) -> bool:
    """Deterministic primality by trial division up to sqrt(p)."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _require_prime(p):
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p must be a prime number, got {p!r}")


def padic_valuation(x, p: int) -> ExtendedInt:
    """p-adic valuation of a rational x: the exponent of p in x.

    Returns ``POS_INF`` for x = 0.  For x = p^v * r/q with p dividing
    neither r nor q, returns v (negative when p divides the denominator).

    >>> padic_valuation(18, 3)
    2
    >>> padic_valuation(rational(7, 25), 5)
    -2
    """
    _require_prime(p)
    if x == 0:
        return POS_INF
    if isinstance(x, int):
        num, den = x, 1
    else:
        num, den = int(x.numerator), int(x.denominator)
    v = 0
    num = abs(num)
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def factorial_valuation(m: int, p: int) -> int:
    """Exponent of the prime p in m!, by Legendre's formula.

    Computes sum(floor(m / p^l) for l >= 1); the sum is finite because
    terms vanish once p^l > m.
    """
    _require_prime(p)
    if m < 0:
        raise ValueError("m must be non-negative")
    total = 0
    q = p
    while q <= m:
        total += m // q
        q *= p
    return total


def factorize(d: int) -> list[tuple[int, int]]:
    """Prime factorization of d >= 2 as a sorted list of (prime, exponent).

    Trial division; degrees handled here are small.
    """
    if not isinstance(d, int) or d < 2:
        raise ValueError(f"d must be an integer >= 2, got {d!r}")
    factors = []
    rest = d
    f = 2
    while f * f <= rest:
        if rest % f == 0:
            t = 0
            while rest % f == 0:
                rest //= f
                t += 1
            factors.append((f, t))
        f += 1 if f == 2 else 2
    if rest > 1:
        factors.append((rest, 1))
    return factors


def binomial_general(a, j: int):
    """Generalized binomial coefficient a(a-1)...(a-j+1) / j! for rational a.

    Equals the ordinary binomial coefficient for integer a >= j, and 1
    for j = 0 regardless of a.
    """
    if j < 0:
        raise ValueError("j must be non-negative")
    result = ONE
    for i in range(j):
        result = result * (a - i) / (i + 1)
    return result


def floor_rational(x) -> int:
    """Exact floor of a rational (ints pass through)."""
    if isinstance(x, int):
        return x
    return math.floor(x)
