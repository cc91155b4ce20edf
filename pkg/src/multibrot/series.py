"""Formal expansions at infinity of iterated parameter polynomials.

Polynomials are dense integer coefficient tuples, index = degree.  The
central object is the expansion of Q(z)^(m/D) at infinity for a monic
degree-D polynomial Q: factoring Q(z) = z^D * (1 + u(1/z)) removes the
fractional power from the data model, leaving an ordinary truncated
series in w = 1/z with exact rational coefficients.

Truncated tails never read past their window: ``coefficient_at`` raises
``SeriesWindowError`` instead of silently returning a truncated-away
term.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import rational, ONE, ZERO


class SeriesWindowError(ValueError):
    """Requested a coefficient outside a truncated series' window."""


def poly_mul(a, b):
    """Schoolbook product of dense coefficient sequences."""
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return tuple(out)


def poly_eval(coeffs, x):
    """Evaluate a dense polynomial at x (Horner)."""
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def iterate_parameter_polynomial(d: int, n: int) -> tuple[int, ...]:
    """n-th iterate of z -> z^d + c with the parameter tied to c = z.

    Q_1(z) = z^d + z and Q_{k+1}(z) = Q_k(z)^d + z; the result is monic
    of degree d^n with zero constant term and z-coefficient 1.
    """
    if d < 2:
        raise ValueError("degree d must be >= 2")
    if n < 1:
        raise ValueError("iteration order n must be >= 1 (m = 0 has no series form)")
    q = [0] * (d + 1)
    q[1] = 1
    q[d] = 1
    q = tuple(q)
    for _ in range(n - 1):
        p = q
        for _ in range(d - 1):
            p = poly_mul(p, q)
        p = list(p)
        p[1] += 1
        q = tuple(p)
    return q


@dataclass(frozen=True)
class TailSeries:
    """Truncation of z^leading_power * sum(tail[k] * z^-k, k = 0..order).

    tail[0] is 1 for every series produced by ``rational_power_tail``.
    """

    leading_power: int
    tail: tuple
    truncation_order: int

    def __post_init__(self):
        if len(self.tail) != self.truncation_order + 1:
            raise ValueError("tail length must be truncation_order + 1")

    def coefficient_at(self, power: int):
        """Coefficient of z^power; errors outside the retained window."""
        k = self.leading_power - power
        if k < 0 or k > self.truncation_order:
            raise SeriesWindowError(
                f"z^{power} is outside the window "
                f"[z^{self.leading_power - self.truncation_order}, z^{self.leading_power}]"
            )
        return self.tail[k]

    def __mul__(self, other):
        if not isinstance(other, TailSeries):
            return NotImplemented
        order = min(self.truncation_order, other.truncation_order)
        prod = [ZERO] * (order + 1)
        for i, a in enumerate(self.tail[: order + 1]):
            if a:
                for j, b in enumerate(other.tail[: order + 1 - i]):
                    if b:
                        prod[i + j] += a * b
        return TailSeries(
            leading_power=self.leading_power + other.leading_power,
            tail=tuple(prod),
            truncation_order=order,
        )


def rational_power_tail(q_coeffs, exponent, order: int) -> TailSeries:
    """Expand Q(z)^exponent at infinity, truncated after ``order`` tail terms.

    Q must be monic of some degree D and exponent * D must be an integer
    m (the leading power of the result).  Writing Q(z) = z^D (1 + u) with
    u a polynomial in w = 1/z vanishing at w = 0, the tail is the
    binomial series (1 + u)^exponent mod w^(order+1), computed by the
    first-order recurrence obtained from f' (1+u) = exponent * u' f:

        (k+1) f_{k+1} = sum_i (exponent*i - (k+1-i)) u_i f_{k+1-i}

    which evaluates the same finite sum of generalized binomial terms as
    expanding the powers u^j directly, one coefficient at a time.
    """
    if order < 0:
        raise ValueError("truncation order must be >= 0")
    degree = len(q_coeffs) - 1
    while degree > 0 and q_coeffs[degree] == 0:
        degree -= 1
    if degree < 1 or q_coeffs[degree] != 1:
        raise ValueError("Q must be monic of degree >= 1")
    alpha = rational(exponent)
    lead = alpha * degree
    if lead.denominator != 1:
        raise ValueError(
            f"exponent {alpha} times degree {degree} must be an integer leading power"
        )
    lead = int(lead)

    # u_i is the coefficient of z^(D-i), i.e. of w^i after factoring z^D.
    window = min(degree, order)
    u = [0] * (window + 1)
    for i in range(1, window + 1):
        u[i] = q_coeffs[degree - i]
    support = [i for i in range(1, window + 1) if u[i]]

    f = [ZERO] * (order + 1)
    f[0] = ONE
    for k in range(order):
        acc = ZERO
        for i in support:
            if i > k + 1:
                break
            acc += (alpha * i - (k + 1 - i)) * u[i] * f[k + 1 - i]
        f[k + 1] = acc / (k + 1)
    return TailSeries(leading_power=lead, tail=tuple(f), truncation_order=order)
