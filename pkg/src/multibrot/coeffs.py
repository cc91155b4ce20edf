"""Laurent coefficients of the normalized exterior map of the Multibrot set.

The degree-d Multibrot set is the connectedness locus of z -> z^d + c;
the conformal map from the exterior of the closed unit disk onto its
complement expands as z + sum(b_m * z^-m, m >= 0).  Every b_m is a
d-adic rational, and this module computes it exactly by two independent
routes:

* ``coefficient_by_residue``: the residue at infinity of the n-th
  iterate of z^d + c, specialized at c = z and raised to the power
  m / d^n, divided by -m.  Purely formal series arithmetic, no
  quadrature.
* ``coefficient_by_partition_sum``: a finite sum of products of
  generalized binomial coefficients over weighted partitions of m + 1,
  obtained by unrolling the iteration one composition step at a time.

Agreement of the two routes on every input is a tested invariant, as is
independence of the choice of admissible iteration order n.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import ONE, ZERO, binomial_general, rational
from .series import iterate_parameter_polynomial, rational_power_tail

METHOD_RESIDUE = "residue"
METHOD_COMBINATORIAL = "combinatorial"
METHOD_SPECIAL = "special-case"


@dataclass(frozen=True)
class CoeffRecord:
    """One computed coefficient with provenance.

    ``n_used`` is the iteration order behind the value (0 for the
    hardcoded m = 0 constants and shortcut zeros).
    """

    d: int
    m: int
    value: object
    method: str
    n_used: int


_poly_cache: dict[tuple[int, int], tuple[int, ...]] = {}


def _iterated_polynomial(d, n):
    key = (d, n)
    poly = _poly_cache.get(key)
    if poly is None:
        poly = _poly_cache[key] = iterate_parameter_polynomial(d, n)
    return poly


def choose_n(d: int, m: int) -> int:
    """Smallest iteration order n >= 1 whose series window covers index m.

    The residue and partition-sum formulas are valid for
    1 <= m <= d^(n+1) - 3.
    """
    if d < 2:
        raise ValueError("degree d must be >= 2")
    if m < 1:
        raise ValueError("m must be >= 1")
    n = 1
    bound = d * d - 3
    while m > bound:
        n += 1
        bound = d ** (n + 1) - 3
    return n


def _check_order(d, m, n):
    if n < 1:
        raise ValueError("iteration order n must be >= 1")
    if not 1 <= m <= d ** (n + 1) - 3:
        raise ValueError(
            f"index m={m} outside the admissible range 1 <= m <= {d}^{n + 1} - 3 "
            f"for iteration order n={n}"
        )


def coefficient_by_residue(d: int, m: int, n: int | None = None):
    """Exact b_m via the residue at infinity of Q_n(z)^(m/d^n).

    The contour-integral form of the coefficient reduces, for series
    expanded at infinity, to -1/m times the coefficient of z^-1; that
    term sits exactly at tail order m + 1 past the leading power.
    """
    if n is None:
        n = choose_n(d, m)
    _check_order(d, m, n)
    q = _iterated_polynomial(d, n)
    tail = rational_power_tail(q, rational(m, d**n), m + 1)
    return -tail.coefficient_at(-1) / m


def partition_index_tuples(d, n, target):
    """Non-negative (j_1..j_n) with sum((d^(n-k+1) - 1) * j_k) = target.

    Yields lexicographically, pruning each branch by remaining weight;
    the enumeration order fixes the downstream summation order so runs
    are diffable.
    """
    weights = [d ** (n - k + 1) - 1 for k in range(1, n + 1)]

    def descend(k, remaining, prefix):
        w = weights[k]
        if k == n - 1:
            q, r = divmod(remaining, w)
            if r == 0:
                yield prefix + (q,)
            return
        for j in range(remaining // w + 1):
            yield from descend(k + 1, remaining - j * w, prefix + (j,))

    yield from descend(0, target, ())


def coefficient_by_partition_sum(d: int, m: int, n: int):
    """Exact b_m as -1/m times a sum over weighted index tuples.

    Each tuple (j_1..j_n) contributes a product of generalized binomial
    coefficients whose arguments start at m/d^n and are shifted by the
    prefix of indices already consumed.
    """
    _check_order(d, m, n)
    total = ZERO
    for tup in partition_index_tuples(d, n, m + 1):
        product = ONE
        shift = 0
        for k, j in enumerate(tup, start=1):
            arg = rational(m, d ** (n - k + 1)) - shift
            product *= binomial_general(arg, j)
            if product == 0:
                break
            shift = d * (shift + j)
        total += product
    return -total / m


def laurent_coefficient(
    d: int,
    m: int,
    *,
    method: str = METHOD_RESIDUE,
    use_vanishing_shortcut: bool = True,
    n: int | None = None,
) -> CoeffRecord:
    """The m-th exterior-map coefficient for degree d, with provenance.

    m = 0 is handled by the two directly-computed constants (-1/2 for
    d = 2, 0 for d >= 3).  For d >= 3 and (d-1) not dividing (m+1) the
    coefficient vanishes identically; the shortcut records that zero
    without series work unless ``use_vanishing_shortcut`` is False, in
    which case the full computation runs (and must return zero).
    """
    if d < 2:
        raise ValueError("degree d must be >= 2")
    if m < 0:
        raise ValueError("m must be >= 0")
    if method not in (METHOD_RESIDUE, METHOD_COMBINATORIAL):
        raise ValueError(f"unknown method {method!r}")
    if m == 0:
        value = rational(-1, 2) if d == 2 else ZERO
        return CoeffRecord(d, m, value, METHOD_SPECIAL, 0)
    if (
        use_vanishing_shortcut
        and d >= 3
        and (m + 1) % (d - 1) != 0
    ):
        return CoeffRecord(d, m, ZERO, METHOD_SPECIAL, 0)
    if n is None:
        n = choose_n(d, m)
    if method == METHOD_RESIDUE:
        value = coefficient_by_residue(d, m, n)
    else:
        value = coefficient_by_partition_sum(d, m, n)
    return CoeffRecord(d, m, value, method, n)


class CoeffTable:
    """Memoizing coefficient store keyed by (d, m).

    Reads are pure lookups and safe to share; population must stay with
    a single writer (the computing loop or an explicit ``add``).
    """

    def __init__(self, method: str = METHOD_RESIDUE):
        self.method = method
        self._records: dict[tuple[int, int], CoeffRecord] = {}

    def __len__(self):
        return len(self._records)

    def __contains__(self, key):
        return key in self._records

    def add(self, record: CoeffRecord):
        self._records[(record.d, record.m)] = record

    def get(self, d: int, m: int) -> CoeffRecord | None:
        return self._records.get((d, m))

    def record(self, d: int, m: int) -> CoeffRecord:
        key = (d, m)
        rec = self._records.get(key)
        if rec is None:
            rec = laurent_coefficient(d, m, method=self.method)
            self._records[key] = rec
        return rec

    def value(self, d: int, m: int):
        return self.record(d, m).value

    def records_sorted(self) -> list[CoeffRecord]:
        return [self._records[k] for k in sorted(self._records)]


def zero_census(d: int, m_max: int, table: CoeffTable | None = None):
    """All m <= m_max with b_m = 0, flagged by whether the vanishing is
    explained (d >= 3 with (d-1) not dividing (m+1), which covers m = 0).

    Unexplained candidates are found by full computation; no pattern
    beyond the divisibility criterion is assumed.
    """
    if m_max < 0:
        raise ValueError("m_max must be >= 0")
    if table is None:
        table = CoeffTable()
    zeros = []
    for m in range(m_max + 1):
        if d >= 3 and (m + 1) % (d - 1) != 0:
            zeros.append((m, True))
        elif table.value(d, m) == 0:
            zeros.append((m, False))
    return zeros
