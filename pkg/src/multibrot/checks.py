"""Mechanical checks of the known denominator bounds on the coefficients.

Each check turns one published statement about -nu_p(b_{d,m}) into a
predicate over exactly computed coefficients and returns a ``Verdict``:

* ``main``: for (d-1) | (m+1) and a = (m+1)/(d-1), every prime power
  p^t exactly dividing d satisfies -nu_p(b) <= nu_p(a!) + t*a, with
  equality precisely when m = d-2 or p does not divide m.
* ``zagier``: d = 2, -nu_2(b) <= nu_2((2m+2)!), equality iff m = 0 or
  m odd (Zagier's observation).
* ``ewing-schober``: d = 2, -nu_2(b) <= 2m+1 (area-theorem bound).
* ``levin``: d = 2 and odd m, -nu_2(b) = nu_2((2m+2)!) exactly.
* ``yamashita``: prime degree p; the floor-form bound
  floor(nu_p((pm+p)!)/(p-1)) with the same equality clause as ``main``,
  and -nu_p(b) = -inf when (p-1) does not divide (m+1).  The check also
  asserts that the floor form coincides with ``main``'s additive form
  a + nu_p(a!); that coincidence is real for p = 2 but FAILS for odd p
  at infinitely many m (first: p=3, m=9), where the equality clause is
  then refuted by the exact coefficient too, so failing verdicts from
  this check are expected and are a finding, not a bug.
* ``vanishing``: d >= 3 and (d-1) not dividing (m+1): the full,
  non-shortcut computation returns exactly zero.
* ``integrality``: b * d^x is an integer for
  x = max_i ceil((nu_{p_i}(a!) + t_i*a) / t_i).
* ``dadic``: every prime factor of the denominator divides d.

All comparisons are exact; a zero coefficient attains -inf, which
satisfies every bound and never counts as equality against a finite one.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, replace

from .exact import (
    NEG_INF,
    POS_INF,
    factorial_valuation,
    factorize,
    is_prime,
    padic_valuation,
)
from .coeffs import (
    METHOD_SPECIAL,
    CoeffTable,
    laurent_coefficient,
)

CHECK_NAMES = (
    "main",
    "zagier",
    "ewing-schober",
    "levin",
    "yamashita",
    "vanishing",
    "integrality",
    "dadic",
)

REPORT_HEADER = "#multibrot-verdicts v1"


@dataclass(frozen=True)
class Verdict:
    check: str
    d: int
    m: int
    p: int | None
    bound: object
    attained: object
    equality_predicted: bool | None
    equality_observed: bool | None
    passed: bool


def denominator_exponent(value, p: int):
    """-nu_p(value): how strongly p divides the denominator.

    NEG_INF for value = 0, matching nu_p(0) = +inf.
    """
    v = padic_valuation(value, p)
    return NEG_INF if v is POS_INF else -v


def _bound_verdict(check, d, m, p, bound, attained, equality_predicted=None):
    within = attained <= bound
    if equality_predicted is None:
        return Verdict(check, d, m, p, bound, attained, None, None, bool(within))
    equality_observed = attained == bound
    return Verdict(
        check,
        d,
        m,
        p,
        bound,
        attained,
        equality_predicted,
        equality_observed,
        bool(within and equality_predicted == equality_observed),
    )


def _table(table):
    return table if table is not None else CoeffTable()


def check_main(d: int, m: int, table: CoeffTable | None = None) -> list[Verdict]:
    """One verdict per prime factor of d; requires (d-1) | (m+1)."""
    if (m + 1) % (d - 1) != 0:
        raise ValueError(
            "check_main requires (d-1) | (m+1); the complementary case is "
            "covered by check_vanishing"
        )
    a = (m + 1) // (d - 1)
    value = _table(table).value(d, m)
    verdicts = []
    for p, t in factorize(d):
        bound = factorial_valuation(a, p) + t * a
        attained = denominator_exponent(value, p)
        equality_predicted = m == d - 2 or m % p != 0
        verdicts.append(_bound_verdict("main", d, m, p, bound, attained, equality_predicted))
    return verdicts


def check_zagier(m: int, table: CoeffTable | None = None) -> Verdict:
    value = _table(table).value(2, m)
    bound = factorial_valuation(2 * m + 2, 2)
    attained = denominator_exponent(value, 2)
    equality_predicted = m == 0 or m % 2 == 1
    return _bound_verdict("zagier", 2, m, 2, bound, attained, equality_predicted)


def check_ewing_schober(m: int, table: CoeffTable | None = None) -> Verdict:
    value = _table(table).value(2, m)
    attained = denominator_exponent(value, 2)
    return _bound_verdict("ewing-schober", 2, m, 2, 2 * m + 1, attained)


def check_levin(m: int, table: CoeffTable | None = None) -> Verdict:
    if m % 2 == 0:
        raise ValueError("check_levin applies to odd m only")
    value = _table(table).value(2, m)
    bound = factorial_valuation(2 * m + 2, 2)
    attained = denominator_exponent(value, 2)
    return _bound_verdict("levin", 2, m, 2, bound, attained, equality_predicted=True)


def check_yamashita(p: int, m: int, table: CoeffTable | None = None) -> Verdict:
    """Prime-degree bound in floor form, checked against the additive form."""
    if not is_prime(p):
        raise ValueError(f"check_yamashita requires a prime degree, got {p}")
    value = _table(table).value(p, m)
    attained = denominator_exponent(value, p)
    if (m + 1) % (p - 1) != 0:
        return _bound_verdict("yamashita", p, m, p, NEG_INF, attained, equality_predicted=True)
    a = (m + 1) // (p - 1)
    bound = factorial_valuation(p * m + p, p) // (p - 1)
    forms_agree = bound == a + factorial_valuation(a, p)
    equality_predicted = m == p - 2 or m % p != 0
    verdict = _bound_verdict("yamashita", p, m, p, bound, attained, equality_predicted)
    if not forms_agree:
        verdict = replace(verdict, passed=False)
    return verdict


def check_vanishing(
    d: int,
    m: int,
    full_table: CoeffTable | None = None,
    method: str = "residue",
) -> Verdict:
    """Full computation (shortcut disabled) must return exactly zero.

    ``full_table`` may hold precomputed records, but only ones that came
    from an actual series/sum evaluation are trusted; shortcut records
    are ignored and recomputed, otherwise the check would be vacuous.
    """
    if d < 3:
        raise ValueError("check_vanishing applies to d >= 3")
    if m < 1:
        raise ValueError("check_vanishing applies to m >= 1")
    if (m + 1) % (d - 1) == 0:
        raise ValueError("(d-1) | (m+1): this index is covered by check_main")
    record = None
    if full_table is not None:
        candidate = full_table.get(d, m)
        if candidate is not None and candidate.method != METHOD_SPECIAL:
            record = candidate
    if record is None:
        record = laurent_coefficient(d, m, method=method, use_vanishing_shortcut=False)
    p_smallest = factorize(d)[0][0]
    attained = denominator_exponent(record.value, p_smallest)
    return _bound_verdict("vanishing", d, m, None, NEG_INF, attained, equality_predicted=True)


def rational_denominator(value) -> int:
    return 1 if isinstance(value, int) else int(value.denominator)


def check_integrality(d: int, m: int, table: CoeffTable | None = None) -> Verdict:
    """value * d^x integral for the ceiling exponent x derived from the main bound."""
    if (m + 1) % (d - 1) != 0:
        raise ValueError("check_integrality requires (d-1) | (m+1)")
    a = (m + 1) // (d - 1)
    value = _table(table).value(d, m)
    factors = factorize(d)
    bound = max(-(-(factorial_valuation(a, p) + t * a) // t) for p, t in factors)
    # smallest e >= 0 with value * d^e integral; +inf if no power of d clears it
    den = int(rational_denominator(value))
    needed = 0
    for p, t in factors:
        v = 0
        while den % p == 0:
            den //= p
            v += 1
        needed = max(needed, -(-v // t))
    attained = needed if den == 1 else POS_INF
    return _bound_verdict("integrality", d, m, None, bound, attained)


def check_dadic(d: int, m: int, table: CoeffTable | None = None) -> Verdict:
    """Every prime factor of the denominator divides d."""
    value = _table(table).value(d, m)
    den = rational_denominator(value)
    for p, _ in factorize(d):
        while den % p == 0:
            den //= p
    passed = den == 1
    return Verdict("dadic", d, m, None, None, None, None, None, passed)


def _sort_key(v: Verdict):
    return (v.check, v.d, v.m, v.p if v.p is not None else -1)


def suite_verdicts(
    degrees,
    m_max: int,
    checks,
    table: CoeffTable | None = None,
    full_table: CoeffTable | None = None,
) -> list[Verdict]:
    """Every applicable verdict for the requested checks, sorted by
    (check, d, m, p) so that two runs diff cleanly."""
    unknown = [c for c in checks if c not in CHECK_NAMES]
    if unknown:
        raise ValueError(f"unknown check names: {', '.join(unknown)}")
    table = _table(table)
    degrees = sorted(set(degrees))
    verdicts: list[Verdict] = []
    for check in dict.fromkeys(checks):
        for d in degrees:
            if check in ("zagier", "ewing-schober", "levin") and d != 2:
                continue
            if check == "yamashita" and not is_prime(d):
                continue
            if check == "vanishing" and d < 3:
                continue
            for m in range(m_max + 1):
                divisible = (m + 1) % (d - 1) == 0
                if check in ("main", "integrality"):
                    if not divisible:
                        continue
                    if check == "main":
                        verdicts.extend(check_main(d, m, table))
                    else:
                        verdicts.append(check_integrality(d, m, table))
                elif check == "zagier":
                    verdicts.append(check_zagier(m, table))
                elif check == "ewing-schober":
                    verdicts.append(check_ewing_schober(m, table))
                elif check == "levin":
                    if m % 2 == 1:
                        verdicts.append(check_levin(m, table))
                elif check == "yamashita":
                    verdicts.append(check_yamashita(d, m, table))
                elif check == "vanishing":
                    if m >= 1 and not divisible:
                        verdicts.append(check_vanishing(d, m, full_table))
                elif check == "dadic":
                    verdicts.append(check_dadic(d, m, table))
    verdicts.sort(key=_sort_key)
    return verdicts


def _extended_str(x) -> str:
    if x is None:
        return "-"
    if x is NEG_INF:
        return "neg_inf"
    if x is POS_INF:
        return "inf"
    return str(x)


def _bool_str(x) -> str:
    if x is None:
        return "-"
    return "true" if x else "false"


def verdict_line(v: Verdict) -> str:
    return ",".join(
        (
            v.check,
            str(v.d),
            str(v.m),
            str(v.p) if v.p is not None else "-",
            _extended_str(v.bound),
            _extended_str(v.attained),
            _bool_str(v.equality_predicted),
            _bool_str(v.equality_observed),
            _bool_str(v.passed),
        )
    )


def format_report(verdicts) -> str:
    lines = [verdict_line(v) for v in sorted(verdicts, key=_sort_key)]
    digest = hashlib.sha256()
    for line in lines:
        digest.update(line.encode("utf-8") + b"\n")
    parts = [REPORT_HEADER]
    parts.extend(lines)
    parts.append("#sha256:" + digest.hexdigest())
    return "\n".join(parts) + "\n"


def write_report(path, verdicts) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_report(verdicts))
