"""Exact Laurent coefficients of the Multibrot exterior map.

The conformal map from the exterior of the closed unit disk onto the
complement of the degree-d Multibrot set expands at infinity as
z + sum(b_m z^-m).  This package computes every b_m exactly (big-rational
arithmetic throughout), by two independent methods, and mechanically
verifies the known valuation bounds and vanishing statements about the
denominators of these coefficients.
"""

from .exact import (
    NEG_INF,
    POS_INF,
    ExtendedInt,
    SignedInfinity,
    binomial_general,
    factorial_valuation,
    factorize,
    floor_rational,
    is_prime,
    padic_valuation,
    rational,
)
from .series import (
    SeriesWindowError,
    TailSeries,
    iterate_parameter_polynomial,
    rational_power_tail,
)
from .coeffs import (
    METHOD_COMBINATORIAL,
    METHOD_RESIDUE,
    METHOD_SPECIAL,
    CoeffRecord,
    CoeffTable,
    choose_n,
    coefficient_by_partition_sum,
    coefficient_by_residue,
    laurent_coefficient,
    partition_index_tuples,
    zero_census,
)
from .cache import (
    CacheChecksumError,
    CacheFormatError,
    load_coefficients,
    store_coefficients,
)
from .checks import (
    CHECK_NAMES,
    Verdict,
    check_dadic,
    check_ewing_schober,
    check_integrality,
    check_levin,
    check_main,
    check_vanishing,
    check_yamashita,
    check_zagier,
    denominator_exponent,
    format_report,
    suite_verdicts,
    write_report,
)

__version__ = "0.1.0"

__all__ = [
    "NEG_INF",
    "POS_INF",
    "ExtendedInt",
    "SignedInfinity",
    "binomial_general",
    "factorial_valuation",
    "factorize",
    "floor_rational",
    "is_prime",
    "padic_valuation",
    "rational",
    "SeriesWindowError",
    "TailSeries",
    "iterate_parameter_polynomial",
    "rational_power_tail",
    "METHOD_COMBINATORIAL",
    "METHOD_RESIDUE",
    "METHOD_SPECIAL",
    "CoeffRecord",
    "CoeffTable",
    "choose_n",
    "coefficient_by_partition_sum",
    "coefficient_by_residue",
    "laurent_coefficient",
    "partition_index_tuples",
    "zero_census",
    "CacheChecksumError",
    "CacheFormatError",
    "load_coefficients",
    "store_coefficients",
    "CHECK_NAMES",
    "Verdict",
    "check_dadic",
    "check_ewing_schober",
    "check_integrality",
    "check_levin",
    "check_main",
    "check_vanishing",
    "check_yamashita",
    "check_zagier",
    "denominator_exponent",
    "format_report",
    "suite_verdicts",
    "write_report",
    "__version__",
]
