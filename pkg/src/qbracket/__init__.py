"""Arithmetic of [x]_q = (q^x - 1)/(q - 1) over ramified p-adic fields.

The package computes the q-deformed bracket on the closed unit disk,
locates its nontrivial fixed points by Newton polygon counting plus
Hensel lifting, and ships a harness that re-verifies the structural
facts the solver relies on (``qbracket.harness``, or ``qbracket verify``
from the shell).

Layers, lowest first:

- ``core``:     exact arithmetic in Q_p(pi), pi^e = p, with explicit
                precision bookkeeping on every value
- ``analytic``: exp/log/q-power, the bracket, and truncated series with
                certified tail bounds
- ``polygon``:  Newton polygons and unit-disk zero counting
- ``solver``:   fixed points for a given q, parameters q for a given x,
                local inverse maps, multiplicities
- ``harness``:  seeded re-verification suites with JSON reports
- ``cli``:      the ``qbracket`` command
"""

from .errors import (
    CertificationFailure,
    ContextMismatch,
    DomainError,
    LiftFailure,
    PadicError,
    PrecisionExhausted,
)
from .core import (
    PadicNumber,
    PrimeContext,
    ZeroAtPrecision,
    ctx_new,
    equals_to_precision,
    sample,
)
from .analytic import (
    TruncatedSeries,
    a_poly,
    cocycle_check,
    digit_sum,
    exp,
    factorial_valuation,
    in_S,
    log1p,
    q_bracket,
    q_pow,
    series1,
    series2,
)
from .polygon import (
    NewtonPolygon,
    polygon_build,
    root_valuations,
    unit_disk_zero_count,
)
from .solver import (
    FixedPointRecord,
    SolveOutcome,
    fixed_points_for_q,
    hensel_lift,
    local_Q,
    m0_for_x,
    multiplicity_from_c1,
    multiplicity_of,
    phi1_contains,
    phi2_contains,
    q_for_x,
)
from .harness import (
    SUITE_IDS,
    Assertion,
    SuiteReport,
    reports_to_json,
    run_all,
    run_suite,
)

__version__ = "0.1.0"

__all__ = [
    "Assertion",
    "CertificationFailure",
    "ContextMismatch",
    "DomainError",
    "FixedPointRecord",
    "LiftFailure",
    "NewtonPolygon",
    "PadicError",
    "PadicNumber",
    "PrecisionExhausted",
    "PrimeContext",
    "SUITE_IDS",
    "SolveOutcome",
    "SuiteReport",
    "TruncatedSeries",
    "ZeroAtPrecision",
    "a_poly",
    "cocycle_check",
    "ctx_new",
    "digit_sum",
    "equals_to_precision",
    "exp",
    "factorial_valuation",
    "fixed_points_for_q",
    "hensel_lift",
    "in_S",
    "local_Q",
    "log1p",
    "m0_for_x",
    "multiplicity_from_c1",
    "multiplicity_of",
    "phi1_contains",
    "phi2_contains",
    "polygon_build",
    "q_bracket",
    "q_for_x",
    "q_pow",
    "reports_to_json",
    "root_valuations",
    "run_all",
    "run_suite",
    "sample",
    "series1",
    "series2",
    "unit_disk_zero_count",
]
