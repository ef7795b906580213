"""Realizability of integer sequences as periodic-point counts.

Decides the Dold congruence and sign conditions for explicit sequences and
for sampled linear recurrences ``M * u_{n^s}``, and derives sufficient
multipliers and exponents from discriminants and Galois groups.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    CensusUndefinedError,
    CostCapError,
    DoldkitError,
    DomainError,
    HypothesisViolation,
    InputFormatError,
    NeedsMoreDataError,
    NeedsOverrideError,
    UnsupportedInputError,
)
from .polyalg import IntPolynomial, discriminant, galois_group, resultant  # noqa: E402
from .realize import (  # noqa: E402
    SampledSequence,
    Sign,
    Status,
    Verdict,
    check_realizable,
    derive_params,
    dold_check_mod,
    dold_sum_exact,
    minimal_multiplier,
    orbit_census,
    sign_check,
    verify_theorem1,
    verify_theorem2,
    verify_theorem3,
)
from .recurrence import LinearRecurrence, make_recurrence, term_exact, term_mod  # noqa: E402
