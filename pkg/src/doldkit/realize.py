"""Dold sums, the Dold (D) and sign (S) conditions, orbit censuses, multiplier
search, sufficient parameters for sampled recurrences, and theorem drivers.

A sequence is realizable as the periodic-point counts of some map exactly
when every Dold sum ``sum_{d | n} mu(n/d) a_d`` is divisible by ``n`` (D)
and nonnegative (S). Sequences are supplied either as a list of exact terms
``a_1, a_2, ...`` or as a :class:`SampledSequence` ``a_n = M * u_{n^s}``,
whose Dold residues are evaluated without ever expanding ``u_{n^s}``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from . import polyalg
from .arith import factor, lcm, num_divisors, squarefree_divisors
from .errors import (
    CensusUndefinedError,
    CostCapError,
    DomainError,
    HypothesisViolation,
    NeedsOverrideError,
)
from .polyalg import GaloisInfo, RationalInterval
from .recurrence import (
    LinearRecurrence,
    check_hypotheses,
    exact_affordable,
    kth_fibonacci_recurrence,
    lucas_type,
    term_exact,
    term_mod,
)

# Exact Dold sums larger than this are summarised by residue and sign in reports.
WITNESS_BITS = 4096


class Status(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    UNKNOWN = "UNKNOWN"


class Sign(str, enum.Enum):
    NONNEG = "NONNEG"
    NEG = "NEG"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class SampledSequence:
    """a_n = multiplier * u_{n ** exponent} for a base recurrence u."""

    base: LinearRecurrence
    multiplier: int = 1
    exponent: int = 1

    def __post_init__(self):
        if self.multiplier == 0:
            raise DomainError("multiplier must be nonzero")
        if self.exponent < 1:
            raise DomainError("exponent must be positive")

    def index(self, n: int) -> int:
        return n**self.exponent

    def term(self, n: int) -> int:
        return self.multiplier * term_exact(self.base, self.index(n))

    def term_mod(self, n: int, m: int) -> int:
        return self.multiplier * term_mod(self.base, self.index(n), m) % m

    def exact_affordable(self, n: int) -> bool:
        return exact_affordable(self.base, self.index(n))

    def scaled(self, factor: int) -> "SampledSequence":
        """The sequence factor * a_n."""
        return SampledSequence(self.base, self.multiplier * factor, self.exponent)


TermSource = Union[SampledSequence, Sequence[int], Callable[[int], int]]


def _getter(seq: TermSource) -> Callable[[int], int]:
    if isinstance(seq, SampledSequence):
        return seq.term
    if callable(seq):
        return seq

    def get(n: int) -> int:
        if n > len(seq):
            raise DomainError(f"term a_{n} requested but only {len(seq)} terms supplied")
        return seq[n - 1]

    return get


@dataclass(frozen=True)
class Issue:
    n: int
    condition: str  # "D" or "S"
    detail: Dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"n": self.n, "condition": self.condition, "detail": dict(self.detail)}

    @classmethod
    def from_dict(cls, data: dict) -> "Issue":
        return cls(int(data["n"]), str(data["condition"]), dict(data.get("detail", {})))


@dataclass(frozen=True)
class Verdict:
    status: Status
    first_issue: Optional[Issue]
    checked_up_to: int

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def to_dict(self) -> dict:
        return {
            "verdict": self.status.value,
            "first_issue": self.first_issue.to_dict() if self.first_issue else None,
            "checked_up_to": self.checked_up_to,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Verdict":
        issue = data.get("first_issue")
        return cls(
            Status(data["verdict"]),
            Issue.from_dict(issue) if issue else None,
            int(data["checked_up_to"]),
        )


@dataclass(frozen=True)
class OrbitCensus:
    """Pairs (n, O_n): the number of closed orbits of minimal length n."""

    entries: Tuple[Tuple[int, int], ...]

    @property
    def counts(self) -> List[int]:
        return [o for _, o in self.entries]

    def reconstruct(self, n: int) -> int:
        """a_n = sum over d | n of d * O_d."""
        return sum(d * self.entries[d - 1][1] for d in range(1, n + 1) if n % d == 0)

    def to_csv(self) -> str:
        lines = ["n,O_n"] + [f"{n},{o}" for n, o in self.entries]
        return "\n".join(lines) + "\n"


# --- Dold sums ----------------------------------------------------------


def dold_sum_exact(seq: TermSource, n: int) -> int:
    """sum_{d | n} mu(n/d) a_d, exactly."""
    if n < 1:
        raise DomainError("n must be positive")
    get = _getter(seq)
    return sum(mu * get(n // e) for e, mu in squarefree_divisors(n))


def dold_residue(seq: TermSource, n: int) -> int:
    """The Dold sum at n reduced modulo n."""
    if n == 1:
        return 0
    if isinstance(seq, SampledSequence):
        M, s, base = seq.multiplier, seq.exponent, seq.base
        total = sum(mu * term_mod(base, (n // e) ** s, n) for e, mu in squarefree_divisors(n))
        return M * total % n
    return dold_sum_exact(seq, n) % n


def dold_check_mod(seq: TermSource, n: int) -> bool:
    """True when n divides the Dold sum at n."""
    return dold_residue(seq, n) == 0


# --- growth bounds and the sign condition ---------------------------------

_LOG_SLACK = Fraction(1, 10**12)


def _log_lower(x: Fraction) -> Fraction:
    if x == 1:
        return Fraction(0)
    v = Fraction(math.log(x))
    return v - abs(v) * _LOG_SLACK - _LOG_SLACK


def _log_upper(x: Fraction) -> Fraction:
    if x == 1:
        return Fraction(0)
    v = Fraction(math.log(x))
    return v + abs(v) * _LOG_SLACK + _LOG_SLACK


@dataclass(frozen=True)
class GrowthBounds:
    """Certified lam^(m - k) <= u_m <= lam^(m + n0) with lam inside ``lam``."""

    lam: RationalInterval
    n0: int
    k: int


def _least_n0(lam_lo: Fraction, umax: int) -> int:
    n0, power = 0, Fraction(1)
    while power < umax:
        power *= lam_lo
        n0 += 1
    return n0


@lru_cache(maxsize=256)
def growth_bounds(rec: LinearRecurrence, precision: int = 64, n0: Optional[int] = None) -> GrowthBounds:
    """Dominant-root interval and growth exponent n0 for a positive recurrence.

    With ``n0`` given, it is checked against the initial window instead of
    derived, so a closed-form constant can be used.
    """
    report = check_hypotheses(rec)
    if not report.positivity_ok:
        raise HypothesisViolation(
            "growth bounds need nonnegative coefficients, a_k != 0, not a pure shift "
            f"and positive initials; failing: {', '.join(report.failures())}"
        )
    lam = polyalg.dominant_root(polyalg.char_poly(rec), precision)
    umax = max(rec.initials)
    if n0 is None:
        n0 = _least_n0(lam.lo, umax)
    elif lam.lo**n0 < umax:
        raise HypothesisViolation(f"n0={n0} does not bound the initial terms")
    return GrowthBounds(lam, n0, rec.order)


def _bound_sign(seq: SampledSequence, n: int, bounds: GrowthBounds) -> Sign:
    """Certify the sign of the Dold sum at n >= 2 from growth bounds alone.

    The leading term u_{n^s} >= lam^(n^s - k) is compared against
    (tau(n) - 1) copies of the largest proper-divisor term, each at most
    lam^((n/p)^s + n0) for the least prime p of n.
    """
    s = seq.exponent
    p = factor(n)[0][0]
    lead = max(n**s - bounds.k, 0)
    tail = (n // p) ** s + bounds.n0
    lhs = lead * _log_lower(bounds.lam.lo)
    rhs = _log_upper(Fraction(num_divisors(n) - 1)) + tail * _log_upper(bounds.lam.hi)
    if lhs > rhs:
        return Sign.NONNEG if seq.multiplier > 0 else Sign.NEG
    return Sign.UNKNOWN


def _sign_of(value: int) -> Sign:
    return Sign.NONNEG if value >= 0 else Sign.NEG


def _exact_affordable(seq: TermSource, n: int) -> bool:
    if isinstance(seq, SampledSequence):
        return seq.exact_affordable(n)
    return True


def sign_check(
    seq: TermSource,
    n: int,
    strategy: str = "auto",
    bounds: Optional[GrowthBounds] = None,
) -> Sign:
    """Sign of the Dold sum at n.

    ``exact`` sums exact terms (and may raise CostCapError); ``bound`` uses
    the growth certificate and answers UNKNOWN when it is inconclusive;
    ``auto`` tries the certificate first when the base recurrence admits
    one, then the exact sum when it fits under the cost cap.
    """
    if strategy not in ("exact", "bound", "auto"):
        raise DomainError(f"unknown sign strategy {strategy!r}")
    if n == 1 or strategy == "exact":
        return _sign_of(dold_sum_exact(seq, n))
    if not isinstance(seq, SampledSequence):
        if strategy == "bound":
            raise HypothesisViolation("the bound strategy needs a sampled recurrence")
        return _sign_of(dold_sum_exact(seq, n))
    if bounds is None:
        try:
            bounds = growth_bounds(seq.base)
        except HypothesisViolation:
            if strategy == "bound":
                raise
    if bounds is not None:
        verdict = _bound_sign(seq, n, bounds)
        if verdict is not Sign.UNKNOWN or strategy == "bound":
            return verdict
    if not seq.exact_affordable(n):
        return Sign.UNKNOWN
    return _sign_of(dold_sum_exact(seq, n))


def _witness(seq: TermSource, n: int) -> Dict[str, object]:
    """Residue, and the exact Dold sum when it is cheap and small enough to print."""
    detail: Dict[str, object] = {"residue": dold_residue(seq, n)}
    if _exact_affordable(seq, n):
        try:
            total = dold_sum_exact(seq, n)
        except CostCapError:
            return detail
        if total.bit_length() <= WITNESS_BITS:
            detail["dold_sum"] = total
        else:
            detail["dold_sum_sign"] = _sign_of(total).value
    return detail


def check_realizable(
    seq: TermSource,
    n_max: int,
    strategy: str = "auto",
    *,
    conditions: str = "DS",
    bounds: Optional[GrowthBounds] = None,
) -> Verdict:
    """Scan n = 1..n_max for the first failure of (D) or (S).

    ``conditions`` restricts the scan, e.g. ``"D"`` for divisibility only.
    An inconclusive sign check yields UNKNOWN unless a later n fails outright.
    """
    if n_max < 1:
        raise DomainError("n_max must be positive")
    sampled = isinstance(seq, SampledSequence)
    want_d, want_s = "D" in conditions, "S" in conditions
    first_unknown: Optional[Issue] = None
    for n in range(1, n_max + 1):
        if sampled:
            total = None
            ok = dold_check_mod(seq, n) if want_d else True
        else:
            total = dold_sum_exact(seq, n)
            ok = total % n == 0 if want_d else True
        if not ok:
            return Verdict(Status.FAIL, Issue(n, "D", _witness(seq, n)), n)
        if not want_s:
            continue
        sign = _sign_of(total) if total is not None else sign_check(seq, n, strategy, bounds)
        if sign is Sign.NEG:
            return Verdict(Status.FAIL, Issue(n, "S", _witness(seq, n)), n)
        if sign is Sign.UNKNOWN and first_unknown is None:
            first_unknown = Issue(n, "S", {"reason": "sign not certified"})
    if first_unknown is not None:
        return Verdict(Status.UNKNOWN, first_unknown, n_max)
    return Verdict(Status.PASS, None, n_max)


def orbit_census(seq: TermSource, n_max: int) -> OrbitCensus:
    entries = []
    for n in range(1, n_max + 1):
        q, r = divmod(dold_sum_exact(seq, n), n)
        if r:
            raise CensusUndefinedError(n)
        entries.append((n, q))
    return OrbitCensus(tuple(entries))


def minimal_multiplier(seq: TermSource, n_max: int, m_max: int) -> Optional[int]:
    """Least M in [1, m_max] making (M * a_n) satisfy (D) for all n <= n_max.

    M works at n exactly when n / gcd(n, Dold sum) divides M, so the answer
    is the lcm of those quotients.
    """
    needed = 1
    for n in range(2, n_max + 1):
        needed = lcm(needed, n // math.gcd(n, dold_residue(seq, n)))
        if needed > m_max:
            return None
    return needed


# --- sufficient parameters ------------------------------------------------


@dataclass(frozen=True)
class ThmParams:
    delta_F: int
    delta_K: int
    delta_K_source: str  # "user_supplied" or "irreducible_divides"
    galois: GaloisInfo
    M: int
    s_min: int
    lam: Optional[RationalInterval]
    n0: Optional[int]
    n1: Optional[int]
    ell0: Optional[int]

    def to_dict(self) -> dict:
        return {
            "delta_F": self.delta_F,
            "delta_K": self.delta_K,
            "delta_K_source": self.delta_K_source,
            "galois": {
                "tag": self.galois.tag.value,
                "order": self.galois.order,
                "exponent": self.galois.exponent,
                "method": self.galois.method,
            },
            "M": self.M,
            "s_min": self.s_min,
            "lambda": None
            if self.lam is None
            else {"lo": str(self.lam.lo), "hi": str(self.lam.hi), "approx": float(self.lam)},
            "n0": self.n0,
            "n1": self.n1,
            "ell0": self.ell0,
        }


def _log_ratio_ok(n: int, lam_lo: Fraction) -> bool:
    """log n / log lam <= n / 2, via the exact form n^2 <= lam^n."""
    return n * n <= lam_lo**n


def certified_n1(bounds: GrowthBounds) -> int:
    """Least n1 >= 2(n0 + k) with log n / log lam <= n/2 for every n >= n1.

    lam^n / n^2 increases once lam * m^2 >= (m + 1)^2, so checking integers
    up to that turning point settles all larger n.
    """
    lam = bounds.lam.lo
    start = 2 * (bounds.n0 + bounds.k)
    turn = 1
    while lam * turn * turn < (turn + 1) ** 2:
        turn += 1
    top = max(start, turn)
    while not _log_ratio_ok(top, lam):
        top += 1
    n1 = top
    while n1 - 1 >= start and _log_ratio_ok(n1 - 1, lam):
        n1 -= 1
    return n1


def certified_ell0(bounds: GrowthBounds, n1: int, step: int) -> int:
    """Least ell >= 1 with 2^(step*ell) (2^(step*ell) - 1) > n0 + k + log n1 / log lam."""
    log_lam = _log_lower(bounds.lam.lo)
    log_n1 = _log_upper(Fraction(n1))
    ell = 1
    while True:
        big = 2 ** (step * ell)
        slack = big * (big - 1) - bounds.n0 - bounds.k
        if slack > 0 and slack * log_lam > log_n1:
            return ell
        ell += 1


def derive_params(
    rec: LinearRecurrence,
    delta_K_override: Optional[int] = None,
    conservative: bool = False,
    precision: int = 64,
) -> ThmParams:
    """Multiplier, exponent step and sign-condition constants for (M u_{n^s}).

    M = lcm(|delta_K|, |delta_F|). For an irreducible characteristic
    polynomial delta_K divides delta_F, so |delta_F| stands in for it;
    otherwise delta_K must be supplied. The lambda, n0, n1 and ell0 fields
    are None when the recurrence fails the positivity hypotheses.
    """
    report = check_hypotheses(rec)
    if not report.simple_zeros:
        raise HypothesisViolation("characteristic polynomial has a repeated root")
    F = polyalg.char_poly(rec)
    k = rec.order
    delta_F = polyalg.discriminant(F)
    irreducible = polyalg.is_irreducible(F) if F.degree <= 4 else None

    if delta_K_override is not None:
        delta_K, source = int(delta_K_override), "user_supplied"
    elif irreducible:
        delta_K, source = abs(delta_F), "irreducible_divides"
    else:
        reason = "reducible" if irreducible is False else f"of degree {k} (irreducibility not certified)"
        raise NeedsOverrideError(f"characteristic polynomial {F} is {reason}; supply delta_K")

    if irreducible and not conservative:
        galois = polyalg.galois_group(F)
        s_min = galois.order
        step = galois.exponent
    else:
        galois = GaloisInfo.unknown()
        s_min = step = polyalg.fallback_s(k)

    lam = n0 = n1 = ell0 = None
    if report.positivity_ok:
        bounds = growth_bounds(rec, precision)
        lam, n0 = bounds.lam, bounds.n0
        n1 = certified_n1(bounds)
        ell0 = certified_ell0(bounds, n1, step)

    return ThmParams(
        delta_F=delta_F,
        delta_K=delta_K,
        delta_K_source=source,
        galois=galois,
        M=lcm(delta_K, delta_F),
        s_min=s_min,
        lam=lam,
        n0=n0,
        n1=n1,
        ell0=ell0,
    )


# --- theorem drivers ------------------------------------------------------


@dataclass(frozen=True)
class Theorem1Result:
    verdict: Verdict
    params: ThmParams
    sequence: SampledSequence
    sign_guaranteed: bool


def verify_theorem1(
    rec: LinearRecurrence,
    delta_K_override: Optional[int] = None,
    ell: int = 1,
    n_max: int = 1000,
    *,
    exponent: Optional[int] = None,
    conservative: bool = False,
    strategy: str = "auto",
) -> Theorem1Result:
    """Scan (M u_{n^s}) with M from :func:`derive_params` and s = s_min * ell.

    ``exponent`` replaces s outright, which is how odd exponents are probed.
    """
    if ell < 1:
        raise DomainError("ell must be positive")
    params = derive_params(rec, delta_K_override, conservative)
    s = exponent if exponent is not None else params.s_min * ell
    seq = SampledSequence(rec, params.M, s)
    guaranteed = exponent is None and params.ell0 is not None and ell >= params.ell0
    verdict = check_realizable(seq, n_max, strategy)
    return Theorem1Result(verdict, params, seq, guaranteed)


@dataclass(frozen=True)
class Theorem2Constants:
    k: int
    n0: int
    n1: int
    ell0: int
    N_k: int


def theorem2_constants(k: int) -> Theorem2Constants:
    """Closed-form constants for the k-generalized Fibonacci sequence."""
    return Theorem2Constants(k=k, n0=2 * k, n1=10 * k, ell0=1, N_k=polyalg.fallback_s(k))


def verify_theorem2(k: int, ell: int = 1, n_max: int = 300) -> Verdict:
    """(D) and (S) for (|disc F^(k)| * F^(k)_{n^s}) with s = k! * ell.

    The sign certificate uses the closed-form n0 = 2k; indices where it is
    inconclusive (n = 1, 2 when k = 2) are settled exactly.
    """
    if k < 2:
        raise DomainError("k must be at least 2")
    if ell < 1:
        raise DomainError("ell must be positive")
    consts = theorem2_constants(k)
    rec = kth_fibonacci_recurrence(k)
    M = abs(polyalg.discriminant(polyalg.char_poly(rec)))
    seq = SampledSequence(rec, M, consts.N_k * ell)
    bounds = growth_bounds(rec, 64, consts.n0)
    return check_realizable(seq, n_max, "auto", bounds=bounds)


@dataclass(frozen=True)
class Theorem3Result:
    P: int
    Q: int
    multiplier: int
    verdict: Verdict
    sharper: Optional[Verdict] = None  # |P| u_{n^2} when Q = 0

    @property
    def status(self) -> Status:
        if self.verdict.status is not Status.PASS:
            return self.verdict.status
        if self.sharper is not None:
            return self.sharper.status
        return Status.PASS


def verify_theorem3(P: int, Q: int, n_max: int = 500) -> Theorem3Result:
    """(D) for ((P^2 - 4Q) u_{n^2}) where u_0 = 0, u_1 = 1, u_{n+2} = P u_{n+1} - Q u_n.

    Only divisibility is checked; the multiplier may be negative. For
    (P, Q) = (0, 1) the multiplier is |P^2 - 4Q| = 4, and for Q = 0 the
    smaller multiplier |P| is checked as well.
    """
    if (P, Q) == (0, 0):
        raise HypothesisViolation("(P, Q) = (0, 0) gives the zero sequence")
    if P * P == 4 * Q:
        raise HypothesisViolation("P^2 = 4Q gives a repeated characteristic root")
    rec = lucas_type(P, Q)
    M = 4 if (P, Q) == (0, 1) else P * P - 4 * Q
    verdict = check_realizable(SampledSequence(rec, M, 2), n_max, conditions="D")
    sharper = None
    if Q == 0:
        sharper = check_realizable(SampledSequence(rec, abs(P), 2), n_max, conditions="D")
    return Theorem3Result(P, Q, M, verdict, sharper)
