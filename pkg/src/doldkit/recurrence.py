"""Integer linear recurrences u_{n+k} = a_1 u_{n+k-1} + ... + a_k u_n.

Sequences are indexed from n = 1. Exact terms are available up to a bit-size
cap; residues modulo m are available for arbitrarily large indices through
binary powering of the companion matrix.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple

from . import polyalg
from .errors import CostCapError, DomainError, NeedsMoreDataError
from .polyalg import IntPolynomial

DEFAULT_DIGIT_CAP = 2**25
LINEAR_ITERATION_LIMIT = 10**4

Matrix = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class LinearRecurrence:
    coeffs: Tuple[int, ...]
    initials: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(a) for a in self.coeffs))
        object.__setattr__(self, "initials", tuple(int(u) for u in self.initials))
        if not self.coeffs or not self.initials:
            raise DomainError("a recurrence needs at least one coefficient and one initial term")
        if len(self.coeffs) != len(self.initials):
            raise DomainError(
                f"{len(self.coeffs)} coefficients but {len(self.initials)} initial terms"
            )

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def terms(self, count: int) -> List[int]:
        """The first ``count`` terms u_1, ..., u_count."""
        return first_terms(self, count)

    def __str__(self) -> str:
        return f"LinearRecurrence(coeffs={list(self.coeffs)}, initials={list(self.initials)})"


def make_recurrence(coeffs: Sequence[int], initials: Sequence[int]) -> LinearRecurrence:
    return LinearRecurrence(tuple(coeffs), tuple(initials))


def kth_fibonacci_recurrence(k: int) -> LinearRecurrence:
    """The k-generalized Fibonacci sequence, seeded with zeros and F_1 = 1."""
    if k < 2:
        raise DomainError("k-generalized Fibonacci needs k >= 2")
    window = [0] * (k - 1) + [1]  # F_{2-k}, ..., F_1
    initials = [1]
    while len(initials) < k:
        window = window[1:] + [sum(window)]
        initials.append(window[-1])
    return LinearRecurrence((1,) * k, tuple(initials))


def lucas_type(P: int, Q: int) -> LinearRecurrence:
    """u_{n+2} = P u_{n+1} - Q u_n with u_0 = 0, u_1 = 1, stored from n = 1.

    This is the Lucas-sequence convention, whose characteristic polynomial
    X^2 - PX + Q has discriminant P^2 - 4Q.
    """
    return LinearRecurrence((P, -Q), (1, P))


def companion_matrix(rec: LinearRecurrence) -> Matrix:
    k = rec.order
    rows = [tuple(rec.coeffs)]
    for i in range(1, k):
        rows.append(tuple(1 if j == i - 1 else 0 for j in range(k)))
    return tuple(rows)


def digit_cap() -> int:
    """Bit-length cap for exact terms; REALIZE_DIGIT_CAP overrides the default."""
    raw = os.environ.get("REALIZE_DIGIT_CAP")
    return int(raw) if raw else DEFAULT_DIGIT_CAP


def estimated_bits(rec: LinearRecurrence, n: int) -> int:
    growth = math.log2(1 + sum(abs(a) for a in rec.coeffs))
    start = max(abs(u) for u in rec.initials).bit_length()
    return math.ceil(n * growth) + start


def exact_affordable(rec: LinearRecurrence, n: int) -> bool:
    return estimated_bits(rec, n) <= digit_cap()


def first_terms(rec: LinearRecurrence, count: int) -> List[int]:
    out = list(rec.initials[:count])
    coeffs = rec.coeffs
    k = rec.order
    while len(out) < count:
        out.append(sum(a * u for a, u in zip(coeffs, reversed(out[-k:]))))
    return out


def _matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], m: int = 0) -> Matrix:
    cols = list(zip(*B))
    if m:
        return tuple(tuple(sum(x * y for x, y in zip(row, col)) % m for col in cols) for row in A)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in A)


def _last_row_of_power_2x2(C: Matrix, e: int, m: int) -> Tuple[int, int]:
    (a, b), (c, d) = C
    x, y = 0, 1
    while e:
        if e & 1:
            x, y = (x * a + y * c) % m, (x * b + y * d) % m
        e >>= 1
        if e:
            bc = b * c
            a, b, c, d = (a * a + bc) % m, b * (a + d) % m, c * (a + d) % m, (d * d + bc) % m
    return x, y


def _last_row_of_power(C: Matrix, e: int, m: int = 0) -> Tuple[int, ...]:
    """Bottom row of C**e (reduced mod m when m > 0) by square-and-multiply."""
    k = len(C)
    if k == 2 and m:
        return _last_row_of_power_2x2(C, e, m)
    row = tuple(1 if j == k - 1 else 0 for j in range(k))
    P = C
    while e:
        if e & 1:
            row = _matmul((row,), P, m)[0]
        e >>= 1
        if e:
            P = _matmul(P, P, m)
    return row


@lru_cache(maxsize=1024)
def _term_exact_uncapped(rec: LinearRecurrence, n: int) -> int:
    if n <= LINEAR_ITERATION_LIMIT:
        return first_terms(rec, n)[-1]
    row = _last_row_of_power(companion_matrix(rec), n - 1)
    state = tuple(reversed(rec.initials))  # (u_k, ..., u_1)
    return sum(x * y for x, y in zip(row, state))


def term_exact(rec: LinearRecurrence, n: int) -> int:
    """u_n as an exact integer.

    Raises CostCapError when the estimated size exceeds ``digit_cap()``.
    """
    if n < 1:
        raise DomainError("terms are indexed from n = 1")
    k = rec.order
    if n <= k:
        return rec.initials[n - 1]
    if not exact_affordable(rec, n):
        raise CostCapError(
            f"u_{n} needs about {estimated_bits(rec, n)} bits, above the cap {digit_cap()}"
        )
    return _term_exact_uncapped(rec, n)


def term_mod(rec: LinearRecurrence, n: int, m: int) -> int:
    """u_n mod m for any index n >= 1, however large."""
    if n < 1:
        raise DomainError("terms are indexed from n = 1")
    if m < 1:
        raise DomainError("modulus must be positive")
    if m == 1:
        return 0
    k = rec.order
    if n <= k:
        return rec.initials[n - 1] % m
    C = tuple(tuple(x % m for x in row) for row in companion_matrix(rec))
    row = _last_row_of_power(C, n - 1, m)
    state = tuple(reversed(rec.initials))
    return sum(x * y for x, y in zip(row, state)) % m


def minimal_polynomial(terms: Sequence[int]) -> IntPolynomial:
    """Least-degree annihilating polynomial of the window, via exact
    Berlekamp-Massey over the rationals, scaled to a primitive integer
    polynomial with positive leading coefficient.

    A window of N terms certifies a degree L answer only when 2L <= N.
    """
    s = [Fraction(int(x)) for x in terms]
    N = len(s)
    if N == 0:
        raise NeedsMoreDataError("no terms supplied")
    C = [Fraction(1)]
    B = [Fraction(1)]
    L, shift, b = 0, 1, Fraction(1)
    for n in range(N):
        d = s[n] + sum(C[i] * s[n - i] for i in range(1, min(L, len(C) - 1) + 1))
        if d == 0:
            shift += 1
            continue
        coef = d / b
        T = list(C)
        if len(C) < len(B) + shift:
            C = C + [Fraction(0)] * (len(B) + shift - len(C))
        for i, bi in enumerate(B):
            C[i + shift] -= coef * bi
        if 2 * L <= n:
            L, B, b, shift = n + 1 - L, T, d, 1
        else:
            shift += 1
    if 2 * L > N:
        raise NeedsMoreDataError(f"{N} terms cannot certify linear complexity {L}; supply {2 * L}")
    C = (C + [Fraction(0)] * (L + 1))[: L + 1]
    reciprocal = [C[L - i] for i in range(L + 1)]
    denom = math.lcm(*(c.denominator for c in reciprocal))
    return IntPolynomial([int(c * denom) for c in reciprocal]).primitive()


@dataclass(frozen=True)
class HypothesisReport:
    simple_zeros: bool
    nonneg_coeffs: bool
    a_k_nonzero: bool
    not_pure_shift: bool
    positive_initials: bool
    minimal_order: bool

    @property
    def thm1_part_ii_ok(self) -> bool:
        return all(vars(self).values())

    @property
    def positivity_ok(self) -> bool:
        """The hypotheses behind the growth bounds lambda^(n-k) <= u_n <= lambda^(n+n0)."""
        return self.nonneg_coeffs and self.a_k_nonzero and self.not_pure_shift and self.positive_initials

    def failures(self) -> List[str]:
        return [name for name, ok in vars(self).items() if not ok]


def check_hypotheses(rec: LinearRecurrence) -> HypothesisReport:
    k = rec.order
    F = polyalg.char_poly(rec)
    return HypothesisReport(
        simple_zeros=polyalg.discriminant(F) != 0,
        nonneg_coeffs=all(a >= 0 for a in rec.coeffs),
        a_k_nonzero=rec.coeffs[-1] != 0,
        not_pure_shift=rec.coeffs != (0,) * (k - 1) + (1,),
        positive_initials=all(u >= 1 for u in rec.initials),
        minimal_order=minimal_polynomial(first_terms(rec, 2 * k)).degree == k,
    )
