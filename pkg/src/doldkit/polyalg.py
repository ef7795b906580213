"""Integer polynomials: resultants, discriminants, small-degree factoring,
Galois groups of irreducible polynomials of degree at most four, and exact
bisection for the dominant real root.

Coefficients are stored lowest degree first, so ``IntPolynomial([-1, -1, 1])``
is ``X^2 - X - 1``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, List, Optional, Sequence, Tuple

from .arith import divisors
from .errors import CostCapError, DomainError, HypothesisViolation, UnsupportedInputError

if TYPE_CHECKING:
    from .recurrence import LinearRecurrence


class IntPolynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: Tuple[int, ...] = tuple(c)

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPolynomial":
        return cls([0] * degree + [coeff])

    @classmethod
    def from_roots(cls, roots: Sequence[int]) -> "IntPolynomial":
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPolynomial([other])
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial([x + y for x, y in zip(a, b)])

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial([-x for x in self.coeffs])

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial([x * other for x in self.coeffs])
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPolynomial":
        result = IntPolynomial([1])
        for _ in range(e):
            result = result * self
        return result

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def primitive(self) -> "IntPolynomial":
        """Divide out the content and make the leading coefficient positive."""
        g = self.content()
        if g == 0:
            return self
        if self.lc < 0:
            g = -g
        return IntPolynomial([c // g for c in self.coeffs])

    def exact_div(self, d: int) -> "IntPolynomial":
        return IntPolynomial([c // d for c in self.coeffs])

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                power = "X" if i == 1 else f"X^{i}"
                body = power if mag == 1 else f"{mag}*{power}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def pseudo_remainder(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """Remainder of ``lc(g)^(deg f - deg g + 1) * f`` on division by ``g``."""
    if g.is_zero():
        raise DomainError("division by the zero polynomial")
    delta = f.degree - g.degree
    if delta < 0:
        return f
    r = list(f.coeffs)
    lg, dg = g.lc, g.degree
    for _ in range(delta + 1):
        if len(r) - 1 < dg:
            r = [c * lg for c in r]
            continue
        top = r[-1]
        shift = len(r) - 1 - dg
        r = [c * lg for c in r]
        for j, gc in enumerate(g.coeffs):
            r[shift + j] -= top * gc
        r.pop()
    return IntPolynomial(r)


def divmod_rational(f: IntPolynomial, g: IntPolynomial) -> Tuple[List[Fraction], List[Fraction]]:
    """Quotient and remainder over the rationals, as coefficient lists."""
    if g.is_zero():
        raise DomainError("division by the zero polynomial")
    r = [Fraction(c) for c in f.coeffs]
    q = [Fraction(0)] * max(f.degree - g.degree + 1, 0)
    while len(r) - 1 >= g.degree and any(r):
        shift = len(r) - 1 - g.degree
        coef = r[-1] / g.lc
        q[shift] = coef
        for j, gc in enumerate(g.coeffs):
            r[shift + j] -= coef * gc
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return q, r


def exact_quotient(f: IntPolynomial, g: IntPolynomial) -> Optional[IntPolynomial]:
    """``f / g`` when ``g`` divides ``f`` in Z[X], else None."""
    q, r = divmod_rational(f, g)
    if any(r) or any(c.denominator != 1 for c in q):
        return None
    return IntPolynomial([int(c) for c in q])


def gcd(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """Greatest common divisor up to content: primitive, positive leading coefficient."""
    a, b = f.primitive(), g.primitive()
    while not b.is_zero():
        r = pseudo_remainder(a, b)
        a, b = b, r.primitive()
    if a.degree == 0:
        return IntPolynomial([1])
    return a.primitive()


def resultant(f: IntPolynomial, g: IntPolynomial) -> int:
    """Res(f, g) = lc(f)^deg(g) * prod g(alpha) over the roots alpha of f.

    Computed with the subresultant pseudo-remainder sequence so that all
    intermediate divisions are exact.
    """
    if f.is_zero() or g.is_zero():
        raise DomainError("resultant of the zero polynomial")
    A, B = f, g
    sign = 1
    if A.degree < B.degree:
        A, B = B, A
        if A.degree % 2 and B.degree % 2:
            sign = -1
    if B.degree == 0:
        return sign * B.lc**A.degree
    a, b = A.content(), B.content()
    A, B = A.exact_div(a), B.exact_div(b)
    t = a**B.degree * b**A.degree
    g_, h = 1, 1
    while True:
        delta = A.degree - B.degree
        if A.degree % 2 and B.degree % 2:
            sign = -sign
        R = pseudo_remainder(A, B)
        A = B
        if R.is_zero():
            return 0
        B = R.exact_div(g_ * h**delta)
        g_ = A.lc
        h = g_**delta // h ** (delta - 1) if delta >= 1 else h
        if B.degree == 0:
            break
    h = B.lc**A.degree // h ** (A.degree - 1)
    return sign * t * h


def discriminant(f: IntPolynomial) -> int:
    d = f.degree
    if d < 1:
        raise DomainError("discriminant needs degree >= 1")
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    res = resultant(f, f.derivative())
    q, r = divmod(res, f.lc)
    assert r == 0
    return sign * q


def char_poly(rec: "LinearRecurrence") -> IntPolynomial:
    """X^k - a_1 X^(k-1) - ... - a_k for the recurrence's coefficients."""
    return IntPolynomial([-a for a in reversed(rec.coeffs)] + [1])


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


# --- factorization up to degree four -------------------------------------


def _rational_root_candidates(f: IntPolynomial) -> List[Tuple[int, int]]:
    """Candidate roots p/q as (p, q) with q > 0, excluding zero."""
    c0 = next(c for c in f.coeffs if c != 0)
    cands = set()
    for p in divisors(abs(c0)):
        for q in divisors(abs(f.lc)):
            if math.gcd(p, q) == 1:
                cands.add((p, q))
                cands.add((-p, q))
    return sorted(cands)


def factor_small(f: IntPolynomial) -> List[Tuple[IntPolynomial, int]]:
    """Factor ``f`` of degree 1..4 into irreducibles over the integers.

    Returns ``(factor, multiplicity)`` pairs; factors have positive leading
    coefficient, and a constant factor carries the content and sign when
    they are not trivial, so the product reproduces ``f`` exactly.
    """
    if f.degree > 4:
        raise UnsupportedInputError(f"factor_small supports degree <= 4, got {f.degree}")
    if f.degree < 1:
        raise DomainError("factor_small needs degree >= 1")
    out: List[Tuple[IntPolynomial, int]] = []
    unit = f.content() * (1 if f.lc > 0 else -1)
    rest = f.exact_div(unit)

    # Linear factors, starting with powers of X.
    zeros = 0
    while rest.coeffs[0] == 0:
        rest = IntPolynomial(rest.coeffs[1:])
        zeros += 1
    if zeros:
        out.append((IntPolynomial([0, 1]), zeros))
    for p, q in _rational_root_candidates(rest) if rest.degree >= 1 else []:
        lin = IntPolynomial([-p, q])
        mult = 0
        while rest.degree >= 1:
            quo = exact_quotient(rest, lin)
            if quo is None:
                break
            rest = quo
            mult += 1
        if mult:
            out.append((lin, mult))

    if rest.degree == 4:
        quad = _quadratic_factor(rest)
        if quad is not None:
            other = exact_quotient(rest, quad)
            if other == quad:
                out.append((quad, 2))
            else:
                out.extend(sorted([(quad, 1), (other, 1)], key=lambda t: t[0].coeffs))
            rest = IntPolynomial([1])
    if rest.degree >= 1:
        out.append((rest, 1))
    elif rest.coeffs != (1,):
        unit *= rest.coeffs[0]
    if unit != 1:
        out.insert(0, (IntPolynomial([unit]), 1))
    return out


def _quadratic_factor(f: IntPolynomial) -> Optional[IntPolynomial]:
    """A quadratic factor of a quartic with no rational roots, or None.

    A factor g = aX^2 + bX + c has a | lc(f), c | f(0) and g(1) | f(1), which
    pins b = g(1) - a - c to a finite set.
    """
    f0, f1, fm1 = f.coeffs[0], f(1), f(-1)
    for a in divisors(abs(f.lc)):
        for c_abs in divisors(abs(f0)):
            for c in (c_abs, -c_abs):
                for v_abs in divisors(abs(f1)):
                    for v in (v_abs, -v_abs):
                        b = v - a - c
                        at_minus_one = a - b + c
                        if at_minus_one == 0 or fm1 % at_minus_one != 0:
                            continue
                        g = IntPolynomial([c, b, a])
                        if exact_quotient(f, g) is not None:
                            return g
    return None


def is_irreducible(f: IntPolynomial) -> bool:
    facs = [(g, m) for g, m in factor_small(f) if g.degree >= 1]
    return len(facs) == 1 and facs[0][1] == 1


# --- Galois groups --------------------------------------------------------


class GaloisTag(str, enum.Enum):
    TRIVIAL = "TRIVIAL"
    C2 = "C2"
    C3 = "C3"
    S3 = "S3"
    C4 = "C4"
    V4 = "V4"
    D4 = "D4"
    A4 = "A4"
    S4 = "S4"
    UNKNOWN = "UNKNOWN"


_GROUP_TABLE = {
    GaloisTag.TRIVIAL: (1, 1),
    GaloisTag.C2: (2, 2),
    GaloisTag.C3: (3, 3),
    GaloisTag.S3: (6, 6),
    GaloisTag.C4: (4, 4),
    GaloisTag.V4: (4, 2),
    GaloisTag.D4: (8, 4),
    GaloisTag.A4: (12, 6),
    GaloisTag.S4: (24, 12),
}


@dataclass(frozen=True)
class GaloisInfo:
    tag: GaloisTag
    order: Optional[int]
    exponent: Optional[int]
    method: str  # discriminant_test | resolvent_cubic | user_supplied | fallback_factorial

    @classmethod
    def from_tag(cls, tag: GaloisTag, method: str) -> "GaloisInfo":
        order, exponent = group_constants(tag)
        return cls(tag, order, exponent, method)

    @classmethod
    def unknown(cls) -> "GaloisInfo":
        return cls(GaloisTag.UNKNOWN, None, None, "fallback_factorial")


def group_constants(tag) -> Tuple[int, int]:
    """(order, exponent) of the named group."""
    tag = GaloisTag(tag)
    if tag is GaloisTag.UNKNOWN:
        raise DomainError("group constants of an unknown group")
    return _GROUP_TABLE[tag]


def _monic_integral(f: IntPolynomial) -> IntPolynomial:
    """c^(n-1) f(X/c): monic, integral, same splitting field."""
    c, n = f.lc, f.degree
    return IntPolynomial([f.coeffs[i] * c ** (n - 1 - i) for i in range(n)] + [1])


def resolvent_cubic(f: IntPolynomial) -> IntPolynomial:
    """Cubic resolvent of the monic quartic X^4 + aX^3 + bX^2 + cX + d.

    Its roots are a1a2 + a3a4, a1a3 + a2a4, a1a4 + a2a3.
    """
    d, c, b, a = f.coeffs[:4]
    return IntPolynomial([-(a * a * d - 4 * b * d + c * c), a * c - 4 * d, -b, 1])


def _integer_roots(f: IntPolynomial) -> List[int]:
    """Distinct integer roots of a monic integer polynomial."""
    roots = []
    if f.coeffs[0] == 0:
        roots.append(0)
    c0 = next(c for c in f.coeffs if c != 0)
    for p in divisors(abs(c0)):
        for r in (p, -p):
            if f(r) == 0:
                roots.append(r)
    return sorted(set(roots))


def galois_group(f: IntPolynomial) -> GaloisInfo:
    """Galois group of an irreducible polynomial of degree 1 to 4.

    Quartic branch table on the resolvent cubic R and the discriminant D:

    ======================  ==============  =====
    rational roots of R     D a square?      G
    ======================  ==============  =====
    none                    no              S4
    none                    yes             A4
    three                   (always yes)    V4
    one, say r              (never)         C4 or D4
    ======================  ==============  =====

    With one root r, G = C4 exactly when both X^2 - rX + d and
    X^2 + aX + (b - r) split over Q(sqrt D); a quadratic of discriminant E
    splits there iff E or E*D is a rational square.
    """
    if f.degree < 1 or f.degree > 4:
        raise DomainError(f"galois_group supports degree 1..4, got {f.degree}")
    if not is_irreducible(f):
        raise DomainError(f"{f} is reducible")
    if f.degree == 1:
        return GaloisInfo.from_tag(GaloisTag.TRIVIAL, "discriminant_test")
    if f.degree == 2:
        return GaloisInfo.from_tag(GaloisTag.C2, "discriminant_test")
    disc = discriminant(f)
    if f.degree == 3:
        tag = GaloisTag.C3 if is_square(disc) else GaloisTag.S3
        return GaloisInfo.from_tag(tag, "discriminant_test")
    g = _monic_integral(f)
    disc = discriminant(g)
    d, c, b, a = g.coeffs[:4]
    roots = _integer_roots(resolvent_cubic(g))
    if not roots:
        tag = GaloisTag.A4 if is_square(disc) else GaloisTag.S4
    elif len(roots) == 3:
        tag = GaloisTag.V4
    else:
        r = roots[0]
        splits = all(is_square(e) or is_square(e * disc) for e in (r * r - 4 * d, a * a - 4 * (b - r)))
        tag = GaloisTag.C4 if splits else GaloisTag.D4
    return GaloisInfo.from_tag(tag, "resolvent_cubic")


FACTORIAL_CAP = 2**64


def fallback_s(k: int) -> int:
    """k!, which is a multiple of the Galois exponent and at least the order."""
    if k < 1:
        raise DomainError("fallback_s needs k >= 1")
    value = math.factorial(k)
    if value > FACTORIAL_CAP:
        raise CostCapError(f"{k}! exceeds the exponent cap")
    return value


# --- dominant real root ---------------------------------------------------


@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise DomainError("interval with lo > hi")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __float__(self) -> float:
        return float((self.lo + self.hi) / 2)


def dominant_root(f: IntPolynomial, t: int = 64) -> RationalInterval:
    """Bracket the real root above 1 to width at most 2**-t by exact bisection.

    Requires f(1) < 0 and a positive leading coefficient; the starting
    bracket is [1, 1 + sum |c_i| / lc].
    """
    if f.lc <= 0:
        raise HypothesisViolation("dominant_root needs a positive leading coefficient")
    if f(1) >= 0:
        raise HypothesisViolation(f"dominant_root needs F(1) < 0, got F(1) = {f(1)}")
    lo = Fraction(1)
    hi = 1 + Fraction(sum(abs(c) for c in f.coeffs[:-1]), f.lc)
    target = Fraction(1, 2**t)
    while hi - lo > target:
        mid = (lo + hi) / 2
        v = f(mid)
        if v < 0:
            lo = mid
        elif v > 0:
            hi = mid
        else:
            # Exact rational root: keep it centred while halving the width.
            lo, hi = (lo + mid) / 2, (mid + hi) / 2
    return RationalInterval(lo, hi)
