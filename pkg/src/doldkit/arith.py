"""Elementary integer arithmetic: factorization, divisors, Möbius function.

Every function here is pure. Factorizations are cached because the
realizability scans ask for the same small integers over and over.
"""

from __future__ import annotations

import math
from functools import lru_cache, reduce
from typing import List, Tuple

from .errors import DomainError, UnsupportedInputError

MAX_FACTOR_INPUT = 2**63
_TRIAL_LIMIT = 2**16

# Deterministic Miller-Rabin witnesses for every n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

Factorization = List[Tuple[int, int]]


def _small_primes(limit: int) -> List[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


_PRIMES = _small_primes(_TRIAL_LIMIT)


def is_prime(n: int) -> bool:
    """Deterministic primality test for n < 2**63 (and well beyond)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """Return a nontrivial factor of the odd composite ``n`` (Brent's variant)."""
    for c in range(1, n):
        y, r, q, g = 2, 1, 1, 1
        m = 128
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"Pollard rho failed on {n}")  # pragma: no cover


def _split(n: int, out: dict) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_rho(n)
    _split(d, out)
    _split(n // d, out)


@lru_cache(maxsize=1 << 16)
def _factor_cached(n: int) -> Tuple[Tuple[int, int], ...]:
    result = []
    for p in _PRIMES:
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            result.append((p, e))
    if n > 1:
        if n < _TRIAL_LIMIT * _TRIAL_LIMIT:
            result.append((n, 1))
        else:
            rest: dict = {}
            _split(n, rest)
            result.extend(sorted(rest.items()))
    return tuple(result)


def factor(n: int) -> Factorization:
    """Prime factorization of ``n`` as ascending ``(prime, exponent)`` pairs.

    >>> factor(12)
    [(2, 2), (3, 1)]
    >>> factor(1)
    []
    """
    if n < 1:
        raise DomainError(f"factor expects a positive integer, got {n}")
    if n > MAX_FACTOR_INPUT:
        raise UnsupportedInputError(f"{n} exceeds the supported range 2**63")
    return list(_factor_cached(n))


def mobius(n: int) -> int:
    fac = factor(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def divisors(n: int) -> List[int]:
    """All positive divisors of ``n`` in ascending order."""
    divs = [1]
    for p, e in factor(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def squarefree_divisors(n: int) -> List[Tuple[int, int]]:
    """Pairs ``(d, mobius(d))`` for the squarefree divisors ``d`` of ``n``.

    These are the only divisors contributing to a Möbius-weighted sum.
    """
    pairs = [(1, 1)]
    for p, _ in factor(n):
        pairs += [(d * p, -mu) for d, mu in pairs]
    return sorted(pairs)


def num_divisors(n: int) -> int:
    return reduce(lambda acc, pe: acc * (pe[1] + 1), factor(n), 1)


def radical(n: int) -> int:
    return math.prod(p for p, _ in factor(n))


def least_prime_factor(n: int) -> int:
    if n < 2:
        raise DomainError("least_prime_factor needs n >= 2")
    return factor(n)[0][0]


def valuation(n: int, p: int) -> int:
    """Exponent of the prime ``p`` in the nonzero integer ``n``."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if n == 0:
        raise DomainError("valuation of 0 is undefined")
    n = abs(n)
    w = 0
    while n % p == 0:
        n //= p
        w += 1
    return w


def lcm(*values: int) -> int:
    return math.lcm(*(abs(v) for v in values))
