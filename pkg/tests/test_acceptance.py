"""Acceptance criteria, each run at its stated scale and time budget."""

import math
import random
import time

import pytest

from doldkit import arith, polyalg, realize, witness
from doldkit.polyalg import GaloisTag, IntPolynomial
from doldkit.realize import SampledSequence, Sign, Status
from doldkit.recurrence import first_terms, kth_fibonacci_recurrence, make_recurrence, term_mod

from conftest import FIB, LINEAR, random_recurrences, record

pytestmark = pytest.mark.acceptance


def test_criterion_01_lucas_golden_mean():
    start = time.perf_counter()
    counts = witness.sft_counts(witness.GOLDEN_MEAN, 2000)
    verdict = realize.check_realizable(counts, 2000)
    elapsed = time.perf_counter() - start
    ok = counts[:4] == [1, 3, 4, 7] and verdict.status is Status.PASS and elapsed < 10
    record(1, ok, f"head={counts[:4]} verdict={verdict.status.value} time={elapsed:.2f}s")
    assert ok


def test_criterion_02_powers_of_two():
    halves = [2 ** (n - 1) for n in range(1, 2001)]
    doubled = [2**n for n in range(1, 2001)]
    fail = realize.check_realizable(halves, 2000)
    witness_sum = fail.first_issue.detail.get("dold_sum") if fail.first_issue else None
    passing = realize.check_realizable(doubled, 2000)
    M = realize.minimal_multiplier(halves, 100, 10**6)
    ok = (
        fail.status is Status.FAIL
        and fail.first_issue.n == 2
        and fail.first_issue.condition == "D"
        and witness_sum == 1
        and passing.status is Status.PASS
        and M == 2
    )
    record(2, ok, f"fail_at={fail.first_issue.n} sum={witness_sum} doubled={passing.status.value} M={M}")
    assert ok


def test_criterion_03_five_fib_squares():
    seq = SampledSequence(FIB, 5, 2)
    start = time.perf_counter()
    d_ok = all(realize.dold_check_mod(seq, n) for n in range(1, 10**4 + 1))
    d_time = time.perf_counter() - start
    start = time.perf_counter()
    signs = [realize.sign_check(seq, n, "auto") for n in range(1, 10**4 + 1)]
    s_time = time.perf_counter() - start
    unknown = sum(s is Sign.UNKNOWN for s in signs)
    neg = sum(s is Sign.NEG for s in signs)
    ok = d_ok and d_time < 10 and unknown == 0 and neg == 0
    record(3, ok, f"D={d_ok} ({d_time:.2f}s) S: neg={neg} unknown={unknown} ({s_time:.2f}s)")
    assert ok


def test_criterion_04_fibonacci_params():
    p = realize.derive_params(FIB)
    got = (p.delta_F, p.delta_K, p.galois.order, p.galois.exponent, p.M, p.s_min, p.ell0)
    ok = got == (5, 5, 2, 2, 5, 2, 1)
    record(4, ok, f"(dF, dK, N, e, M, s_min, ell0)={got}")
    assert ok


def test_criterion_05_discriminants():
    d1 = polyalg.discriminant(IntPolynomial([-1, -1, 1]))
    d2 = polyalg.discriminant(IntPolynomial([-2, 0, 1]) * IntPolynomial([-5, 0, 0, 1]))
    ok = d1 == 5 and d2 == -1560600 == -(2**3) * 3**3 * 5**2 * 17**2
    record(5, ok, f"disc(X^2-X-1)={d1} disc((X^2-2)(X^3-5))={d2}")
    assert ok


def test_criterion_06_u_n_equals_n():
    primes = [p for p in range(2, 51) if arith.is_prime(p)]
    plain = SampledSequence(LINEAR, 1, 2)
    failures = {p: realize.dold_sum_exact(plain, p) for p in primes if not realize.dold_check_mod(plain, p)}
    all_fail = sorted(failures) == primes and all(v == p * p - 1 for p, v in failures.items())
    six = SampledSequence(LINEAR, 6, 2)
    six_witnesses = {
        p: realize.dold_sum_exact(six, p) for p in primes if p not in (2, 3) and not realize.dold_check_mod(six, p)
    }
    ok = all_fail and bool(six_witnesses)
    first = min(six_witnesses) if six_witnesses else None
    record(6, ok, f"M=1 fails at all {len(primes)} primes; M=6 witness p={first} sum={six_witnesses.get(first)}")
    assert ok


def test_criterion_07_theorem2():
    M3 = abs(polyalg.discriminant(polyalg.char_poly(kth_fibonacci_recurrence(3))))
    start = time.perf_counter()
    v2 = realize.verify_theorem2(2, 1, 2000)
    v3 = realize.verify_theorem2(3, 1, 300)
    elapsed = time.perf_counter() - start
    ok = v2.status is Status.PASS and v3.status is Status.PASS and M3 == 44 and elapsed < 60
    record(7, ok, f"k=2 {v2.status.value}, k=3 {v3.status.value}, M3={M3}, time={elapsed:.2f}s")
    assert ok


def test_criterion_08_theorem3_grid():
    start = time.perf_counter()
    bad = []
    sharper_bad = []
    count = 0
    for P in range(-5, 6):
        for Q in range(-5, 6):
            if (P, Q) == (0, 0) or P * P == 4 * Q:
                continue
            result = realize.verify_theorem3(P, Q, 500)
            count += 1
            if not result.verdict.passed:
                bad.append((P, Q))
            if Q == 0 and not result.sharper.passed:
                sharper_bad.append(P)
    zero_one = realize.verify_theorem3(0, 1, 500)
    elapsed = time.perf_counter() - start
    ok = not bad and not sharper_bad and zero_one.status is Status.PASS and zero_one.multiplier == 4 and elapsed < 120
    record(8, ok, f"{count} pairs, failures={bad}, sharper failures={sharper_bad}, time={elapsed:.2f}s")
    assert ok


def test_criterion_09_odd_exponents():
    missing = []
    witnesses = {}
    for s in (1, 3):
        for M in range(1, 51):
            v = realize.check_realizable(SampledSequence(FIB, M, s), 200, conditions="D")
            if v.status is not Status.FAIL:
                missing.append((s, M))
            else:
                witnesses[(s, M)] = v.first_issue.n
    ok = not missing
    record(9, ok, f"no failing n for {missing}; largest first witness n={max(witnesses.values())}")
    assert ok


def test_criterion_10_random_maps():
    agree = 0
    for seed in range(100):
        size = 1 + seed % 12
        graph, counts, census = witness.random_map_counts(size, seed, 24)
        verdict = realize.check_realizable(counts, 24)
        if verdict.status is Status.PASS and realize.orbit_census(counts, 24).counts == census:
            agree += 1
    ok = agree == 100
    record(10, ok, f"{agree}/100 maps agree")
    assert ok


# --- criterion 11: the property suites on seeded corpora --------------------------------


def _mobius_round_trip():
    rng = random.Random(0)
    for _ in range(5):
        a = [rng.randint(-10**6, 10**6) for _ in range(500)]
        g = [sum(arith.mobius(d // e) * a[e - 1] for e in arith.divisors(d)) for d in range(1, 501)]
        if any(sum(g[d - 1] for d in arith.divisors(n)) != a[n - 1] for n in range(1, 501)):
            return False
    return all(sum(arith.mobius(d) for d in arith.divisors(n)) == (n == 1) for n in range(1, 501))


def _mod_exact_agreement():
    for rec in random_recurrences(20, seed=77):
        exact = first_terms(rec, 300)
        for m in range(2, 51):
            if any(term_mod(rec, n, m) != exact[n - 1] % m for n in range(1, 301)):
                return False
    seq = SampledSequence(make_recurrence([1, 2], [1, 1]), 3, 2)
    return all(realize.dold_check_mod(seq, n) == (realize.dold_sum_exact(seq, n) % n == 0) for n in range(1, 201))


def _discriminant_product():
    rng = random.Random(1)
    for _ in range(300):
        f = IntPolynomial([rng.randint(-5, 5) for _ in range(rng.randint(1, 3))] + [1])
        g = IntPolynomial([rng.randint(-5, 5) for _ in range(rng.randint(1, 3))] + [1])
        lhs = polyalg.discriminant(f * g)
        if lhs != polyalg.discriminant(f) * polyalg.discriminant(g) * polyalg.resultant(f, g) ** 2:
            return False
        if (polyalg.discriminant(f) == 0) != (polyalg.gcd(f, f.derivative()).degree >= 1):
            return False
    return True


def _galois_cubic():
    rng = random.Random(2)
    checked = 0
    while checked < 200:
        f = IntPolynomial([rng.randint(-20, 20) for _ in range(3)] + [1])
        if not polyalg.is_irreducible(f):
            continue
        d = polyalg.discriminant(f)
        square = d > 0 and math.isqrt(d) ** 2 == d
        if polyalg.galois_group(f).tag is not (GaloisTag.C3 if square else GaloisTag.S3):
            return False
        checked += 1
    return True


def _monomial_sampling():
    rng = random.Random(3)
    done = 0
    while done < 8:
        d = rng.randint(1, 3)
        A = witness.TransitionMatrix.of([[rng.randint(0, 2) for _ in range(d)] for _ in range(d)])
        if not any(witness.sft_counts(A, 2 * d)):
            continue
        rec = witness.trace_recurrence(A)
        for s in (1, 2, 3):
            if realize.check_realizable(SampledSequence(rec, 1, s), 60).status is not Status.PASS:
                return False
        done += 1
    return True


def _bound_soundness():
    rng = random.Random(4)
    tested = 0
    while tested < 30:
        k = rng.randint(1, 3)
        coeffs = [rng.randint(0, 2) for _ in range(k)]
        if coeffs[-1] == 0 or coeffs == [0] * (k - 1) + [1]:
            continue
        rec = make_recurrence(coeffs, [rng.randint(1, 6) for _ in range(k)])
        for s in (1, 2):
            seq = SampledSequence(rec, rng.randint(1, 9), s)
            for n in range(2, 41):
                if realize.sign_check(seq, n, "bound") is Sign.NONNEG and realize.dold_sum_exact(seq, n) < 0:
                    return False
        tested += 1
    return True


def test_criterion_11_property_suites():
    suites = {
        "mobius": _mobius_round_trip,
        "mod_exact": _mod_exact_agreement,
        "disc_product": _discriminant_product,
        "galois_cubic": _galois_cubic,
        "monomial_sampling": _monomial_sampling,
        "bound_soundness": _bound_soundness,
    }
    results = {name: fn() for name, fn in suites.items()}
    ok = all(results.values())
    record(11, ok, " ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in results.items()))
    assert ok
