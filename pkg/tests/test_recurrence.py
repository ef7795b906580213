from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from doldkit import polyalg, recurrence
from doldkit.errors import CostCapError, DomainError, NeedsMoreDataError
from doldkit.polyalg import IntPolynomial
from doldkit.realize import growth_bounds
from doldkit.recurrence import make_recurrence, term_exact, term_mod

from conftest import FIB, LINEAR, LUCAS, random_recurrences


def test_construction():
    assert FIB.order == 2 and FIB.coeffs == (1, 1)
    assert FIB.terms(8) == [1, 1, 2, 3, 5, 8, 13, 21]
    assert LUCAS.terms(5) == [1, 3, 4, 7, 11]
    assert LINEAR.terms(6) == [1, 2, 3, 4, 5, 6]
    with pytest.raises(DomainError):
        make_recurrence([1, 1], [1])
    with pytest.raises(DomainError):
        make_recurrence([], [])


@pytest.mark.parametrize(
    "k, initials", [(2, (1, 1)), (3, (1, 1, 2)), (4, (1, 1, 2, 4)), (5, (1, 1, 2, 4, 8))]
)
def test_kth_fibonacci(k, initials):
    rec = recurrence.kth_fibonacci_recurrence(k)
    assert rec.coeffs == (1,) * k and rec.initials == initials
    # the stored window continues the zero-seeded sequence
    seeded = [0] * (k - 1) + [1]
    while len(seeded) < k - 1 + 30:
        seeded.append(sum(seeded[-k:]))
    assert rec.terms(30) == seeded[k - 1 :]


def test_kth_fibonacci_domain():
    with pytest.raises(DomainError):
        recurrence.kth_fibonacci_recurrence(1)


def test_lucas_type_window():
    rec = recurrence.lucas_type(3, 2)  # u_{n+2} = 3u_{n+1} - 2u_n, u_n = 2^n - 1
    assert rec.terms(6) == [1, 3, 7, 15, 31, 63]
    assert polyalg.char_poly(rec) == IntPolynomial([2, -3, 1])


def test_companion_matrix():
    C = recurrence.companion_matrix(make_recurrence([2, 3, 5], [0, 0, 1]))
    assert C == ((2, 3, 5), (1, 0, 0), (0, 1, 0))


def test_term_exact_examples():
    assert term_exact(FIB, 10) == 55
    assert term_exact(LUCAS, 4) == 7
    assert term_exact(LINEAR, 37) == 37
    with pytest.raises(DomainError):
        term_exact(FIB, 0)


def test_term_exact_matrix_path_agrees_with_iteration():
    n = recurrence.LINEAR_ITERATION_LIMIT + 17
    a, b = 1, 1
    for _ in range(n - 2):
        a, b = b, a + b
    assert term_exact(FIB, n) == b
    trib = make_recurrence([1, 1, 1], [1, 1, 2])
    assert term_exact(trib, n) == recurrence.first_terms(trib, n)[-1]


def test_cost_cap(monkeypatch):
    monkeypatch.setenv("REALIZE_DIGIT_CAP", "1000")
    assert recurrence.digit_cap() == 1000
    assert not recurrence.exact_affordable(FIB, 5000)
    with pytest.raises(CostCapError):
        term_exact(FIB, 5000)
    # modular evaluation is unaffected
    assert term_mod(FIB, 5000, 1000) == recurrence.first_terms(FIB, 5000)[-1] % 1000


def test_term_mod_examples():
    assert term_mod(FIB, 10, 7) == 6
    for rec in (FIB, LUCAS, LINEAR):
        for m in (2, 3, 97):
            assert term_mod(rec, 1, m) == rec.initials[0] % m


def pisano(m):
    a, b, i = 0, 1, 0
    while True:
        a, b, i = b, (a + b) % m, i + 1
        if (a, b) == (0, 1):
            return i


def test_term_mod_huge_index_against_pisano():
    period = pisano(101)
    assert period == 50
    n = 10**30
    expected = recurrence.first_terms(FIB, n % period or period)[-1] % 101
    assert term_mod(FIB, n, 101) == expected
    for n in (10**30 + 1, 3**60, 2**127 - 1):
        r = n % period or period
        assert term_mod(FIB, n, 101) == recurrence.first_terms(FIB, r)[-1] % 101


def test_term_mod_corpus():
    """Modular and exact evaluation agree for n <= 300 and m in 2..50."""
    for rec in random_recurrences(30, seed=1):
        exact = recurrence.first_terms(rec, 300)
        for m in range(2, 51):
            for n in (1, 2, 3, 5, 8, 13, 37, 64, 99, 128, 199, 255, 300):
                assert term_mod(rec, n, m) == exact[n - 1] % m


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.integers(-3, 3), min_size=1, max_size=5),
    st.lists(st.integers(-5, 5), min_size=5, max_size=5),
    st.integers(1, 300),
    st.integers(2, 50),
)
def test_term_mod_property(coeffs, initials, n, m):
    rec = make_recurrence(coeffs, initials[: len(coeffs)])
    assert term_mod(rec, n, m) == term_exact(rec, n) % m


def test_minimal_polynomial_examples():
    assert recurrence.minimal_polynomial([1, 1, 2, 3, 5, 8]) == IntPolynomial([-1, -1, 1])
    assert recurrence.minimal_polynomial([1, 2, 3, 4, 5, 6]) == IntPolynomial([1, -2, 1])
    assert recurrence.minimal_polynomial([7, 7, 7, 7]) == IntPolynomial([-1, 1])
    with pytest.raises(NeedsMoreDataError):
        recurrence.minimal_polynomial([])
    with pytest.raises(NeedsMoreDataError):
        recurrence.minimal_polynomial([1, 2, 5])  # would need degree 2 from 3 terms
    assert recurrence.minimal_polynomial([1, 2, 4]) == IntPolynomial([-2, 1])


def test_minimal_polynomial_detects_non_minimal_order():
    # order 3 recurrence whose terms satisfy the Fibonacci relation
    padded = make_recurrence([1, 1, 0], [1, 1, 2])
    assert recurrence.minimal_polynomial(padded.terms(6)).degree == 2


def test_minpoly_divides_charpoly_corpus():
    for rec in random_recurrences(200, seed=3):
        window = recurrence.first_terms(rec, 2 * rec.order)
        if not any(window):
            continue
        mp = recurrence.minimal_polynomial(window)
        assert mp.degree <= rec.order
        assert polyalg.exact_quotient(polyalg.char_poly(rec), mp) is not None


def test_check_hypotheses_examples():
    report = recurrence.check_hypotheses(FIB)
    assert report.thm1_part_ii_ok and report.failures() == []
    shift = recurrence.check_hypotheses(make_recurrence([0, 1], [1, 1]))
    assert not shift.not_pure_shift
    assert "not_pure_shift" in shift.failures()
    linear = recurrence.check_hypotheses(LINEAR)
    assert not linear.simple_zeros
    neg = recurrence.check_hypotheses(make_recurrence([1, -1], [1, 1]))
    assert not neg.nonneg_coeffs and not neg.positivity_ok
    assert not recurrence.check_hypotheses(make_recurrence([1, 0], [1, 1])).a_k_nonzero
    assert not recurrence.check_hypotheses(make_recurrence([1, 1], [0, 1])).positive_initials
    assert not recurrence.check_hypotheses(make_recurrence([1, 1, 0], [1, 1, 2])).minimal_order


def positive_recurrences(count, seed):
    import random

    rng = random.Random(seed)
    out = []
    while len(out) < count:
        k = rng.randint(1, 4)
        coeffs = [rng.randint(0, 3) for _ in range(k)]
        if coeffs[-1] == 0 or coeffs == [0] * (k - 1) + [1]:
            continue
        out.append(make_recurrence(coeffs, [rng.randint(1, 9) for _ in range(k)]))
    return out


def test_growth_bounds_corpus():
    """lambda^(n-k) <= u_n <= lambda^(n+n0) for n <= 200, with exact terms."""
    for rec in positive_recurrences(40, seed=9):
        b = growth_bounds(rec)
        lo, hi = b.lam.lo, b.lam.hi
        terms = rec.terms(200)
        k = rec.order
        umax = max(rec.initials)
        # n0 is the least j with lambda_lo^j >= max(u_i), hence >= ceil(log umax / log lambda)
        assert lo**b.n0 >= umax and (b.n0 == 0 or lo ** (b.n0 - 1) < umax)
        for n, u in enumerate(terms, start=1):
            assert lo ** (n - k) <= u <= hi ** (n + b.n0)


def test_growth_bounds_anchor_range():
    # u_1..u_k >= 1 >= lambda^(n-k) for n in 1..k
    for rec in positive_recurrences(40, seed=10):
        b = growth_bounds(rec)
        for n in range(1, rec.order + 1):
            assert b.lam.lo ** (n - rec.order) <= 1 <= rec.initials[n - 1]
