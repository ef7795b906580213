import random

from doldkit.recurrence import make_recurrence

FIB = make_recurrence([1, 1], [1, 1])
LUCAS = make_recurrence([1, 1], [1, 3])
LINEAR = make_recurrence([2, -1], [1, 2])  # u_n = n
TRIB = make_recurrence([1, 1, 1], [1, 1, 2])


def random_recurrences(count, seed, orders=(1, 5), coeff_range=(-3, 3), init_range=(-5, 5)):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        k = rng.randint(*orders)
        coeffs = [rng.randint(*coeff_range) for _ in range(k)]
        if coeffs[-1] == 0:
            continue
        out.append(make_recurrence(coeffs, [rng.randint(*init_range) for _ in range(k)]))
    return out


ACCEPTANCE_LOG = []


def record(criterion, ok, detail=""):
    ACCEPTANCE_LOG.append((criterion, ok, detail))
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} {detail}")
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in sorted(ACCEPTANCE_LOG, key=lambda r: int(r[0])):
        terminalreporter.write_line(f"criterion {criterion:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
