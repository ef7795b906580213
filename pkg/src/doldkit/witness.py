"""Sequences that are realizable by construction.

Trace sequences of nonnegative integer matrices count periodic points of
subshifts of finite type; fixed-point counts of maps on finite sets are
realizable by definition. Both feed the oracle tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, Sequence, Tuple

from .errors import DomainError
from .recurrence import LinearRecurrence, minimal_polynomial


@dataclass(frozen=True)
class TransitionMatrix:
    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if any(len(row) != len(rows) for row in rows):
            raise DomainError("transition matrix must be square")
        if any(x < 0 for row in rows for x in row):
            raise DomainError("transition matrix entries must be nonnegative")

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]]) -> "TransitionMatrix":
        return cls(tuple(tuple(r) for r in rows))


GOLDEN_MEAN = TransitionMatrix(((1, 1), (1, 0)))


def full_shift(P: int) -> TransitionMatrix:
    """The full P-shift as the 1x1 matrix [[P]]."""
    return TransitionMatrix(((P,),))


def _matmul(A, B):
    cols = list(zip(*B))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in A)


def sft_counts(A: TransitionMatrix, n_max: int) -> List[int]:
    """[trace(A^n) for n = 1..n_max], exactly."""
    if n_max < 1:
        raise DomainError("n_max must be positive")
    if A.dim == 0:
        return [0] * n_max
    out = []
    power = A.rows
    for _ in range(n_max):
        out.append(sum(power[i][i] for i in range(A.dim)))
        power = _matmul(power, A.rows)
    return out


def disjoint_union(*parts: TransitionMatrix) -> TransitionMatrix:
    """Block-diagonal sum; its trace counts are the sums of the parts' counts."""
    size = sum(p.dim for p in parts)
    rows = [[0] * size for _ in range(size)]
    offset = 0
    for p in parts:
        for i, row in enumerate(p.rows):
            rows[offset + i][offset : offset + p.dim] = row
        offset += p.dim
    return TransitionMatrix.of(rows)


def trace_recurrence(A: TransitionMatrix) -> LinearRecurrence:
    """A linear recurrence generating trace(A^n), recovered from 2 * dim traces."""
    window = sft_counts(A, 2 * max(A.dim, 1))
    poly = minimal_polynomial(window)
    if poly.degree < 1:
        raise DomainError("trace sequence is identically zero")
    k = poly.degree
    coeffs = tuple(-poly.coeffs[k - i] for i in range(1, k + 1))
    return LinearRecurrence(coeffs, tuple(window[:k]))


# --- random maps on finite sets ------------------------------------------

_MASK64 = (1 << 64) - 1


def splitmix64(seed: int) -> Iterator[int]:
    """The SplitMix64 generator (Steele, Lea and Flood), 64-bit outputs."""
    state = seed & _MASK64
    while True:
        state = (state + 0x9E3779B97F4A7C15) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        yield z ^ (z >> 31)


@dataclass(frozen=True)
class FunctionalGraph:
    """A map t on {0, ..., size - 1}; ``seed`` is None for hand-built maps."""

    table: Tuple[int, ...]
    seed: int = None

    def __post_init__(self):
        m = len(self.table)
        if m < 1 or any(not 0 <= x < m for x in self.table):
            raise DomainError("map table must send {0..m-1} into itself")

    @property
    def size(self) -> int:
        return len(self.table)

    def fixed_point_counts(self, n_max: int) -> List[int]:
        """Fix(T^n) for n = 1..n_max by iterating every point n steps."""
        t = self.table
        counts = []
        for n in range(1, n_max + 1):
            fixed = 0
            for x in range(self.size):
                y = x
                for _ in range(n):
                    y = t[y]
                fixed += y == x
            counts.append(fixed)
        return counts

    def cycles(self) -> List[Tuple[int, ...]]:
        """The cycles of the functional graph, each listed from its least point."""
        t = self.table
        state: Dict[int, int] = {}  # 0 = in progress, 1 = done
        found = []
        for start in range(self.size):
            path = []
            x = start
            while x not in state:
                state[x] = 0
                path.append(x)
                x = t[x]
            if state[x] == 0:
                cyc = path[path.index(x) :]
                i = cyc.index(min(cyc))
                found.append(tuple(cyc[i:] + cyc[:i]))
            for y in path:
                state[y] = 1
        return sorted(found)

    def cycle_census(self, n_max: int) -> List[int]:
        """Number of cycles of each length 1..n_max."""
        census = [0] * n_max
        for cyc in self.cycles():
            if len(cyc) <= n_max:
                census[len(cyc) - 1] += 1
        return census


def random_map(size: int, seed: int) -> FunctionalGraph:
    if not 1 <= size <= 20:
        raise DomainError("random maps are supported on 1..20 points")
    gen = splitmix64(seed)
    return FunctionalGraph(tuple(next(gen) % size for _ in range(size)), seed)


def random_map_counts(size: int, seed: int, n_max: int) -> Tuple[FunctionalGraph, List[int], List[int]]:
    """A seeded random map with its fixed-point counts and cycle census."""
    graph = random_map(size, seed)
    return graph, graph.fixed_point_counts(n_max), graph.cycle_census(n_max)
