"""
Exact counts of the simple families: closed formulas, the length-graded
b-simple triangle, and an exhaustive census over all of ``Sigma_n``.

>>> sigma_triangle(5).row(5)
(1, 4, 9, 12, 8)
>>> [count_b(n) for n in range(1, 7)]
[1, 2, 5, 13, 34, 89]
"""

from __future__ import annotations

import math
import os
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from multiprocessing import Pool

from .classify import flags_of_word, is_prime
from .errors import BoundExceeded, DomainError, InvariantViolation

__all__ = [
    "CLASSES", "SigmaTriangle", "CensusReport",
    "fibonacci", "sigma_triangle", "sigma_by_census",
    "count_b", "count_c", "count_g", "count_t", "count_equal_cycle_products",
    "count_formula", "census", "census_cycle_types", "s_asymptotic_check",
    "DEFAULT_CENSUS_BOUND", "intersection_census", "quintuple_census",
]

CLASSES = ("s", "c", "g", "b", "t")
DEFAULT_CENSUS_BOUND = 9


def fibonacci(m: int) -> int:
    a, b = 0, 1
    for _ in range(m):
        a, b = b, a + b
    return a


# ---------------------------------------------------------------------------
# the sigma triangle


@dataclass(frozen=True)
class SigmaTriangle:
    """``rows[n-1][i]`` is the number of b-simple permutations of length i in Sigma_n."""

    rows: tuple[tuple[int, ...], ...]

    @property
    def n_max(self) -> int:
        return len(self.rows)

    def row(self, n: int) -> tuple[int, ...]:
        return self.rows[n - 1]

    def __call__(self, n: int, i: int) -> int:
        if n < 1 or n > self.n_max or i < 0 or i >= n:
            return 0
        return self.rows[n - 1][i]


def _sigma_rec3(n_max: int) -> list[list[int]]:
    # s[n][i] with the empty permutation as s[0] = [1]
    s = [[1], [1]]
    for n in range(2, n_max + 1):
        def g(m, i):
            return s[m][i] if 0 <= i < len(s[m]) else 0
        s.append([2 * g(n - 1, i - 1) + g(n - 1, i) - g(n - 2, i - 1) for i in range(n)])
    return s


def _sigma_rec2(n_max: int) -> list[list[int]]:
    s = [[], [1]]
    for n in range(2, n_max + 1):
        def g(m, i):
            return s[m][i] if m >= 1 and 0 <= i < len(s[m]) else 0
        s.append([g(n - 1, i) + sum(g(n - t, i - t) for t in range(1, i + 1))
                  for i in range(n)])
    return s


def sigma_triangle(n_max: int) -> SigmaTriangle:
    """Rows 1..n_max from the three-term recurrence, checked against the long one."""
    if n_max < 1:
        raise DomainError("n_max must be at least 1")
    short = _sigma_rec3(n_max)
    long_ = _sigma_rec2(n_max)
    for n in range(1, n_max + 1):
        if short[n] != long_[n]:
            raise InvariantViolation(f"sigma recurrences disagree at row {n}")
    return SigmaTriangle(tuple(tuple(r) for r in short[1:n_max + 1]))


def sigma_by_census(n: int) -> tuple[int, ...]:
    """Row n of the triangle by brute force over Sigma_n."""
    from .classify import _b_simple_cycles
    from .perm_core import Permutation, coxeter_length, cycles_of

    row = [0] * n
    for w in permutations(range(1, n + 1)):
        if _b_simple_cycles(cycles_of(w)):
            row[coxeter_length(Permutation(w))] += 1
    return tuple(row)


# ---------------------------------------------------------------------------
# closed formulas


def count_b(n: int) -> int:
    if n < 1:
        raise DomainError("n must be at least 1")
    return fibonacci(2 * n - 1)


def count_equal_cycle_products(n: int, k: int, l: int) -> int:
    """Permutations of Sigma_n made of exactly k disjoint l-cycles (rest fixed)."""
    if k < 1 or l < 1 or k * l > n:
        raise DomainError(f"need k, l >= 1 and k*l <= n (got n={n}, k={k}, l={l})")
    num = math.factorial(n)
    den = math.factorial(k) * math.factorial(n - k * l) * l ** k
    q, r = divmod(num, den)
    if r:
        raise InvariantViolation("cycle-product count is not an integer")
    return q


def count_c(n: int) -> int:
    if n < 1:
        raise DomainError("n must be at least 1")
    return 1 + sum(math.factorial(n) // (l * math.factorial(n - l)) for l in range(2, n + 1))


def count_g(n: int) -> int:
    if n < 1:
        raise DomainError("n must be at least 1")
    return 1 + sum(count_equal_cycle_products(n, k, p)
                   for p in range(2, n + 1) if is_prime(p)
                   for k in range(1, n // p + 1))


def count_t(n: int) -> int:
    if n < 1:
        raise DomainError("n must be at least 1")
    if n == 1:
        return 1
    return 2 ** (n - 2) + 4 ** (n - 2)


_FORMULAS = {"b": count_b, "c": count_c, "g": count_g, "t": count_t}


def count_formula(cls: str, n: int) -> int | None:
    """Closed-form count, or None for the s class (census only)."""
    f = _FORMULAS.get(cls)
    return f(n) if f else None


# ---------------------------------------------------------------------------
# census


@dataclass(frozen=True)
class CensusReport:
    n: int
    counts: dict[str, int]
    total: int
    ratios: dict[str, Fraction] = field(default_factory=dict)

    def as_row(self) -> list[int]:
        return [self.counts[c] for c in CLASSES] + [self.total]


def _census_block(args: tuple[int, int]) -> tuple[int, ...]:
    n, first = args
    rest = [x for x in range(1, n + 1) if x != first]
    counts = [0] * 5
    for tail in permutations(rest):
        flags = flags_of_word((first,) + tail)
        for i in range(5):
            if flags[i]:
                counts[i] += 1
    return tuple(counts)


@lru_cache(maxsize=None)
def _census_counts(n: int, jobs: int) -> tuple[int, ...]:
    blocks = [(n, first) for first in range(1, n + 1)]
    if jobs > 1 and n >= 7:
        with Pool(min(jobs, n)) as pool:
            parts = pool.map(_census_block, blocks)
    else:
        parts = [_census_block(b) for b in blocks]
    return tuple(sum(col) for col in zip(*parts))


def census(n: int, bound: int = DEFAULT_CENSUS_BOUND, jobs: int | None = None,
           check_formulas: bool = True) -> CensusReport:
    """Exhaustive class counts over Sigma_n, cross-checked against the formulas."""
    if n < 1:
        raise DomainError("n must be at least 1")
    if n > bound:
        raise BoundExceeded(f"census of degree {n} exceeds the bound {bound}")
    if jobs is None:
        jobs = int(os.environ.get("PERMSIMPLE_JOBS", "1") or 1)
    raw = _census_counts(n, max(1, jobs))
    counts = dict(zip(CLASSES, raw))
    total = math.factorial(n)
    if check_formulas:
        for cls, f in _FORMULAS.items():
            if counts[cls] != f(n):
                raise InvariantViolation(
                    f"census |{cls}S_{n}| = {counts[cls]} but formula gives {f(n)}")
    ratios = {c: Fraction(v, total) for c, v in counts.items()}
    return CensusReport(n, counts, total, ratios)


def s_asymptotic_check(n: int, bound: int = DEFAULT_CENSUS_BOUND,
                       jobs: int | None = None) -> tuple[Fraction, float]:
    """Census ratio |sS_n|/n! next to the truncated asymptotic value."""
    rep = census(n, bound=bound, jobs=jobs)
    asym = (1 - 4 / n + 2 / (n * (n - 1))) / math.e ** 2 if n > 1 else float("nan")
    return rep.ratios["s"], asym


def census_cycle_types(n: int) -> Counter:
    """Multiplicity of each cycle type (sorted lengths of nontrivial cycles)."""
    from .perm_core import cycles_of

    out: Counter = Counter()
    for w in permutations(range(1, n + 1)):
        out[tuple(sorted((len(c) for c in cycles_of(w) if len(c) > 1), reverse=True))] += 1
    return out


def intersection_census(n: int) -> dict[str, int]:
    """Sizes of bS_n intersected with each other class (keys ``bc bg bs bt``)."""
    from .cayley import generate_b_simple
    from .classify import in_b_and_c, in_b_and_g, in_b_and_s, in_b_and_t

    bs = generate_b_simple(n)
    if len(bs) != count_b(n):
        raise InvariantViolation(f"generated {len(bs)} b-simple permutations, expected {count_b(n)}")
    tests = {"bc": in_b_and_c, "bg": in_b_and_g, "bs": in_b_and_s, "bt": in_b_and_t}
    return {k: sum(1 for p in bs if f(p)) for k, f in tests.items()}


def quintuple_census(n: int) -> int:
    """Number of permutations lying in all five classes."""
    from .cayley import generate_b_simple
    from .classify import is_c_simple, is_g_simple, is_s_simple, is_t_simple

    return sum(1 for p in generate_b_simple(n)
               if is_s_simple(p) and is_c_simple(p) and is_g_simple(p) and is_t_simple(p))
