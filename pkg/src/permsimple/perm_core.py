"""
Permutations of ``[n] = {1, ..., n}`` and their canonical descriptions.

A permutation is stored as its one-line word ``(p(1), ..., p(n))``.  Products
are function compositions, ``(a * b)(i) = a(b(i))``, so right multiplication
by the Coxeter generator ``tau_i = (i, i+1)`` swaps the entries at positions
``i`` and ``i + 1`` of the word:

>>> p = Permutation((4, 1, 6, 2, 5, 3))
>>> p * tau(6, 1)
Permutation(word=(1, 4, 6, 2, 5, 3))

Three textual forms are supported, each with a parser and a printer:

>>> format_cycles(cycle_decomposition(p))
'(4 2 1)(6 3)'
>>> format_word(coxeter_normal_form(p))
'D(3,1)D(4,4)D(5,3)'
>>> format_one_line(p)
'4 1 6 2 5 3'
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import permutations as _itertools_permutations
from typing import Iterable, Iterator, Sequence

from .errors import (
    DegreeMismatch,
    EmptyInput,
    NotABijection,
    ParseError,
    RunOutOfRange,
)

__all__ = [
    "Permutation", "CycleDecomposition", "CoxeterWord", "PlaneTree",
    "identity", "tau", "from_cycles", "all_permutations",
    "parse_one_line", "parse_cycles", "parse_word", "parse_coxeter_word",
    "parse_permutation",
    "format_one_line", "format_cycles", "format_word",
    "compose", "inverse", "cycles_of", "cycle_decomposition",
    "standard_sequence", "coxeter_normal_form", "evaluate_word",
    "coxeter_length", "build_tree", "tree_coordinates",
]


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of ``{1, ..., n}`` given by its one-line word."""

    word: tuple[int, ...]

    def __post_init__(self):
        word = tuple(self.word)
        object.__setattr__(self, "word", word)
        if not word:
            raise EmptyInput("a permutation needs at least one letter")
        if sorted(word) != list(range(1, len(word) + 1)):
            raise NotABijection(f"{list(word)} is not a bijection of 1..{len(word)}")

    @property
    def n(self) -> int:
        return len(self.word)

    def __call__(self, i: int) -> int:
        return self.word[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __len__(self) -> int:
        return len(self.word)

    def inverse(self) -> Permutation:
        return inverse(self)

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.word, 1))

    def __str__(self) -> str:
        return format_one_line(self)


@dataclass(frozen=True)
class CycleDecomposition:
    """Cycles in standard form: each starts at its maximum, ordered by maxima."""

    n: int
    cycles: tuple[tuple[int, ...], ...]
    includes_fixed_points: bool = False

    def __str__(self) -> str:
        return format_cycles(self)

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles), reverse=True))

    def nontrivial(self) -> tuple[tuple[int, ...], ...]:
        return tuple(c for c in self.cycles if len(c) > 1)

    def to_permutation(self) -> Permutation:
        return from_cycles(self.cycles, self.n)


@dataclass(frozen=True)
class CoxeterWord:
    """A product ``D(k1, j1) D(k2, j2) ...`` of descending runs.

    ``D(k, j) = tau_k tau_{k-1} ... tau_j``.
    """

    n: int
    runs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "runs", tuple((int(k), int(j)) for k, j in self.runs))

    @property
    def length(self) -> int:
        return sum(k - j + 1 for k, j in self.runs)

    def generators(self) -> tuple[int, ...]:
        """Flattened generator indices, left to right."""
        return tuple(g for k, j in self.runs for g in range(k, j - 1, -1))

    def is_normal_shape(self) -> bool:
        ks = [k for k, _ in self.runs]
        return all(1 <= j <= k for k, j in self.runs) and all(
            a < b for a, b in zip(ks, ks[1:]))

    def __str__(self) -> str:
        return format_word(self)


@dataclass(frozen=True)
class PlaneTree:
    """Increasing ordered binary tree; node labels are the values ``1..n``.

    ``left[v]`` / ``right[v]`` hold the child label or 0 when absent; index 0
    is unused.
    """

    n: int
    left: tuple[int, ...]
    right: tuple[int, ...]
    parent: tuple[int, ...] = field(repr=False, default=())
    root: int = 1

    def children(self, v: int) -> list[int]:
        return [c for c in (self.left[v], self.right[v]) if c]

    def degree(self, v: int) -> int:
        return len(self.children(v)) + (0 if v == self.root else 1)

    def side(self, v: int) -> str | None:
        """'L' or 'R' according to which child of its parent ``v`` is."""
        p = self.parent[v]
        if not p:
            return None
        return "L" if self.left[p] == v else "R"

    def edges(self) -> list[tuple[int, int, str]]:
        out = []
        for v in range(1, self.n + 1):
            if self.left[v]:
                out.append((v, self.left[v], "L"))
            if self.right[v]:
                out.append((v, self.right[v], "R"))
        return out


# ---------------------------------------------------------------------------
# construction


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def tau(n: int, i: int) -> Permutation:
    """The Coxeter generator ``(i, i+1)`` in degree ``n``."""
    if not 1 <= i < n:
        raise RunOutOfRange(f"tau_{i} does not exist in degree {n}")
    w = list(range(1, n + 1))
    w[i - 1], w[i] = w[i], w[i - 1]
    return Permutation(tuple(w))


def from_cycles(cycles: Iterable[Sequence[int]], n: int) -> Permutation:
    """Multiply disjoint cycles; ``(a b c)`` sends a to b, b to c, c to a."""
    w = list(range(1, n + 1))
    seen: set[int] = set()
    for c in cycles:
        for x in c:
            if not 1 <= x <= n:
                raise NotABijection(f"cycle entry {x} outside 1..{n}")
            if x in seen:
                raise NotABijection(f"{x} appears twice in the cycles")
            seen.add(x)
        for a, b in zip(c, tuple(c[1:]) + tuple(c[:1])):
            w[a - 1] = b
    return Permutation(tuple(w))


def all_permutations(n: int) -> Iterator[Permutation]:
    """All of ``Sigma_n`` in lexicographic one-line order."""
    for w in _itertools_permutations(range(1, n + 1)):
        yield Permutation(w)


# ---------------------------------------------------------------------------
# group operations


def compose(a: Permutation, b: Permutation) -> Permutation:
    """``(a * b)(i) = a(b(i))``."""
    if a.n != b.n:
        raise DegreeMismatch(f"degrees {a.n} and {b.n} differ")
    aw = a.word
    return Permutation(tuple(aw[x - 1] for x in b.word))


def inverse(a: Permutation) -> Permutation:
    w = [0] * a.n
    for i, v in enumerate(a.word, 1):
        w[v - 1] = i
    return Permutation(tuple(w))


def coxeter_length(p: Permutation) -> int:
    """Number of inversions, i.e. the length of any reduced word."""
    w = p.word
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


# ---------------------------------------------------------------------------
# cycles


def cycles_of(word: Sequence[int]) -> list[tuple[int, ...]]:
    """Standard-form cycles of a raw one-line word, fixed points included."""
    n = len(word)
    seen = [False] * (n + 1)
    cycles = []
    # scanning maxima from the top keeps each cycle's start at its maximum
    for start in range(n, 0, -1):
        if seen[start]:
            continue
        c = [start]
        seen[start] = True
        x = word[start - 1]
        while x != start:
            c.append(x)
            seen[x] = True
            x = word[x - 1]
        cycles.append(tuple(c))
    cycles.reverse()
    return cycles


def cycle_decomposition(p: Permutation, include_fixed: bool = False) -> CycleDecomposition:
    cycles = cycles_of(p.word)
    if not include_fixed:
        cycles = [c for c in cycles if len(c) > 1]
    return CycleDecomposition(p.n, tuple(cycles), include_fixed)


def standard_sequence(p: Permutation) -> tuple[int, ...]:
    """Concatenation of the standard cycles, fixed points included."""
    return tuple(x for c in cycles_of(p.word) for x in c)


# ---------------------------------------------------------------------------
# Coxeter words


def coxeter_normal_form(p: Permutation) -> CoxeterWord:
    """Length-lexicographically smallest reduced word, as descending runs.

    The largest value ``m`` of the current word sits at position ``j``; the
    word factors as ``q * D(m-1, j)`` with ``q`` fixing ``m``.  Stripping
    ``m`` and recursing on ``q`` produces the runs right to left.
    """
    w = list(p.word)
    runs = []
    for m in range(p.n, 1, -1):
        j = w.index(m) + 1
        if j < m:
            runs.append((m - 1, j))
        del w[j - 1]
    runs.reverse()
    return CoxeterWord(p.n, tuple(runs))


def evaluate_word(w: CoxeterWord) -> Permutation:
    """Product of the generators of ``w``, leftmost factor applied last."""
    word = list(range(1, w.n + 1))
    for k, j in w.runs:
        if not (1 <= j <= k <= w.n - 1):
            raise RunOutOfRange(f"D({k},{j}) is not a run in degree {w.n}")
        for g in range(k, j - 1, -1):
            word[g - 1], word[g] = word[g], word[g - 1]
    return Permutation(tuple(word))


# ---------------------------------------------------------------------------
# trees


def _tree_from_sequence(seq: Sequence[int]) -> PlaneTree:
    # Cartesian tree with the minimum at the root, built with a stack
    n = len(seq)
    left = [0] * (n + 1)
    right = [0] * (n + 1)
    stack: list[int] = []
    for x in seq:
        last = 0
        while stack and stack[-1] > x:
            last = stack.pop()
        left[x] = last
        if stack:
            right[stack[-1]] = x
        stack.append(x)
    parent = [0] * (n + 1)
    for v in range(1, n + 1):
        for c in (left[v], right[v]):
            if c:
                parent[c] = v
    return PlaneTree(n, tuple(left), tuple(right), tuple(parent), stack[0] if stack else 1)


def build_tree(p: Permutation) -> PlaneTree:
    """The ordered tree of the standard sequence.

    The smallest entry is the root, the entries in front of it form the left
    subtree and those behind it the right subtree.  Labels are the values
    themselves, which already increase along every branch.
    """
    return _tree_from_sequence(standard_sequence(p))


def tree_coordinates(t: PlaneTree) -> dict[int, tuple[float, float]]:
    """Drawing positions: 45 degree edges, lengths halving with depth."""
    pos = {t.root: (0.0, 0.0)}
    todo = [(t.root, 1.0)]
    while todo:
        v, length = todo.pop()
        x, y = pos[v]
        d = length / 2 ** 0.5
        if t.left[v]:
            pos[t.left[v]] = (x - d, y - d)
            todo.append((t.left[v], length / 2))
        if t.right[v]:
            pos[t.right[v]] = (x + d, y - d)
            todo.append((t.right[v], length / 2))
    return pos


# ---------------------------------------------------------------------------
# text formats

_INT = re.compile(r"-?\d+")


def parse_one_line(text: str) -> Permutation:
    """Parse ``"4 1 6 2 5 3"`` (whitespace and/or commas, optional brackets)."""
    body = text.strip().strip("[]").strip()
    if not body:
        raise EmptyInput("no entries given")
    parts = [s for s in re.split(r"[\s,]+", body) if s]
    try:
        word = tuple(int(s) for s in parts)
    except ValueError as exc:
        raise ParseError(f"not a list of integers: {text!r}") from exc
    return Permutation(word)


def format_one_line(p: Permutation) -> str:
    return " ".join(map(str, p.word))


def parse_cycles(text: str, n: int | None = None) -> Permutation:
    """Parse ``"(4 2 1)(6 3)"``; ``n`` defaults to the largest entry."""
    body = text.strip()
    if not body:
        raise EmptyInput("no cycles given")
    if not re.fullmatch(r"(\(\s*[\d\s,]*\)\s*)+", body):
        raise ParseError(f"not in cycle notation: {text!r}")
    cycles = [tuple(int(x) for x in _INT.findall(c)) for c in re.findall(r"\(([^)]*)\)", body)]
    cycles = [c for c in cycles if c]
    degree = max((max(c) for c in cycles), default=1)
    if n is None:
        n = degree
    elif degree > n:
        raise NotABijection(f"cycle entry {degree} exceeds degree {n}")
    return from_cycles(cycles, n)


def format_cycles(cd: CycleDecomposition) -> str:
    if not cd.cycles:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cd.cycles)


_RUN = re.compile(r"D\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)")


def parse_word(text: str, n: int | None = None) -> Permutation:
    """Parse ``"D(3,1)D(4,4)D(5,3)"`` (``D(k)`` abbreviates ``D(k,k)``; ``e`` is empty)."""
    return evaluate_word(parse_coxeter_word(text, n))


def parse_coxeter_word(text: str, n: int | None = None) -> CoxeterWord:
    body = re.sub(r"\s+", "", text)
    if body in ("", "e", "Id"):
        return CoxeterWord(n or 1, ())
    pos = 0
    runs = []
    for m in _RUN.finditer(body):
        if m.start() != pos:
            break
        k = int(m.group(1))
        j = int(m.group(2)) if m.group(2) else k
        runs.append((k, j))
        pos = m.end()
    if pos != len(body) or not runs:
        raise ParseError(f"not a product of D(k,j) runs: {text!r}")
    for k, j in runs:
        if not 1 <= j <= k:
            raise RunOutOfRange(f"D({k},{j}) needs 1 <= j <= k")
    top = max(k for k, _ in runs) + 1
    if n is None:
        n = top
    elif top > n:
        raise RunOutOfRange(f"run maximum {top - 1} needs degree > {n}")
    return CoxeterWord(n, tuple(runs))


def format_word(w: CoxeterWord) -> str:
    if not w.runs:
        return "e"
    return "".join(f"D({k},{j})" for k, j in w.runs)


def parse_permutation(text: str, n: int | None = None, fmt: str | None = None) -> Permutation:
    """Auto-detect one-line, cycle or D-word syntax from the leading character."""
    s = text.strip()
    if fmt is None:
        if not s:
            raise EmptyInput("no permutation given")
        fmt = "cycle" if s[0] == "(" else "word" if s[0] in "De" or s == "Id" else "one-line"
    if fmt == "cycle":
        return parse_cycles(s, n)
    if fmt == "word":
        return parse_word(s, n)
    if fmt == "one-line":
        p = parse_one_line(s)
        if n is not None and n != p.n:
            raise DegreeMismatch(f"word has {p.n} letters, expected {n}")
        return p
    raise ParseError(f"unknown input format {fmt!r}")
