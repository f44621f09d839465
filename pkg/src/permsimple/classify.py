"""
Membership tests for the five simple classes and their intersections.

Every predicate has a public form taking a :class:`Permutation` and a private
``_*_word`` form on a raw one-line tuple used by the census loops.  The
b-simple test and the four ``in_b_and_*`` tests each compute two independent
answers and raise :class:`InvariantViolation` if they disagree.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Sequence

from .errors import InvariantViolation, NotStandardForm
from .perm_core import (
    Permutation,
    build_tree,
    coxeter_normal_form,
    cycles_of,
    from_cycles,
    identity,
)

__all__ = [
    "SimplicityProfile", "is_prime",
    "is_s_simple", "is_c_simple", "is_g_simple", "g_witness",
    "is_connected_perm", "is_unimodal_cycle", "is_b_simple",
    "is_b_simple_by_word", "is_b_simple_by_cycles", "is_t_simple",
    "has_three_consecutive",
    "in_b_and_c", "in_b_and_g", "in_b_and_s", "in_b_and_t",
    "quintuple_witness", "profile", "flags_of_word",
]


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# raw-word kernels


def _s_simple_word(w: Sequence[int]) -> bool:
    n = len(w)
    for i in range(n - 1):
        lo = hi = w[i]
        # windows w[i..j]; the full word (size n) is not proper
        stop = n if i else n - 1
        for j in range(i + 1, stop):
            x = w[j]
            if x < lo:
                lo = x
            elif x > hi:
                hi = x
            if hi - lo == j - i:
                return False
    return True


def _unimodal(c: Sequence[int]) -> bool:
    s = len(c)
    i = 1
    while i < s and c[i] < c[i - 1]:
        i += 1
    while i < s and c[i] > c[i - 1]:
        i += 1
    return i == s


def _b_simple_cycles(cycles: Sequence[Sequence[int]]) -> bool:
    for c in cycles:
        if len(c) > 1 and (c[0] - min(c) + 1 != len(c) or not _unimodal(c)):
            return False
    return True


def _g_type(cycles: Sequence[Sequence[int]]) -> tuple[int, int] | None:
    """``(p, k)`` if the nontrivial cycles are k cycles of one prime length p,
    ``(1, 0)`` for the identity, ``None`` otherwise."""
    lengths = [len(c) for c in cycles if len(c) > 1]
    if not lengths:
        return (1, 0)
    p = lengths[0]
    if any(x != p for x in lengths) or not is_prime(p):
        return None
    return (p, len(lengths))


def _t_simple_sequence(seq: Sequence[int]) -> bool:
    # in the min-rooted tree of seq, entry k has a left child iff seq[k-1] > seq[k]
    # and a right child iff seq[k+1] > seq[k]; only the root may have both
    for k in range(1, len(seq) - 1):
        x = seq[k]
        if x != 1 and seq[k - 1] > x < seq[k + 1]:
            return False
    return True


def flags_of_word(w: Sequence[int]) -> tuple[bool, bool, bool, bool, bool]:
    """``(s, c, g, b, t)`` flags of a raw one-line word in one pass."""
    cycles = cycles_of(w)
    nontrivial = sum(1 for c in cycles if len(c) > 1)
    seq = [x for c in cycles for x in c]
    return (
        _s_simple_word(w),
        nontrivial <= 1,
        _g_type(cycles) is not None,
        _b_simple_cycles(cycles),
        _t_simple_sequence(seq),
    )


# ---------------------------------------------------------------------------
# base predicates


def is_s_simple(p: Permutation) -> bool:
    """No segment of size 2..n-1 is mapped onto a segment."""
    return _s_simple_word(p.word)


def is_c_simple(p: Permutation) -> bool:
    return sum(1 for c in cycles_of(p.word) if len(c) > 1) <= 1


def g_witness(p: Permutation) -> tuple[int, int] | None:
    """``(prime, multiplicity)`` of a non-identity g-simple permutation."""
    t = _g_type(cycles_of(p.word))
    if t is None or t == (1, 0):
        return None
    return t


def is_g_simple(p: Permutation) -> bool:
    """The cyclic group generated by ``p`` is simple (trivial group included)."""
    return _g_type(cycles_of(p.word)) is not None


def is_connected_perm(p: Permutation) -> bool:
    return all(c[0] - min(c) + 1 == len(c) for c in cycles_of(p.word))


def is_unimodal_cycle(c: Sequence[int]) -> bool:
    """Strictly decreasing from the maximum, then strictly increasing."""
    c = tuple(c)
    if not c or c[0] != max(c):
        raise NotStandardForm(f"cycle {c} does not start at its maximum")
    return _unimodal(c)


def is_b_simple_by_cycles(p: Permutation) -> bool:
    """Connected and unimodal."""
    return _b_simple_cycles(cycles_of(p.word))


def is_b_simple_by_word(p: Permutation) -> bool:
    """No generator repeats in the normal form."""
    gens = coxeter_normal_form(p).generators()
    return len(gens) == len(set(gens))


def is_b_simple(p: Permutation) -> bool:
    by_cycles = is_b_simple_by_cycles(p)
    by_word = is_b_simple_by_word(p)
    if by_cycles != by_word:
        raise InvariantViolation(
            f"b-simple routes disagree on {p}: cycles={by_cycles} word={by_word}")
    return by_cycles


def is_t_simple(p: Permutation) -> bool:
    """Every vertex of the ordered tree other than the root has at most one child."""
    t = build_tree(p)
    return all(len(t.children(v)) <= 1 for v in range(1, p.n + 1) if v != t.root)


# ---------------------------------------------------------------------------
# characterizations of the intersections with bS_n


def _chained(runs: Sequence[tuple[int, int]]) -> bool:
    return all(k + 1 == j2 for (k, _), (_, j2) in zip(runs, runs[1:]))


def _b_and_c_by_word(p: Permutation) -> bool:
    return p.is_identity() or _chained(coxeter_normal_form(p).runs)


def _b_and_c_by_cycles(p: Permutation) -> bool:
    nontrivial = [c for c in cycles_of(p.word) if len(c) > 1]
    return not nontrivial or (len(nontrivial) == 1 and _b_simple_cycles(nontrivial))


def _b_and_g_by_word(p: Permutation) -> bool:
    if p.is_identity():
        return True
    runs = coxeter_normal_form(p).runs
    gens = [g for k, j in runs for g in range(k, j - 1, -1)]
    if len(gens) != len(set(gens)):
        return False
    blocks = [[runs[0]]]
    for prev, run in zip(runs, runs[1:]):
        if prev[0] + 1 == run[1]:
            blocks[-1].append(run)
        elif prev[0] + 1 < run[1]:
            blocks.append([run])
        else:
            return False
    spans = {b[-1][0] - b[0][1] + 2 for b in blocks}
    return len(spans) == 1 and is_prime(spans.pop())


def _b_and_g_by_cycles(p: Permutation) -> bool:
    cycles = cycles_of(p.word)
    t = _g_type(cycles)
    return t is not None and _b_simple_cycles(cycles)


def has_three_consecutive(c: Sequence[int]) -> bool:
    """``i, i+1, i+2`` or ``i+2, i+1, i`` at cyclically consecutive positions."""
    s = len(c)
    if s < 3:
        return False
    for a in range(s):
        x, y, z = c[a], c[(a + 1) % s], c[(a + 2) % s]
        if y - x == z - y and abs(y - x) == 1:
            return True
    return False


def _b_and_s_by_cycles(p: Permutation) -> bool:
    if p.n <= 2:
        # no proper segments exist, so every permutation qualifies
        return True
    cycles = cycles_of(p.word)
    return (len(cycles) == 1 and _unimodal(cycles[0])
            and not has_three_consecutive(cycles[0]))


def _b_and_t_by_tree(p: Permutation) -> bool:
    t = build_tree(p)
    root = t.root
    if any(len(t.children(v)) > 1 for v in range(1, p.n + 1) if v != root):
        return False

    def branch(start: int) -> list[int]:
        out = []
        v = start
        while v:
            out.append(v)
            kids = t.children(v)
            v = kids[0] if kids else 0
        return out

    left = branch(t.left[root])
    right = branch(t.right[root])
    if any(t.side(v) != "L" for v in left):
        return False
    bends = [v for v in right[:-1] if t.side(t.children(v)[0]) != t.side(v)]
    if len(bends) > 1:
        return False
    if bends and left and not left[-1] < bends[0]:
        return False
    return True


def _check(name: str, p: Permutation, conj: bool, char: bool) -> bool:
    if conj != char:
        raise InvariantViolation(
            f"{name}: conjunction={conj} but characterization={char} for {p}")
    return conj


def in_b_and_c(p: Permutation) -> bool:
    conj = is_b_simple(p) and is_c_simple(p)
    _check("bS∩cS cycle form", p, conj, _b_and_c_by_cycles(p))
    return _check("bS∩cS word form", p, conj, _b_and_c_by_word(p))


def in_b_and_g(p: Permutation) -> bool:
    conj = is_b_simple(p) and is_g_simple(p)
    _check("bS∩gS cycle form", p, conj, _b_and_g_by_cycles(p))
    return _check("bS∩gS word form", p, conj, _b_and_g_by_word(p))


def in_b_and_s(p: Permutation) -> bool:
    conj = is_b_simple(p) and is_s_simple(p)
    return _check("bS∩sS", p, conj, _b_and_s_by_cycles(p))


def in_b_and_t(p: Permutation) -> bool:
    conj = is_b_simple(p) and is_t_simple(p)
    return _check("bS∩tS", p, conj, _b_and_t_by_tree(p))


def quintuple_witness(n: int) -> Permutation | None:
    """An element of all five classes, when one exists."""
    if n < 1:
        raise ValueError("degree must be positive")
    if n == 1:
        w = identity(1)
    elif n == 2:
        w = from_cycles([(2, 1)], 2)
    elif n >= 5 and is_prime(n):
        cycle = list(range(n, 0, -2)) + list(range(2, n, 2))
        w = from_cycles([cycle], n)
    else:
        return None
    prof = profile(w)
    if not all((prof.s_simple, prof.c_simple, prof.g_simple, prof.b_simple, prof.t_simple)):
        raise InvariantViolation(f"quintuple witness {w} fails a class: {prof}")
    return w


# ---------------------------------------------------------------------------
# profile


@dataclass(frozen=True)
class SimplicityProfile:
    s_simple: bool
    c_simple: bool
    g_simple: bool
    b_simple: bool
    t_simple: bool
    g_witness: tuple[int, int] | None = None
    b_and_c: bool = False
    b_and_g: bool = False
    b_and_s: bool = False
    b_and_t: bool = False

    def to_dict(self) -> dict:
        d = asdict(self)
        d["g_witness"] = list(self.g_witness) if self.g_witness else None
        return d


def profile(p: Permutation) -> SimplicityProfile:
    return SimplicityProfile(
        s_simple=is_s_simple(p),
        c_simple=is_c_simple(p),
        g_simple=is_g_simple(p),
        b_simple=is_b_simple(p),
        t_simple=is_t_simple(p),
        g_witness=g_witness(p),
        b_and_c=in_b_and_c(p),
        b_and_g=in_b_and_g(p),
        b_and_s=in_b_and_s(p),
        b_and_t=in_b_and_t(p),
    )
