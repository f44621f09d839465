"""
Polygon calculus for cycles and the components of the c-simple and g-simple
Cayley graphs.

A cycle ``(a1 a2 ... as)`` written from its maximum is drawn as an oriented
polygon on those vertices.  A reduction move deletes the head ``j`` of a side
``i -> j`` when no other vertex lies strictly between ``i`` and ``j``.  A
polygon with no legal move is irreducible.

>>> reduce_once(PolygonalType((6, 3, 1, 5, 2), 6))
[]
>>> irreducible_type((6, 1, 4, 2, 5))
TriangleClass()
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

from .classify import _g_type, is_c_simple, is_g_simple
from .errors import DomainError, InvariantViolation, NotCSimple, NotGSimple, TooShort
from .perm_core import (
    CycleDecomposition,
    Permutation,
    compose,
    cycle_decomposition,
    tau,
)

__all__ = [
    "PolygonalType", "IrreducibleType", "TriangleClass", "TRIANGLE",
    "IdentityComponent", "IrreducibleComponent", "Cji", "CJI",
    "ThreeCycleSingleton", "PrimePowerSingleton", "GComponentId",
    "normalize", "polygon_of_cycle", "reduce_once", "reduce_once_bruteforce",
    "reduction_terminals", "irreducible_type", "is_irreducible",
    "neighboring_intervals", "matches_structure",
    "cs_component_of", "gs_component_of", "multiply_by_tau",
]


def normalize(vertices: Sequence[int]) -> tuple[int, ...]:
    """Rotate a cyclic sequence to start at its maximum."""
    v = tuple(vertices)
    k = v.index(max(v))
    return v[k:] + v[:k]


@dataclass(frozen=True)
class PolygonalType:
    vertices: tuple[int, ...]
    n: int

    def __post_init__(self):
        v = tuple(self.vertices)
        if len(v) < 3:
            raise TooShort(f"a polygon needs at least 3 vertices, got {v}")
        if len(set(v)) != len(v) or min(v) < 1 or max(v) > self.n:
            raise DomainError(f"polygon vertices {v} are not distinct values in [1, {self.n}]")
        object.__setattr__(self, "vertices", normalize(v))

    @property
    def size(self) -> int:
        return len(self.vertices)

    def sides(self) -> list[tuple[int, int]]:
        v = self.vertices
        return [(v[k], v[(k + 1) % len(v)]) for k in range(len(v))]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.vertices)) + ")"


@dataclass(frozen=True)
class TriangleClass:
    """Token for polygons that reduce to some triangle."""

    def __str__(self) -> str:
        return "triangle"


TRIANGLE = TriangleClass()


@dataclass(frozen=True)
class IrreducibleType:
    polygon: PolygonalType

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.polygon.vertices

    @property
    def n(self) -> int:
        return self.polygon.n

    def __str__(self) -> str:
        return str(self.polygon)


def polygon_of_cycle(c: Sequence[int], n: int | None = None) -> PolygonalType:
    c = tuple(c)
    return PolygonalType(c, n if n is not None else max(c, default=0))


# ---------------------------------------------------------------------------
# reduction


def _gap_free(i: int, j: int, vertices: Sequence[int]) -> bool:
    lo, hi = min(i, j), max(i, j)
    return not any(lo < x < hi for x in vertices)


def _moves(v: tuple[int, ...]) -> list[tuple[int, ...]]:
    s = len(v)
    if s < 4:
        return []
    out = set()
    for k in range(s):
        i, j = v[k], v[(k + 1) % s]
        if _gap_free(i, j, v):
            h = (k + 1) % s
            out.add(normalize(v[:h] + v[h + 1:]))
    return sorted(out)


def reduce_once(poly: PolygonalType) -> list[PolygonalType]:
    """Every polygon reachable by one legal move; empty iff irreducible."""
    return [PolygonalType(v, poly.n) for v in _moves(poly.vertices)]


def reduce_once_bruteforce(poly: PolygonalType) -> list[PolygonalType]:
    """Same as :func:`reduce_once`, by testing each vertex deletion directly."""
    v = poly.vertices
    s = len(v)
    if s < 4:
        return []
    found = set()
    for pos in range(s):
        head = v[pos]
        tail = v[pos - 1]
        values_between = [x for x in v if min(head, tail) < x < max(head, tail)]
        if not values_between:
            rest = [x for x in v if x != head]
            found.add(normalize(rest))
    return [PolygonalType(w, poly.n) for w in sorted(found)]


def is_irreducible(vertices: Sequence[int]) -> bool:
    """Every side's closed value interval holds another vertex."""
    v = tuple(vertices)
    return len(v) >= 3 and all(not _gap_free(a, b, v)
                               for a, b in zip(v, v[1:] + v[:1]))


@lru_cache(maxsize=None)
def _terminals(v: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    if len(v) == 3:
        return frozenset([v])
    nxt = _moves(v)
    if not nxt:
        return frozenset([v])
    out: set[tuple[int, ...]] = set()
    for w in nxt:
        out |= _terminals(w)
    return frozenset(out)


def reduction_terminals(poly: PolygonalType | Sequence[int]) -> frozenset[tuple[int, ...]]:
    """End points of all maximal reduction sequences (exhaustive, memoized)."""
    v = poly.vertices if isinstance(poly, PolygonalType) else normalize(poly)
    return _terminals(v)


def irreducible_type(c: PolygonalType | Sequence[int],
                     n: int | None = None) -> Union[IrreducibleType, TriangleClass]:
    """The unique irreducible type of a polygon, or the triangle token.

    All reduction sequences are explored; a polygon that reaches both a
    triangle and a larger irreducible type, or two different ones of size at
    least 5, raises :class:`InvariantViolation`.
    """
    poly = c if isinstance(c, PolygonalType) else polygon_of_cycle(c, n)
    ends = reduction_terminals(poly)
    sizes = {len(e) for e in ends}
    if 3 in sizes:
        if len(sizes) > 1:
            raise InvariantViolation(f"{poly} reduces to a triangle and to {sorted(ends)}")
        return TRIANGLE
    if len(ends) != 1:
        raise InvariantViolation(f"{poly} has several irreducible types {sorted(ends)}")
    return IrreducibleType(PolygonalType(next(iter(ends)), poly.n))


# ---------------------------------------------------------------------------
# neighbouring intervals


def neighboring_intervals(t: IrreducibleType | PolygonalType) -> dict[int, tuple[range, range]]:
    """``vertex -> (I_minus, I_plus)`` as integer ranges, possibly empty."""
    poly = t.polygon if isinstance(t, IrreducibleType) else t
    vs = sorted(poly.vertices)
    out = {}
    for k, a in enumerate(vs):
        lower = vs[k - 1] + 1 if k > 0 else 1
        upper = vs[k + 1] - 1 if k + 1 < len(vs) else poly.n
        out[a] = (range(lower, a), range(a + 1, upper + 1))
    return out


def matches_structure(poly: PolygonalType, t: IrreducibleType, strict: bool = False) -> bool:
    """Interleaved block form of a polygon around an irreducible type.

    The type's vertices must appear in the same cyclic order.  Every block
    between two of them lies in the neighbouring intervals of the block's
    left vertex: inside one of them when ``strict``, inside their union
    otherwise.  Parts of two blocks that meet in a shared interval from
    opposite sides must be separated.
    """
    a = t.vertices
    v = poly.vertices
    if not set(a) <= set(v):
        return False
    k = v.index(a[0])
    v = v[k:] + v[:k]
    pos = [v.index(x) for x in a]
    if pos != sorted(pos):
        return False
    iv = neighboring_intervals(IrreducibleType(PolygonalType(a, poly.n)))
    plus_part, minus_part = {}, {}
    for idx, x in enumerate(a):
        end = pos[idx + 1] if idx + 1 < len(a) else len(v)
        block = v[pos[idx] + 1:end]
        minus, plus = iv[x]
        ups = [b for b in block if b in plus]
        downs = [b for b in block if b in minus]
        if len(ups) + len(downs) != len(block):
            return False
        if strict and ups and downs:
            return False
        plus_part[x], minus_part[x] = ups, downs
    for x in a:
        for y in a:
            bx, by = plus_part[x], minus_part[y]
            if bx and by and iv[x][1] == iv[y][0] and not max(bx) < min(by):
                return False
    return True


# ---------------------------------------------------------------------------
# component descriptors


@dataclass(frozen=True)
class IdentityComponent:
    def __str__(self) -> str:
        return "identity component"


@dataclass(frozen=True)
class IrreducibleComponent:
    """Component of the c-simple graph keyed by an irreducible type."""

    type: IrreducibleType

    def __str__(self) -> str:
        return f"irreducible type {self.type}"


@dataclass(frozen=True)
class Cji:
    j: int
    i: int

    def __str__(self) -> str:
        return f"C({self.j},{self.i})"


@dataclass(frozen=True)
class CJI:
    pairs: tuple[tuple[int, int], ...]

    def __str__(self) -> str:
        return "C(" + ",".join(f"({j},{i})" for j, i in self.pairs) + ")"


@dataclass(frozen=True)
class ThreeCycleSingleton:
    cycles: tuple[tuple[int, int, int], ...]

    def __str__(self) -> str:
        return "singleton " + "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles)


@dataclass(frozen=True)
class PrimePowerSingleton:
    p: int
    q: int
    word: tuple[int, ...]

    def __str__(self) -> str:
        return f"C_{{{self.p},{self.q}}} singleton {' '.join(map(str, self.word))}"


GComponentId = Union[IdentityComponent, Cji, CJI, ThreeCycleSingleton, PrimePowerSingleton]


def cs_component_of(p: Permutation) -> Union[IdentityComponent, IrreducibleComponent]:
    """Component of ``p`` in the c-simple graph."""
    if not is_c_simple(p):
        raise NotCSimple(f"{p} is not c-simple")
    cycles = cycle_decomposition(p).cycles
    if not cycles or len(cycles[0]) < 3:
        return IdentityComponent()
    t = irreducible_type(cycles[0], p.n)
    if isinstance(t, TriangleClass):
        return IdentityComponent()
    return IrreducibleComponent(t)


def _three_cycle_home(c: tuple[int, ...]) -> GComponentId | None:
    k, a, b = c
    # the four shapes in the identity component
    if (a, b) in ((k - 1, k - 2), (k - 2, k - 1), (k - 3, k - 1), (k - 2, k - 3)):
        return IdentityComponent()
    # 3-cycles attached to C(j, i) with j >= i+3
    if k - a >= 3 and b in (a + 1, a - 1):
        return Cji(k, a)  # (j,i,i+1) and (j,i,i-1)
    if b == k - 1 and b - a >= 3:
        return Cji(b, a)  # (j+1,i,j)
    if a == k - 1 and k - b >= 3:
        return Cji(k, b)  # (j,j-1,i)
    return None


def gs_component_of(p: Permutation) -> GComponentId:
    """Component of ``p`` in the g-simple graph."""
    cycles = cycle_decomposition(p).cycles
    kind = _g_type(cycles)
    if kind is None or not is_g_simple(p):
        raise NotGSimple(f"{p} is not g-simple")
    prime, count = kind
    if prime == 1:
        return IdentityComponent()
    if prime == 2:
        far = sorted(c for c in cycles if c[0] - c[1] >= 2)
        if not far or (len(far) == 1 and far[0][0] - far[0][1] == 2):
            return IdentityComponent()
        if len(far) == 1:
            return Cji(*far[0])
        return CJI(tuple(far))
    if prime == 3:
        if count == 1:
            home = _three_cycle_home(cycles[0])
            if home is not None:
                return home
        return ThreeCycleSingleton(tuple(cycles))
    return PrimePowerSingleton(prime, count, p.word)


# ---------------------------------------------------------------------------
# multiplication by a generator via the cycle case analysis


def _rot(c: Sequence[int], x: int) -> list[int]:
    k = list(c).index(x)
    return list(c[k:]) + list(c[:k])


def multiply_by_tau(cd: CycleDecomposition, i: int) -> CycleDecomposition:
    """``cd * tau_i`` computed by cases on where ``i`` and ``i+1`` sit."""
    n = cd.n
    if not 1 <= i < n:
        raise DomainError(f"generator index {i} out of range for degree {n}")
    cycles = [list(c) for c in cd.cycles if len(c) > 1]
    A = next((c for c in cycles if i in c), None)
    B = next((c for c in cycles if i + 1 in c), None)
    rest = [c for c in cycles if c is not A and c is not B]
    if A is None and B is None:
        new = [[i + 1, i]]
    elif B is None:
        # insert i+1 right after i
        r = _rot(A, i)
        new = [[i, i + 1] + r[1:]]
    elif A is None:
        r = _rot(B, i + 1)
        new = [[i + 1, i] + r[1:]]
    elif A is B:
        r = _rot(A, i)
        m = r.index(i + 1)
        x, y = r[1:m], r[m + 1:]
        if not x:
            new = [[i] + y]  # drop i+1 following i
        elif not y:
            new = [[i + 1] + x]  # drop i following i+1
        else:
            new = [[i] + y, [i + 1] + x]
    else:
        ra, rb = _rot(A, i), _rot(B, i + 1)
        new = [[i] + rb[1:] + [i + 1] + ra[1:]]
    out = sorted((normalize(c) for c in rest + new if len(c) > 1), key=lambda c: c[0])
    result = CycleDecomposition(n, tuple(out))
    direct = cycle_decomposition(compose(cd.to_permutation(), tau(n, i)))
    if direct.nontrivial() != result.cycles:
        raise InvariantViolation(
            f"case multiplication {result} differs from direct product {direct}")
    return result
