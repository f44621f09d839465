"""
Cell complexes built from simple permutations: the permutahedron and its
induced subcomplexes P(A), order complexes of the Bruhat and weak orders,
and the filtration of P(bS_{n+1}) used to retract it onto P(bS_n).

Faces of the permutahedron are ordered set partitions ``(B1|...|Bk)`` of the
values: a permutation lies on the face when the values of ``B1`` fill the
first ``|B1|`` positions, those of ``B2`` the next ``|B2|``, and so on.  Each
face is oriented by the basis ``e_{b2}-e_{b1}, ..., e_{bm}-e_{b(m-1)}`` of
every block ``b1 < ... < bm``, in coordinates ``x_v = position of v``.

>>> [len(cells) for cells in permutahedron_complex(3).cells]
[6, 6, 1]
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Callable, Iterable, Sequence

from . import cayley
from .classify import _b_simple_cycles
from .errors import BoundExceeded, DomainError, InvariantViolation
from .perm_core import Permutation, coxeter_length, coxeter_normal_form, cycles_of

__all__ = [
    "Cell", "CellComplex", "Poset", "HomologyGroup", "CollapseResult",
    "FiltrationStage", "DEFAULT_COMPLEX_BOUND",
    "permutahedron_complex", "induced_subcomplex", "bruhat_covers",
    "weak_covers", "bruhat_leq", "weak_leq", "order_complex",
    "euler_characteristic", "reduced_homology", "smith_diagonal",
    "collapse_onto", "bs_filtration", "class_complex", "complex_to_json",
]

DEFAULT_COMPLEX_BOUND = 6

Word = tuple[int, ...]


@dataclass(frozen=True)
class Cell:
    id: int
    dim: int
    vertices: frozenset  # of one-line words
    label: str
    boundary: tuple[tuple[int, int], ...]  # (facet id, sign)


@dataclass
class CellComplex:
    """Cells graded by dimension; ``cells[d][k].id == k``."""

    cells: list[list[Cell]]
    name: str = ""

    @property
    def dim(self) -> int:
        return len(self.cells) - 1

    def counts(self) -> list[int]:
        return [len(c) for c in self.cells]

    def vertex_words(self) -> list[Word]:
        return [next(iter(c.vertices)) for c in self.cells[0]] if self.cells else []

    def edges(self) -> set[frozenset]:
        return {c.vertices for c in self.cells[1]} if len(self.cells) > 1 else set()

    def check_boundary_squared(self) -> None:
        for d in range(2, len(self.cells)):
            for c in self.cells[d]:
                acc: dict[int, int] = {}
                for f, s in c.boundary:
                    for g, t in self.cells[d - 1][f].boundary:
                        acc[g] = acc.get(g, 0) + s * t
                if any(acc.values()):
                    raise InvariantViolation(f"boundary of boundary is nonzero on {c.label}")

    def boundary_matrix(self, d: int) -> list[list[int]]:
        """Matrix of the map from d-chains to (d-1)-chains; d = 0 is augmentation."""
        if d == 0:
            return [[1] * len(self.cells[0])] if self.cells else []
        rows = len(self.cells[d - 1])
        cols = len(self.cells[d]) if d < len(self.cells) else 0
        m = [[0] * cols for _ in range(rows)]
        for k in range(cols):
            for f, s in self.cells[d][k].boundary:
                m[f][k] += s
        return m


def _finish(cells_by_dim: list[list[Cell]], name: str) -> CellComplex:
    while cells_by_dim and not cells_by_dim[-1]:
        cells_by_dim.pop()
    cx = CellComplex(cells_by_dim, name)
    cx.check_boundary_squared()
    return cx


# ---------------------------------------------------------------------------
# the permutahedron


def _ordered_partitions(values: Sequence[int]) -> Iterable[tuple[tuple[int, ...], ...]]:
    if not values:
        yield ()
        return
    first, rest = values[0], values[1:]
    for sub in _ordered_partitions(rest):
        # put `first` into an existing block or into a new block at any slot
        for k in range(len(sub)):
            yield sub[:k] + (tuple(sorted(sub[k] + (first,))),) + sub[k + 1:]
        for k in range(len(sub) + 1):
            yield sub[:k] + ((first,),) + sub[k:]


def _face_vertices(blocks: Sequence[Sequence[int]]) -> frozenset:
    return frozenset(tuple(x for part in choice for x in part)
                     for choice in product(*(permutations(b) for b in blocks)))


def _label(blocks: Sequence[Sequence[int]]) -> str:
    return "|".join("".join(map(str, b)) if max(b) < 10 else ",".join(map(str, b))
                    for b in blocks)


def _basis(blocks: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    out = []
    for b in blocks:
        b = sorted(b)
        for lo, hi in zip(b, b[1:]):
            v = [0] * (n + 1)
            v[hi], v[lo] = 1, -1
            out.append(v)
    return out


def _coords(y: Sequence[int], blocks: Sequence[Sequence[int]]) -> list[int]:
    out = []
    for b in blocks:
        b = sorted(b)
        acc = 0
        for x in b[:-1]:
            acc -= y[x]
            out.append(acc)
    return out


def _det(m: list[list[int]]) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    a = [row[:] for row in m]
    size = len(a)
    if size == 0:
        return 1
    sign, prev = 1, 1
    for k in range(size - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, size) if a[r][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def _incidence(g_blocks, t: int, S: tuple[int, ...], T: tuple[int, ...], n: int) -> int:
    f_blocks = g_blocks[:t] + (S, T) + g_blocks[t + 1:]
    u = [0] * (n + 1)
    for s in S:
        u[s] = -len(T)
    for x in T:
        u[x] = len(S)
    cols = [_coords(u, g_blocks)] + [_coords(v, g_blocks) for v in _basis(f_blocks, n)]
    d = _det([list(r) for r in zip(*cols)])
    if d == 0:
        raise InvariantViolation("degenerate facet orientation")
    return 1 if d > 0 else -1


def permutahedron_complex(n: int, bound: int = DEFAULT_COMPLEX_BOUND) -> CellComplex:
    """All faces of the permutahedron of Sigma_n with oriented boundaries."""
    if n < 1:
        raise DomainError("n must be at least 1")
    if n > bound:
        raise BoundExceeded(f"permutahedron of degree {n} exceeds the bound {bound}")
    faces = sorted(_ordered_partitions(tuple(range(1, n + 1))),
                   key=lambda f: (n - len(f), min(_face_vertices(f)), f))
    by_dim: list[list[tuple]] = [[] for _ in range(n)]
    for f in faces:
        by_dim[n - len(f)].append(f)
    index = [{f: k for k, f in enumerate(fs)} for fs in by_dim]
    cells: list[list[Cell]] = []
    for d, fs in enumerate(by_dim):
        row = []
        for k, f in enumerate(fs):
            bd = []
            for t, block in enumerate(f):
                for r in range(1, len(block)):
                    for S in combinations(block, r):
                        T = tuple(x for x in block if x not in S)
                        facet = f[:t] + (S, T) + f[t + 1:]
                        bd.append((index[d - 1][facet], _incidence(f, t, S, T, n)))
            row.append(Cell(k, d, _face_vertices(f), _label(f), tuple(sorted(bd))))
        cells.append(row)
    return _finish(cells, f"P(Sigma_{n})")


def induced_subcomplex(c: CellComplex, keep: Callable[[Permutation], bool] | set,
                       name: str = "") -> CellComplex:
    """Cells all of whose vertices are kept."""
    if isinstance(keep, (set, frozenset)):
        words = {p.word if isinstance(p, Permutation) else tuple(p) for p in keep}
    else:
        words = {w for w in c.vertex_words() if keep(Permutation(w))}
    cells: list[list[Cell]] = []
    remap: list[dict[int, int]] = []
    for d, layer in enumerate(c.cells):
        new_ids: dict[int, int] = {}
        row = []
        for cell in layer:
            if cell.vertices <= words:
                k = len(row)
                new_ids[cell.id] = k
                bd = tuple((remap[d - 1][f], s) for f, s in cell.boundary) if d else ()
                row.append(Cell(k, d, cell.vertices, cell.label, bd))
        remap.append(new_ids)
        cells.append(row)
    return _finish(cells, name or f"{c.name}[induced]")


def class_complex(n: int, cls: str, bound: int = DEFAULT_COMPLEX_BOUND) -> CellComplex:
    """P(A) for a class name understood by :mod:`cayley`."""
    return induced_subcomplex(permutahedron_complex(n, bound),
                              cayley.CLASS_PREDICATES[cls], name=f"P({cls}S_{n})")


# ---------------------------------------------------------------------------
# posets and order complexes


@dataclass
class Poset:
    elements: list[Permutation]
    covers: list[tuple[Permutation, Permutation]]
    kind: str

    def up_covers(self, p: Permutation) -> list[Permutation]:
        return [b for a, b in self.covers if a == p]


def _check_graded(covers: Iterable[tuple[Permutation, Permutation]]) -> None:
    for a, b in covers:
        if coxeter_length(b) != coxeter_length(a) + 1:
            raise InvariantViolation(f"cover {a} < {b} does not raise the length by one")


def bruhat_covers(n: int, bound: int = DEFAULT_COMPLEX_BOUND) -> Poset:
    """``a < a*(i,j)`` whenever the length goes up by exactly one."""
    if n > bound:
        raise BoundExceeded(f"poset of degree {n} exceeds the bound {bound}")
    elems = sorted(Permutation(w) for w in permutations(range(1, n + 1)))
    covers = []
    for a in elems:
        la = coxeter_length(a)
        for i, j in combinations(range(n), 2):
            w = list(a.word)
            w[i], w[j] = w[j], w[i]
            b = Permutation(tuple(w))
            if coxeter_length(b) == la + 1:
                covers.append((a, b))
    _check_graded(covers)
    return Poset(elems, covers, "bruhat")


def weak_covers(n: int, bound: int = DEFAULT_COMPLEX_BOUND) -> Poset:
    """``a < a*tau_i`` whenever the length goes up by one."""
    if n > bound:
        raise BoundExceeded(f"poset of degree {n} exceeds the bound {bound}")
    elems = sorted(Permutation(w) for w in permutations(range(1, n + 1)))
    covers = []
    for a in elems:
        for i in range(n - 1):
            if a.word[i] < a.word[i + 1]:
                w = list(a.word)
                w[i], w[i + 1] = w[i + 1], w[i]
                covers.append((a, Permutation(tuple(w))))
    _check_graded(covers)
    bru = set(bruhat_covers(n, bound).covers) if n <= bound else set()
    if not set(covers) <= bru:
        raise InvariantViolation("a weak cover is not a Bruhat cover")
    return Poset(elems, covers, "weak")


def bruhat_leq(u: Word, v: Word) -> bool:
    """Tableau criterion: sorted prefixes of u are dominated by those of v."""
    for i in range(1, len(u)):
        if any(x > y for x, y in zip(sorted(u[:i]), sorted(v[:i]))):
            return False
    return True


def _value_inversions(w: Word) -> set[tuple[int, int]]:
    return {(w[j], w[i]) for i in range(len(w)) for j in range(i) if w[j] > w[i]}


def weak_leq(u: Word, v: Word) -> bool:
    """Right weak order: inversion sets (on values) are nested."""
    return _value_inversions(u) <= _value_inversions(v)


_LEQ = {"bruhat": bruhat_leq, "weak": weak_leq, "B": bruhat_leq, "W": weak_leq}


def order_complex(A: Iterable[Permutation], order: str) -> CellComplex:
    """Simplicial complex of chains of A under the full order of Sigma_n."""
    leq = _LEQ[order]
    elems = sorted(set(A), key=lambda p: (coxeter_length(p), p.word))
    words = [p.word for p in elems]
    m = len(words)
    above = [[j for j in range(i + 1, m) if leq(words[i], words[j])] for i in range(m)]
    chains: list[list[tuple[int, ...]]] = [[(i,) for i in range(m)]]
    while True:
        nxt = [ch + (j,) for ch in chains[-1] for j in above[ch[-1]]]
        if not nxt:
            break
        chains.append(nxt)
    cells: list[list[Cell]] = []
    for d, layer in enumerate(chains):
        index_below = {ch: k for k, ch in enumerate(chains[d - 1])} if d else {}
        row = []
        for k, ch in enumerate(layer):
            bd = tuple(sorted((index_below[ch[:r] + ch[r + 1:]], (-1) ** r)
                              for r in range(len(ch)))) if d else ()
            label = "<".join("".join(map(str, words[x])) for x in ch)
            row.append(Cell(k, d, frozenset(words[x] for x in ch), label, bd))
        cells.append(row)
    return _finish(cells, f"{order} order complex")


# ---------------------------------------------------------------------------
# invariants


def euler_characteristic(c: CellComplex) -> int:
    return sum((-1) ** d * len(layer) for d, layer in enumerate(c.cells))


def smith_diagonal(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix (exact arithmetic)."""
    a = [list(r) for r in matrix if any(r)]
    if not a:
        return []
    rows, cols = len(a), len(a[0])
    diag = []
    t = 0
    while t < min(rows, cols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            for r in range(t + 1, rows):
                q = a[r][t] // p
                if q:
                    a[r] = [x - q * y for x, y in zip(a[r], a[t])]
            for c in range(t + 1, cols):
                q = a[t][c] // p
                if q:
                    for row in a:
                        row[c] -= q * row[t]
            # remainders smaller than the pivot go back into the pivot slot
            left = [(abs(a[r][t]), r, t) for r in range(t + 1, rows) if a[r][t]]
            left += [(abs(a[t][c]), t, c) for c in range(t + 1, cols) if a[t][c]]
            if left:
                _, i, j = min(left)
                a[t], a[i] = a[i], a[t]
                for row in a:
                    row[t], row[j] = row[j], row[t]
                continue
            bad = next((r for r in range(t + 1, rows)
                        if any(a[r][c] % p for c in range(t + 1, cols))), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


@dataclass(frozen=True)
class HomologyGroup:
    dim: int
    rank: int
    torsion: tuple[int, ...] = ()

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion


def reduced_homology(c: CellComplex) -> list[HomologyGroup]:
    """Integral reduced homology in every dimension of the complex."""
    if not c.cells or not c.cells[0]:
        return [HomologyGroup(-1, 1)]
    diags = [smith_diagonal(c.boundary_matrix(d)) for d in range(len(c.cells) + 1)]
    out = []
    for d in range(len(c.cells)):
        kernel = len(c.cells[d]) - len(diags[d])
        image = diags[d + 1]
        out.append(HomologyGroup(d, kernel - len(image), tuple(x for x in image if x > 1)))
    return out


# ---------------------------------------------------------------------------
# collapses and the b-simple filtration


@dataclass
class CollapseResult:
    success: bool
    steps: int
    remaining: int
    attempts: int

    def __str__(self) -> str:
        if self.success:
            return f"collapsed in {self.steps} elementary steps"
        return f"inconclusive: {self.remaining} extra cells left after {self.attempts} attempts"


def collapse_onto(big: CellComplex, small: CellComplex, attempts: int = 20,
                  seed: int = 0) -> CollapseResult:
    """Search for elementary collapses taking ``big`` down to ``small``.

    ``small`` must be a subcomplex of ``big`` (matched on vertex sets).  A
    free pair is a cell outside ``small`` that is a facet of exactly one
    remaining cell.  Failure only means the greedy search got stuck.
    """
    keep = {c.vertices for layer in small.cells for c in layer}
    rng = random.Random(seed)
    best_left = None
    for attempt in range(1, attempts + 1):
        alive = {(d, c.id) for d, layer in enumerate(big.cells) for c in layer
                 if c.vertices not in keep}
        cofaces: dict[tuple[int, int], set] = {key: set() for key in alive}
        for d, layer in enumerate(big.cells):
            for c in layer:
                for f, _ in c.boundary:
                    if (d - 1, f) in cofaces:
                        cofaces[(d - 1, f)].add((d, c.id))
        steps = 0
        while True:
            free = [s for s in alive if len(cofaces[s]) == 1]
            if not free:
                break
            if attempt > 1:
                rng.shuffle(free)
            else:
                free.sort(key=lambda s: (-s[0], s[1]))
            s = free[0]
            (t,) = cofaces[s]
            for x in (s, t):
                alive.discard(x)
                d, k = x
                for f, _ in big.cells[d][k].boundary:
                    if (d - 1, f) in cofaces:
                        cofaces[(d - 1, f)].discard(x)
            steps += 1
        if not alive:
            return CollapseResult(True, steps, 0, attempt)
        best_left = len(alive) if best_left is None else min(best_left, len(alive))
    return CollapseResult(False, 0, best_left or 0, attempts)


@dataclass
class FiltrationStage:
    j: int
    complex: CellComplex
    new_vertices: list[Permutation]
    collapse: CollapseResult | None = None


def _last_run(w: Word) -> tuple[int, int] | None:
    runs = coxeter_normal_form(Permutation(w)).runs
    return runs[-1] if runs else None


def bs_filtration(n: int, bound: int = DEFAULT_COMPLEX_BOUND,
                  attempts: int = 20) -> list[FiltrationStage]:
    """Stages ``F_1 = P(bS_{n+1}) ⊇ F_2 ⊇ ... ⊇ F_{n+1} = P(bS_n)``.

    ``F_j`` adds to ``F_{j+1}`` the b-simple vertices whose normal form ends
    with ``D(n, j)``.  Each stage carries the outcome of a collapse search
    onto the next smaller one.
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    if n + 1 > bound:
        raise BoundExceeded(f"filtration needs degree {n + 1} > bound {bound}")
    P = permutahedron_complex(n + 1, bound)
    bs = [w for w in P.vertex_words() if _b_simple_cycles(cycles_of(w))]
    base = {w for w in bs if w[n] == n + 1}
    by_j: dict[int, list[Word]] = {}
    for w in bs:
        if w in base:
            continue
        k, j = _last_run(w)
        if k != n:
            raise InvariantViolation(f"{w} moves n+1 but its last run is D({k},{j})")
        by_j.setdefault(j, []).append(w)
    stages: list[FiltrationStage] = []
    current = set(base)
    prev = induced_subcomplex(P, current, name=f"F_{n + 1}")
    stages.append(FiltrationStage(n + 1, prev, []))
    for j in range(n, 0, -1):
        new = sorted(by_j.get(j, []))
        current |= set(new)
        cx = induced_subcomplex(P, current, name=f"F_{j}")
        stage = FiltrationStage(j, cx, [Permutation(w) for w in new],
                                collapse_onto(cx, prev, attempts=attempts))
        stages.append(stage)
        prev = cx
    stages.reverse()
    return stages


def complex_to_json(c: CellComplex, homology: bool = False, euler: bool = False) -> dict:
    out: dict = {
        "name": c.name,
        "counts": c.counts(),
        "cells": [[{"id": cell.id, "label": cell.label,
                    "vertices": sorted(list(v) for v in cell.vertices),
                    "boundary": [list(b) for b in cell.boundary]}
                   for cell in layer] for layer in c.cells],
    }
    if euler:
        out["euler_characteristic"] = euler_characteristic(c)
    if homology:
        out["reduced_homology"] = [
            {"dim": h.dim, "rank": h.rank, "torsion": list(h.torsion)}
            for h in reduced_homology(c)]
    return out
