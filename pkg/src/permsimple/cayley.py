"""
Induced subgraphs of the Cayley graph of ``Sigma_n`` for the Coxeter
generators: vertices are the permutations in a class, and ``a -- b`` is an
edge labelled ``i`` when ``b = a * tau_i``.

Planarity verdicts come with certificates that are checked here, not just
trusted: an embedding must satisfy Euler's formula face by face, and a
Kuratowski subgraph must re-walk as a subdivision of K5 or K3,3.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, Iterable, Sequence

import networkx as nx

from . import classify
from .errors import BoundExceeded, InvariantViolation, NotBSimple
from .perm_core import (
    Permutation,
    coxeter_normal_form,
    cycles_of,
    from_cycles,
    identity,
)

__all__ = [
    "LabeledGraph", "PlanarityResult", "KuratowskiSubdivision",
    "CLASS_PREDICATES", "DEFAULT_GRAPH_BOUND",
    "build_gamma", "generate_b_simple", "generate_c_simple",
    "components", "is_planar", "k33_witness", "verify_kuratowski",
    "verify_embedding", "geodesic_to_identity", "export_dot", "graph_to_json",
    "to_networkx",
]

DEFAULT_GRAPH_BOUND = 9

CLASS_PREDICATES: dict[str, Callable[[Permutation], bool]] = {
    "s": classify.is_s_simple,
    "c": classify.is_c_simple,
    "g": classify.is_g_simple,
    "b": classify.is_b_simple_by_cycles,
    "t": classify.is_t_simple,
    "all": lambda p: True,
    "none": lambda p: False,
}


@dataclass
class LabeledGraph:
    n: int
    vertices: list[Permutation]
    edges: list[tuple[int, int, int]]
    adjacency: list[list[tuple[int, int]]] = field(repr=False)
    index: dict[tuple[int, ...], int] = field(repr=False)
    name: str = ""

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def size(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> list[int]:
        return [u for u, _ in self.adjacency[v]]

    def has_vertex(self, p: Permutation) -> bool:
        return p.word in self.index

    def vertex_id(self, p: Permutation) -> int:
        return self.index[p.word]


# ---------------------------------------------------------------------------
# vertex generation


def generate_b_simple(n: int) -> list[Permutation]:
    """All products ``D(k1,j1)...D(ks,js)`` with ``k_a < j_{a+1}``."""
    out = []

    def extend(word: list[int], low: int):
        out.append(Permutation(tuple(word)))
        for j in range(low, n):
            for k in range(j, n):
                w = word[:]
                for g in range(k, j - 1, -1):
                    w[g - 1], w[g] = w[g], w[g - 1]
                extend(w, k + 1)

    extend(list(range(1, n + 1)), 1)
    return sorted(out)


def generate_c_simple(n: int) -> list[Permutation]:
    """The identity and every single cycle of length >= 2."""
    out = [identity(n)]
    for m in range(2, n + 1):
        # cycles written from their maximum m
        for size in range(1, m):
            for rest in permutations(range(1, m), size):
                out.append(from_cycles([(m,) + rest], n))
    return sorted(out)


_GENERATORS = {"b": generate_b_simple, "c": generate_c_simple}


def _vertex_set(n: int, cls: str | Callable[[Permutation], bool]) -> list[Permutation]:
    if isinstance(cls, str):
        if cls in _GENERATORS:
            return _GENERATORS[cls](n)
        pred = CLASS_PREDICATES[cls]
    else:
        pred = cls
    return [p for p in (Permutation(w) for w in permutations(range(1, n + 1))) if pred(p)]


def build_gamma(n: int, predicate: str | Callable[[Permutation], bool],
                bound: int = DEFAULT_GRAPH_BOUND) -> LabeledGraph:
    """Induced Cayley subgraph on ``{p : predicate(p)}``.

    ``predicate`` is a class name (``s c g b t all none``) or a callable.
    """
    if n < 1:
        raise ValueError("degree must be positive")
    if n > bound:
        raise BoundExceeded(f"graph of degree {n} exceeds the bound {bound}")
    vertices = _vertex_set(n, predicate)
    index = {p.word: k for k, p in enumerate(vertices)}
    adjacency: list[list[tuple[int, int]]] = [[] for _ in vertices]
    edges = []
    for a, p in enumerate(vertices):
        w = list(p.word)
        for i in range(1, n):
            w[i - 1], w[i] = w[i], w[i - 1]
            b = index.get(tuple(w))
            w[i - 1], w[i] = w[i], w[i - 1]
            if b is None:
                continue
            adjacency[a].append((b, i))
            if a < b:
                edges.append((a, b, i))
    for a, nbrs in enumerate(adjacency):
        for b, i in nbrs:
            if (a, i) not in adjacency[b]:
                raise InvariantViolation("edge relation is not symmetric")
    name = predicate if isinstance(predicate, str) else getattr(predicate, "__name__", "custom")
    return LabeledGraph(n, vertices, edges, adjacency, index, name)


# ---------------------------------------------------------------------------
# traversal


def components(g: LabeledGraph) -> list[list[int]]:
    """Connected components as sorted vertex-index lists, ordered by minimum."""
    seen = [False] * g.order
    comps = []
    for s in range(g.order):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u, _ in g.adjacency[v]:
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
                    queue.append(u)
        comps.append(sorted(comp))
    return comps


def geodesic_to_identity(p: Permutation) -> list[Permutation]:
    """Path from the identity to ``p`` through prefixes of its normal form."""
    if not classify.is_b_simple(p):
        raise NotBSimple(f"{p} is not b-simple")
    w = list(range(1, p.n + 1))
    path = [Permutation(tuple(w))]
    for gen in coxeter_normal_form(p).generators():
        w[gen - 1], w[gen] = w[gen], w[gen - 1]
        q = Permutation(tuple(w))
        if not classify.is_b_simple_by_cycles(q):
            raise InvariantViolation(f"geodesic vertex {q} is not b-simple")
        path.append(q)
    if path[-1] != p:
        raise InvariantViolation("geodesic does not end at the permutation")
    return path


# ---------------------------------------------------------------------------
# planarity


def to_networkx(g: LabeledGraph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.order))
    G.add_edges_from((a, b, {"gen": i}) for a, b, i in g.edges)
    return G


@dataclass
class KuratowskiSubdivision:
    """Branch vertices and the internally disjoint paths joining them."""

    kind: str  # "K5" or "K3,3"
    branch: list[int]
    parts: tuple[list[int], list[int]] | None
    paths: list[list[int]]

    def edge_count(self) -> int:
        return sum(len(p) - 1 for p in self.paths)


@dataclass
class PlanarityResult:
    planar: bool
    embedding: dict[int, list[int]] | None = None
    kuratowski: KuratowskiSubdivision | None = None
    faces: int | None = None


def verify_embedding(g: LabeledGraph, rotation: dict[int, list[int]]) -> int:
    """Check a rotation system is a plane embedding; return the face count.

    Faces are orbits of half-edges under ``(u, v) -> (v, next after u around v)``;
    each component must satisfy ``V - E + F = 2``.
    """
    G = to_networkx(g)
    pos = {}
    for v, rot in rotation.items():
        if sorted(rot) != sorted(G.neighbors(v)):
            raise InvariantViolation(f"rotation at {v} does not list its neighbours")
        pos[v] = {u: k for k, u in enumerate(rot)}
    total_faces = 0
    for comp in nx.connected_components(G):
        comp = sorted(comp)
        half = {(u, v) for u in comp for v in rotation.get(u, [])}
        faces = 0
        while half:
            start = min(half)
            e = start
            while True:
                half.discard(e)
                u, v = e
                rot = rotation[v]
                e = (v, rot[(pos[v][u] + 1) % len(rot)])
                if e == start:
                    break
            faces += 1
        faces = max(faces, 1)
        n_edges = G.subgraph(comp).number_of_edges()
        if len(comp) - n_edges + faces != 2:
            raise InvariantViolation(
                f"Euler characteristic fails: V={len(comp)} E={n_edges} F={faces}")
        total_faces += faces
    return total_faces


def verify_kuratowski(g: LabeledGraph, edges: Iterable[tuple[int, int]]) -> KuratowskiSubdivision:
    """Re-walk a claimed Kuratowski subgraph and classify it."""
    H = nx.Graph()
    for a, b in edges:
        if b not in g.neighbors(a):
            raise InvariantViolation(f"certificate edge {a}-{b} is not in the graph")
        H.add_edge(a, b)
    deg = dict(H.degree())
    branch = sorted(v for v, d in deg.items() if d > 2)
    if any(d < 2 for d in deg.values()):
        raise InvariantViolation("certificate has a vertex of degree < 2")
    paths = []
    used = set()
    for b in branch:
        for nb in sorted(H.neighbors(b)):
            if (b, nb) in used:
                continue
            path = [b, nb]
            prev, cur = b, nb
            while deg[cur] == 2:
                nxt = next(x for x in H.neighbors(cur) if x != prev)
                prev, cur = cur, nxt
                path.append(cur)
            used.add((path[0], path[1]))
            used.add((path[-1], path[-2]))
            paths.append(path)
    if sum(len(p) - 1 for p in paths) != H.number_of_edges():
        raise InvariantViolation("certificate contains a cycle without branch vertices")
    pairs = [frozenset((p[0], p[-1])) for p in paths]
    if any(len(pr) != 2 for pr in pairs) or len(set(pairs)) != len(pairs):
        raise InvariantViolation("certificate paths are loops or parallel")
    if len(branch) == 5 and all(deg[b] == 4 for b in branch) and len(paths) == 10:
        return KuratowskiSubdivision("K5", branch, None, paths)
    if len(branch) == 6 and all(deg[b] == 3 for b in branch) and len(paths) == 9:
        B = nx.Graph(list(tuple(p) for p in pairs))
        if nx.is_bipartite(B):
            left, right = nx.bipartite.sets(B)
            left, right = sorted(left), sorted(right)
            if left > right:
                left, right = right, left
            if all(frozenset((x, y)) in set(pairs) for x in left for y in right):
                return KuratowskiSubdivision("K3,3", branch, (left, right), paths)
    raise InvariantViolation("certificate is neither a K5 nor a K3,3 subdivision")


def is_planar(g: LabeledGraph) -> PlanarityResult:
    """Planarity verdict with a verified embedding or Kuratowski subgraph."""
    G = to_networkx(g)
    planar, cert = nx.check_planarity(G, counterexample=True)
    if planar:
        rotation = {v: list(cert.neighbors_cw_order(v)) for v in cert.nodes}
        faces = verify_embedding(g, rotation)
        return PlanarityResult(True, rotation, None, faces)
    sub = verify_kuratowski(g, cert.edges())
    return PlanarityResult(False, None, sub)


def _minimal_nonplanar(G: nx.Graph, rng: random.Random) -> nx.Graph:
    """Greedily delete edges while the graph stays non-planar."""
    H = G.copy()
    order = sorted(H.edges())
    rng.shuffle(order)
    for e in order:
        H.remove_edge(*e)
        if nx.is_planar(H):
            H.add_edge(*e)
    H.remove_nodes_from([v for v in list(H.nodes) if H.degree(v) == 0])
    return H


def k33_witness(g: LabeledGraph, attempts: int = 200, seed: int = 0) -> KuratowskiSubdivision | None:
    """A verified K3,3 subdivision in ``g``, or None.

    None is certain when ``g`` is planar; otherwise it means no K3,3 turned up
    within ``attempts`` randomized minimal non-planar subgraphs.
    """
    G = to_networkx(g)
    planar, cert = nx.check_planarity(G, counterexample=True)
    if planar:
        return None
    sub = verify_kuratowski(g, cert.edges())
    if sub.kind == "K3,3":
        return sub
    # shrink to the nonplanar core first; edges outside it never matter
    rng = random.Random(seed)
    for _ in range(attempts):
        H = _minimal_nonplanar(G, rng)
        sub = verify_kuratowski(g, H.edges())
        if sub.kind == "K3,3":
            return sub
    return None


# ---------------------------------------------------------------------------
# export


_MARKS = {
    "c": classify.is_c_simple,
    "g": classify.is_g_simple,
    "s": classify.is_s_simple,
    "t": classify.is_t_simple,
}


def _dot_label(p: Permutation, marks: Sequence[str]) -> str:
    word = "".join(map(str, p.word)) if p.n < 10 else " ".join(map(str, p.word))
    flags = {m: _MARKS[m](p) for m in marks}
    text = word + ("*" if flags.get("c") else "")
    if flags.get("t"):
        text = f"<U>{text}</U>"
    return f"<{text}>"


def export_dot(g: LabeledGraph, components_flag: bool = False,
               marks: Sequence[str] = ()) -> str:
    """Deterministic DOT text.

    ``marks`` decorates vertices by class: ``c`` adds ``*``, ``g`` fills the
    node, ``s`` draws a double circle and ``t`` underlines the label.
    """
    lines = [f'graph "Gamma_{g.name}_{g.n}" {{', "  node [shape=circle, fontsize=10];"]

    def node_line(v: int) -> str:
        p = g.vertices[v]
        attrs = [f"label={_dot_label(p, marks)}"]
        if "g" in marks and classify.is_g_simple(p):
            attrs.append('style=filled, fillcolor="gray80"')
        if "s" in marks and classify.is_s_simple(p):
            attrs.append("shape=doublecircle")
        return f"  v{v} [{', '.join(attrs)}];"

    if components_flag:
        for k, comp in enumerate(components(g)):
            lines.append(f"  subgraph cluster_{k} {{")
            lines.append(f'    label="component {k} ({len(comp)} vertices)";')
            lines.extend("  " + node_line(v) for v in comp)
            lines.append("  }")
    else:
        lines.extend(node_line(v) for v in range(g.order))
    for a, b, i in g.edges:
        lines.append(f'  v{a} -- v{b} [label="{i}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json(g: LabeledGraph, with_components: bool = False,
                  planarity: PlanarityResult | None = None) -> dict:
    out: dict = {
        "n": g.n,
        "class": g.name,
        "vertices": [list(p.word) for p in g.vertices],
        "edges": [[a, b, i] for a, b, i in g.edges],
    }
    if with_components:
        comps = components(g)
        out["components"] = comps
        out["component_count"] = len(comps)
    if planarity is not None:
        out["planar"] = planarity.planar
        if planarity.planar:
            out["faces"] = planarity.faces
        else:
            k = planarity.kuratowski
            out["kuratowski"] = {"kind": k.kind, "branch": k.branch, "paths": k.paths}
    return out
