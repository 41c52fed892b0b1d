"""Finite views of the Bass-Serre tree and of the coned-off Cayley graph.

The tree has a vertex for every coset ``gA`` and ``gB`` and an edge for
every coset ``gC``.  The cone graph is the Cayley graph on ``a b g d`` with
an extra vertex per coset of the disk stabilizer ``H = <a, b, g d>``, joined
to every element of its coset by an edge of length 1/2.  Internally all
cone-graph weights are doubled so that they stay integral.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import product

import networkx as nx

from .classify import disk_stab_member
from .group import (
    EDGE_GROUP,
    IDENTITY,
    S3_ID,
    S3_R,
    S3_S,
    NormalForm,
    _syllable_nf,
    compose,
    normal_form,
    quotient_s3,
    translation_length,
)

RADIUS_CAP = 8
GENERATORS = ("a", "b", "B", "g", "d", "D")
_VERTEX_LETTER = {"A": "b", "B": "d"}


def translation_length_tree(g: NormalForm) -> int:
    return translation_length(g)


# --- Bass-Serre tree ---------------------------------------------------------


def _strip_trailing(g: NormalForm, gen: str) -> NormalForm:
    if g.syllables and g.syllables[-1][0] == gen:
        return NormalForm(g.a, g.g, g.syllables[:-1])
    return g


@dataclass(frozen=True, order=True)
class TreeVertex:
    kind: str
    rep: NormalForm

    @classmethod
    def of(cls, kind: str, g: NormalForm) -> "TreeVertex":
        """The vertex ``g A`` or ``g B`` with its canonical representative."""
        if kind not in _VERTEX_LETTER:
            raise ValueError(f"vertex kind must be A or B, not {kind!r}")
        g = _strip_trailing(g, _VERTEX_LETTER[kind])
        rep = min((_strip_trailing(g * c, _VERTEX_LETTER[kind]) for c in EDGE_GROUP), key=NormalForm.key)
        return cls(kind, rep)

    @property
    def node_id(self) -> str:
        return f"{self.kind}:{self.rep}"

    def __str__(self) -> str:
        return f"{self.rep}{self.kind}" if not self.rep.is_identity else self.kind


BASE_A = TreeVertex.of("A", IDENTITY)
BASE_B = TreeVertex.of("B", IDENTITY)


def tree_distance(u: TreeVertex, v: TreeVertex) -> int:
    h = u.rep.inverse() * v.rep
    syl = list(h.syllables)
    if syl and syl[0][0] == _VERTEX_LETTER[u.kind]:
        syl.pop(0)
    if syl and syl[-1][0] == _VERTEX_LETTER[v.kind]:
        syl.pop()
    m = len(syl)
    return m + (1 if m > 0 or u.kind != v.kind else 0)


def tree_neighbors(v: TreeVertex, horizon: int) -> list[TreeVertex]:
    """Neighbours of ``v``; for A-vertices only the cosets ``g b^n B`` with ``|n| <= horizon``."""
    if v.kind == "B":
        return [TreeVertex.of("A", v.rep * normal_form("d" * e)) for e in range(3)]
    return [TreeVertex.of("B", v.rep * _power_b(n)) for n in range(-horizon, horizon + 1)]


def _power_b(n: int) -> NormalForm:
    return _syllable_nf("b", n) if n else IDENTITY


@dataclass
class Ball:
    graph: nx.Graph
    center: object
    radius: int
    truncated: bool
    exact: bool = True


def tree_ball(center: TreeVertex, radius: int, horizon: int = 2, cap: int = RADIUS_CAP) -> Ball:
    if radius < 0 or radius > cap:
        raise ValueError(f"radius must lie in [0, {cap}]")
    graph = nx.Graph()
    graph.add_node(center, dist=0)
    frontier = [center]
    truncated = False
    for r in range(1, radius + 1):
        nxt = []
        for v in frontier:
            truncated |= v.kind == "A"
            for w in tree_neighbors(v, horizon):
                if w not in graph:
                    graph.add_node(w, dist=r)
                    nxt.append(w)
                graph.add_edge(v, w)
        frontier = nxt
    return Ball(graph, center, radius, truncated)


# --- coned-off Cayley graph --------------------------------------------------

T_ELEMENT = normal_form("gd")
_RIGHT_MOVES = (normal_form("a"), T_ELEMENT)


def _coset_reduce(g: NormalForm) -> NormalForm:
    # right multiplication by b^n and t shortens g until it ends in d^2
    while True:
        g = _strip_trailing(g, "b")
        if g.syllables and g.syllables[-1] == ("d", 1):
            g = g * T_ELEMENT
            continue
        return g


def coset_rep(g: NormalForm) -> NormalForm:
    """Canonical representative of ``g H``.

    Reduced forms of one coset are linked by right multiplication with
    ``a`` and ``t``; the closure is a handful of elements and its minimum is
    the representative.
    """
    start = _coset_reduce(g)
    seen = {start}
    stack = [start]
    while stack:
        r = stack.pop()
        for c in _RIGHT_MOVES:
            x = _coset_reduce(r * c)
            if x not in seen:
                seen.add(x)
                stack.append(x)
    return min(seen, key=NormalForm.key)


def same_coset(g: NormalForm, h: NormalForm) -> bool:
    return disk_stab_member(g.inverse() * h) is not None


@dataclass(frozen=True)
class ConeVertex:
    """A group element, or the cone point of the coset ``rep H``."""

    kind: str
    rep: NormalForm

    @classmethod
    def element(cls, g: NormalForm) -> "ConeVertex":
        return cls("element", g)

    @classmethod
    def cone(cls, g: NormalForm) -> "ConeVertex":
        return cls("cone", coset_rep(g))

    @property
    def node_id(self) -> str:
        prefix = "H:" if self.kind == "cone" else ""
        return f"{prefix}{self.rep}"


def _subgroup_ball(length: int) -> list[NormalForm]:
    """Elements of ``H`` given by words of length ``<= length`` in ``a, b, B, t``."""
    gens = [normal_form(w) for w in ("a", "b", "B", "gd")]
    seen = {IDENTITY}
    frontier = [IDENTITY]
    for _ in range(length):
        nxt = []
        for x in frontier:
            for s in gens:
                y = x * s
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen, key=NormalForm.key)


def _cayley_ball(center: NormalForm, radius: int) -> set[NormalForm]:
    seen = {center}
    frontier = [center]
    steps = [normal_form(ch) for ch in GENERATORS]
    for _ in range(radius):
        nxt = []
        for x in frontier:
            for s in steps:
                y = x * s
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def _cone_graph(elements: set[NormalForm]) -> nx.Graph:
    graph = nx.Graph()
    steps = [normal_form(ch) for ch in GENERATORS]
    for x in elements:
        ex = ConeVertex.element(x)
        graph.add_edge(ex, ConeVertex.cone(x), weight=1)
        for s in steps:
            y = x * s
            if y in elements and y != x:
                graph.add_edge(ex, ConeVertex.element(y), weight=2)
    return graph


def _s3_lower_bound(k: NormalForm) -> int:
    """Cone-point distance between ``H`` and ``k H`` in the S3 image graph."""
    image_gens = [quotient_s3(ch) for ch in "gdD"]
    subgroup = {S3_ID, compose(S3_S, S3_R)}
    perms = [tuple(p) for p in product(range(3), repeat=3) if len(set(p)) == 3]

    def coset(p):
        return ("cone", min(compose(p, h) for h in subgroup))

    graph = nx.Graph()
    for p in perms:
        graph.add_edge(p, coset(p), weight=1)
        for s in image_gens:
            q = compose(p, s)
            if q != p:
                graph.add_edge(p, q, weight=2)
    target = coset(quotient_s3(k))
    return nx.shortest_path_length(graph, coset(S3_ID), target, weight="weight") // 2


@dataclass(frozen=True)
class ConeDistance:
    bound: int
    exact: bool
    lower: int


def cone_distance_upper(g: NormalForm, h: NormalForm, budget: int = 2) -> ConeDistance:
    """Best path found between the cone points of ``g H`` and ``h H``.

    Explores Cayley balls of radius ``budget`` around both ends together with
    the straight path between them; the S3 quotient gives a lower bound and
    the answer is exact when the two meet.
    """
    k = g.inverse() * h
    if same_coset(IDENTITY, k):
        return ConeDistance(0, True, 0)
    lower = _s3_lower_bound(k)
    elements = _cayley_ball(IDENTITY, budget) | {k * x for x in _cayley_ball(IDENTITY, budget)}
    # prefixes of the normal-form word of k guarantee a path
    cur = IDENTITY
    elements.add(cur)
    for ch in k.word():
        cur = cur * normal_form(ch)
        elements.add(cur)
    graph = _cone_graph(elements)
    doubled = nx.shortest_path_length(graph, ConeVertex.cone(IDENTITY), ConeVertex.cone(k), weight="weight")
    bound = doubled // 2
    return ConeDistance(bound, bound == lower, lower)


def cone_ball(center: ConeVertex, radius: int, budget: int = 2, cap: int = RADIUS_CAP) -> Ball:
    """Vertices within ``radius`` of ``center`` in the cone graph.

    A cone point only contributes the coset elements reached by subgroup
    words of length ``<= budget``, so the result is always flagged truncated
    once a cone point is expanded.
    """
    if radius < 0 or radius > cap:
        raise ValueError(f"radius must lie in [0, {cap}]")
    limit = 2 * radius
    sub = _subgroup_ball(budget)
    steps = [normal_form(ch) for ch in GENERATORS]
    graph = nx.Graph()
    dist = {center: 0}
    graph.add_node(center)
    heap = [(0, 0, center)]
    counter = 1
    truncated = False
    while heap:
        d, _, v = heapq.heappop(heap)
        if d > dist[v]:
            continue
        if v.kind == "cone":
            truncated = True
            nbrs = [(ConeVertex.element(v.rep * u), 1) for u in sub]
        else:
            nbrs = [(ConeVertex.cone(v.rep), 1)]
            nbrs += [(ConeVertex.element(v.rep * s), 2) for s in steps if v.rep * s != v.rep]
        for w, wt in nbrs:
            nd = d + wt
            if nd > limit:
                continue
            graph.add_edge(v, w, weight=wt)
            if nd < dist.get(w, limit + 1):
                dist[w] = nd
                heapq.heappush(heap, (nd, counter, w))
                counter += 1
    for v, d in dist.items():
        graph.nodes[v]["dist"] = d / 2
    return Ball(graph, center, radius, truncated, exact=not truncated)


def to_dot(ball: Ball, name: str = "ball") -> str:
    """Graphviz text with vertex labels set to serialized normal forms."""
    ids = {}
    lines = [f"graph {name} {{"]
    for i, v in enumerate(sorted(ball.graph.nodes, key=lambda v: (v.kind, v.rep.key()))):
        ids[v] = f"v{i}"
        label = f"{v.kind} {v.rep.to_json()}".replace('"', '\\"')
        lines.append(f'  v{i} [label="{label}"];')
    for u, v, data in sorted(ball.graph.edges(data=True), key=lambda e: (ids[e[0]], ids[e[1]])):
        a, b = sorted((ids[u], ids[v]))
        w = data.get("weight")
        attr = f' [weight="{w / 2:g}"]' if w is not None else ""
        lines.append(f"  {a} -- {b}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
