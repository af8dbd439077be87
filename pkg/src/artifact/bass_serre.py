"""Finite portions of the Bass-Serre tree and the action of π1 on it.

A tree vertex is labelled by the reduced path ``σ_1 e_1 ... σ_n e_n`` from the
base vertex; it stands for the coset ``σ_1 e_1 ... σ_n e_n G_{t(e_n)}``. The
empty label is the base vertex. Labels are canonical, so two labels name the
same vertex exactly when they are equal, and the distance between two vertices
is read off their longest common prefix.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

from .graph_of_groups import GraphOfGroups, Label, NormalForm


class CertificateUnavailable(RuntimeError):
    pass


# ----- tree geometry on labels ------------------------------------------

def common_prefix(a: Label, b: Label) -> int:
    k = 0
    for x, y in zip(a, b):
        if x != y:
            break
        k += 1
    return k


def distance(a: Label, b: Label) -> int:
    return len(a) + len(b) - 2 * common_prefix(a, b)


def geodesic(a: Label, b: Label) -> list[Label]:
    """Vertices of the path from a to b, both ends included."""
    k = common_prefix(a, b)
    up = [a[:i] for i in range(len(a), k - 1, -1)]
    down = [b[:i] for i in range(k + 1, len(b) + 1)]
    return up + down


def terminal_vertex(gog: GraphOfGroups, label: Label) -> str:
    return gog.end_vertex(gog.base, label)


def act(gog: GraphOfGroups, g: NormalForm, label: Label) -> Label:
    """The label of g·v."""
    return gog.extend(g, label).syllables


def vertex_stabilizer_contains(gog: GraphOfGroups, g: NormalForm, label: Label) -> bool:
    """Whether g fixes v; equivalent to w^{-1} g w lying in a vertex group."""
    return act(gog, g, label) == label


def neighbors(gog: GraphOfGroups, label: Label, budget: int | None = None) -> tuple[list[Label], bool]:
    """Neighbours of a vertex (parent first when present) and a truncation flag.

    For each edge at the terminal Γ-vertex the first ``budget`` transversal
    representatives are used; the flag reports whether any stream was cut.
    """
    v = terminal_vertex(gog, label)
    out: list[Label] = []
    truncated = False
    last_edge = label[-1][1] if label else None
    for e in gog.graph.out_edges(v):
        reps, done = gog.edge_reps(e, budget)
        truncated |= not done
        ident = gog.vertex_groups[v].identity()
        back = last_edge is not None and gog.graph.bar(e) == last_edge
        for sigma in reps:
            if back and sigma == ident:
                out.insert(0, label[:-1])
            else:
                out.append(label + ((sigma, e),))
    return out, truncated


def valence(gog: GraphOfGroups, label: Label) -> float:
    """Exact valence of a vertex (``math.inf`` for infinite transversals)."""
    v = terminal_vertex(gog, label)
    total = 0
    for e in gog.graph.out_edges(v):
        H = gog.origin_image(e)
        if not H.ambient.is_finite:
            return math.inf
        total += H.ambient.order // H.order
    return total


# ----- balls --------------------------------------------------------------

@dataclass
class TreeBall:
    gog: GraphOfGroups
    radius: int
    budget: int | None
    vertices: list[Label]
    children: dict[Label, list[Label]]
    truncated: set[Label]
    seeds: tuple = ()
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {v: i for i, v in enumerate(self.vertices)}

    def __contains__(self, label) -> bool:
        return label in self._index

    def __len__(self):
        return len(self.vertices)

    @property
    def base(self) -> Label:
        return ()

    def index(self, label: Label) -> int:
        return self._index[label]

    def neighbors(self, label: Label) -> list[Label]:
        out = [label[:-1]] if label else []
        return out + self.children.get(label, [])

    def edges(self) -> list[tuple[Label, Label]]:
        return [(v[:-1], v) for v in self.vertices if v]

    def depth(self, label: Label) -> int:
        return len(label)

    def is_tree(self) -> bool:
        edges = self.edges()
        if len(edges) != len(self.vertices) - 1:
            return False
        return all(v[:-1] in self for v in self.vertices if v)

    def within(self, radius: int) -> list[Label]:
        return [v for v in self.vertices if len(v) <= radius]

    def valence_in_ball(self, label: Label) -> int:
        return len(self.neighbors(label))


def build_ball(
    gog: GraphOfGroups,
    base_vertex: str | None = None,
    radius: int = 2,
    budget: int | None = 6,
    seeds: Iterable[NormalForm] = (),
) -> TreeBall:
    """Breadth-first ball around the base vertex, deterministic for fixed inputs.

    Seed elements g contribute the vertex g·ṽ_0 and every vertex on its path
    from the base, whatever the radius or budget.
    """
    gog.require_valid()
    if base_vertex is not None and base_vertex != gog.base:
        gog = rebase(gog, base_vertex)
    seeds = tuple(seeds)
    children: dict[Label, list[Label]] = {}
    truncated: set[Label] = set()
    order: list[Label] = [()]
    seen = {()}
    frontier = [()]
    for _ in range(radius):
        nxt = []
        for label in frontier:
            nbrs, cut = neighbors(gog, label, budget)
            if cut:
                truncated.add(label)
            for w in nbrs:
                if len(w) > len(label) and w not in seen:
                    seen.add(w)
                    order.append(w)
                    nxt.append(w)
                    children.setdefault(label, []).append(w)
        frontier = nxt
    extra = []
    for g in seeds:
        label = g.syllables if isinstance(g, NormalForm) else tuple(g)
        for i in range(1, len(label) + 1):
            w = label[:i]
            if w not in seen:
                seen.add(w)
                extra.append(w)
    extra.sort(key=lambda w: (len(w), order_key(gog, w)))
    for w in extra:
        order.append(w)
        children.setdefault(w[:-1], []).append(w)
    return TreeBall(gog, radius, budget, order, children, truncated, seeds)


def order_key(gog: GraphOfGroups, label: Label) -> tuple:
    key = []
    vertex = gog.base
    for sigma, e in label:
        key.append((e, gog.vertex_groups[vertex].sort_key(sigma)))
        vertex = gog.graph.t(e)
    return tuple(key)


def rebase(gog: GraphOfGroups, base: str) -> GraphOfGroups:
    if base not in gog.vertex_groups:
        raise KeyError(f"unknown vertex {base!r}")
    return GraphOfGroups(gog.graph, gog.vertex_groups, gog.edge_groups, gog.monos, base=base,
                         names=gog.names, resolver=gog.resolver, meta=gog.meta)


# ----- classification ------------------------------------------------------

@dataclass(frozen=True)
class Elliptic:
    fixed_vertex: Hashable
    conjugator: NormalForm | None = None

    @property
    def translation_length(self) -> int:
        return 0

    @property
    def kind(self) -> str:
        return "elliptic"


@dataclass(frozen=True)
class Hyperbolic:
    translation_length: int
    axis_vertex: Hashable
    certificate: dict
    conjugator: NormalForm | None = None

    @property
    def kind(self) -> str:
        return "hyperbolic"


def cyclic_reduction(gog: GraphOfGroups, g: NormalForm) -> tuple[NormalForm, NormalForm]:
    """Conjugate by leading syllables until the cyclic word has no pinch.

    Returns (w, r) with g = w r w^{-1}, where w is a path from the base and r
    a circuit at its terminal vertex whose cyclic word is reduced.
    """
    graph = gog.graph
    w = gog.identity()
    current = g
    while current.length >= 2:
        first_sigma, first_edge = current.syllables[0]
        last_edge = current.syllables[-1][1]
        G = gog.vertex_groups[graph.t(last_edge)]
        joint = G.multiply(current.tail, first_sigma)
        if first_edge != graph.bar(last_edge) or joint not in gog.image(last_edge):
            break
        start = graph.t(first_edge)
        rest = NormalForm(start, (), gog.vertex_groups[start].identity())
        current = gog.extend(rest, current.syllables[1:] + ((joint, first_edge),))
        w = gog.extend(w, ((first_sigma, first_edge),))
    return w, current


def classify(gog: GraphOfGroups, g: NormalForm, ball: TreeBall | None = None) -> Elliptic | Hyperbolic:
    """Elliptic with a fixed vertex, or hyperbolic with a certified translation length."""
    w, reduced = cyclic_reduction(gog, g)
    x = w.syllables
    if reduced.length == 0:
        if act(gog, g, x) != x:
            raise CertificateUnavailable("cyclic reduction produced no fixed vertex")
        return Elliptic(x, w)
    ell = reduced.length
    gx = act(gog, g, x)
    if distance(x, gx) != ell:
        raise CertificateUnavailable("displacement at the reduced vertex disagrees with the word length")
    return Hyperbolic(ell, x, certify_minimum(gog, g, x, ell), w)


def certify_minimum(gog: GraphOfGroups, g: NormalForm, x: Label, ell: int) -> dict:
    """Local-minimum certificate when the link is finite, else the square test.

    On a tree displacement is convex, so a vertex whose neighbours are all
    displaced at least as far is a global minimum. When the link is infinite
    we use d(x, g²x) = 2·d(x, gx) > 0 instead, which forces x onto the axis.
    """
    if valence(gog, x) != math.inf:
        nbrs, _ = neighbors(gog, x, None)
        worst = min(distance(y, act(gog, g, y)) for y in nbrs)
        if worst < ell:
            raise CertificateUnavailable("a neighbour is displaced less than the claimed minimum")
        return {"method": "local-minimum", "vertex": x, "neighbors_checked": len(nbrs)}
    g2x = act(gog, g, act(gog, g, x))
    if distance(x, g2x) != 2 * ell:
        raise CertificateUnavailable("square displacement test failed")
    return {"method": "square-displacement", "vertex": x, "d(x,g^2x)": 2 * ell}


def min_displacement(gog: GraphOfGroups, g: NormalForm, vertices: Iterable[Label]) -> int:
    return min(distance(x, act(gog, g, x)) for x in vertices)


def axis_segment(gog: GraphOfGroups, g: NormalForm, length: int, verdict: Hyperbolic | None = None) -> list[Label]:
    """Consecutive axis vertices through the certified vertex, at least ``length`` edges long."""
    verdict = verdict or classify(gog, g)
    if not isinstance(verdict, Hyperbolic):
        raise CertificateUnavailable("element is elliptic and has no axis")
    ell = verdict.translation_length
    reach = max(1, math.ceil(length / (2 * ell)) + 1)
    ginv = gog.inverse(g)
    x = verdict.axis_vertex
    back = [x]
    for _ in range(reach):
        back.append(act(gog, ginv, back[-1]))
    forward = [x]
    for _ in range(reach):
        forward.append(act(gog, g, forward[-1]))
    points = list(reversed(back)) + forward[1:]
    path = [points[0]]
    for a, b in zip(points, points[1:]):
        path.extend(geodesic(a, b)[1:])
    for i in range(len(path) - ell):
        if act(gog, g, path[i]) != path[i + ell]:
            raise CertificateUnavailable("translate of the segment does not shift by the translation length")
    return path


# ----- independence -------------------------------------------------------

@dataclass(frozen=True)
class Independent:
    divergence_vertices: tuple
    kind: str = "independent"


@dataclass(frozen=True)
class SameAxis:
    certificate: dict
    kind: str = "same-axis"


@dataclass(frozen=True)
class Unknown:
    horizon: int
    kind: str = "unknown"


def compare_windows(
    wg: Sequence[Hashable],
    wh: Sequence[Hashable],
    path: Callable[[Hashable, Hashable], list],
    horizon: int,
) -> Independent | Unknown:
    """Decide from finite axis windows whether two axes have bounded intersection.

    Two lines in a tree share a convex set. If that common part is a finite
    segment strictly inside both windows, it is the whole intersection. If the
    windows are disjoint and the bridge between them leaves one window and
    enters the other at interior vertices, the axes are disjoint.
    """
    pos_g = {v: i for i, v in enumerate(wg)}
    pos_h = {v: i for i, v in enumerate(wh)}
    common = [v for v in wg if v in pos_h]
    if common:
        ig = sorted(pos_g[v] for v in common)
        ih = sorted(pos_h[v] for v in common)
        interior_g = ig[0] > 0 and ig[-1] < len(wg) - 1
        interior_h = ih[0] > 0 and ih[-1] < len(wh) - 1
        if interior_g and interior_h:
            return Independent((wg[ig[0]], wg[ig[-1]]))
        return Unknown(horizon)
    x = wg[len(wg) // 2]
    y = wh[len(wh) // 2]
    route = path(x, y)
    leave = max(i for i, v in enumerate(route) if v in pos_g)
    enter = min(i for i, v in enumerate(route) if v in pos_h)
    p, q = route[leave], route[enter]
    if 0 < pos_g[p] < len(wg) - 1 and 0 < pos_h[q] < len(wh) - 1 and leave < enter:
        return Independent((p, q))
    return Unknown(horizon)


def independence_verdict(
    gog: GraphOfGroups, g: NormalForm, h: NormalForm, horizon: int = 8, max_power: int = 3
) -> Independent | SameAxis | Unknown:
    vg, vh = classify(gog, g), classify(gog, h)
    if not isinstance(vg, Hyperbolic) or not isinstance(vh, Hyperbolic):
        raise ValueError("independence is only defined for hyperbolic elements")
    powers_g = {a: gog.power(g, a) for a in range(-max_power, max_power + 1) if a}
    for b in range(1, max_power + 1):
        hb = gog.power(h, b)
        for a, ga in powers_g.items():
            if ga == hb:
                return SameAxis({"g_power": a, "h_power": b})
    wg = axis_segment(gog, g, 2 * horizon, vg)
    wh = axis_segment(gog, h, 2 * horizon, vh)
    return compare_windows(wg, wh, geodesic, horizon)


# ----- DOT ------------------------------------------------------------------

def format_label(gog: GraphOfGroups, label: Label) -> str:
    if not label:
        return gog.base
    parts = []
    vertex = gog.base
    for sigma, e in label:
        parts.append(f"{gog.vertex_groups[vertex].format(sigma)}{e}")
        vertex = gog.graph.t(e)
    return " ".join(parts) + f" {vertex}"


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def ball_to_dot(ball: TreeBall, name: str = "ball", highlight: Iterable[tuple[Label, Label]] = (), radius: int | None = None) -> str:
    gog = ball.gog
    keep = [v for v in ball.vertices if radius is None or len(v) <= radius]
    ids = {v: f"n{i}" for i, v in enumerate(keep)}
    marked = {frozenset(pair) for pair in highlight}
    lines = [f"graph {_quote(name)} {{", "  node [shape=circle, fontsize=10];"]
    for v in keep:
        kind = terminal_vertex(gog, v)
        attrs = [f"label={_quote(kind)}", f"tooltip={_quote(format_label(gog, v))}", f"orbit={_quote(kind)}"]
        if v in ball.truncated:
            attrs.append("truncated=true")
        lines.append(f"  {ids[v]} [{', '.join(attrs)}];")
    for v in keep:
        if v and v[:-1] in ids:
            attrs = f" [label={_quote(v[-1][1])}"
            if frozenset((v[:-1], v)) in marked:
                attrs += ", color=red, axis=true"
            lines.append(f"  {ids[v[:-1]]} -- {ids[v]}{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
