"""Pointwise stabilizers and (k, C)-acylindricity verdicts for tree actions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .bass_serre import (
    Independent,
    TreeBall,
    build_ball,
    classify,
    distance,
    independence_verdict,
    terminal_vertex,
    vertex_stabilizer_contains,
)
from .graph_of_groups import GraphOfGroups, Label, NormalForm, _origin_finite
from .outbs import build_ray_gog, outbs_params, ray_edge


class NoFiniteEdgeGroup(ValueError):
    pass


class NotApplicable(ValueError):
    def __init__(self, message: str, failing_index: str, value):
        super().__init__(message)
        self.failing_index = failing_index
        self.value = value


class InfiniteStabilizerAtBase(ValueError):
    pass


# ----- stabilizers --------------------------------------------------------

def _edge_between(a: Label, b: Label) -> tuple[Label, Label]:
    """Orient an adjacent pair as (parent, child)."""
    if len(b) == len(a) + 1 and b[:-1] == a:
        return a, b
    if len(a) == len(b) + 1 and a[:-1] == b:
        return b, a
    raise ValueError("consecutive path vertices are not adjacent")


def edge_stabilizer(gog: GraphOfGroups, parent: Label, child: Label) -> list[NormalForm] | None:
    """The stabilizer of the edge parent-child as circuits at the base, or None when infinite.

    With child = parent·σ·e, the stabilizer is L σ α_ē(G_e) σ^{-1} L^{-1}
    where L is the path to the parent.
    """
    sigma, e = child[-1]
    if not gog.edge_groups[e].is_finite:
        return None
    H = gog.origin_image(e)
    G = H.ambient
    return [gog.conjugate_into(parent, G.multiply(G.multiply(sigma, h), G.inverse(sigma))) for h in H]


def pointwise_stabilizer(gog: GraphOfGroups, path: Sequence[Label]) -> list[NormalForm]:
    """Every element fixing each vertex of the path, enumerated exactly."""
    path = [tuple(v) for v in path]
    if not path:
        raise ValueError("empty path")
    candidates = None
    if len(path) == 1:
        v = path[0]
        G = gog.vertex_groups[terminal_vertex(gog, v)]
        if not G.is_finite:
            raise NoFiniteEdgeGroup("single vertex with an infinite stabilizer")
        candidates = [gog.conjugate_into(v, g) for g in G.elements()]
    else:
        best = None
        for a, b in zip(path, path[1:]):
            parent, child = _edge_between(a, b)
            e = child[-1][1]
            if gog.edge_groups[e].is_finite:
                size = gog.edge_groups[e].order
                if best is None or size < best[0]:
                    best = (size, parent, child)
        if best is None:
            raise NoFiniteEdgeGroup("no edge on the path has a finite edge group")
        candidates = edge_stabilizer(gog, best[1], best[2])
    return [g for g in candidates if all(vertex_stabilizer_contains(gog, g, v) for v in path)]


# ----- (k, C) checks ---------------------------------------------------------

@dataclass
class AcylCertificate:
    k: int
    C: int
    scope: str
    passed: bool
    radius: int | None = None
    paths_checked: int = 0
    max_stabilizer: float = 0
    truncated: bool = False
    violating_path: list | None = None
    violating_size: float | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self, gog: GraphOfGroups | None = None) -> dict:
        from .bass_serre import format_label

        path = None
        if self.violating_path is not None:
            path = [format_label(gog, v) if gog else repr(v) for v in self.violating_path]
        size = self.violating_size
        return {
            "k": self.k,
            "C": self.C,
            "scope": self.scope,
            "passed": self.passed,
            "radius": self.radius,
            "paths_checked": self.paths_checked,
            "max_stabilizer": "inf" if self.max_stabilizer == math.inf else self.max_stabilizer,
            "truncated": self.truncated,
            "violating_path": path,
            "violating_size": "inf" if size == math.inf else size,
            "notes": list(self.notes),
        }


def paths_of_length(ball: TreeBall, k: int):
    """Each geodesic of exactly k edges inside the ball, once per unordered pair."""
    for start in ball.vertices:
        if k == 0:
            yield [start]
            continue
        stack = [[start]]
        while stack:
            path = stack.pop()
            if len(path) == k + 1:
                if ball.index(path[0]) < ball.index(path[-1]):
                    yield path
                continue
            prev = path[-2] if len(path) > 1 else None
            for nxt in reversed(ball.neighbors(path[-1])):
                if nxt != prev:
                    stack.append(path + [nxt])


def stabilizer_size(gog: GraphOfGroups, path: Sequence[Label]) -> float:
    try:
        return len(pointwise_stabilizer(gog, path))
    except NoFiniteEdgeGroup:
        return math.inf


def check_kc(gog: GraphOfGroups, k: int, C: int, radius: int = 4, budget: int | None = 6, ball: TreeBall | None = None) -> AcylCertificate:
    """Exhaustive (k, C) check over all length-k geodesics of a ball.

    Paths longer than k have stabilizers inside those of their length-k
    sub-paths, so length exactly k suffices.
    """
    if k < 0 or C < 1:
        raise ValueError("need k ≥ 0 and C ≥ 1")
    ball = ball or build_ball(gog, radius=radius, budget=budget)
    cert = AcylCertificate(k, C, "exhaustive-radius", True, radius=ball.radius, truncated=bool(ball.truncated))
    for path in paths_of_length(ball, k):
        size = stabilizer_size(gog, path)
        cert.paths_checked += 1
        cert.max_stabilizer = max(cert.max_stabilizer, size)
        if size > C:
            cert.passed = False
            cert.violating_path = path
            cert.violating_size = size
            break
    if cert.truncated:
        cert.notes.append("ball truncated at budget; verdict covers enumerated paths only")
    return cert


# ----- amalgams ------------------------------------------------------------

@dataclass
class AmalgamReport:
    certificate: AcylCertificate
    index_A: float
    index_B: float
    a: NormalForm
    b1: NormalForm
    b2: NormalForm
    pair: tuple[NormalForm, NormalForm]
    independence: object


def _probe_index(gog: GraphOfGroups, e: str, limit: int = 3) -> tuple[float, list]:
    if _origin_finite(gog, e):
        reps, _ = gog.edge_reps(e, None)
        return len(reps), reps
    reps, done = gog.edge_reps(e, limit)
    return (len(reps) if done else math.inf), reps


def amalgam_criterion(gog: GraphOfGroups) -> AmalgamReport:
    """[A:D] ≥ 2 and [B:D] > 2 give a (1, |D|) certificate and two independent hyperbolics."""
    geo = gog.graph.geometric_edges()
    if len(geo) != 1 or len(gog.graph.vertices) != 2:
        raise NotApplicable("the criterion needs a single edge between two vertices", "shape", len(geo))
    e = geo[0]
    A, B = gog.graph.o(e), gog.graph.t(e)
    D = gog.edge_groups[e]
    if not D.is_finite:
        raise NotApplicable("edge group is infinite", "D", math.inf)
    index_A, reps_A = _probe_index(gog, e)
    index_B, reps_B = _probe_index(gog, gog.graph.bar(e))
    if index_A < 2:
        raise NotApplicable(f"[A:D] = {index_A} < 2", "A", index_A)
    if index_B <= 2:
        raise NotApplicable(f"[B:D] = {index_B} ≤ 2", "B", index_B)
    a = gog.from_vertex(A, reps_A[1])
    b1 = gog.from_vertex(B, reps_B[1])
    b2 = gog.from_vertex(B, reps_B[2])
    pair = (gog.multiply(a, b1), gog.multiply(a, b2))
    cert = AcylCertificate(1, D.order, "algebraic", True, notes=[f"[A:D] = {index_A}, [B:D] = {index_B}"])
    verdict = independence_verdict(gog, *pair)
    if not isinstance(verdict, Independent):
        raise RuntimeError("witness pair failed the independence check")
    return AmalgamReport(cert, index_A, index_B, a, b1, b2, pair, verdict)


# ----- WPD ------------------------------------------------------------------

@dataclass
class WPDReport:
    epsilon: int
    M: int
    candidates: list[NormalForm]
    exact: list[NormalForm]
    finite_certificate: bool
    exhausted: bool
    reasons: list[str]


def wpd_enumerate(gog: GraphOfGroups, h: NormalForm, epsilon: int = 0, M: int = 1, budget: int | None = None) -> WPDReport:
    """Elements moving the base s at most ε, and those also moving h^M s at most ε.

    Every g with g·s = x lies in L_x·Stab(s), a coset of the finite base
    stabilizer, so each candidate vertex contributes an explicit finite set.
    """
    base_group = gog.vertex_groups[gog.base]
    if not base_group.is_finite:
        raise InfiniteStabilizerAtBase(f"G_{gog.base} is infinite")
    ball = build_ball(gog, radius=epsilon, budget=budget)
    targets = [x for x in ball.vertices if terminal_vertex(gog, x) == gog.base]
    stab = [gog.from_vertex(gog.base, g) for g in base_group.elements()]
    candidates = [gog.multiply(gog.path_element(x), s) for x in targets for s in stab]
    far = gog.power(h, M).syllables
    from .bass_serre import act

    exact = [g for g in candidates if distance(far, act(gog, g, far)) <= epsilon]
    reasons = []
    finite_groups = all(G.is_finite for G in gog.vertex_groups.values())
    if not finite_groups:
        reasons.append("some vertex group is infinite")
    finite_valence = all(_origin_finite(gog, e) for e in gog.graph.edges)
    if not finite_valence:
        reasons.append("some vertex has infinite valence")
    if ball.truncated:
        reasons.append("candidate ball truncated at budget")
    return WPDReport(epsilon, M, candidates, exact, finite_groups and finite_valence, not ball.truncated, reasons)


# ----- the ray action ---------------------------------------------------------

@dataclass
class RayWitness:
    k: int
    l: int
    vertex_group_order: int
    path_stabilizer_size: int | None
    path: list[Label]
    N: int
    R: int


def ray_path(k: int, l: int, gog: GraphOfGroups) -> list[Label]:
    """The vertices ṽ_k, ..., ṽ_l of the standard ray in X_{p,q}."""
    def vertex(j):
        out = []
        for i in range(j):
            G = gog.vertex_groups[gog.graph.o(ray_edge(i))]
            out.append((G.identity(), ray_edge(i)))
        return tuple(out)

    return [vertex(j) for j in range(k, l + 1)]


def ray_nonacyl_witness(p: int, q: int, N: int, R: int, verify_limit: int = 4096) -> RayWitness:
    """Least k with |G_{v_k}| > N, and the pointwise stabilizer of [ṽ_k, ṽ_{k+R}].

    For k ≥ 1 the whole of G_{v_k} fixes the segment; at k = 0 only the
    edge group does.
    """
    params = outbs_params(p, q)
    if R < 0:
        raise ValueError("R must be non-negative")
    k = 0
    while _ray_vertex_order(params, k) <= N:
        k += 1
    l = k + R
    order = _ray_vertex_order(params, k)
    size = None
    path: list[Label] = []
    if order <= verify_limit:
        gog = build_ray_gog(p, q, max(l, 1))
        path = ray_path(k, l, gog)
        size = len(pointwise_stabilizer(gog, path))
    return RayWitness(k, l, order, size, path, N, R)


def _ray_vertex_order(params, k: int) -> int:
    return 2 * (params.base_order if k == 0 else params.level_modulus(k))
