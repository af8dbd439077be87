"""Quotients of Bass-Serre trees by normal subgroups generated by equivariant families.

An equivariant family is fixed by one subgroup ``R_v̂ ≤ G_v̂`` per vertex of Γ;
the subgroup at a tree vertex with label L is ``L R_v̂ L^{-1}``. The quotient
is computed on a finite ball by folding: each ``n ∈ R_x`` identifies every
neighbour c of x with ``n·c``, and an identification ``a ~ n·a`` is pushed on
to the neighbours of a, since n maps the star of a onto the star of ``n·a``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import networkx as nx
from networkx.utils import UnionFind

from .acyl import AcylCertificate, paths_of_length, pointwise_stabilizer, NoFiniteEdgeGroup
from .bass_serre import (
    CertificateUnavailable,
    Elliptic,
    Hyperbolic,
    Independent,
    SameAxis,
    TreeBall,
    Unknown,
    act,
    build_ball,
    classify,
    compare_windows,
    format_label,
    terminal_vertex,
    _quote,
)
from .graph_of_groups import GraphOfGroups, Label, NormalForm, betti_number
from .groups import (
    GroupError,
    Subgroup,
    is_normal_in,
    join,
    normal_closure,
    subgroup_closure,
    transversal_stream,
)


class NotATree(RuntimeError):
    pass


class WrongShape(ValueError):
    pass


class SearchBudgetExhausted(RuntimeError):
    pass


class FamilyRejected(ValueError):
    def __init__(self, vertex: str, verdict, note: str = "", fmt=repr):
        message = f"R_{vertex} is not normal in G_{vertex}"
        if verdict is not None and verdict.conjugator is not None:
            message += (f": conjugating {fmt(verdict.element)} by {fmt(verdict.conjugator)}"
                        f" gives {fmt(verdict.conjugate)}")
        if note:
            message += f" ({note})"
        super().__init__(message)
        self.vertex = vertex
        self.verdict = verdict
        self.note = note


# ----- families -------------------------------------------------------------

@dataclass
class EquivariantFamily:
    assignments: dict[str, Subgroup]
    mode: str = "strict"
    notes: list[str] = field(default_factory=list)

    def subgroup(self, gog: GraphOfGroups, v: str) -> Subgroup:
        found = self.assignments.get(v)
        if found is None:
            return subgroup_closure(gog.vertex_groups[v], [])
        return found

    def nontrivial(self, gog: GraphOfGroups, v: str) -> list:
        R = self.subgroup(gog, v)
        ident = gog.vertex_groups[v].identity()
        return [r for r in R if r != ident]

    def to_json(self, gog: GraphOfGroups) -> dict:
        return {
            "mode": self.mode,
            "assignments": {
                v: [gog.vertex_groups[v].element_to_json(g) for g in R.generators] for v, R in sorted(self.assignments.items())
            },
            "orders": {v: R.order for v, R in sorted(self.assignments.items())},
            "notes": list(self.notes),
        }


def make_family(gog: GraphOfGroups, generators: Mapping[str, Iterable], mode: str = "strict") -> EquivariantFamily:
    assignments = {}
    for v, gens in generators.items():
        G = gog.vertex_groups[v]
        elements = []
        for g in gens:
            if isinstance(g, str):
                w, g = gog.resolve_name(g)
                if w != v:
                    raise ValueError(f"named element lives at {w}, not {v}")
            G.check(g)
            elements.append(g)
        assignments[v] = subgroup_closure(G, elements)
    return EquivariantFamily(assignments, mode)


def family_from_json(gog: GraphOfGroups, data: Mapping) -> EquivariantFamily:
    gens = {}
    for v, items in data.get("assignments", {}).items():
        G = gog.vertex_groups[v]
        gens[v] = [item if isinstance(item, str) else G.element_from_json(item) for item in items]
    return make_family(gog, gens, data.get("mode", "strict"))


@dataclass
class FamilyValidation:
    ok: bool
    family: EquivariantFamily
    rejected_vertex: str | None = None
    witness: object = None
    message: str = ""


def family_validate(gog: GraphOfGroups, family: EquivariantFamily, mode: str | None = None) -> FamilyValidation:
    """Strict mode rejects non-normal subgroups; normalize mode replaces them by normal closures."""
    mode = mode or family.mode
    out = {}
    notes = list(family.notes)
    for v in gog.graph.vertices:
        R = family.subgroup(gog, v)
        G = gog.vertex_groups[v]
        if R.ambient != G:
            raise GroupError(f"R_{v} does not live in G_{v}")
        verdict = is_normal_in(R, G)
        if verdict:
            out[v] = R
            continue
        if mode == "strict":
            return FamilyValidation(False, family, v, verdict, str(FamilyRejected(v, verdict, fmt=G.format)))
        if not G.is_finite:
            note = "normal closure is the full rotation-extended group"
            return FamilyValidation(False, family, v, verdict, str(FamilyRejected(v, verdict, note, G.format)))
        closure = normal_closure(R, G)
        notes.append(f"R_{v} replaced by its normal closure (order {R.order} -> {closure.order})")
        out[v] = closure
    return FamilyValidation(True, EquivariantFamily(out, mode, notes))


def require_family(gog: GraphOfGroups, family: EquivariantFamily) -> EquivariantFamily:
    report = family_validate(gog, family)
    if not report.ok:
        G = gog.vertex_groups[report.rejected_vertex]
        raise FamilyRejected(report.rejected_vertex, report.witness, fmt=G.format)
    return report.family


# ----- folding ------------------------------------------------------------------

def _local_image(gog: GraphOfGroups, x: Label, r, neighbor: Label) -> Label:
    """n·c for n = L r L^{-1} (L the path to x) and c a neighbour of x."""
    G = gog.vertex_groups[terminal_vertex(gog, x)]
    if len(neighbor) > len(x):
        sigma, e = neighbor[-1]
        step = (G.multiply(r, sigma), e)
    else:
        back = gog.graph.bar(x[-1][1])
        step = (r, back)
    return gog.extend(gog.path_element(x), [step]).syllables


def fold(gog: GraphOfGroups, ball: TreeBall, family: EquivariantFamily) -> UnionFind:
    uf = UnionFind(ball.vertices)
    queue: deque = deque()
    for x in ball.vertices:
        v = terminal_vertex(gog, x)
        for r in family.nontrivial(gog, v):
            for c in ball.neighbors(x):
                image = _local_image(gog, x, r, c)
                if image in ball and image != c:
                    queue.append((c, image, (x, r)))
    cache: dict = {}

    def transporter(key):
        n = cache.get(key)
        if n is None:
            n = cache[key] = gog.conjugate_into(*key)
        return n

    while queue:
        a, b, key = queue.popleft()
        if uf[a] == uf[b]:
            continue
        uf.union(a, b)
        n = transporter(key)
        for z in ball.neighbors(a):
            nz = act(gog, n, z)
            if nz in ball and uf[z] != uf[nz]:
                queue.append((z, nz, key))
        inverse_key = ("inverse", key)
        ninv = cache.get(inverse_key)
        if ninv is None:
            ninv = cache[inverse_key] = gog.inverse(n)
        for z in ball.neighbors(b):
            pre = act(gog, ninv, z)
            if pre in ball and uf[z] != uf[pre]:
                queue.append((pre, z, key))
    return uf


@dataclass
class QuotientBall:
    gog: GraphOfGroups
    family: EquivariantFamily
    source: TreeBall
    radius: int
    slack: int
    class_of: dict[Label, int]
    representatives: list[Label]
    full_graph: nx.Graph
    graph: nx.Graph

    def cls(self, label: Label) -> int:
        return self.class_of[label]

    def valence(self, label_or_class) -> int:
        c = label_or_class if isinstance(label_or_class, int) else self.class_of[label_or_class]
        return self.graph.degree(c)

    def is_tree(self) -> bool:
        return nx.is_tree(self.graph)

    def diameter(self) -> int:
        return nx.diameter(self.graph) if len(self.graph) > 1 else 0

    def class_distance(self, a: int, b: int) -> int:
        return nx.shortest_path_length(self.full_graph, a, b)

    def members(self, c: int) -> list[Label]:
        return [v for v, k in self.class_of.items() if k == c]

    def truncated_classes(self) -> set[int]:
        return {self.class_of[v] for v in self.source.truncated if len(v) <= self.radius}


def quotient_ball(
    ball: TreeBall,
    family: EquivariantFamily,
    slack: int = 2,
    extra_seeds: Sequence = (),
) -> QuotientBall:
    """Fold the radius-(r+slack) ball and report the class graph of the radius-r part."""
    gog = ball.gog
    family = require_family(gog, family)
    big = build_ball(gog, radius=ball.radius + slack, budget=ball.budget, seeds=tuple(ball.seeds) + tuple(extra_seeds))
    uf = fold(gog, big, family)
    roots: dict = {}
    class_of: dict[Label, int] = {}
    reps: list[Label] = []
    for v in big.vertices:
        root = uf[v]
        if root not in roots:
            roots[root] = len(reps)
            reps.append(v)
        class_of[v] = roots[root]
    full = nx.Graph()
    full.add_nodes_from(range(len(reps)))
    local = nx.Graph()
    for v in big.vertices:
        if len(v) <= ball.radius:
            local.add_node(class_of[v])
    for parent, child in big.edges():
        a, b = class_of[parent], class_of[child]
        if a == b:
            raise NotATree("an edge folded onto a single vertex")
        full.add_edge(a, b)
        if len(child) <= ball.radius:
            local.add_edge(a, b)
    if not nx.is_tree(local) or not nx.is_tree(full):
        raise NotATree("folded ball contains a cycle")
    return QuotientBall(gog, family, big, ball.radius, slack, class_of, reps, full, local)


# ----- classification on the quotient ----------------------------------------

@dataclass(frozen=True)
class QuotientElliptic:
    fixed_class: int
    representative: Label
    kind: str = "elliptic"
    translation_length: int = 0


@dataclass(frozen=True)
class QuotientHyperbolic:
    translation_length: int
    axis_class: int
    representative: Label
    certificate: dict
    kind: str = "hyperbolic"


def _orbit_seeds(gog: GraphOfGroups, g: NormalForm, points: Iterable[Label], powers: Iterable[int]) -> list[Label]:
    seeds = []
    cache = {k: gog.power(g, k) for k in powers}
    for x in points:
        for k, gk in cache.items():
            seeds.append(act(gog, gk, x))
    return seeds


def _candidate_points(ball: TreeBall, depth: int = 1) -> list[Label]:
    return [v for v in ball.vertices if len(v) <= depth]


def quotient_classify(ball: TreeBall, family: EquivariantFamily, g: NormalForm, slack: int = 2, depth: int = 1):
    """Elliptic when a fixed class is exhibited; hyperbolic by the square displacement test.

    In a tree, d(x, g²x) = 2·d(x, gx) > 0 holds exactly when x lies on the
    axis of a hyperbolic g, and then d(x, gx) is its translation length.
    The tree's own fixed vertex or axis vertex is tried first: the projection
    is equivariant, so a fixed vertex upstairs gives a fixed class.
    """
    gog = ball.gog
    upstairs = classify(gog, g)
    anchor = upstairs.fixed_vertex if isinstance(upstairs, Elliptic) else upstairs.axis_vertex
    points = [anchor] + [v for v in _candidate_points(ball, depth) if v != anchor]
    seeds = _orbit_seeds(gog, g, points, (0, 1, 2))
    q = quotient_ball(ball, family, slack, seeds)
    displaced = []
    for x in points:
        cx, cgx = q.cls(x), q.cls(act(gog, g, x))
        if cx == cgx:
            return QuotientElliptic(cx, x)
        displaced.append((x, cx, cgx))
    g2 = gog.power(g, 2)
    for x, cx, cgx in displaced:
        d1 = q.class_distance(cx, cgx)
        d2 = q.class_distance(cx, q.cls(act(gog, g2, x)))
        if d2 == 2 * d1 > 0:
            return QuotientHyperbolic(d1, cx, x, {"method": "square-displacement", "d(x,gx)": d1, "d(x,g^2x)": d2})
    raise CertificateUnavailable("no fixed class and no vertex passing the square test")


def quotient_independence(ball: TreeBall, family: EquivariantFamily, g: NormalForm, h: NormalForm, reach: int = 2, slack: int = 2):
    """Independence of the images of g and h on the quotient, via axis windows of classes."""
    gog = ball.gog
    vg = quotient_classify(ball, family, g, slack)
    vh = quotient_classify(ball, family, h, slack)
    if not isinstance(vg, QuotientHyperbolic) or not isinstance(vh, QuotientHyperbolic):
        raise ValueError("both images must be hyperbolic")
    powers = range(-reach, reach + 1)
    seeds = _orbit_seeds(gog, g, [vg.representative], powers) + _orbit_seeds(gog, h, [vh.representative], powers)
    q = quotient_ball(ball, family, slack, seeds)

    def window(elem, verdict):
        pts = [q.cls(act(gog, gog.power(elem, k), verdict.representative)) for k in powers]
        path = [pts[0]]
        for a, b in zip(pts, pts[1:]):
            path.extend(nx.shortest_path(q.full_graph, a, b)[1:])
        return path

    wg, wh = window(g, vg), window(h, vh)
    if wg == wh or wg == wh[::-1]:
        return SameAxis({"window": wg})
    return compare_windows(wg, wh, lambda a, b: nx.shortest_path(q.full_graph, a, b), reach)


# ----- acylindricity on the quotient -----------------------------------------

def quotient_kc_check(q: QuotientBall, k: int, C: int) -> AcylCertificate:
    """Bound pointwise stabilizers of quotient paths through their lifts.

    A quotient path lifts to a geodesic [x_0, ..., x_k]; its stabilizer in G/N
    is the image of PStab([x_0, x_k]), whose size is at most
    |PStab| / |PStab ∩ ⟨R_{x_i}⟩|. The part of N seen here is generated by
    the stabilizer elements lying in some R_{x_i}.
    """
    gog = q.gog
    ball = q.source
    cert = AcylCertificate(k, C, "quotient-exhaustive-radius", True, radius=q.radius, truncated=bool(q.truncated_classes()))
    seen = set()
    for path in paths_of_length(ball, k):
        if any(len(v) > q.radius for v in path):
            continue
        classes = tuple(q.cls(v) for v in path)
        if len(set(classes)) != len(classes):
            continue
        key = min(classes, classes[::-1])
        if key in seen:
            continue
        seen.add(key)
        try:
            stab = pointwise_stabilizer(gog, path)
        except NoFiniteEdgeGroup:
            size = math.inf
        else:
            in_family = [s for s in stab if any(_in_local_family(gog, q.family, x, s) for x in path)]
            size = len(stab) // max(1, _generated_size(gog, stab, in_family))
        cert.paths_checked += 1
        cert.max_stabilizer = max(cert.max_stabilizer, size)
        if size > C:
            cert.passed = False
            cert.violating_path = list(path)
            cert.violating_size = size
            break
    return cert


def _in_local_family(gog: GraphOfGroups, family: EquivariantFamily, x: Label, s: NormalForm) -> bool:
    """Whether s lies in R_x = L R_v̂ L^{-1}."""
    path = gog.path_element(x)
    local = gog.multiply(gog.multiply(gog.inverse(path), s), path)
    if local.syllables:
        return False
    return local.tail in family.subgroup(gog, terminal_vertex(gog, x))


def _generated_size(gog: GraphOfGroups, ambient: list[NormalForm], gens: list[NormalForm]) -> int:
    """Order of the subgroup of a finite stabilizer generated by ``gens``."""
    members = {gog.identity()}
    frontier = [gog.identity()]
    allowed = set(ambient)
    while frontier:
        x = frontier.pop()
        for s in gens:
            y = gog.multiply(x, s)
            if y not in members and y in allowed:
                members.add(y)
                frontier.append(y)
    return len(members)


# ----- non-elementarity criteria for the quotient ------------------------------

@dataclass
class ConditionReport:
    status: str  # pass | fail | inconclusive
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"status": self.status, **_jsonable(self.detail)}


@dataclass
class TheoremAReport:
    cond1: ConditionReport
    cond2: ConditionReport
    cond3: ConditionReport

    @property
    def verdict(self) -> str:
        statuses = [self.cond1.status, self.cond2.status, self.cond3.status]
        if "pass" in statuses:
            return "pass"
        if "inconclusive" in statuses:
            return "inconclusive"
        return "fail"

    @property
    def witnesses(self) -> dict:
        return {name: c.detail.get("witness") for name, c in (("cond1", self.cond1), ("cond2", self.cond2), ("cond3", self.cond3)) if c.detail.get("witness")}

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "cond1": self.cond1.to_json(),
            "cond2": self.cond2.to_json(),
            "cond3": self.cond3.to_json(),
        }


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (int, str, bool)) or value is None:
        return value
    return str(value)


def edge_join(gog: GraphOfGroups, family: EquivariantFamily, v: str, e: str) -> Subgroup:
    """⟨G_ê, R_v̂⟩ inside G_v̂, for an edge ê with terminus v̂."""
    if gog.graph.t(e) != v:
        raise ValueError(f"edge {e} does not end at {v}")
    return join(gog.image(e), family.subgroup(gog, v))


def _witness_candidates(gog: GraphOfGroups, v: str, K: Subgroup, limit: int):
    """Named elements at v first, then transversal representatives of G_v/K."""
    seen = set()
    G = gog.vertex_groups[v]
    for name, g in gog.vertex_generators(v):
        if g not in seen:
            seen.add(g)
            yield name, g
    for count, g in enumerate(transversal_stream(G, K)):
        if count >= limit:
            return
        if g not in seen:
            seen.add(g)
            yield G.format(g), g


def find_pair_outside(gog: GraphOfGroups, v: str, K: Subgroup, limit: int = 64):
    """g, h in G_v ∖ K with g h^{-1} ∉ K, or None if the search budget runs out."""
    G = gog.vertex_groups[v]
    found = []
    for name, g in _witness_candidates(gog, v, K, limit):
        if g in K:
            continue
        for other_name, h in found:
            if G.multiply(h, G.inverse(g)) not in K:
                return (other_name, h), (name, g)
        found.append((name, g))
    return None


def _incoming(gog: GraphOfGroups, route: list[str]) -> tuple[str, str]:
    """Edges at the two ends of a route, oriented to end at those ends."""
    return gog.graph.bar(route[0]), route[-1]


def _graph_routes(gog: GraphOfGroups) -> dict:
    g = nx.Graph()
    g.add_nodes_from(gog.graph.vertices)
    lookup = {}
    for e in gog.graph.geometric_edges():
        a, b = gog.graph.o(e), gog.graph.t(e)
        if a != b and (a, b) not in lookup:
            g.add_edge(a, b)
            lookup[(a, b)] = e
            lookup[(b, a)] = gog.graph.bar(e)
    routes = {}
    for u, paths in nx.all_pairs_shortest_path(g):
        for v, nodes in paths.items():
            if u != v:
                routes[(u, v)] = [lookup[(a, b)] for a, b in zip(nodes, nodes[1:])]
    return routes


def theorem_a_check(gog: GraphOfGroups, family: EquivariantFamily, search_limit: int = 64) -> TheoremAReport:
    family = require_family(gog, family)
    betti = betti_number(gog.graph)
    cond1 = ConditionReport("pass" if betti >= 2 else "fail", {"betti_number": betti})

    cond2 = ConditionReport("fail", {"reason": "no vertex pair satisfies both subgroup conditions"})
    inconclusive = None
    for (u, v), route in sorted(_graph_routes(gog).items()):
        e_in, f_in = _incoming(gog, route)
        Ku = edge_join(gog, family, u, e_in)
        Kv = edge_join(gog, family, v, f_in)
        if Ku.is_whole_group() or Kv.is_whole_group():
            continue
        pair = find_pair_outside(gog, v, Kv, search_limit)
        if pair is None:
            inconclusive = (u, v)
            continue
        (gname, g), (hname, h) = pair
        G = gog.vertex_groups[v]
        cond2 = ConditionReport(
            "pass",
            {
                "u": u,
                "v": v,
                "edge_at_u": e_in,
                "edge_at_v": f_in,
                "order_at_u": Ku.order,
                "order_at_v": Kv.order,
                "witness": {"g": gname, "h": hname, "g_element": G.format(g), "h_element": G.format(h)},
            },
        )
        break
    else:
        if inconclusive is not None:
            cond2 = ConditionReport("inconclusive", {"reason": "witness search budget exhausted", "pair": inconclusive})

    cond3 = ConditionReport("fail", {"reason": "no immersed circuit" if betti == 0 else "every circuit edge generates its vertex group with R"})
    for e in _circuit_edges(gog):
        for end_edge in (e, gog.graph.bar(e)):
            v = gog.graph.t(end_edge)
            K = edge_join(gog, family, v, end_edge)
            if not K.is_whole_group():
                cond3 = ConditionReport("pass", {"vertex": v, "edge": end_edge, "order": K.order, "witness": {"vertex": v, "edge": end_edge}})
                break
        if cond3.status == "pass":
            break
    return TheoremAReport(cond1, cond2, cond3)


def _circuit_edges(gog: GraphOfGroups) -> list[str]:
    """Geometric edges lying on an immersed circuit: loops and non-bridges."""
    out = []
    geo = gog.graph.geometric_edges()
    for e in geo:
        a, b = gog.graph.o(e), gog.graph.t(e)
        if a == b:
            out.append(e)
            continue
        rest = nx.MultiGraph()
        rest.add_nodes_from(gog.graph.vertices)
        rest.add_edges_from((gog.graph.o(f), gog.graph.t(f)) for f in geo if f != e)
        if nx.has_path(rest, a, b):
            out.append(e)
    return out


@dataclass
class CorollaryReport:
    which: str
    passed: bool
    clauses: dict

    def to_json(self) -> dict:
        return {"corollary": self.which, "passed": self.passed, "clauses": _jsonable(self.clauses)}


def corollary_checks(gog: GraphOfGroups, family: EquivariantFamily, which: str, search_limit: int = 64) -> CorollaryReport:
    family = require_family(gog, family)
    geo = gog.graph.geometric_edges()
    which = which.upper()
    if which == "B":
        if len(geo) != 1 or len(gog.graph.vertices) != 2:
            raise WrongShape("the single-edge criterion needs one edge between two vertices")
        e = geo[0]
        A, B = gog.graph.o(e), gog.graph.t(e)
        KA = edge_join(gog, family, A, gog.graph.bar(e))
        KB = edge_join(gog, family, B, e)
        clause1 = not KA.is_whole_group() and not KB.is_whole_group()
        pair = find_pair_outside(gog, B, KB, search_limit) if clause1 else None
        clauses = {
            "1": {"status": "pass" if clause1 else "fail", "order_CR_A": KA.order, "order_CR_B": KB.order},
            "2": {"status": "pass" if pair else ("fail" if not clause1 else "inconclusive"),
                  "witness": [pair[0][0], pair[1][0]] if pair else None},
        }
        return CorollaryReport("B", bool(clause1 and pair), clauses)
    if which == "C":
        if len(geo) != 1 or len(gog.graph.vertices) != 1:
            raise WrongShape("the loop criterion needs a single loop at one vertex")
        e = geo[0]
        A = gog.graph.o(e)
        KH = edge_join(gog, family, A, gog.graph.bar(e))
        KK = edge_join(gog, family, A, e)
        clauses = {
            "H": {"status": "fail" if KH.is_whole_group() else "pass", "order": KH.order},
            "K": {"status": "fail" if KK.is_whole_group() else "pass", "order": KK.order},
        }
        return CorollaryReport("C", clauses["H"]["status"] == "pass" or clauses["K"]["status"] == "pass", clauses)
    raise ValueError("which must be 'B' or 'C'")


# ----- output -----------------------------------------------------------------

def quotient_to_dot(q: QuotientBall, name: str = "quotient") -> str:
    gog = q.gog
    lines = [f"graph {_quote(name)} {{", "  node [shape=circle, fontsize=10];"]
    truncated = q.truncated_classes()
    for c in sorted(q.graph.nodes):
        rep = q.representatives[c]
        kind = terminal_vertex(gog, rep)
        attrs = [f"label={_quote(kind)}", f"tooltip={_quote(format_label(gog, rep))}", f"orbit={_quote(kind)}"]
        if c in truncated:
            attrs.append("truncated=true")
        lines.append(f"  c{c} [{', '.join(attrs)}];")
    for a, b in sorted(tuple(sorted(edge)) for edge in q.graph.edges):
        lines.append(f"  c{a} -- c{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
