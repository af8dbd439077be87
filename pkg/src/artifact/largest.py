"""The generating sets X and Y of a tree action and the largest-action hypothesis checker.

X collects the elements moving the base vertex at most 2D+1, where D is the
diameter of a lifted fundamental domain. Y is the union of the vertex groups
and the stable letters. Every y in Y lies in X, and every g in X has Y-length
at most 4D+3, so the two word metrics are equivalent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx

from .acyl import AcylCertificate, ray_nonacyl_witness
from .bass_serre import build_ball, terminal_vertex
from .graph_of_groups import GraphOfGroups, NormalForm


class SearchBudgetExhausted(RuntimeError):
    pass


def domain_diameter(gog: GraphOfGroups) -> int:
    """Diameter of the lift of Γ: the maximal tree plus one hanging edge per stable letter."""
    graph = gog.graph
    lift = nx.Graph()
    lift.add_nodes_from(graph.vertices)
    lift.add_edges_from((graph.o(e), graph.t(e)) for e in graph.tree_edges(gog.base) if e in graph.geometric_edges())
    for e in gog.stable_letters():
        lift.add_edge(graph.o(e), ("lift", e))
    return nx.diameter(lift) if len(lift) > 1 else 0


def x_membership(gog: GraphOfGroups, g: NormalForm, D: int | None = None) -> bool:
    """Whether d(ṽ_0, g·ṽ_0) ≤ 2D+1; the displacement is the syllable length of g."""
    D = domain_diameter(gog) if D is None else D
    return g.length <= 2 * D + 1


def y_length(gog: GraphOfGroups, g: NormalForm) -> int:
    """Y-length read off the path normal form: nontrivial vertex letters plus stable letters."""
    stable = set(gog.stable_letters())
    stable |= {gog.graph.bar(e) for e in stable}
    count = 0
    for sigma, e in g.syllables:
        if sigma != gog.vertex_groups[gog.graph.o(e)].identity():
            count += 1
        if e in stable:
            count += 1
    end = gog.end_vertex(g.start, g.syllables)
    if g.tail != gog.vertex_groups[end].identity():
        count += 1
    return count


def y_generators(gog: GraphOfGroups) -> list[tuple[str, NormalForm]]:
    out = []
    for v in gog.graph.vertices:
        for name, x in gog.vertex_generators(v):
            out.append((f"{v}:{name}", gog.from_vertex(v, x)))
    for e in gog.stable_letters():
        out.append((f"stable:{e}", gog.from_edge(e)))
    return out


@dataclass
class EquivalenceReport:
    D: int
    x_bound: int
    y_bound: int
    y_in_x: bool
    generators_checked: int
    enumerated: int
    max_y_length: int
    exhausted: bool
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.y_in_x and not self.violations

    def to_json(self) -> dict:
        return {
            "D": self.D,
            "x_displacement_bound": self.x_bound,
            "y_length_bound": self.y_bound,
            "y_in_x": self.y_in_x,
            "generators_checked": self.generators_checked,
            "enumerated": self.enumerated,
            "max_y_length": self.max_y_length,
            "exhausted": self.exhausted,
            "violations": [repr(v) for v in self.violations],
            "passed": self.passed,
        }


def enumerate_x(gog: GraphOfGroups, limit: int, budget: int | None = 12):
    """Elements of X: each g with g·ṽ_0 = x is L_x·s for s in the base stabilizer."""
    D = domain_diameter(gog)
    base_group = gog.vertex_groups[gog.base]
    if not base_group.is_finite:
        raise SearchBudgetExhausted("base vertex group is infinite")
    stab = [gog.from_vertex(gog.base, s) for s in base_group.elements()]
    ball = build_ball(gog, radius=2 * D + 1, budget=budget)
    count = 0
    for x in ball.vertices:
        if terminal_vertex(gog, x) != gog.base:
            continue
        path = gog.path_element(x)
        for s in stab:
            if count >= limit:
                return
            yield gog.multiply(path, s)
            count += 1


def equivalence_check(gog: GraphOfGroups, sample_budget: int = 500, budget: int | None = 12) -> EquivalenceReport:
    D = domain_diameter(gog)
    gens = y_generators(gog)
    y_in_x = all(x_membership(gog, g, D) for _, g in gens)
    report = EquivalenceReport(D, 2 * D + 1, 4 * D + 3, y_in_x, len(gens), 0, 0, False)
    for g in enumerate_x(gog, sample_budget, budget):
        report.enumerated += 1
        length = y_length(gog, g)
        report.max_y_length = max(report.max_y_length, length)
        if length > report.y_bound:
            report.violations.append(g)
    report.exhausted = report.enumerated < sample_budget
    if report.enumerated == 0:
        raise SearchBudgetExhausted("no element of X was enumerated")
    return report


@dataclass
class HypothesisRow:
    key: str
    description: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"key": self.key, "description": self.description, "passed": self.passed, "detail": self.detail}


@dataclass
class LargestReport:
    verdict: str
    rows: list[HypothesisRow]
    citation: str
    nonacyl_witness: object = None

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "citation": self.citation, "hypotheses": [r.to_json() for r in self.rows]}
        if self.nonacyl_witness is not None:
            w = self.nonacyl_witness
            out["nonacyl_witness"] = {"k": w.k, "l": w.l, "vertex_group_order": w.vertex_group_order,
                                      "path_stabilizer_size": w.path_stabilizer_size, "N": w.N}
        return out


def largest_report(gog: GraphOfGroups, certificate: AcylCertificate | None) -> LargestReport:
    """Largest-certified when Γ is finite, the action is acylindrical and every vertex group is torsion.

    Failing any row gives Inconclusive; the converse is not decided.
    """
    infinite_graph = bool(gog.meta.get("infinite_graph"))
    rows = [
        HypothesisRow(
            "finite-graph",
            "Γ is a finite graph",
            not infinite_graph,
            "the graph is a truncation of an infinite ray" if infinite_graph else f"{len(gog.graph.vertices)} vertices",
        ),
        HypothesisRow(
            "acylindrical",
            "the action on the Bass-Serre tree is acylindrical",
            certificate is not None and certificate.passed,
            f"(k, C) = ({certificate.k}, {certificate.C})" if certificate is not None and certificate.passed else "no certificate",
        ),
    ]
    flagged = set(gog.meta.get("non_torsion_vertices", ()))
    torsion_fail = sorted(v for v, G in gog.vertex_groups.items() if v in flagged or not G.is_torsion)
    rows.append(HypothesisRow(
        "torsion-vertex-groups",
        "every vertex group consists of finite order elements",
        not torsion_fail,
        "non-torsion at " + ", ".join(torsion_fail) if torsion_fail else "all vertex groups are torsion",
    ))
    witness = None
    if infinite_graph and {"p", "q"} <= set(gog.meta):
        witness = ray_nonacyl_witness(gog.meta["p"], gog.meta["q"], N=100, R=3)
    if all(r.passed for r in rows):
        return LargestReport("Largest-certified", rows, "torsion vertex groups with an acylindrical tree action")
    return LargestReport("Inconclusive", rows, "hypotheses of the torsion criterion not all met", witness)
