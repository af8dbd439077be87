"""Both graph-of-groups structures of Out(BS(p,q)) for q = p·n with p, |n| > 1.

Named elements: ``psi`` and ``iota`` generate the dihedral vertex group at the
base; ``phi:k`` is the k-th generator of the locally finite side. On the edge
structure ``phi:k`` is the rotation n^{1-k} of Z[1/|n|]/|n(n-1)|; on the ray
structure it is the rotation generator of ``G_{v_k}``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .graph_of_groups import Edge, Graph, GraphOfGroups, collapse_edge
from .groups import LFD, Dihedral

PHI = re.compile(r"^phi:(\d+)$")
# φ_k listed by name (the resolver covers every k); witness searches walk names first
NAMED_PHI = 6


class NotProperDivisor(ValueError):
    """p does not properly divide q; carries the isomorphism type of Out(BS(p,q))."""

    def __init__(self, p: int, q: int, isomorphism_type: str):
        super().__init__(f"p={p} does not properly divide q={q}: Out(BS(p,q)) ≅ {isomorphism_type}")
        self.p = p
        self.q = q
        self.isomorphism_type = isomorphism_type


@dataclass(frozen=True)
class OutBSParams:
    p: int
    q: int
    n: int

    @property
    def abs_n(self) -> int:
        return abs(self.n)

    @property
    def base_order(self) -> int:
        """p|n-1|, the rotation order at the dihedral vertex."""
        return self.p * abs(self.n - 1)

    @property
    def edge_order(self) -> int:
        return abs(self.n - 1)

    @property
    def limit_modulus(self) -> int:
        return abs(self.n * (self.n - 1))

    def level_modulus(self, k: int) -> int:
        return self.abs_n**k * abs(self.n - 1)


def outbs_params(p: int, q: int) -> OutBSParams:
    if p == 0 or q == 0:
        raise ValueError("Baumslag-Solitar parameters must be non-zero")
    if abs(p) < 2:
        raise ValueError(f"need |p| > 1, got p={p}")
    if p < 0:
        p, q = -p, -q
    if q == p:
        raise NotProperDivisor(p, q, "Z ⋊ (Z_2 × Z_2)")
    if q == -p:
        raise NotProperDivisor(p, q, f"Z_{{2p}} ⋊ Z_2 = Z_{2 * p} ⋊ Z_2")
    if q % p:
        raise NotProperDivisor(p, q, f"Z_{{2|p−q|}} ⋊ Z_2 = Z_{2 * abs(p - q)} ⋊ Z_2")
    return OutBSParams(p, q, q // p)


def _phi_resolver(params: OutBSParams, B: LFD):
    def resolve(name: str):
        match = PHI.match(name)
        if not match:
            return None
        k = int(match.group(1))
        if k < 1:
            return None
        return "B", B.rotation(Fraction(params.n) ** (1 - k))

    return resolve


def build_edge_gog(p: int, q: int) -> GraphOfGroups:
    """(Z_{p|n-1|} ⋊ Z_2) ∗_{Z_{|n-1|} ⋊ Z_2} (Z[1/|n|]/|n(n-1)| ⋊ Z_2) with base at A."""
    params = outbs_params(p, q)
    A = Dihedral(params.base_order)
    B = LFD(params.n, params.limit_modulus)
    C = Dihedral(params.edge_order)
    graph = Graph(["A", "B"], [Edge("e", "~e", "A", "B"), Edge("~e", "e", "B", "A")])
    rot, ref = (1 % C.m, 0), (0, 1)
    monos = {
        "e": [(rot, B.rotation(params.n)), (ref, (Fraction(0), 1))],
        "~e": [(rot, A.rotation(params.p)), (ref, (0, 1))],
    }
    names = {"psi": ("A", A.rotation(1)), "iota": ("A", (0, 1))}
    resolver = _phi_resolver(params, B)
    for k in range(1, NAMED_PHI + 1):
        names[f"phi:{k}"] = resolver(f"phi:{k}")
    gog = GraphOfGroups(
        graph,
        {"A": A, "B": B},
        {"e": C, "~e": C},
        monos,
        base="A",
        names=names,
        resolver=resolver,
        meta={"kind": "outbs-edge", "p": params.p, "q": params.q, "n": params.n},
    )
    return gog.require_valid()


def ray_vertex(k: int) -> str:
    return f"v{k}"


def ray_edge(k: int) -> str:
    return f"e{k}"


def build_ray_gog(p: int, q: int, L: int) -> GraphOfGroups:
    """The ray v_0 - v_1 - ... - v_L, truncated at level L."""
    if L < 1:
        raise ValueError("ray length must be at least 1")
    params = outbs_params(p, q)
    groups = {ray_vertex(0): Dihedral(params.base_order)}
    for k in range(1, L + 1):
        groups[ray_vertex(k)] = Dihedral(params.level_modulus(k))
    edges = []
    egroups = {}
    monos = {}
    for k in range(L):
        e, eb = ray_edge(k), "~" + ray_edge(k)
        lower, upper = ray_vertex(k), ray_vertex(k + 1)
        edges += [Edge(e, eb, lower, upper), Edge(eb, e, upper, lower)]
        target = groups[upper]
        if k == 0:
            C = Dihedral(params.edge_order)
            down = [((1 % C.m, 0), groups[lower].rotation(params.p)), ((0, 1), (0, 1))]
        else:
            C = Dihedral(params.level_modulus(k))
            down = [((1, 0), (1, 0)), ((0, 1), (0, 1))]
        egroups[e] = egroups[eb] = C
        monos[e] = [((1 % C.m, 0), target.rotation(params.n)), ((0, 1), (0, 1))]
        monos[eb] = down
    names = {"psi": (ray_vertex(0), (1 % params.base_order, 0)), "iota": (ray_vertex(0), (0, 1))}
    for k in range(1, L + 1):
        names[f"phi:{k}"] = (ray_vertex(k), (1 % params.level_modulus(k), 0))

    def resolve(name: str):
        match = PHI.match(name)
        if not match:
            return None
        k = int(match.group(1))
        if 1 <= k <= L:
            return ray_vertex(k), (1 % params.level_modulus(k), 0)
        return None

    gog = GraphOfGroups(
        Graph(list(groups), edges),
        groups,
        egroups,
        monos,
        base=ray_vertex(0),
        names=names,
        resolver=resolve,
        meta={"kind": "outbs-ray", "p": params.p, "q": params.q, "n": params.n, "L": L, "infinite_graph": True},
    )
    return gog.require_valid()


def x_level(label) -> int:
    """Level of a vertex of the ray tree: k for a translate of ṽ_k."""
    if not label:
        return 0
    edge = label[-1][1]
    if edge.startswith("~"):
        return int(edge[2:])
    return int(edge[1:]) + 1


def valence_expect(level: int, p: int, q: int) -> int:
    params = outbs_params(p, q)
    return params.p if level == 0 else params.abs_n + 1


@dataclass
class CollapseReport:
    p: int
    q: int
    L: int
    order: list[str]
    vertices: list[str]
    merged_vertex: str
    merged_order: int
    truncation_order: int
    edge_mono_match: bool
    names_match: dict[str, bool]

    @property
    def match(self) -> bool:
        return self.edge_mono_match and all(self.names_match.values()) and self.merged_order == self.truncation_order


def collapse_ray_check(p: int, q: int, L: int, lowest_first: bool = False) -> CollapseReport:
    """Collapse e_{L-1}, ..., e_1 and compare with the edge structure truncated at ⟨φ_L, ι⟩.

    The merged vertex group Dihedral(|n|^L|n-1|) is sent into the direct-limit
    group by rotation j ↦ j·n^{1-L}; the report checks that this embedding
    carries the collapsed e_0 mono and every φ_k (k ≤ L) onto their
    counterparts in the edge structure.
    """
    if L < 1:
        raise ValueError("ray length must be at least 1")
    params = outbs_params(p, q)
    ray = build_ray_gog(p, q, L)
    edge = build_edge_gog(p, q)
    steps = list(range(1, L)) if lowest_first else list(range(L - 1, 0, -1))
    collapsed = ray
    for k in steps:
        collapsed = collapse_edge(collapsed, ray_edge(k))
    merged = [v for v in collapsed.graph.vertices if v != ray_vertex(0)]
    (top,) = merged
    G = collapsed.vertex_groups[top]
    B = edge.vertex_groups["B"]
    unit = Fraction(params.n) ** (1 - L)

    def embed(x):
        rot, ref = x
        return B.multiply(B.rotation(rot * unit), (Fraction(0), ref))

    e0 = ray_edge(0)
    mono_match = all(embed(x) == edge.alpha("e", c) for c, x in collapsed.monos[e0]) and all(
        collapsed.alpha("~" + e0, c) == edge.alpha("~e", c) for c, _ in collapsed.monos["~" + e0]
    )
    names = {}
    for k in range(1, L + 1):
        v, x = collapsed.resolve_name(f"phi:{k}")
        names[f"phi:{k}"] = v == top and embed(x) == edge.resolve_name(f"phi:{k}")[1]
    return CollapseReport(p, q, L, [ray_edge(k) for k in steps], list(collapsed.graph.vertices), top, G.order,
                          2 * params.level_modulus(L), mono_match, names)


def example_family(which: str, mode: str = "normalized", p: int = 4, q: int = 12):
    """The families of the two worked quotient examples on the edge structure.

    ``as-written`` keeps the reflection ι in both subgroups; ``normalized``
    keeps only the rotations, which is what makes the subgroups normal.
    """
    from .quotient import make_family

    which = which.replace(".", "_")
    if which not in ("6_9", "6_10"):
        raise ValueError("which must be 6_9 or 6_10")
    gog = build_edge_gog(p, q)
    A, B = gog.vertex_groups["A"], gog.vertex_groups["B"]
    rotation_power = 2 if which == "6_9" else 3
    generators = {"A": [A.rotation(rotation_power)], "B": [B.rotation(Fraction(1))]}
    if mode in ("as-written", "as_written"):
        generators["A"].append((0, 1))
        generators["B"].append((Fraction(0), 1))
        return gog, make_family(gog, generators, "strict")
    if mode != "normalized":
        raise ValueError("mode must be 'normalized' or 'as-written'")
    family = make_family(gog, generators, "strict")
    family.notes.append("rotation-only subgroups; the reflection is dropped so every R_v is normal")
    return gog, family
