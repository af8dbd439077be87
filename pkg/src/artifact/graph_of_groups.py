"""Graphs of groups, words in F(Γ,𝒢), normal forms and collapse moves.

Edges are oriented and come in pairs ``e``/``bar(e)``. Each edge carries a
monomorphism ``α_e: G_e -> G_{t(e)}`` given on generators; the full map is
computed by breadth-first extension and validated.

Elements of the fundamental group are stored in normal form: a reduced edge
path ``σ_1 e_1 σ_2 e_2 ... σ_n e_n`` with every ``σ_i`` the canonical
transversal representative of ``G_{o(e_i)} / α_{bar(e_i)}(G_{e_i})``, followed
by a tail element of ``G_{t(e_n)}``. Dropping the tail gives the label of a
vertex of the Bass-Serre tree.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .groups import Element, Group, GroupError, Subgroup, group_from_json, subgroup_closure

Syllable = tuple  # (σ, edge id)
Label = tuple  # tuple of syllables


class InvalidGraphOfGroups(ValueError):
    pass


class NotCollapsible(ValueError):
    pass


class InverseNotComputable(ArithmeticError):
    pass


class DisconnectedGraph(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    id: str
    bar: str
    o: str
    t: str


class Graph:
    """An oriented graph with an edge involution, as in Serre's convention."""

    def __init__(self, vertices: Iterable[str], edges: Iterable[Edge]):
        self.vertices: tuple[str, ...] = tuple(vertices)
        self.edges: dict[str, Edge] = {}
        for e in edges:
            if e.id in self.edges:
                raise InvalidGraphOfGroups(f"duplicate edge id {e.id!r}")
            self.edges[e.id] = e
        self._out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in sorted(self.edges):
            if self.edges[e].o in self._out:
                self._out[self.edges[e].o].append(e)

    def diagnostics(self) -> list[str]:
        problems = []
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            problems.append("duplicate vertex ids")
        for e in self.edges.values():
            if e.o not in vset or e.t not in vset:
                problems.append(f"edge {e.id} has an endpoint outside the vertex set")
                continue
            if e.bar == e.id:
                problems.append(f"edge {e.id} is its own reverse")
            elif e.bar not in self.edges:
                problems.append(f"reverse of edge {e.id} is missing")
            else:
                b = self.edges[e.bar]
                if b.bar != e.id:
                    problems.append(f"bar(bar({e.id})) != {e.id}")
                if b.o != e.t or b.t != e.o:
                    problems.append(f"o({e.id}) != t(bar({e.id}))")
        if not problems and not self.is_connected():
            problems.append("graph is not connected")
        return problems

    def out_edges(self, v: str) -> list[str]:
        return self._out[v]

    def bar(self, e: str) -> str:
        return self.edges[e].bar

    def o(self, e: str) -> str:
        return self.edges[e].o

    def t(self, e: str) -> str:
        return self.edges[e].t

    def geometric_edges(self) -> list[str]:
        """One representative per pair {e, bar(e)} (the lexicographically smaller id)."""
        return sorted(e for e, spec in self.edges.items() if e <= spec.bar)

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        queue = deque(seen)
        while queue:
            v = queue.popleft()
            for e in self._out[v]:
                w = self.edges[e].t
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == len(self.vertices)

    def spanning_tree(self, base: str) -> dict[str, list[str]]:
        """Breadth-first maximal tree: vertex -> oriented edge path from ``base``."""
        paths = {base: []}
        queue = deque([base])
        while queue:
            v = queue.popleft()
            for e in self._out[v]:
                w = self.edges[e].t
                if w not in paths:
                    paths[w] = paths[v] + [e]
                    queue.append(w)
        if len(paths) != len(self.vertices):
            raise DisconnectedGraph("graph is not connected")
        return paths

    def tree_edges(self, base: str) -> set[str]:
        edges = set()
        for path in self.spanning_tree(base).values():
            for e in path:
                edges.add(e)
                edges.add(self.edges[e].bar)
        return edges

    def valence(self, v: str) -> int:
        return len(self._out[v])


def _origin_finite(gog: "GraphOfGroups", e: str) -> bool:
    return gog.vertex_groups[gog.graph.o(e)].is_finite


def betti_number(graph: Graph) -> int:
    """First Betti number |E|/2 - |V| + 1 of a connected graph."""
    if not graph.is_connected():
        raise DisconnectedGraph("Betti number requires a connected graph")
    return len(graph.edges) // 2 - len(graph.vertices) + 1


@dataclass(frozen=True)
class NormalForm:
    """A reduced path from ``start`` with canonical representatives, plus a tail."""

    start: str
    syllables: Label
    tail: Element

    @property
    def length(self) -> int:
        return len(self.syllables)

    @property
    def label(self) -> Label:
        return self.syllables


@dataclass(frozen=True)
class GoGWord:
    """``g_0 e_1 g_1 ... e_n g_n`` starting at ``start``."""

    start: str
    elements: tuple
    edges: tuple

    def __post_init__(self):
        if len(self.elements) != len(self.edges) + 1:
            raise ValueError("a word needs exactly one more group element than edges")


class GraphOfGroups:
    """The data (Γ, 𝒢) together with derived mono tables and a base vertex."""

    def __init__(
        self,
        graph: Graph,
        vertex_groups: Mapping[str, Group],
        edge_groups: Mapping[str, Group],
        monos: Mapping[str, Sequence[tuple[Element, Element]]],
        base: str | None = None,
        names: Mapping[str, tuple[str, Element]] | None = None,
        resolver: Callable[[str], tuple[str, Element] | None] | None = None,
        meta: Mapping | None = None,
    ):
        self.graph = graph
        self.vertex_groups = dict(vertex_groups)
        self.edge_groups = dict(edge_groups)
        self.monos = {e: tuple(pairs) for e, pairs in monos.items()}
        self.base = base if base is not None else (graph.vertices[0] if graph.vertices else None)
        self.names = dict(names or {})
        self.resolver = resolver
        self.meta = dict(meta or {})
        self._alpha: dict[str, dict] | None = None
        self._alpha_inv: dict[str, dict] = {}
        self._image: dict[str, Subgroup] = {}
        self._split_cache: dict = {}
        self._paths: dict[str, list[str]] | None = None
        self._rep_cache: dict = {}

    # ----- validation -------------------------------------------------
    def diagnostics(self) -> list[str]:
        problems = self.graph.diagnostics()
        if problems:
            return problems
        for v in self.graph.vertices:
            if v not in self.vertex_groups:
                problems.append(f"vertex {v} has no group")
        for e in sorted(self.graph.edges):
            bar = self.graph.bar(e)
            if e not in self.edge_groups:
                problems.append(f"edge {e} has no group")
                continue
            if self.edge_groups.get(bar) != self.edge_groups[e]:
                problems.append(f"G_{e} != G_{bar}")
        if problems:
            return problems
        if self.base not in self.vertex_groups:
            problems.append(f"base vertex {self.base!r} is not a vertex")
            return problems
        alpha = {}
        for e in sorted(self.graph.edges):
            table, problem = self._extend_mono(e)
            if problem:
                problems.append(problem)
                return problems
            alpha[e] = table
        self._alpha = alpha
        for e, table in alpha.items():
            self._alpha_inv[e] = {v: k for k, v in table.items()}
            target = self.vertex_groups[self.graph.t(e)]
            self._image[e] = Subgroup(target, sorted(table.values(), key=target.sort_key), frozenset(table.values()))
        return []

    def _extend_mono(self, e: str) -> tuple[dict | None, str | None]:
        source = self.edge_groups[e]
        target = self.vertex_groups[self.graph.t(e)]
        if not source.is_finite:
            return None, f"edge group of {e} is infinite"
        pairs = self.monos.get(e, ())
        for g, x in pairs:
            if not source.is_element(g):
                return None, f"mono at {e}: {g!r} is not in the edge group"
            if not target.is_element(x):
                return None, f"mono at {e}: image {x!r} is not in G_{self.graph.t(e)}"
        table = {source.identity(): target.identity()}
        queue = deque([source.identity()])
        while queue:
            g = queue.popleft()
            for gen, img in pairs:
                h = source.multiply(g, gen)
                y = target.multiply(table[g], img)
                if h in table:
                    if table[h] != y:
                        return None, f"mono not a homomorphism at {e}"
                else:
                    table[h] = y
                    queue.append(h)
        if len(table) != source.order:
            return None, f"mono generators do not generate the edge group at {e}"
        if len(set(table.values())) != len(table):
            return None, f"mono not injective at {e}"
        return table, None

    def require_valid(self) -> "GraphOfGroups":
        if self._alpha is None:
            problems = self.diagnostics()
            if problems:
                raise InvalidGraphOfGroups(problems[0])
        return self

    # ----- structure --------------------------------------------------
    def group(self, v: str) -> Group:
        return self.vertex_groups[v]

    def alpha(self, e: str, c: Element) -> Element:
        self.require_valid()
        return self._alpha[e][c]

    def alpha_inverse(self, e: str, x: Element) -> Element:
        self.require_valid()
        try:
            return self._alpha_inv[e][x]
        except KeyError:
            raise InverseNotComputable(f"{x!r} is not in the image of α_{e}") from None

    def image(self, e: str) -> Subgroup:
        """α_e(G_e) as a subgroup of G_{t(e)}."""
        self.require_valid()
        return self._image[e]

    def origin_image(self, e: str) -> Subgroup:
        """α_{bar(e)}(G_e) as a subgroup of G_{o(e)}."""
        return self.image(self.graph.bar(e))

    def tree_paths(self) -> dict[str, list[str]]:
        if self._paths is None:
            self._paths = self.graph.spanning_tree(self.base)
        return self._paths

    def stable_letters(self) -> list[str]:
        tree = self.graph.tree_edges(self.base)
        return [e for e in self.graph.geometric_edges() if e not in tree]

    def vertex_generators(self, v: str) -> list[tuple[str, Element]]:
        """Named elements living at ``v`` followed by the default generators."""
        named = [(name, g) for name, (w, g) in self.names.items() if w == v]
        return named + list(self.vertex_groups[v].default_generators())

    def resolve_name(self, name: str) -> tuple[str, Element]:
        if name in self.names:
            return self.names[name]
        if self.resolver is not None:
            found = self.resolver(name)
            if found is not None:
                return found
        raise KeyError(f"unknown element name {name!r}")

    # ----- normal forms ----------------------------------------------
    def split(self, e: str, h: Element) -> tuple[Element, Element]:
        """Write h ∈ G_{o(e)} as σ·α_{bar e}(c) with σ canonical; returns (σ, c)."""
        key = (e, h)
        hit = self._split_cache.get(key)
        if hit is not None:
            return hit
        bar = self.graph.bar(e)
        H = self.image(bar)
        G = H.ambient
        sigma = H.coset_rep(h)
        c = self.alpha_inverse(bar, G.multiply(G.inverse(sigma), h))
        self._split_cache[key] = (sigma, c)
        return sigma, c

    def _push_edge(self, syllables: list, tail: Element, e: str) -> Element:
        sigma, c = self.split(e, tail)
        bar = self.graph.bar(e)
        if syllables and syllables[-1][1] == bar and sigma == self.vertex_groups[self.graph.o(e)].identity():
            prev_sigma, _ = syllables.pop()
            G = self.vertex_groups[self.graph.t(e)]
            return G.multiply(prev_sigma, self.alpha(e, c))
        syllables.append((sigma, e))
        return self.alpha(e, c)

    def end_vertex(self, start: str, syllables: Sequence[Syllable]) -> str:
        return self.graph.t(syllables[-1][1]) if syllables else start

    def identity(self, start: str | None = None) -> NormalForm:
        start = self.base if start is None else start
        return NormalForm(start, (), self.vertex_groups[start].identity())

    def extend(self, x: NormalForm, syllables: Iterable[Syllable], tail: Element | None = None) -> NormalForm:
        """Normal form of x·σ_1 e_1 ... σ_k e_k·tail."""
        self.require_valid()
        syls = list(x.syllables)
        current = x.tail
        vertex = self.end_vertex(x.start, syls)
        for sigma, e in syllables:
            current = self.vertex_groups[vertex].multiply(current, sigma)
            if self.graph.o(e) != vertex:
                raise ValueError(f"edge {e} does not start at {vertex}")
            current = self._push_edge(syls, current, e)
            vertex = self.graph.t(e)
        if tail is not None:
            current = self.vertex_groups[vertex].multiply(current, tail)
        return NormalForm(x.start, tuple(syls), current)

    def multiply(self, x: NormalForm, y: NormalForm) -> NormalForm:
        if self.end_vertex(x.start, x.syllables) != y.start:
            raise ValueError("paths are not composable")
        return self.extend(x, y.syllables, y.tail)

    def inverse(self, x: NormalForm) -> NormalForm:
        self.require_valid()
        end = self.end_vertex(x.start, x.syllables)
        G = self.vertex_groups[end]
        syls: list = []
        current = G.inverse(x.tail)
        vertex = end
        for sigma, e in reversed(x.syllables):
            current = self._push_edge(syls, current, self.graph.bar(e))
            vertex = self.graph.o(e)
            Gv = self.vertex_groups[vertex]
            current = Gv.multiply(current, Gv.inverse(sigma))
        return NormalForm(end, tuple(syls), current)

    def power(self, x: NormalForm, k: int) -> NormalForm:
        if k < 0:
            x, k = self.inverse(x), -k
        result = self.identity(x.start)
        for _ in range(k):
            result = self.multiply(result, x)
        return result

    def product(self, items: Iterable[NormalForm]) -> NormalForm:
        result = self.identity()
        for x in items:
            result = self.multiply(result, x)
        return result

    def conjugate(self, w: NormalForm, x: NormalForm) -> NormalForm:
        """w x w^{-1}."""
        return self.multiply(self.multiply(w, x), self.inverse(w))

    def path_element(self, label: Label, tail: Element | None = None) -> NormalForm:
        """The path ``label`` (from the base) as an element ending at its terminal vertex."""
        end = self.end_vertex(self.base, label)
        G = self.vertex_groups[end]
        return NormalForm(self.base, tuple(label), G.identity() if tail is None else tail)

    def conjugate_into(self, label: Label, g: Element) -> NormalForm:
        """The circuit L·g·L^{-1} at the base, for g in the terminal vertex group of L."""
        path = self.path_element(label)
        return self.multiply(self.path_element(label, g), self.inverse(path))

    def from_vertex(self, v: str, g: Element) -> NormalForm:
        """A vertex-group element as a circuit at the base along the maximal tree."""
        self.require_valid()
        self.vertex_groups[v].check(g)
        path = self.tree_paths()[v]
        ident = {w: self.vertex_groups[w].identity() for w in self.graph.vertices}
        out = self.extend(self.identity(), [(ident[self.graph.o(e)], e) for e in path], g)
        back = [(ident[self.graph.o(self.graph.bar(e))], self.graph.bar(e)) for e in reversed(path)]
        return self.extend(out, back)

    def from_edge(self, e: str) -> NormalForm:
        """The circuit through edge ``e``: tree path to o(e), e, tree path back."""
        self.require_valid()
        paths = self.tree_paths()
        ident = {w: self.vertex_groups[w].identity() for w in self.graph.vertices}
        seq = [(ident[self.graph.o(f)], f) for f in paths[self.graph.o(e)]]
        seq.append((ident[self.graph.o(e)], e))
        seq += [(ident[self.graph.o(self.graph.bar(f))], self.graph.bar(f)) for f in reversed(paths[self.graph.t(e)])]
        return self.extend(self.identity(), seq)

    def edge_reps(self, e: str, count: int | None) -> tuple[list[Element], bool]:
        """First ``count`` transversal representatives of G_{o(e)}/α_{bar e}(G_e).

        Returns the list and whether the transversal was exhausted. ``count``
        of ``None`` asks for all of them (finite groups only).
        """
        from .groups import transversal_stream

        cache = self._rep_cache.get(e)
        if cache is None:
            H = self.origin_image(e)
            cache = self._rep_cache[e] = [[], transversal_stream(H.ambient, H), False]
        reps, stream, done = cache
        if count is None and not _origin_finite(self, e):
            raise ValueError(f"transversal at edge {e} is infinite")
        while not done and (count is None or len(reps) < count + 1):
            try:
                reps.append(next(stream))
            except StopIteration:
                done = cache[2] = True
        if count is None or len(reps) <= count:
            return list(reps), done
        return reps[:count], False

    def named(self, name: str) -> NormalForm:
        v, g = self.resolve_name(name)
        return self.from_vertex(v, g)

    # ----- serialisation -----------------------------------------------
    def to_json(self) -> dict:
        vgroups = {v: G.to_json() for v, G in self.vertex_groups.items()}
        egroups = {e: G.to_json() for e, G in self.edge_groups.items()}
        monos = {}
        for e, pairs in self.monos.items():
            source = self.edge_groups[e]
            target = self.vertex_groups[self.graph.t(e)]
            names = {g: name for name, g in source.default_generators()}
            entry = {}
            for g, x in pairs:
                key = names.get(g, json.dumps(source.element_to_json(g), sort_keys=True))
                entry[key] = target.element_to_json(x)
            monos[e] = entry
        out = {
            "vertices": list(self.graph.vertices),
            "edges": [
                {"id": s.id, "bar": s.bar, "o": s.o, "t": s.t} for _, s in sorted(self.graph.edges.items())
            ],
            "vgroups": vgroups,
            "egroups": egroups,
            "monos": monos,
            "base": self.base,
        }
        if self.names:
            out["names"] = {
                name: {"vertex": v, "element": self.vertex_groups[v].element_to_json(g)}
                for name, (v, g) in self.names.items()
            }
        return out


def gog_from_json(data: Mapping) -> GraphOfGroups:
    graph = Graph(
        [str(v) for v in data["vertices"]],
        [Edge(str(e["id"]), str(e["bar"]), str(e["o"]), str(e["t"])) for e in data["edges"]],
    )
    vgroups = {str(v): group_from_json(g) for v, g in data["vgroups"].items()}
    egroups = {str(e): group_from_json(g) for e, g in data["egroups"].items()}
    monos = {}
    for e, entry in data.get("monos", {}).items():
        source = egroups.get(str(e))
        spec = graph.edges.get(str(e))
        if source is None or spec is None or spec.t not in vgroups:
            raise InvalidGraphOfGroups(f"mono given for unknown edge {e!r}")
        target = vgroups[spec.t]
        gens = dict(source.default_generators())
        pairs = []
        for key, image in entry.items():
            if key in gens:
                g = gens[key]
            else:
                try:
                    g = source.element_from_json(json.loads(key))
                except (ValueError, GroupError, TypeError) as exc:
                    raise InvalidGraphOfGroups(f"unknown generator {key!r} at edge {e}") from exc
            pairs.append((g, target.element_from_json(image)))
        monos[str(e)] = pairs
    names = {}
    for name, entry in data.get("names", {}).items():
        v = str(entry["vertex"])
        names[name] = (v, vgroups[v].element_from_json(entry["element"]))
    return GraphOfGroups(graph, vgroups, egroups, monos, base=data.get("base"), names=names)


def validate_gog(gog: GraphOfGroups) -> list[str]:
    """Empty list when valid, otherwise diagnostics (first failure first)."""
    return gog.diagnostics()


def reduce_word(gog: GraphOfGroups, w: GoGWord) -> GoGWord:
    """Remove pinches e·α_e(c)·bar(e) -> α_{bar e}(c) until none remain."""
    gog.require_valid()
    graph = gog.graph
    _check_word(gog, w)
    stack: list[tuple[Element, str]] = []
    current = w.elements[0]
    for e, g in zip(w.edges, w.elements[1:]):
        if stack and stack[-1][1] == graph.bar(e):
            f = stack[-1][1]
            image = gog.image(f)
            if current in image:
                c = gog.alpha_inverse(f, current)
                prev, _ = stack.pop()
                G = gog.vertex_groups[graph.o(f)]
                current = G.multiply(G.multiply(prev, gog.alpha(graph.bar(f), c)), g)
                continue
        stack.append((current, e))
        current = g
    return GoGWord(w.start, tuple(x for x, _ in stack) + (current,), tuple(e for _, e in stack))


def _check_word(gog: GraphOfGroups, w: GoGWord) -> None:
    vertex = w.start
    for i, g in enumerate(w.elements):
        gog.vertex_groups[vertex].check(g)
        if i < len(w.edges):
            e = w.edges[i]
            if gog.graph.o(e) != vertex:
                raise ValueError(f"edge {e} does not start at {vertex}")
            vertex = gog.graph.t(e)


def normal_form(gog: GraphOfGroups, w: GoGWord, base: str | None = None) -> NormalForm:
    """Transversal-canonical form of a word; equal elements give equal forms."""
    if base is not None and base != w.start:
        raise ValueError("word does not start at the requested base vertex")
    gog.require_valid()
    _check_word(gog, w)
    graph = gog.graph
    syls: list = []
    current = w.elements[0]
    for e, g in zip(w.edges, w.elements[1:]):
        current = gog._push_edge(syls, current, e)
        current = gog.vertex_groups[graph.t(e)].multiply(current, g)
    return NormalForm(w.start, tuple(syls), current)


def word_of(x: NormalForm) -> GoGWord:
    """The word σ_1 e_1 σ_2 ... σ_n e_n h spelled by a normal form."""
    return GoGWord(
        x.start,
        tuple(sigma for sigma, _ in x.syllables) + (x.tail,),
        tuple(e for _, e in x.syllables),
    )


def collapse_edge(gog: GraphOfGroups, e: str) -> GraphOfGroups:
    """Contract the geometric edge {e, bar e} when one orientation is collapsible.

    An orientation f is collapsible when o(f) != t(f) and α_f(G_f) = G_{t(f)};
    t(f) is merged into o(f) and monos into G_{t(f)} are recomposed through
    α_{bar f} ∘ α_f^{-1}.
    """
    gog.require_valid()
    graph = gog.graph
    if e not in graph.edges:
        raise NotCollapsible(f"unknown edge {e!r}")
    chosen = None
    for f in (e, graph.bar(e)):
        if graph.o(f) != graph.t(f) and gog.image(f).is_whole_group():
            chosen = f
            break
    if chosen is None:
        if graph.o(e) == graph.t(e):
            raise NotCollapsible(f"edge {e} is a loop")
        raise NotCollapsible(f"neither orientation of {e} has edge group equal to its terminal vertex group")
    f = chosen
    fbar = graph.bar(f)
    keep, gone = graph.o(f), graph.t(f)

    def transport(x: Element) -> Element:
        return gog.alpha(fbar, gog.alpha_inverse(f, x))

    vertices = [v for v in graph.vertices if v != gone]
    edges = []
    for spec in graph.edges.values():
        if spec.id in (f, fbar):
            continue
        edges.append(
            Edge(spec.id, spec.bar, keep if spec.o == gone else spec.o, keep if spec.t == gone else spec.t)
        )
    monos = {}
    for g_id, pairs in gog.monos.items():
        if g_id in (f, fbar):
            continue
        if graph.t(g_id) == gone:
            monos[g_id] = [(c, transport(x)) for c, x in pairs]
        else:
            monos[g_id] = list(pairs)
    names = {}
    for name, (v, g) in gog.names.items():
        names[name] = (keep, transport(g)) if v == gone else (v, g)
    vgroups = {v: G for v, G in gog.vertex_groups.items() if v != gone}
    egroups = {x: G for x, G in gog.edge_groups.items() if x not in (f, fbar)}
    base = keep if gog.base == gone else gog.base
    resolver = None
    if gog.resolver is not None:
        inner = gog.resolver

        def resolver(name: str):
            found = inner(name)
            if found is None:
                return None
            v, g = found
            if v == gone:
                return keep, transport(g)
            if v in vgroups:
                return v, g
            return None

    return GraphOfGroups(Graph(vertices, edges), vgroups, egroups, monos, base=base, names=names,
                         resolver=resolver, meta=dict(gog.meta))


@dataclass
class PresentationReport:
    generators: dict[str, list[str]]
    relations: list[str]
    stable_letters: list[str]
    betti: int
    shape: str
    text: str = field(default="")
    structure: str | None = None


def presentation_report(gog: GraphOfGroups, maximal_tree: Iterable[str] | None = None) -> PresentationReport:
    """Describe π1(Γ,T) as vertex groups, edge relations and stable letters."""
    gog.require_valid()
    graph = gog.graph
    if maximal_tree is None:
        tree = graph.tree_edges(gog.base)
    else:
        tree = set()
        for e in maximal_tree:
            tree.add(e)
            tree.add(graph.bar(e))
        if len(tree) != 2 * (len(graph.vertices) - 1):
            raise ValueError("maximal tree must have |V|-1 geometric edges")
    generators = {}
    for v in graph.vertices:
        G = gog.vertex_groups[v]
        generators[v] = [f"{name}={G.format(g)}" for name, g in gog.vertex_generators(v)]
    relations = []
    stable = []
    for e in graph.geometric_edges():
        bar = graph.bar(e)
        src = gog.edge_groups[e]
        Gt = gog.vertex_groups[graph.t(e)]
        Go = gog.vertex_groups[graph.o(e)]
        in_tree = e in tree
        if not in_tree:
            stable.append(e)
        for name, c in src.default_generators():
            left = f"{graph.t(e)}:{Gt.format(gog.alpha(e, c))}"
            right = f"{graph.o(e)}:{Go.format(gog.alpha(bar, c))}"
            if in_tree:
                relations.append(f"{left} = {right}")
            else:
                relations.append(f"{e}·{left}·{e}^-1 = {right}")
    b1 = betti_number(graph)
    if len(graph.vertices) == 2 and len(graph.edges) == 2:
        e = graph.geometric_edges()[0]
        if gog.edge_groups[e].order == 1:
            shape = "free product"
        else:
            shape = "amalgamated free product"
    elif len(graph.vertices) == 1 and len(graph.edges) == 2:
        shape = "HNN extension"
    else:
        shape = "graph of groups"
    structure = None
    if shape != "graph of groups":
        e = graph.geometric_edges()[0]
        o, t = (gog.vertex_groups[graph.o(e)].notation(), gog.vertex_groups[graph.t(e)].notation())
        C = gog.edge_groups[e].notation()
        if shape == "free product":
            structure = f"({o}) ∗ ({t})"
        elif shape == "amalgamated free product":
            structure = f"({o}) ∗_{{{C}}} ({t})"
        else:
            structure = f"({o}) ∗_{{{C}}}"
    lines = [f"shape: {shape}", f"betti number: {b1}"]
    if structure:
        lines.append(f"structure: {structure}")
    for v in graph.vertices:
        lines.append(f"vertex {v}: {gog.vertex_groups[v].describe()} generated by {', '.join(generators[v])}")
    lines.append("stable letters: " + (", ".join(stable) if stable else "none"))
    lines.extend(f"relation: {r}" for r in relations)
    return PresentationReport(generators, relations, stable, b1, shape, "\n".join(lines), structure)
