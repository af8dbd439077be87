"""Exact arithmetic for the finite and locally finite vertex groups used here.

Three kinds of group are supported:

* ``Dihedral(m)``: Z_m ⋊ Z_2, elements ``(rot, ref)`` with ``rot`` an int in [0, m).
* ``LFD(n, m)``: Z[1/|n|]/mZ ⋊ Z_2, elements ``(rot, ref)`` with ``rot`` a
  ``Fraction`` in [0, m) whose denominator is a power of |n|.
* ``Table(mult)``: any finite group given by a multiplication table, elements
  are indices.

Elements are plain hashable tuples (or ints for tables), so equality of
canonical forms is structural equality.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Iterator, Sequence

Element = Hashable

DEFAULT_CLOSURE_BOUND = 10**6


class GroupError(ValueError):
    """Raised for malformed elements, descriptors or mismatched ambients."""


class ClosureExceedsBound(GroupError):
    def __init__(self, bound: int):
        super().__init__(f"subgroup closure exceeds bound of {bound} elements")
        self.bound = bound


class Group:
    """Common interface of the concrete descriptors."""

    kind: str

    # subclasses implement these
    def identity(self) -> Element: ...
    def multiply(self, g: Element, h: Element) -> Element: ...
    def inverse(self, g: Element) -> Element: ...
    def is_element(self, g: object) -> bool: ...
    def sort_key(self, g: Element) -> tuple: ...
    def stream(self) -> Iterator[Element]: ...
    def element_order(self, g: Element) -> int: ...
    def element_to_json(self, g: Element): ...
    def element_from_json(self, data) -> Element: ...
    def to_json(self) -> dict: ...
    def default_generators(self) -> list[tuple[str, Element]]: ...

    @property
    def order(self) -> int | None:
        """Number of elements, or ``None`` when the group is infinite."""
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    @property
    def is_torsion(self) -> bool:
        return True

    def elements(self) -> list[Element]:
        if not self.is_finite:
            raise GroupError(f"{self.describe()} is infinite")
        return list(self.stream())

    def power(self, g: Element, k: int) -> Element:
        if k < 0:
            g, k = self.inverse(g), -k
        result = self.identity()
        base = g
        while k:
            if k & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            k >>= 1
        return result

    def product(self, items: Iterable[Element]) -> Element:
        result = self.identity()
        for g in items:
            result = self.multiply(result, g)
        return result

    def conjugate(self, g: Element, r: Element) -> Element:
        """Return g r g^{-1}."""
        return self.multiply(self.multiply(g, r), self.inverse(g))

    def check(self, g: object) -> Element:
        if not self.is_element(g):
            raise GroupError(f"{g!r} is not an element of {self.describe()}")
        return g  # type: ignore[return-value]

    def describe(self) -> str:
        raise NotImplementedError

    def notation(self) -> str:
        """Isomorphism type in the usual semidirect-product notation."""
        return self.describe()

    def format(self, g: Element) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class Dihedral(Group):
    """Z_m ⋊ Z_2 with the reflection inverting rotations; order 2m."""

    m: int
    kind: str = field(default="dihedral", init=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise GroupError(f"dihedral modulus must be a positive integer, got {self.m!r}")

    @property
    def order(self) -> int:
        return 2 * self.m

    def identity(self):
        return (0, 0)

    def multiply(self, g, h):
        r1, s1 = g
        r2, s2 = h
        return ((r1 - r2 if s1 else r1 + r2) % self.m, s1 ^ s2)

    def inverse(self, g):
        r, s = g
        return (r, 1) if s else ((-r) % self.m, 0)

    def is_element(self, g):
        return (
            isinstance(g, tuple)
            and len(g) == 2
            and isinstance(g[0], int)
            and 0 <= g[0] < self.m
            and g[1] in (0, 1)
        )

    def sort_key(self, g):
        return (0, g[0], g[1])

    def stream(self):
        for r in range(self.m):
            yield (r, 0)
            yield (r, 1)

    def element_order(self, g):
        r, s = g
        if s:
            return 2
        return self.m // math.gcd(r, self.m)

    def rotation(self, r: int):
        return (r % self.m, 0)

    def element_to_json(self, g):
        return {"rot": str(g[0]), "ref": g[1]}

    def element_from_json(self, data):
        rot = Fraction(str(data["rot"]))
        if rot.denominator != 1:
            raise GroupError(f"dihedral rotation must be an integer, got {data['rot']!r}")
        return (int(rot) % self.m, _ref_bit(data.get("ref", 0)))

    def to_json(self):
        return {"kind": "dihedral", "m": self.m}

    def default_generators(self):
        return [("rot", (1 % self.m, 0)), ("ref", (0, 1))]

    def describe(self):
        return f"Dihedral({self.m})"

    def notation(self):
        return f"Z_{self.m}⋊Z_2"

    def format(self, g):
        return f"({g[0]},{g[1]})"


@dataclass(frozen=True)
class LFD(Group):
    """Z[1/|n|]/mZ ⋊ Z_2: infinite, torsion and locally finite."""

    n: int
    m: int
    kind: str = field(default="lfd", init=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or abs(self.n) < 2:
            raise GroupError(f"LFD needs |n| > 1, got {self.n!r}")
        if not isinstance(self.m, int) or self.m < 1:
            raise GroupError(f"LFD modulus must be a positive integer, got {self.m!r}")

    @property
    def base(self) -> int:
        return abs(self.n)

    @property
    def order(self):
        return None

    def identity(self):
        return (Fraction(0), 0)

    def multiply(self, g, h):
        r1, s1 = g
        r2, s2 = h
        return ((r1 - r2 if s1 else r1 + r2) % self.m, s1 ^ s2)

    def inverse(self, g):
        r, s = g
        return (r, 1) if s else ((-r) % self.m, 0)

    def _denominator_ok(self, q: int) -> bool:
        g = math.gcd(q, self.base)
        while g > 1:
            while q % g == 0:
                q //= g
            g = math.gcd(q, self.base)
        return q == 1

    def is_element(self, g):
        return (
            isinstance(g, tuple)
            and len(g) == 2
            and isinstance(g[0], Fraction)
            and 0 <= g[0] < self.m
            and self._denominator_ok(g[0].denominator)
            and g[1] in (0, 1)
        )

    def exponent(self, r: Fraction) -> int:
        """Least j with r·|n|^j an integer."""
        j, power = 0, 1
        while power % r.denominator:
            j += 1
            power *= self.base
        return j

    def numerator_at(self, r: Fraction) -> tuple[int, int]:
        j = self.exponent(r)
        return j, int(r * self.base**j)

    def sort_key(self, g):
        j, a = self.numerator_at(g[0])
        return (j, a, g[1])

    def stream(self):
        """All elements ordered by (denominator exponent, numerator, reflection bit)."""
        for j in itertools.count():
            scale = self.base**j
            for a in range(self.m * scale):
                if j and a % self.base == 0:
                    continue
                rot = Fraction(a, scale)
                yield (rot, 0)
                yield (rot, 1)

    def element_order(self, g):
        r, s = g
        if s:
            return 2
        return (r.denominator * self.m) // math.gcd(r.numerator, self.m)

    def rotation(self, r) -> tuple[Fraction, int]:
        r = Fraction(r)
        if not self._denominator_ok(r.denominator):
            raise GroupError(f"{r} is not in Z[1/{self.base}]")
        return (r % self.m, 0)

    def element_to_json(self, g):
        return {"rot": str(g[0]), "ref": g[1]}

    def element_from_json(self, data):
        return (self.rotation(Fraction(str(data["rot"])))[0], _ref_bit(data.get("ref", 0)))

    def to_json(self):
        return {"kind": "lfd", "n": self.n, "m": self.m}

    def default_generators(self):
        return [("ref", (Fraction(0), 1))] + [
            (f"rot{k}", (Fraction(1, self.base**k) % self.m, 0)) for k in range(4)
        ]

    def describe(self):
        return f"LFD({self.n},{self.m})"

    def notation(self):
        return f"Z[1/{self.base}]/{self.m}Z ⋊ Z_2"

    def format(self, g):
        return f"({g[0]},{g[1]})"


@dataclass(frozen=True)
class Table(Group):
    """A finite group given by its multiplication table (validated at construction)."""

    mult: tuple[tuple[int, ...], ...]
    kind: str = field(default="table", init=False, repr=False)
    _identity: int = field(default=0, init=False, repr=False, compare=False)
    _inverses: tuple[int, ...] = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        mult = tuple(tuple(int(x) for x in row) for row in self.mult)
        object.__setattr__(self, "mult", mult)
        size = len(mult)
        if size == 0 or any(len(row) != size for row in mult):
            raise GroupError("multiplication table must be square and non-empty")
        if any(not 0 <= x < size for row in mult for x in row):
            raise GroupError("multiplication table entries out of range")
        ids = [e for e in range(size) if all(mult[e][x] == x and mult[x][e] == x for x in range(size))]
        if not ids:
            raise GroupError("multiplication table has no identity")
        e = ids[0]
        inverses = []
        for x in range(size):
            inv = [y for y in range(size) if mult[x][y] == e and mult[y][x] == e]
            if not inv:
                raise GroupError(f"element {x} has no inverse")
            inverses.append(inv[0])
        for a in range(size):
            for b in range(size):
                ab = mult[a][b]
                for c in range(size):
                    if mult[ab][c] != mult[a][mult[b][c]]:
                        raise GroupError(f"multiplication table is not associative at ({a},{b},{c})")
        object.__setattr__(self, "_identity", e)
        object.__setattr__(self, "_inverses", tuple(inverses))

    @classmethod
    def cyclic(cls, k: int) -> "Table":
        return cls(tuple(tuple((a + b) % k for b in range(k)) for a in range(k)))

    @property
    def order(self):
        return len(self.mult)

    def identity(self):
        return self._identity

    def multiply(self, g, h):
        return self.mult[g][h]

    def inverse(self, g):
        return self._inverses[g]

    def is_element(self, g):
        return isinstance(g, int) and not isinstance(g, bool) and 0 <= g < len(self.mult)

    def sort_key(self, g):
        return (0 if g == self._identity else 1, g)

    def stream(self):
        yield from sorted(range(len(self.mult)), key=self.sort_key)

    def element_order(self, g):
        k, x = 1, g
        while x != self._identity:
            x = self.mult[x][g]
            k += 1
        return k

    def element_to_json(self, g):
        return g

    def element_from_json(self, data):
        if isinstance(data, dict):
            data = data.get("index")
        return self.check(int(data))

    def to_json(self):
        return {"kind": "table", "mult": [list(row) for row in self.mult]}

    def default_generators(self):
        return [(f"g{x}", x) for x in self.stream() if x != self._identity]

    def describe(self):
        return f"Table(order={len(self.mult)})"

    def notation(self):
        k = len(self.mult)
        if k == 1:
            return "1"
        if any(self.element_order(g) == k for g in range(k)):
            return f"Z_{k}"
        return f"group of order {k}"

    def format(self, g):
        return str(g)


def _ref_bit(value) -> int:
    bit = int(value)
    if bit not in (0, 1):
        raise GroupError(f"reflection bit must be 0 or 1, got {value!r}")
    return bit


def group_from_json(data: dict) -> Group:
    kind = data.get("kind")
    if kind == "dihedral":
        return Dihedral(int(data["m"]))
    if kind == "lfd":
        return LFD(int(data["n"]), int(data["m"]))
    if kind == "table":
        return Table(tuple(tuple(row) for row in data["mult"]))
    raise GroupError(f"unknown group kind {kind!r}")


def multiply(group: Group, g: Element, h: Element) -> Element:
    group.check(g)
    group.check(h)
    return group.multiply(g, h)


def element_order(group: Group, g: Element) -> int:
    return group.element_order(group.check(g))


class Subgroup:
    """A finite subgroup of ``ambient``, stored as its full element set."""

    __slots__ = ("ambient", "generators", "elements", "_reps")

    def __init__(self, ambient: Group, generators: Sequence[Element], elements: frozenset):
        self.ambient = ambient
        self.generators = tuple(generators)
        self.elements = elements
        self._reps: dict = {}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return g in self.elements

    def __iter__(self):
        return iter(sorted(self.elements, key=self.ambient.sort_key))

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.ambient == other.ambient and self.elements == other.elements

    def __hash__(self):
        return hash((self.ambient, self.elements))

    def __repr__(self):
        return f"Subgroup({self.ambient.describe()}, order={self.order})"

    def contains(self, g: Element) -> bool:
        return g in self.elements

    def is_whole_group(self) -> bool:
        return self.ambient.is_finite and self.order == self.ambient.order

    def index(self) -> int | None:
        if not self.ambient.is_finite:
            return None
        return self.ambient.order // self.order

    def coset_rep(self, g: Element) -> Element:
        """Canonical representative of the left coset gH (least by sort key)."""
        rep = self._reps.get(g)
        if rep is None:
            G = self.ambient
            rep = min((G.multiply(g, h) for h in self.elements), key=G.sort_key)
            self._reps[g] = rep
        return rep

    def coset_equal(self, g1: Element, g2: Element) -> bool:
        G = self.ambient
        return G.multiply(G.inverse(g1), g2) in self.elements


def subgroup_closure(ambient: Group, gens: Iterable[Element], bound: int = DEFAULT_CLOSURE_BOUND) -> Subgroup:
    """Exact closure of ``gens``; raises ``ClosureExceedsBound`` instead of truncating."""
    gens = [ambient.check(g) for g in gens]
    e = ambient.identity()
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = ambient.multiply(x, g)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > bound:
                        raise ClosureExceedsBound(bound)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(ambient, gens, frozenset(seen))


def whole_group(ambient: Group) -> Subgroup:
    return Subgroup(ambient, [g for _, g in ambient.default_generators()], frozenset(ambient.elements()))


def subgroup_contains(H: Subgroup, g: Element) -> bool:
    return g in H.elements


def coset_equal(g1: Element, g2: Element, H: Subgroup) -> bool:
    return H.coset_equal(g1, g2)


def transversal_stream(G: Group, H: Subgroup) -> Iterator[Element]:
    """Canonical left-coset representatives of H in G, identity coset first.

    A representative is the least element of its coset in the group's stream
    order, so the enumeration is deterministic. For infinite G the stream is
    infinite.
    """
    if H.ambient != G:
        raise GroupError("subgroup does not live in the given group")
    if G.is_finite:
        remaining = G.order // H.order
        for g in G.stream():
            if H.coset_rep(g) == g:
                yield g
                remaining -= 1
                if remaining == 0:
                    return
    else:
        for g in G.stream():
            if H.coset_rep(g) == g:
                yield g


@dataclass(frozen=True)
class NormalityVerdict:
    normal: bool
    conjugator: Element | None = None
    element: Element | None = None
    conjugate: Element | None = None

    def __bool__(self):
        return self.normal


def is_normal_in(R: Subgroup, G: Group) -> NormalityVerdict:
    """Decide whether R is normal in G, with a conjugation witness on failure."""
    if R.ambient != G:
        raise GroupError("subgroup does not live in the given group")
    if G.is_finite:
        for g in G.stream():
            for r in sorted(R.elements, key=G.sort_key):
                c = G.conjugate(g, r)
                if c not in R.elements:
                    return NormalityVerdict(False, g, r, c)
        return NormalityVerdict(True)
    if isinstance(G, LFD):
        reflections = sorted((r for r in R.elements if r[1] == 1), key=G.sort_key)
        if not reflections:
            return NormalityVerdict(True)
        r = reflections[0]
        # conjugating (a,1) by (t,0) gives (a+2t,1); finitely many can lie in R
        for j in itertools.count(1):
            t = G.rotation(Fraction(1, G.base**j))
            c = G.conjugate(t, r)
            if c not in R.elements:
                return NormalityVerdict(False, t, r, c)
    raise GroupError(f"cannot decide normality in {G.describe()}")


def normal_closure(R: Subgroup, G: Group, bound: int = DEFAULT_CLOSURE_BOUND) -> Subgroup:
    """Normal closure in a finite ambient group."""
    if not G.is_finite:
        raise GroupError("normal closure is only computed in finite ambient groups")
    gens = {G.conjugate(g, r) for g in G.stream() for r in R.generators}
    return subgroup_closure(G, sorted(gens, key=G.sort_key), bound)


def join(H: Subgroup, K: Subgroup, bound: int = DEFAULT_CLOSURE_BOUND) -> Subgroup:
    """The subgroup generated by two subgroups of the same group."""
    if H.ambient != K.ambient:
        raise GroupError("subgroups live in different groups")
    return subgroup_closure(H.ambient, list(H.generators) + list(K.generators), bound)


def is_proper(H: Subgroup) -> bool:
    """A finite subgroup of an infinite group is automatically proper."""
    return not H.is_whole_group()
