"""Finite categories stored as explicit composition tables.

Composition is keyed ``(g, f) -> g∘f``: the right-hand morphism is applied
first, so an entry exists exactly when ``cod(f) == dom(g)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping

__all__ = [
    "CategoryError",
    "FiniteCategory",
    "ValidationReport",
    "Violation",
    "MAX_MORPHISMS",
    "IDENTITY_PREFIX",
    "identity_id",
    "validate_category",
    "opposite",
    "discrete_category",
    "poset_category",
    "chain_category",
    "monoid_category",
    "free_category_on_dag",
]

MAX_MORPHISMS = 10_000
IDENTITY_PREFIX = "id_"


def identity_id(obj: str) -> str:
    return IDENTITY_PREFIX + obj


class CategoryError(ValueError):
    """Raised when a table cannot describe a category.

    ``witness`` carries the offending ids (a cycle, a triple, an element).
    """

    def __init__(self, message: str, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


@dataclass(frozen=True)
class Violation:
    kind: str
    witness: tuple
    message: str

    def to_json(self) -> dict:
        return {"kind": self.kind, "witness": list(self.witness), "message": self.message}


@dataclass
class ValidationReport:
    """Structural problems and law violations, kept apart.

    A report is empty (and falsy-free: use :attr:`ok`) when nothing was found.
    """

    structural: list[Violation] = field(default_factory=list)
    laws: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.structural and not self.laws

    def kinds(self) -> set[str]:
        return {v.kind for v in self.structural + self.laws}

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "structural": [v.to_json() for v in self.structural],
            "laws": [v.to_json() for v in self.laws],
        }


class FiniteCategory:
    """An immutable finite category.

    Parameters
    ----------
    objects : iterable of str
    morphisms : mapping morphism id -> (dom, cod)
        Must include the identity morphisms.
    identities : mapping object -> morphism id
    composition : mapping (g, f) -> g∘f

    The constructor only checks sizes; use :func:`validate_category` for the
    category laws. Builders in this module always validate.
    """

    __slots__ = ("objects", "morphisms", "identities", "composition", "_hom")

    def __init__(
        self,
        objects: Iterable[str],
        morphisms: Mapping[str, tuple[str, str]],
        identities: Mapping[str, str],
        composition: Mapping[tuple[str, str], str],
    ):
        if len(morphisms) > MAX_MORPHISMS:
            raise CategoryError(
                f"category has {len(morphisms)} morphisms, limit is {MAX_MORPHISMS}"
            )
        self.objects = tuple(sorted(set(objects)))
        self.morphisms = {m: (d, c) for m, (d, c) in sorted(morphisms.items())}
        self.identities = dict(sorted(identities.items()))
        self.composition = dict(sorted(composition.items()))
        hom: dict[tuple[str, str], list[str]] = {}
        for m, dc in self.morphisms.items():
            hom.setdefault(dc, []).append(m)
        self._hom = {k: tuple(v) for k, v in hom.items()}

    @classmethod
    def from_tables(
        cls,
        objects: Iterable[str],
        arrows: Iterable[tuple[str, str, str]],
        composition: Iterable[tuple[str, str, str]] = (),
        identities: Mapping[str, str] | None = None,
    ) -> "FiniteCategory":
        """Build from non-identity arrows ``(id, dom, cod)`` and composites ``(g, f, g∘f)``.

        Identity morphisms default to ``id_<object>``. Composites with an
        identity on either side are filled in unless given explicitly.
        """
        objects = list(objects)
        identities = dict(identities or {})
        for x in objects:
            identities.setdefault(x, identity_id(x))
        morphisms: dict[str, tuple[str, str]] = {}
        for x, i in identities.items():
            morphisms[i] = (x, x)
        for m, d, c in arrows:
            if m in morphisms:
                raise CategoryError(f"duplicate morphism id {m!r}", (m,))
            morphisms[m] = (d, c)
        comp: dict[tuple[str, str], str] = {}
        for g, f, h in composition:
            if (g, f) in comp and comp[(g, f)] != h:
                raise CategoryError(f"conflicting composites for ({g}, {f})", (g, f))
            comp[(g, f)] = h
        for m, (d, c) in morphisms.items():
            if c in identities:
                comp.setdefault((identities[c], m), m)
            if d in identities:
                comp.setdefault((m, identities[d]), m)
        return cls(objects, morphisms, identities, comp)

    # views

    def dom(self, m: str) -> str:
        return self.morphisms[m][0]

    def cod(self, m: str) -> str:
        return self.morphisms[m][1]

    def identity(self, x: str) -> str:
        return self.identities[x]

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        """Morphisms ``x -> y`` in lexicographic order."""
        return self._hom.get((x, y), ())

    def compose(self, g: str, f: str) -> str:
        """``g∘f`` (apply ``f`` first)."""
        try:
            return self.composition[(g, f)]
        except KeyError:
            raise CategoryError(f"{g} and {f} are not composable", (g, f)) from None

    def is_identity(self, m: str) -> bool:
        d, c = self.morphisms[m]
        return d == c and self.identities.get(d) == m

    def non_identity_morphisms(self) -> list[str]:
        return [m for m in self.morphisms if not self.is_identity(m)]

    def composable_pairs(self):
        for g, (dg, _) in self.morphisms.items():
            for f, (_, cf) in self.morphisms.items():
                if cf == dg:
                    yield g, f

    def is_isomorphism(self, m: str) -> bool:
        d, c = self.morphisms[m]
        return any(
            self.composition.get((k, m)) == self.identities[d]
            and self.composition.get((m, k)) == self.identities[c]
            for k in self.hom(c, d)
        )

    # equality on the full table

    def _key(self):
        return (
            self.objects,
            tuple(self.morphisms.items()),
            tuple(self.identities.items()),
            tuple(self.composition.items()),
        )

    def __eq__(self, other):
        if not isinstance(other, FiniteCategory):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (
            f"FiniteCategory(objects={len(self.objects)}, "
            f"morphisms={len(self.morphisms)})"
        )


def validate_category(cat: FiniteCategory) -> ValidationReport:
    report = ValidationReport()
    objs = set(cat.objects)
    for m, (d, c) in cat.morphisms.items():
        for end in (d, c):
            if end not in objs:
                report.structural.append(
                    Violation("dangling-object", (m, end), f"{m} refers to unknown object {end}")
                )
    for x in cat.objects:
        i = cat.identities.get(x)
        if i is None:
            report.structural.append(Violation("missing-identity", (x,), f"no identity for {x}"))
        elif i not in cat.morphisms:
            report.structural.append(
                Violation("dangling-morphism", (i,), f"identity {i} of {x} is not a morphism")
            )
        elif cat.morphisms[i] != (x, x):
            report.laws.append(
                Violation("identity-type", (x, i), f"identity {i} is not an endomorphism of {x}")
            )
    for (g, f), h in cat.composition.items():
        missing = [m for m in (g, f, h) if m not in cat.morphisms]
        if missing:
            report.structural.append(
                Violation("dangling-morphism", (g, f, h), f"unknown morphism(s) {missing}")
            )
            continue
        if cat.cod(f) != cat.dom(g):
            report.structural.append(
                Violation("non-composable-entry", (g, f), f"entry for non-composable pair ({g}, {f})")
            )
            continue
        if cat.morphisms[h] != (cat.dom(f), cat.cod(g)):
            report.laws.append(
                Violation(
                    "dom-cod",
                    (g, f),
                    f"{g}∘{f} = {h} has type {cat.morphisms[h]}, expected {(cat.dom(f), cat.cod(g))}",
                )
            )
    if report.structural:
        return report

    for g, f in cat.composable_pairs():
        if (g, f) not in cat.composition:
            report.laws.append(Violation("totality", (g, f), f"no composite for ({g}, {f})"))
    for m, (d, c) in cat.morphisms.items():
        if cat.composition.get((m, cat.identities[d])) not in (None, m):
            report.laws.append(Violation("right-unit", (m,), f"{m}∘id != {m}"))
        if cat.composition.get((cat.identities[c], m)) not in (None, m):
            report.laws.append(Violation("left-unit", (m,), f"id∘{m} != {m}"))

    comp = cat.composition
    for (g, f), gf in comp.items():
        for e in cat.morphisms:
            if cat.cod(e) != cat.dom(f):
                continue
            fe = comp.get((f, e))
            if fe is None:
                continue
            lhs, rhs = comp.get((gf, e)), comp.get((g, fe))
            if lhs is not None and rhs is not None and lhs != rhs:
                report.laws.append(
                    Violation(
                        "associativity",
                        (g, f, e),
                        f"({g}∘{f})∘{e} = {lhs} but {g}∘({f}∘{e}) = {rhs}",
                    )
                )
    return report


def _require_valid(cat: FiniteCategory) -> FiniteCategory:
    report = validate_category(cat)
    if not report.ok:
        first = (report.structural + report.laws)[0]
        raise CategoryError(first.message, first.witness)
    return cat


def opposite(cat: FiniteCategory) -> FiniteCategory:
    return FiniteCategory(
        cat.objects,
        {m: (c, d) for m, (d, c) in cat.morphisms.items()},
        cat.identities,
        {(f, g): h for (g, f), h in cat.composition.items()},
    )


def discrete_category(objects: Iterable[str]) -> FiniteCategory:
    return _require_valid(FiniteCategory.from_tables(objects, ()))


def _reflexive_transitive_closure(elements, pairs) -> set[tuple[str, str]]:
    reach = {x: {x} for x in elements}
    for a, b in pairs:
        reach[a].add(b)
    changed = True
    while changed:
        changed = False
        for a in elements:
            new = set().union(*(reach[b] for b in reach[a]))
            if new - reach[a]:
                reach[a] |= new
                changed = True
    return {(a, b) for a in elements for b in reach[a]}


def poset_category(elements: Iterable[str], relation_pairs: Iterable[tuple[str, str]]) -> FiniteCategory:
    """Thin category with one arrow ``x->y`` whenever ``x <= y``.

    Raises :class:`CategoryError` carrying a cycle when the closure is not
    antisymmetric.
    """
    elements = sorted(set(elements))
    pairs = list(relation_pairs)
    unknown = {e for p in pairs for e in p} - set(elements)
    if unknown:
        raise CategoryError(f"relation mentions unknown elements {sorted(unknown)}", sorted(unknown))
    leq = _reflexive_transitive_closure(elements, pairs)
    for a, b in sorted(leq):
        if a < b and (b, a) in leq:
            cycle = [x for x in elements if (a, x) in leq and (x, a) in leq]
            raise CategoryError(f"relation is not antisymmetric: cycle {cycle}", cycle)

    def name(a, b):
        return identity_id(a) if a == b else f"{a}->{b}"

    arrows = [(name(a, b), a, b) for a, b in sorted(leq) if a != b]
    comp = [
        (name(b, c), name(a, b), name(a, c))
        for a, b in leq
        for b2, c in leq
        if b == b2
    ]
    return _require_valid(FiniteCategory.from_tables(elements, arrows, comp))


def chain_category(n: int) -> FiniteCategory:
    """The ordinal ``0 < 1 < ... < n-1`` as a category."""
    elems = [str(i) for i in range(n)]
    return poset_category(elems, zip(elems, elems[1:]))


def monoid_category(
    elements: Iterable[str],
    cayley_table: Mapping[tuple[str, str], str],
    unit: str,
    obj: str = "•",
) -> FiniteCategory:
    """One-object category whose morphisms are the monoid elements.

    ``cayley_table[(x, y)]`` is the product ``x·y``, used as ``x∘y``.
    """
    elements = sorted(set(elements))
    if unit not in elements:
        raise CategoryError(f"unit {unit!r} is not an element", (unit,))
    for x, y in product(elements, repeat=2):
        if (x, y) not in cayley_table:
            raise CategoryError(f"cayley table has no entry for ({x}, {y})", (x, y))
        if cayley_table[(x, y)] not in elements:
            raise CategoryError(f"{x}·{y} is not an element", (x, y))
    for x in elements:
        if cayley_table[(unit, x)] != x or cayley_table[(x, unit)] != x:
            raise CategoryError(f"{unit} is not a two-sided unit at {x}", (x,))
    t = cayley_table
    for x, y, z in product(elements, repeat=3):
        if t[(t[(x, y)], z)] != t[(x, t[(y, z)])]:
            raise CategoryError(f"not associative at ({x}, {y}, {z})", (x, y, z))
    return _require_valid(
        FiniteCategory(
            [obj],
            {e: (obj, obj) for e in elements},
            {obj: unit},
            {(x, y): t[(x, y)] for x, y in product(elements, repeat=2)},
        )
    )


def _find_cycle(vertices, edges) -> list[str] | None:
    succ: dict[str, list[str]] = {v: [] for v in vertices}
    for _, u, v in edges:
        succ[u].append(v)
    color = {v: 0 for v in vertices}
    stack_path: list[str] = []

    def visit(v):
        color[v] = 1
        stack_path.append(v)
        for w in succ[v]:
            if color[w] == 1:
                return stack_path[stack_path.index(w):] + [w]
            if color[w] == 0:
                found = visit(w)
                if found:
                    return found
        stack_path.pop()
        color[v] = 2
        return None

    for v in sorted(vertices):
        if color[v] == 0:
            found = visit(v)
            if found:
                return found
    return None


def free_category_on_dag(
    vertices: Iterable[str], edges: Iterable[tuple[str, str, str]]
) -> FiniteCategory:
    """Path category of an acyclic multigraph.

    ``edges`` are ``(id, source, target)``. A path that runs ``e1`` then
    ``e2`` is named ``"e2.e1"``, matching the composition order ``e2∘e1``.
    """
    vertices = sorted(set(vertices))
    edges = sorted(edges)
    for eid, u, v in edges:
        if u not in vertices or v not in vertices:
            raise CategoryError(f"edge {eid} has an unknown endpoint", (eid,))
        if eid.startswith(IDENTITY_PREFIX) or "." in eid:
            raise CategoryError(f"edge id {eid!r} is reserved or contains '.'", (eid,))
    cycle = _find_cycle(vertices, edges)
    if cycle:
        raise CategoryError(f"graph has a cycle {cycle}", cycle)

    out: dict[str, list[tuple[str, str]]] = {v: [] for v in vertices}
    for eid, u, v in edges:
        out[u].append((eid, v))
    # paths as tuples of edge ids in traversal order
    paths: dict[tuple[str, ...], tuple[str, str]] = {}

    def extend(start, at, path):
        for eid, nxt in out[at]:
            p = path + (eid,)
            paths[p] = (start, nxt)
            if len(paths) > MAX_MORPHISMS:
                raise CategoryError(f"more than {MAX_MORPHISMS} paths")
            extend(start, nxt, p)

    for v in vertices:
        extend(v, v, ())

    def name(p):
        return ".".join(reversed(p))

    arrows = [(name(p), d, c) for p, (d, c) in paths.items()]
    comp = []
    for p, (_, c) in paths.items():
        for q, (d, _) in paths.items():
            if c == d:
                comp.append((name(q), name(p), name(p + q)))
    return _require_valid(FiniteCategory.from_tables(vertices, arrows, comp))
