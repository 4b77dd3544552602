"""Set-valued functors on finite categories, hom-functors and the subset functor."""
from __future__ import annotations

import json
from itertools import combinations
from typing import Iterable, Mapping

from .fincat import CategoryError, FiniteCategory, ValidationReport, Violation, opposite

__all__ = [
    "COVARIANT",
    "CONTRAVARIANT",
    "SUBSET_CAP",
    "FunctorError",
    "MaterializationError",
    "SetValuedFunctor",
    "SubsetFamily",
    "subset_id",
    "parse_subset_id",
    "validate_functor",
    "hom_functor",
    "direct_image",
    "sub_functor",
    "constant_functor",
    "coproduct",
    "product_functor",
    "extend_from_generators",
]

COVARIANT = "covariant"
CONTRAVARIANT = "contravariant"
SUBSET_CAP = 12


class FunctorError(ValueError):
    pass


class MaterializationError(FunctorError):
    """A powerset would be too large to list; use :func:`direct_image` lazily."""

    def __init__(self, obj: str, size: int, cap: int):
        super().__init__(
            f"materialization too large: |F({obj})| = {size} exceeds cap {cap} "
            f"({2 ** size} subsets)"
        )
        self.obj = obj
        self.size = size
        self.cap = cap


def subset_id(elements: Iterable[str]) -> str:
    """Canonical string id of a finite subset (sorted JSON list)."""
    return json.dumps(sorted(set(elements)), ensure_ascii=False, separators=(",", ":"))


def parse_subset_id(sid: str) -> tuple[str, ...]:
    return tuple(json.loads(sid))


def _check_variance(variance: str) -> str:
    aliases = {"co": COVARIANT, "contra": CONTRAVARIANT}
    variance = aliases.get(variance, variance)
    if variance not in (COVARIANT, CONTRAVARIANT):
        raise FunctorError(f"unknown variance {variance!r}")
    return variance


class SetValuedFunctor:
    """A functor ``C -> Set`` of either variance.

    ``on_morphisms[m]`` is a dict. For covariant ``F`` and ``m: X -> Y`` it
    maps ``F(X) -> F(Y)``; for contravariant ``F`` it maps ``F(Y) -> F(X)``.
    Tables for identity morphisms may be omitted and are filled in.
    """

    __slots__ = ("base", "variance", "on_objects", "on_morphisms")

    def __init__(
        self,
        base: FiniteCategory,
        variance: str,
        on_objects: Mapping[str, Iterable[str]],
        on_morphisms: Mapping[str, Mapping[str, str]],
    ):
        self.base = base
        self.variance = _check_variance(variance)
        self.on_objects = {x: tuple(sorted(set(on_objects[x]))) for x in sorted(on_objects)}
        tables = {m: dict(sorted(t.items())) for m, t in on_morphisms.items()}
        for x, i in base.identities.items():
            if i not in tables and x in self.on_objects:
                tables[i] = {e: e for e in self.on_objects[x]}
        self.on_morphisms = dict(sorted(tables.items()))

    @property
    def contravariant(self) -> bool:
        return self.variance == CONTRAVARIANT

    def __call__(self, x: str) -> tuple[str, ...]:
        return self.on_objects[x]

    def table(self, m: str) -> dict[str, str]:
        return self.on_morphisms[m]

    def source_of(self, m: str) -> str:
        """Object whose set is the domain of ``F(m)``."""
        d, c = self.base.morphisms[m]
        return c if self.contravariant else d

    def target_of(self, m: str) -> str:
        d, c = self.base.morphisms[m]
        return d if self.contravariant else c

    def dual(self) -> "SetValuedFunctor":
        """The same tables read as a functor on the opposite category."""
        return SetValuedFunctor(
            opposite(self.base),
            COVARIANT if self.contravariant else CONTRAVARIANT,
            self.on_objects,
            self.on_morphisms,
        )

    def _key(self):
        return (
            self.base,
            self.variance,
            tuple(self.on_objects.items()),
            tuple((m, tuple(t.items())) for m, t in self.on_morphisms.items()),
        )

    def __eq__(self, other):
        if not isinstance(other, SetValuedFunctor):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        sizes = {x: len(s) for x, s in self.on_objects.items()}
        return f"SetValuedFunctor({self.variance}, sizes={sizes})"


class SubsetFamily:
    """A duplicate-free family of subsets of ``F(object)``."""

    def __init__(self, F: SetValuedFunctor, obj: str, subsets: Iterable[Iterable[str]]):
        universe = set(F(obj))
        canon = sorted({tuple(sorted(set(s))) for s in subsets})
        for s in canon:
            extra = set(s) - universe
            if extra:
                raise FunctorError(f"{sorted(extra)} not in F({obj})")
        self.object = obj
        self.subsets = canon

    def ids(self) -> list[str]:
        return [subset_id(s) for s in self.subsets]

    def __len__(self):
        return len(self.subsets)

    def __iter__(self):
        return iter(self.subsets)


def validate_functor(F: SetValuedFunctor) -> ValidationReport:
    report = ValidationReport()
    cat = F.base
    for x in cat.objects:
        if x not in F.on_objects:
            report.structural.append(Violation("missing-object", (x,), f"no set for object {x}"))
    for m in F.on_morphisms:
        if m not in cat.morphisms:
            report.structural.append(Violation("unknown-morphism", (m,), f"{m} is not a morphism"))
    if report.structural:
        return report
    for m in cat.morphisms:
        if m not in F.on_morphisms:
            report.structural.append(Violation("missing-table", (m,), f"no table for {m}"))
            continue
        src, tgt = F(F.source_of(m)), set(F(F.target_of(m)))
        t = F.table(m)
        if set(t) != set(src):
            report.structural.append(
                Violation("table-domain", (m,), f"table of {m} is not total on its domain")
            )
        bad = sorted(e for e, v in t.items() if v not in tgt)
        if bad:
            report.structural.append(
                Violation("table-codomain", (m, bad[0]), f"{m} sends {bad[0]} outside its codomain")
            )
    if report.structural:
        return report

    for x, i in cat.identities.items():
        t = F.table(i)
        for e in F(x):
            if t[e] != e:
                report.laws.append(
                    Violation("identity", (i, e), f"F({i}) moves {e} to {t[e]}")
                )
                break
    for (g, f), h in cat.composition.items():
        tg, tf, th = F.table(g), F.table(f), F.table(h)
        if F.contravariant:
            # F(g∘f) = F(f)∘F(g)
            domain, first, second = F(cat.cod(g)), tg, tf
        else:
            domain, first, second = F(cat.dom(f)), tf, tg
        for e in domain:
            if th[e] != second[first[e]]:
                report.laws.append(
                    Violation(
                        "composition",
                        (g, f, e),
                        f"F({h}) and F({g}∘{f}) differ at {e}: {th[e]} vs {second[first[e]]}",
                    )
                )
                break
    return report


def hom_functor(cat: FiniteCategory, A: str, variance: str = CONTRAVARIANT) -> SetValuedFunctor:
    """``[-, A]`` (contravariant) or ``[A, -]`` (covariant), elements being morphism ids."""
    variance = _check_variance(variance)
    if A not in cat.objects:
        raise FunctorError(f"unknown object {A!r}")
    if variance == CONTRAVARIANT:
        on_objects = {x: cat.hom(x, A) for x in cat.objects}
        on_morphisms = {
            g: {f: cat.compose(f, g) for f in cat.hom(y, A)}
            for g, (x, y) in cat.morphisms.items()
        }
    else:
        on_objects = {x: cat.hom(A, x) for x in cat.objects}
        on_morphisms = {
            f: {k: cat.compose(f, k) for k in cat.hom(A, x)}
            for f, (x, y) in cat.morphisms.items()
        }
    return SetValuedFunctor(cat, variance, on_objects, on_morphisms)


def direct_image(F: SetValuedFunctor, m: str, S: Iterable[str]) -> tuple[str, ...]:
    """``{F(m)(s) : s in S}``, sorted."""
    table = F.table(m)
    out = set()
    for s in S:
        try:
            out.add(table[s])
        except KeyError:
            raise FunctorError(f"{s!r} is not in the domain of F({m})") from None
    return tuple(sorted(out))


def _powerset(elements):
    for r in range(len(elements) + 1):
        yield from combinations(elements, r)


def sub_functor(F: SetValuedFunctor, cap: int = SUBSET_CAP) -> SetValuedFunctor:
    for x, s in F.on_objects.items():
        if len(s) > cap:
            raise MaterializationError(x, len(s), cap)
    on_objects = {x: [subset_id(p) for p in _powerset(s)] for x, s in F.on_objects.items()}
    on_morphisms = {}
    for m in F.base.morphisms:
        on_morphisms[m] = {
            subset_id(p): subset_id(direct_image(F, m, p))
            for p in _powerset(F(F.source_of(m)))
        }
    return SetValuedFunctor(F.base, F.variance, on_objects, on_morphisms)


def constant_functor(
    cat: FiniteCategory, elements: Iterable[str], variance: str = CONTRAVARIANT
) -> SetValuedFunctor:
    elements = tuple(elements)
    return SetValuedFunctor(
        cat,
        variance,
        {x: elements for x in cat.objects},
        {m: {e: e for e in elements} for m in cat.morphisms},
    )


def coproduct(F: SetValuedFunctor, G: SetValuedFunctor, tags=("0", "1")) -> SetValuedFunctor:
    """Pointwise disjoint union; elements are tagged ``"<tag>:<element>"``."""
    if F.base != G.base or F.variance != G.variance:
        raise FunctorError("coproduct needs functors on the same base with the same variance")
    a, b = tags

    def tag(t, e):
        return f"{t}:{e}"

    on_objects = {
        x: [tag(a, e) for e in F(x)] + [tag(b, e) for e in G(x)] for x in F.base.objects
    }
    on_morphisms = {}
    for m in F.base.morphisms:
        t = {tag(a, e): tag(a, v) for e, v in F.table(m).items()}
        t.update({tag(b, e): tag(b, v) for e, v in G.table(m).items()})
        on_morphisms[m] = t
    return SetValuedFunctor(F.base, F.variance, on_objects, on_morphisms)


def product_functor(F: SetValuedFunctor, G: SetValuedFunctor) -> SetValuedFunctor:
    """Pointwise cartesian product; elements are ``"(<e>,<e'>)"``."""
    if F.base != G.base or F.variance != G.variance:
        raise FunctorError("product needs functors on the same base with the same variance")

    def pair(e, e2):
        return f"({e},{e2})"

    on_objects = {x: [pair(e, e2) for e in F(x) for e2 in G(x)] for x in F.base.objects}
    on_morphisms = {
        m: {
            pair(e, e2): pair(F.table(m)[e], G.table(m)[e2])
            for e in F(F.source_of(m))
            for e2 in G(G.source_of(m))
        }
        for m in F.base.morphisms
    }
    return SetValuedFunctor(F.base, F.variance, on_objects, on_morphisms)


def extend_from_generators(
    cat: FiniteCategory,
    variance: str,
    on_objects: Mapping[str, Iterable[str]],
    generator_tables: Mapping[str, Mapping[str, str]],
) -> SetValuedFunctor:
    """Extend tables given on the edges of a free category to every path.

    Only meaningful for categories built by
    :func:`~finyoneda.fincat.free_category_on_dag`, whose non-identity
    morphisms are dotted edge paths ``"en.....e1"``.
    """
    variance = _check_variance(variance)
    on_objects = {x: tuple(s) for x, s in on_objects.items()}
    tables: dict[str, dict[str, str]] = {}
    for m in cat.non_identity_morphisms():
        path = list(reversed(m.split(".")))  # traversal order
        if any(e not in generator_tables for e in path):
            raise CategoryError(f"no generator table for some edge of {m}", (m,))
        steps = path if variance == COVARIANT else list(reversed(path))
        start = cat.dom(m) if variance == COVARIANT else cat.cod(m)
        table = {}
        for e in on_objects[start]:
            v = e
            for step in steps:
                v = generator_tables[step][v]
            table[e] = v
        tables[m] = table
    return SetValuedFunctor(cat, variance, on_objects, tables)
