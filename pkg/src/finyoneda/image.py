"""Images of hom-set elements in a functor, and the dependence relation built on them.

For a contravariant ``F`` and ``f: X -> A`` the image is ``F(f)(F(A))``;
these images assemble into a natural transformation ``[-, A] => Sub F``.
Covariant functors are handled with ``f: A -> X`` and the same formula.
"""
from __future__ import annotations

from dataclasses import dataclass

from .fincat import FiniteCategory, ValidationReport, Violation
from .functors import (
    SUBSET_CAP,
    FunctorError,
    SetValuedFunctor,
    direct_image,
    hom_functor,
    sub_functor,
    subset_id,
)
from .nat import NaturalTransformation, enumerate_nat_trans, universal_elements, yoneda_backward

__all__ = [
    "ImageAssignment",
    "DependenceQuery",
    "image_of_morphism",
    "image_assignment",
    "im_transformation",
    "nat_image_oracle",
    "coarse_classes",
    "depends_set",
    "depends_oracle",
    "query_from_element",
]


def _represented_end(F: SetValuedFunctor, f: str) -> str:
    d, c = F.base.morphisms[f]
    return c if F.contravariant else d


def _free_end(F: SetValuedFunctor, f: str) -> str:
    d, c = F.base.morphisms[f]
    return d if F.contravariant else c


def image_of_morphism(f: str, F: SetValuedFunctor, A: str | None = None) -> tuple[str, ...]:
    if f not in F.base.morphisms:
        raise FunctorError(f"unknown morphism {f!r}")
    end = _represented_end(F, f)
    if A is not None and end != A:
        raise FunctorError(f"{f} is not in the hom-set at {A} (its end is {end})")
    return direct_image(F, f, F(end))


@dataclass
class ImageAssignment:
    """Lazy per-object image tables ``f -> Im(f)`` over the hom-functor at ``A``."""

    A: str
    F: SetValuedFunctor
    images: dict[str, dict[str, tuple[str, ...]]]

    def naturality_violations(self) -> ValidationReport:
        """Check ``F(g)[Im(f)] == Im(f∘g)`` (contravariant; ``Im(g∘f)`` covariant)."""
        F, cat = self.F, self.F.base
        h = hom_functor(cat, self.A, F.variance)
        report = ValidationReport()
        for g in cat.non_identity_morphisms():
            s, t = F.source_of(g), F.target_of(g)
            for f in h(s):
                moved = direct_image(F, g, self.images[s][f])
                expected = self.images[t][h.table(g)[f]]
                if moved != expected:
                    report.laws.append(
                        Violation(
                            "image-naturality",
                            (g, f),
                            f"F({g})[Im({f})] = {list(moved)} but Im of the composite is {list(expected)}",
                        )
                    )
        return report

    def to_json(self) -> dict:
        return {
            "A": self.A,
            "components": {
                x: {f: list(s) for f, s in comp.items()} for x, comp in self.images.items()
            },
        }


def image_assignment(cat: FiniteCategory, A: str, F: SetValuedFunctor) -> ImageAssignment:
    if F.base != cat:
        raise FunctorError("functor is not defined on this category")
    h = hom_functor(cat, A, F.variance)
    images = {x: {f: image_of_morphism(f, F, A) for f in h(x)} for x in cat.objects}
    return ImageAssignment(A, F, images)


def im_transformation(
    cat: FiniteCategory, A: str, F: SetValuedFunctor, cap: int = SUBSET_CAP
) -> NaturalTransformation:
    """The materialized transformation ``h^A => Sub F``.

    Raises :class:`~finyoneda.functors.MaterializationError` past ``cap``;
    :func:`image_assignment` is the lazy alternative.
    """
    sub = sub_functor(F, cap=cap)
    assignment = image_assignment(cat, A, F)
    comps = {
        x: {f: subset_id(s) for f, s in comp.items()} for x, comp in assignment.images.items()
    }
    return NaturalTransformation(hom_functor(cat, A, F.variance), sub, comps)


def nat_image_oracle(
    cat: FiniteCategory,
    A: str,
    F: SetValuedFunctor,
    f: str,
    guard: int | None = None,
    transformations: list[NaturalTransformation] | None = None,
) -> tuple[str, ...]:
    """Values of ``f`` under every natural transformation out of the hom-functor at ``A``.

    Computed by exhaustive enumeration, never through ``F(f)``.
    """
    h = hom_functor(cat, A, F.variance)
    x = _free_end(F, f)
    if f not in h(x):
        raise FunctorError(f"{f} is not in the hom-set at {A}")
    if transformations is None:
        transformations = enumerate_nat_trans(h, F, guard=guard)
    return tuple(sorted({tau(x, f) for tau in transformations}))


def coarse_classes(cat: FiniteCategory, X: str, A: str, F: SetValuedFunctor) -> list[list[str]]:
    """Partition the hom-set between ``X`` and ``A`` by equality of images."""
    h = hom_functor(cat, A, F.variance)
    blocks: dict[tuple[str, ...], list[str]] = {}
    for f in h(X):
        blocks.setdefault(image_of_morphism(f, F, A), []).append(f)
    return sorted((sorted(b) for b in blocks.values()), key=lambda b: b[0])


@dataclass(frozen=True)
class DependenceQuery:
    """Which elements of ``G(X)`` depend on the class of ``f_alpha: X -> A``."""

    X: str
    f_alpha: str
    G: SetValuedFunctor

    def __post_init__(self):
        if not self.G.contravariant:
            raise FunctorError("dependence is defined for contravariant functors")
        if self.f_alpha not in self.G.base.morphisms:
            raise FunctorError(f"unknown morphism {self.f_alpha!r}")
        if self.G.base.dom(self.f_alpha) != self.X:
            raise FunctorError(f"{self.f_alpha} does not start at {self.X}")

    @property
    def A(self) -> str:
        return self.G.base.cod(self.f_alpha)


def depends_set(q: DependenceQuery) -> tuple[str, ...]:
    return image_of_morphism(q.f_alpha, q.G, q.A)


def depends_oracle(q: DependenceQuery, beta: str) -> bool:
    """Brute-force dependence test.

    ``beta`` depends on ``f_alpha`` when every ``f: X -> Y`` through which
    ``f_alpha`` factors also pulls some element of ``G(Y)`` back to ``beta``.
    """
    G, cat = q.G, q.G.base
    if beta not in G(q.X):
        raise FunctorError(f"{beta!r} is not an element of G({q.X})")
    h = hom_functor(cat, q.A)
    for Y in cat.objects:
        for f in cat.hom(q.X, Y):
            if q.f_alpha not in direct_image(h, f, h(Y)):
                continue
            if beta not in direct_image(G, f, G(Y)):
                return False
    return True


def query_from_element(
    F: SetValuedFunctor, iso: NaturalTransformation | None, alpha: str, X: str, G: SetValuedFunctor
) -> DependenceQuery:
    """Turn ``alpha in F(X)`` for a representable ``F`` into a query on its classifying map.

    ``iso`` is an isomorphism from a hom-functor onto ``F``; when omitted a
    universal element of ``F`` is searched for.
    """
    if iso is None:
        found = universal_elements(F)
        if not found:
            raise FunctorError("functor is not representable")
        B, u = found[0]
        iso = yoneda_backward(u, B, F)
    if iso.target != F or not iso.is_isomorphism():
        raise FunctorError("iso must be an isomorphism onto F")
    matches = [f for f, v in iso.components[X].items() if v == alpha]
    if len(matches) != 1:
        raise FunctorError(f"{alpha!r} has no unique classifying morphism")
    return DependenceQuery(X, matches[0], G)
