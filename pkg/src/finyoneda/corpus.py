"""Bundled test-bed of small categories, functors and prosets."""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .fincat import (
    FiniteCategory,
    chain_category,
    discrete_category,
    free_category_on_dag,
    monoid_category,
)
from .functors import (
    CONTRAVARIANT,
    COVARIANT,
    SetValuedFunctor,
    constant_functor,
    coproduct,
    extend_from_generators,
    hom_functor,
    product_functor,
)
from .nat import universal_elements
from .strata import Proset, build_L_preorder, quotient_to_poset

__all__ = [
    "Triple",
    "z2",
    "m2",
    "z3",
    "z2_with_zero",
    "c2",
    "commutative_square",
    "parallel_pair",
    "corpus_categories",
    "corpus",
    "corpus_prosets",
    "random_proset",
]


def z2() -> FiniteCategory:
    """The group of order two, ``s·s = e``."""
    els = ["e", "s"]
    table = {(a, b): "e" if a == b else "s" for a, b in product(els, repeat=2)}
    return monoid_category(els, table, "e")


def m2() -> FiniteCategory:
    """``{e, z}`` with ``z·z = z``."""
    els = ["e", "z"]
    table = {(a, b): "z" if "z" in (a, b) else "e" for a, b in product(els, repeat=2)}
    return monoid_category(els, table, "e")


def z3() -> FiniteCategory:
    els = ["e", "r", "r2"]
    power = {"e": 0, "r": 1, "r2": 2}
    table = {(a, b): els[(power[a] + power[b]) % 3] for a, b in product(els, repeat=2)}
    return monoid_category(els, table, "e")


def z2_with_zero() -> FiniteCategory:
    """``{e, s, z}`` with ``s·s = e`` and ``z`` absorbing.

    Its self-hom preorder is not antisymmetric and its quotient is a 2-chain.
    """
    els = ["e", "s", "z"]

    def mul(a, b):
        if "z" in (a, b):
            return "z"
        return "e" if a == b else "s"

    return monoid_category(els, {(a, b): mul(a, b) for a, b in product(els, repeat=2)}, "e")


def c2() -> FiniteCategory:
    """``0 -a-> 1``."""
    return FiniteCategory.from_tables(["0", "1"], [("a", "0", "1")])


def commutative_square() -> FiniteCategory:
    """Free category on ``u -p-> v -q-> w`` and ``u -r-> x -s-> w``."""
    return free_category_on_dag(
        ["u", "v", "w", "x"],
        [("p", "u", "v"), ("q", "v", "w"), ("r", "u", "x"), ("s", "x", "w")],
    )


def parallel_pair() -> FiniteCategory:
    return free_category_on_dag(["u", "v"], [("a", "u", "v"), ("b", "u", "v")])


@lru_cache(maxsize=None)
def corpus_categories() -> dict[str, FiniteCategory]:
    cats: dict[str, FiniteCategory] = {}
    for n in range(1, 6):
        cats[f"chain{n}"] = chain_category(n)
    for n in range(1, 4):
        cats[f"discrete{n}"] = discrete_category([f"d{i}" for i in range(n)])
    cats["z2"] = z2()
    cats["m2"] = m2()
    cats["z3"] = z3()
    cats["z2zero"] = z2_with_zero()
    cats["square"] = commutative_square()
    cats["parallel"] = parallel_pair()
    return cats


@dataclass(frozen=True)
class Triple:
    name: str
    cat: FiniteCategory
    A: str
    F: SetValuedFunctor


def _random_square_functor(cat: FiniteCategory, variance: str, seed: int) -> SetValuedFunctor:
    rng = random.Random(seed)
    sets = {x: [f"{x}{i}" for i in range(rng.randint(1, 3))] for x in cat.objects}
    tables = {}
    for m in cat.non_identity_morphisms():
        if "." in m:
            continue
        d, c = cat.morphisms[m]
        src, tgt = (sets[d], sets[c]) if variance == COVARIANT else (sets[c], sets[d])
        tables[m] = {e: rng.choice(tgt) for e in src}
    return extend_from_generators(cat, variance, sets, tables)


def _candidates(cat: FiniteCategory, name: str, A: str, variance: str):
    h = hom_functor(cat, A, variance)
    yield "const2", constant_functor(cat, ["p", "q"], variance)
    yield "hom+hom", coproduct(h, h)
    yield "homxconst2", product_functor(h, constant_functor(cat, ["p", "q"], variance))
    yield "empty", constant_functor(cat, [], variance)
    yield "terminal", constant_functor(cat, ["*"], variance)
    if name == "square":
        yield "random", _random_square_functor(cat, variance, seed=cat.objects.index(A))


def corpus(variances=(CONTRAVARIANT, COVARIANT)) -> list[Triple]:
    """``(category, A, F)`` triples: ``F`` is the hom-functor at ``A`` plus two non-representables.

    Covariant triples are only drawn at the first object of each category.
    """
    out = []
    for name, cat in corpus_categories().items():
        for variance in variances:
            objs = cat.objects if variance == CONTRAVARIANT else cat.objects[:1]
            for A in objs:
                tag = "contra" if variance == CONTRAVARIANT else "co"
                out.append(Triple(f"{name}/{A}/{tag}/hom", cat, A, hom_functor(cat, A, variance)))
                picked = 0
                for label, F in _candidates(cat, name, A, variance):
                    if universal_elements(F):
                        continue
                    out.append(Triple(f"{name}/{A}/{tag}/{label}", cat, A, F))
                    picked += 1
                    if picked == 2:
                        break
    return out


def random_proset(rng: random.Random, max_size: int = 8) -> Proset:
    n = rng.randint(1, max_size)
    carrier = [f"p{i}" for i in range(n)]
    density = rng.random() * 0.4
    pairs = [(a, b) for a in carrier for b in carrier if a != b and rng.random() < density]
    return Proset.from_relation(carrier, pairs)


def _named_prosets() -> list[Proset]:
    def chain(n):
        c = [str(i) for i in range(n)]
        return Proset.from_relation(c, zip(c, c[1:]))

    def antichain(n):
        return Proset.from_relation([str(i) for i in range(n)], [])

    out = [chain(n) for n in range(1, 5)] + [antichain(n) for n in range(2, 5)]
    out.append(Proset.from_relation("abcd", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")]))
    out.append(Proset.from_relation("abc", [("a", "b"), ("a", "c")]))
    out.append(Proset.from_relation("abc", [("a", "c"), ("b", "c")]))
    out.append(Proset.from_relation("ab", [("a", "b"), ("b", "a")]))
    out.append(Proset.from_relation("abc", [("a", "b"), ("b", "a"), ("b", "c")]))
    return out


def corpus_prosets(max_size: int = 4) -> list[Proset]:
    """Distinct nonempty prosets of at most ``max_size`` points.

    Drawn from the L-preorders of the corpus categories, their quotients and a
    handful of named shapes.
    """
    seen: dict[Proset, None] = {}
    for cat in corpus_categories().values():
        for X in cat.objects:
            for A in cat.objects:
                if not 0 < len(cat.hom(X, A)) <= max_size:
                    continue
                P = build_L_preorder(cat, X, A)
                seen.setdefault(P, None)
                seen.setdefault(quotient_to_poset(P)[0], None)
    for P in _named_prosets():
        if len(P.carrier) <= max_size:
            seen.setdefault(P, None)
    return list(seen)
