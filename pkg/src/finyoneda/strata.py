"""Preorders on hom-sets, their poset quotients and Alexandroff topologies."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

import networkx as nx

from .fincat import FiniteCategory
from .functors import SUBSET_CAP, MaterializationError, SetValuedFunctor, subset_id
from .image import image_of_morphism

__all__ = [
    "OrderError",
    "Proset",
    "Poset",
    "FiniteTopology",
    "StratificationMap",
    "ALEXANDROFF_GUARD",
    "OPENS_ARE_UPSETS",
    "build_L_preorder",
    "quotient_to_poset",
    "alexandroff_opens",
    "is_monotone",
    "is_continuous",
    "stratification_map",
    "subset_poset",
    "covering_pairs",
]

ALEXANDROFF_GUARD = 20
# Opens are up-sets; set False for the down-set convention.
OPENS_ARE_UPSETS = True


class OrderError(ValueError):
    pass


def _close(carrier, pairs) -> frozenset:
    graph = nx.DiGraph()
    graph.add_nodes_from(carrier)
    graph.add_edges_from(pairs)
    return frozenset(
        (a, b) for a in carrier for b in nx.descendants(graph, a) | {a}
    )


class Proset:
    """Finite preordered set; ``leq`` holds pairs ``(a, b)`` meaning ``a <= b``."""

    def __init__(
        self, carrier: Iterable[str], leq: Iterable[tuple[str, str]], check: bool = True
    ):
        self.carrier = tuple(sorted(set(carrier)))
        self.leq = frozenset(leq)
        if check:
            self._check()

    @classmethod
    def from_relation(cls, carrier, pairs):
        """Reflexive-transitive closure of ``pairs``."""
        carrier = sorted(set(carrier))
        return cls(carrier, _close(carrier, pairs))

    def _check(self):
        members = set(self.carrier)
        for a, b in self.leq:
            if a not in members or b not in members:
                raise OrderError(f"pair ({a}, {b}) leaves the carrier")
        for a in self.carrier:
            if (a, a) not in self.leq:
                raise OrderError(f"not reflexive at {a}")
        ups: dict[str, set] = {a: set() for a in self.carrier}
        for a, b in self.leq:
            ups[a].add(b)
        for a, b in self.leq:
            if not ups[b] <= ups[a]:
                c = min(ups[b] - ups[a])
                raise OrderError(f"not transitive at ({a}, {b}, {c})")

    def le(self, a: str, b: str) -> bool:
        return (a, b) in self.leq

    def is_antisymmetric(self) -> bool:
        return all(a == b or (b, a) not in self.leq for a, b in self.leq)

    def up(self, a: str) -> frozenset:
        return frozenset(b for b in self.carrier if (a, b) in self.leq)

    def __eq__(self, other):
        if not isinstance(other, Proset):
            return NotImplemented
        return self.carrier == other.carrier and self.leq == other.leq

    def __hash__(self):
        return hash((self.carrier, self.leq))

    def __repr__(self):
        return f"{type(self).__name__}({list(self.carrier)}, {sorted(self.leq)})"

    def to_json(self) -> dict:
        return {"carrier": list(self.carrier), "leq": [list(p) for p in sorted(self.leq)]}


class Poset(Proset):
    def _check(self):
        super()._check()
        for a, b in self.leq:
            if a != b and (b, a) in self.leq:
                raise OrderError(f"not antisymmetric: {a} and {b}")


@dataclass(frozen=True)
class FiniteTopology:
    carrier: frozenset
    opens: frozenset

    def is_topology(self) -> bool:
        """Contains the empty set and the carrier; closed under unions and intersections.

        Pairwise closure suffices for a finite family, and for a finite family
        it is the same as closure under arbitrary unions and intersections.
        """
        if frozenset() not in self.opens or self.carrier not in self.opens:
            return False
        if any(not u <= self.carrier for u in self.opens):
            return False
        for u, v in combinations(self.opens, 2):
            if u | v not in self.opens or u & v not in self.opens:
                return False
        return True

    def specialization(self) -> Proset:
        """``a <= b`` iff every open containing ``a`` contains ``b`` (up-set convention)."""
        pairs = [
            (a, b)
            for a in self.carrier
            for b in self.carrier
            if all(b in u for u in self.opens if a in u)
        ]
        if not OPENS_ARE_UPSETS:
            pairs = [(b, a) for a, b in pairs]
        return Proset(self.carrier, pairs)


@dataclass
class StratificationMap:
    source: Proset
    target: Poset
    mapping: dict

    def __post_init__(self):
        if not isinstance(self.target, Poset):
            raise OrderError("stratification target must be a poset")
        if not is_monotone(self.mapping, self.source, self.target):
            raise OrderError("stratification map is not monotone")

    def strata(self) -> dict:
        """Fibres over the points actually hit."""
        fibres: dict = {}
        for a in self.source.carrier:
            fibres.setdefault(self.mapping[a], []).append(a)
        return dict(sorted(fibres.items()))

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "mapping": dict(sorted(self.mapping.items())),
            "strata": self.strata(),
        }


def build_L_preorder(cat: FiniteCategory, X: str, A: str) -> Proset:
    """``f <= g`` on ``[X, A]`` iff ``f = t∘g`` for some ``t: A -> A``."""
    for o in (X, A):
        if o not in cat.objects:
            raise OrderError(f"unknown object {o!r}")
    homs = cat.hom(X, A)
    ends = cat.hom(A, A)
    pairs = {(cat.compose(t, g), g) for g in homs for t in ends}
    return Proset(homs, pairs)


def quotient_to_poset(P: Proset) -> tuple[Poset, dict[str, str]]:
    """Collapse mutually comparable elements.

    Classes are the strongly connected components of the relation graph and
    are named by :func:`~finyoneda.functors.subset_id` of their members.
    Returns the poset and the projection.
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(P.carrier)
    graph.add_edges_from(P.leq)
    projection: dict[str, str] = {}
    for comp in nx.strongly_connected_components(graph):
        name = subset_id(comp)
        for a in comp:
            projection[a] = name
    leq = {(projection[a], projection[b]) for a, b in P.leq}
    return Poset(set(projection.values()), leq), dict(sorted(projection.items()))


def alexandroff_opens(P: Proset, guard: int = ALEXANDROFF_GUARD) -> FiniteTopology:
    """All up-sets (down-sets if :data:`OPENS_ARE_UPSETS` is off) as opens."""
    n = len(P.carrier)
    if n > guard:
        raise OrderError(f"carrier of size {n} exceeds Alexandroff guard {guard}")
    if OPENS_ARE_UPSETS:
        le = P.le
    else:
        def le(a, b):
            return P.le(b, a)

    # elements with fewer strict predecessors first, so forcing happens early
    order = sorted(P.carrier, key=lambda a: sum(le(b, a) for b in P.carrier))
    opens = []
    chosen: dict[str, bool] = {}

    def walk(i):
        if i == n:
            opens.append(frozenset(a for a, inside in chosen.items() if inside))
            return
        a = order[i]
        must_in = any(inside and le(b, a) for b, inside in chosen.items())
        must_out = any(not inside and le(a, b) for b, inside in chosen.items())
        for choice in (False, True):
            if (choice and must_out) or (not choice and must_in):
                continue
            chosen[a] = choice
            walk(i + 1)
            del chosen[a]

    walk(0)
    return FiniteTopology(frozenset(P.carrier), frozenset(opens))


def _check_total(mapping: Mapping, source_carrier, target_carrier):
    missing = [a for a in source_carrier if a not in mapping]
    if missing:
        raise OrderError(f"map is not total: no value at {missing[0]}")
    targets = set(target_carrier)
    stray = [a for a in source_carrier if mapping[a] not in targets]
    if stray:
        raise OrderError(f"map sends {stray[0]} outside the target")


def is_monotone(mapping: Mapping, P: Proset, Q: Proset) -> bool:
    _check_total(mapping, P.carrier, Q.carrier)
    return all(Q.le(mapping[a], mapping[b]) for a, b in P.leq)


def is_continuous(mapping: Mapping, TP: FiniteTopology, TQ: FiniteTopology) -> bool:
    _check_total(mapping, TP.carrier, TQ.carrier)
    return all(
        frozenset(a for a in TP.carrier if mapping[a] in U) in TP.opens for U in TQ.opens
    )


def subset_poset(elements: Iterable[str], cap: int = SUBSET_CAP, obj: str = "?") -> Poset:
    """All subsets of ``elements`` under inclusion, named by :func:`subset_id`."""
    elements = sorted(set(elements))
    if len(elements) > cap:
        raise MaterializationError(obj, len(elements), cap)
    subsets = [
        frozenset(c) for r in range(len(elements) + 1) for c in combinations(elements, r)
    ]
    names = {s: subset_id(s) for s in subsets}
    leq = [(names[s], names[t]) for s in subsets for t in subsets if s <= t]
    # inclusion is a partial order by construction
    return Poset(names.values(), leq, check=False)


def stratification_map(
    cat: FiniteCategory, X: str, A: str, F: SetValuedFunctor, cap: int = SUBSET_CAP
) -> StratificationMap:
    """``f -> Im(f)`` from ``([X, A], <=_L)`` to the subsets of ``F(X)`` under inclusion."""
    if not F.contravariant:
        raise OrderError("the L-preorder stratification uses a contravariant functor")
    source = build_L_preorder(cat, X, A)
    target = subset_poset(F(X), cap=cap, obj=X)
    mapping = {f: subset_id(image_of_morphism(f, F, A)) for f in source.carrier}
    return StratificationMap(source, target, mapping)


def covering_pairs(P: Proset) -> list[tuple[str, str]]:
    """Hasse edges ``a < b`` with nothing strictly between (requires a poset)."""
    strict = {(a, b) for a, b in P.leq if a != b}
    return sorted(
        (a, b)
        for a, b in strict
        if not any((a, c) in strict and (c, b) in strict for c in P.carrier)
    )
