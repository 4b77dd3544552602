"""Natural transformations between set-valued functors and the Yoneda maps."""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping

import networkx as nx

from .fincat import ValidationReport, Violation
from .functors import SetValuedFunctor, hom_functor

__all__ = [
    "DEFAULT_GUARD",
    "GuardExceeded",
    "NatError",
    "NaturalTransformation",
    "BijectionCertificate",
    "default_guard",
    "check_naturality",
    "search_space_estimate",
    "enumerate_nat_trans",
    "yoneda_forward",
    "yoneda_backward",
    "verify_yoneda_bijection",
    "identity_transformation",
    "universal_elements",
]

DEFAULT_GUARD = 10**7


def default_guard() -> int:
    """Search-space guard, overridable with ``YONEDA_GUARD``."""
    raw = os.environ.get("YONEDA_GUARD")
    return int(raw) if raw else DEFAULT_GUARD


class NatError(ValueError):
    pass


class GuardExceeded(NatError):
    def __init__(self, estimate: int, guard: int):
        super().__init__(f"search space estimate {estimate} exceeds guard {guard}")
        self.estimate = estimate
        self.guard = guard


class NaturalTransformation:
    """Components ``X -> (F(X) -> G(X))`` between two same-variance functors."""

    __slots__ = ("source", "target", "components")

    def __init__(
        self,
        source: SetValuedFunctor,
        target: SetValuedFunctor,
        components: Mapping[str, Mapping[str, str]],
    ):
        if source.base != target.base or source.variance != target.variance:
            raise NatError("source and target must share base category and variance")
        self.source = source
        self.target = target
        self.components = {x: dict(sorted(c.items())) for x, c in sorted(components.items())}

    def __call__(self, x: str, element: str) -> str:
        return self.components[x][element]

    def flat(self) -> tuple[str, ...]:
        """Component values in canonical (object, element) order."""
        return tuple(
            self.components[x][e] for x in self.source.base.objects for e in self.source(x)
        )

    def is_isomorphism(self) -> bool:
        return all(
            sorted(c.values()) == list(self.target(x)) and len(c) == len(self.target(x))
            for x, c in self.components.items()
        )

    def to_json(self) -> dict:
        return {"components": self.components}

    def __eq__(self, other):
        if not isinstance(other, NaturalTransformation):
            return NotImplemented
        return (
            self.components == other.components
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self):
        return hash(tuple((x, tuple(c.items())) for x, c in self.components.items()))

    def __repr__(self):
        return f"NaturalTransformation({self.components!r})"


def identity_transformation(F: SetValuedFunctor) -> NaturalTransformation:
    return NaturalTransformation(F, F, {x: {e: e for e in F(x)} for x in F.base.objects})


def check_naturality(tau: NaturalTransformation) -> ValidationReport:
    F, G = tau.source, tau.target
    cat = F.base
    for x in cat.objects:
        comp = tau.components.get(x)
        if comp is None or set(comp) != set(F(x)):
            raise NatError(f"component at {x} is not defined exactly on F({x})")
        bad = [v for v in comp.values() if v not in set(G(x))]
        if bad:
            raise NatError(f"component at {x} sends into {bad[0]!r}, not in G({x})")
    report = ValidationReport()
    for m in cat.morphisms:
        if cat.is_identity(m):
            continue
        # both variances: the square starts at F(s) where s is the domain object of F(m)
        s, t = F.source_of(m), F.target_of(m)
        fm, gm = F.table(m), G.table(m)
        for e in F(s):
            lhs = tau.components[t][fm[e]]
            rhs = gm[tau.components[s][e]]
            if lhs != rhs:
                report.laws.append(
                    Violation(
                        "naturality",
                        (m, e),
                        f"square for {m} fails at {e}: tau({fm[e]}) = {lhs} but G({m})(tau({e})) = {rhs}",
                    )
                )
    return report


class _Problem:
    """Element-level constraint network for Nat(F, G) with F, G contravariant.

    Variables are ``(X, x)`` with ``x in F(X)``; assigning ``(Y, y) := v``
    forces ``(X, F(f)(y)) := G(f)(v)`` for every ``f: X -> Y``.
    """

    def __init__(self, F: SetValuedFunctor, G: SetValuedFunctor):
        cat = F.base
        self.F, self.G = F, G
        self.variables = [(x, e) for x in cat.objects for e in F(x)]
        self.domains = {v: G(v[0]) for v in self.variables}
        self.outgoing: dict[tuple[str, str], list] = {v: [] for v in self.variables}
        for m in cat.non_identity_morphisms():
            s, t = F.source_of(m), F.target_of(m)
            fm, gm = F.table(m), G.table(m)
            for e in F(s):
                self.outgoing[(s, e)].append(((t, fm[e]), gm))
        self.generators = self._generators()

    def _generators(self):
        graph = nx.DiGraph()
        graph.add_nodes_from(self.variables)
        for v, outs in self.outgoing.items():
            for w, _ in outs:
                graph.add_edge(v, w)
        rank = {v: i for i, v in enumerate(self.variables)}
        cond = nx.condensation(graph)
        gens = [
            min(cond.nodes[c]["members"], key=rank.__getitem__)
            for c in cond.nodes
            if cond.in_degree(c) == 0
        ]
        return sorted(gens, key=rank.__getitem__)

    def estimate(self) -> int:
        return math.prod(len(self.domains[g]) for g in self.generators)

    def _assign(self, assignment, var, value):
        """Assign and propagate; return the trail of new variables or None on conflict."""
        trail = []
        queue = [(var, value)]
        while queue:
            v, val = queue.pop()
            cur = assignment.get(v)
            if cur is not None:
                if cur != val:
                    for u in trail:
                        del assignment[u]
                    return None
                continue
            assignment[v] = val
            trail.append(v)
            for w, gm in self.outgoing[v]:
                queue.append((w, gm[val]))
        return trail

    def solve(self, prefix=()):
        assignment: dict = {}
        for var, val in prefix:
            if self._assign(assignment, var, val) is None:
                return []
        gens = set(self.generators)
        order = self.generators + [v for v in self.variables if v not in gens]
        results = []

        def backtrack(i):
            while i < len(order) and order[i] in assignment:
                i += 1
            if i == len(order):
                results.append(dict(assignment))
                return
            var = order[i]
            for val in self.domains[var]:
                trail = self._assign(assignment, var, val)
                if trail is None:
                    continue
                backtrack(i + 1)
                for u in trail:
                    del assignment[u]

        backtrack(0)
        return results


def _solve_branch(args):
    F, G, prefix = args
    return _Problem(F, G).solve(prefix)


def search_space_estimate(F: SetValuedFunctor, G: SetValuedFunctor) -> int:
    """Upper bound on the leaves of the pruned search for Nat(F, G)."""
    if not F.contravariant:
        F, G = F.dual(), G.dual()
    return _Problem(F, G).estimate()


def enumerate_nat_trans(
    F: SetValuedFunctor,
    G: SetValuedFunctor,
    guard: int | None = None,
    workers: int = 1,
) -> list[NaturalTransformation]:
    """All natural transformations ``F => G``, sorted by flattened components.

    Backtracking over elements with forward propagation along the naturality
    squares. With ``workers > 1`` the subtrees below the first free variable
    run in separate processes; the merged output is identical.
    """
    if F.base != G.base or F.variance != G.variance:
        raise NatError("functors must share base category and variance")
    guard = default_guard() if guard is None else guard
    Fc, Gc = (F, G) if F.contravariant else (F.dual(), G.dual())
    problem = _Problem(Fc, Gc)
    estimate = problem.estimate()
    if estimate > guard:
        raise GuardExceeded(estimate, guard)

    if workers > 1 and problem.generators:
        first = problem.generators[0]
        branches = [(Fc, Gc, ((first, v),)) for v in problem.domains[first]]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            solutions = [s for part in pool.map(_solve_branch, branches) for s in part]
    else:
        solutions = problem.solve()

    out = []
    for sol in solutions:
        comps: dict[str, dict[str, str]] = {x: {} for x in F.base.objects}
        for (x, e), v in sol.items():
            comps[x][e] = v
        out.append(NaturalTransformation(F, G, comps))
    out.sort(key=NaturalTransformation.flat)
    return out


def _represented_object(F: SetValuedFunctor, A: str | None) -> str:
    cat = F.base
    candidates = [A] if A is not None else list(cat.objects)
    for B in candidates:
        if B in cat.objects and F == hom_functor(cat, B, F.variance):
            return B
    raise NatError("source functor is not the hom-functor of the given object")


def yoneda_forward(tau: NaturalTransformation, A: str | None = None) -> str:
    """``tau_A(id_A)``."""
    A = _represented_object(tau.source, A)
    return tau.components[A][tau.source.base.identity(A)]


def yoneda_backward(alpha: str, A: str, F: SetValuedFunctor) -> NaturalTransformation:
    """The transformation ``f -> F(f)(alpha)`` out of the hom-functor at ``A``."""
    if A not in F.base.objects:
        raise NatError(f"unknown object {A!r}")
    if alpha not in F(A):
        raise NatError(f"{alpha!r} is not an element of F({A})")
    h = hom_functor(F.base, A, F.variance)
    comps = {x: {f: F.table(f)[alpha] for f in h(x)} for x in F.base.objects}
    return NaturalTransformation(h, F, comps)


@dataclass
class BijectionCertificate:
    A: str
    variance: str
    nat_count: int
    F_A: int
    injective: bool
    surjective: bool
    forward_backward: bool
    backward_forward: bool
    counterexample: dict = field(default_factory=dict)

    @property
    def bijection(self) -> bool:
        return (
            self.nat_count == self.F_A
            and self.injective
            and self.surjective
            and self.forward_backward
            and self.backward_forward
        )

    def to_json(self) -> dict:
        return {
            "A": self.A,
            "variance": self.variance,
            "nat_count": self.nat_count,
            "F_A": self.F_A,
            "injective": self.injective,
            "surjective": self.surjective,
            "round_trip_forward_backward": self.forward_backward,
            "round_trip_backward_forward": self.backward_forward,
            "bijection": self.bijection,
            "counterexample": self.counterexample,
        }


def verify_yoneda_bijection(
    cat,
    A: str,
    F: SetValuedFunctor,
    variance: str | None = None,
    guard: int | None = None,
    workers: int = 1,
    transformations: list[NaturalTransformation] | None = None,
) -> BijectionCertificate:
    variance = variance or F.variance
    if F.base != cat or F.variance != variance:
        raise NatError("functor does not live on this category with this variance")
    h = hom_functor(cat, A, variance)
    if transformations is None:
        transformations = enumerate_nat_trans(h, F, guard=guard, workers=workers)
    images = [yoneda_forward(t, A) for t in transformations]
    counter: dict = {}
    injective = len(set(images)) == len(images)
    if not injective:
        seen: dict[str, int] = {}
        for i, a in enumerate(images):
            if a in seen:
                counter["collision"] = [seen[a], i, a]
                break
            seen[a] = i
    missing = sorted(set(F(A)) - set(images))
    surjective = not missing
    if missing:
        counter["missing"] = missing
    fb = True
    for alpha in F(A):
        tau = yoneda_backward(alpha, A, F)
        if not check_naturality(tau).ok or yoneda_forward(tau, A) != alpha:
            fb = False
            counter.setdefault("forward_backward", alpha)
    bf = True
    for i, tau in enumerate(transformations):
        if yoneda_backward(yoneda_forward(tau, A), A, F) != tau:
            bf = False
            counter.setdefault("backward_forward", i)
    return BijectionCertificate(
        A=A,
        variance=variance,
        nat_count=len(transformations),
        F_A=len(F(A)),
        injective=injective,
        surjective=surjective,
        forward_backward=fb,
        backward_forward=bf,
        counterexample=counter,
    )


def universal_elements(F: SetValuedFunctor) -> list[tuple[str, str]]:
    """Pairs ``(B, alpha)`` for which ``yoneda_backward(alpha, B, F)`` is an isomorphism.

    ``F`` is representable exactly when this list is nonempty.
    """
    out = []
    for B in F.base.objects:
        for alpha in F(B):
            if yoneda_backward(alpha, B, F).is_isomorphism():
                out.append((B, alpha))
    return out
