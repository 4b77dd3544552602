"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a mathematical check fails
(the report carries the counterexample), 2 for usage, parse or guard errors.
Reports go to standard output as canonical JSON.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .dot import hasse_dot, stratification_dot
from .fincat import MAX_MORPHISMS, CategoryError, FiniteCategory, validate_category
from .functors import (
    CONTRAVARIANT,
    COVARIANT,
    SUBSET_CAP,
    FunctorError,
    SetValuedFunctor,
    hom_functor,
    validate_functor,
)
from .image import (
    DependenceQuery,
    coarse_classes,
    depends_oracle,
    depends_set,
    image_assignment,
    image_of_morphism,
    nat_image_oracle,
)
from .jsonio import (
    SchemaError,
    canonical_dumps,
    category_from_json,
    functor_from_json,
    parse_category_file,
)
from .nat import NatError, default_guard, enumerate_nat_trans, verify_yoneda_bijection
from .strata import (
    ALEXANDROFF_GUARD,
    OrderError,
    alexandroff_opens,
    build_L_preorder,
    quotient_to_poset,
    stratification_map,
)

__all__ = ["VERBS", "Workspace", "run_command", "main"]

VERBS = (
    "check",
    "nat-enum",
    "yoneda",
    "image",
    "im-check",
    "coarse",
    "depends",
    "preorder",
    "quotient",
    "alexandroff",
    "stratify",
    "export-dot",
)

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class Workspace:
    """Categories and functors loaded during one invocation."""

    categories: dict[str, FiniteCategory] = field(default_factory=dict)
    functors: dict[str, tuple[str, SetValuedFunctor]] = field(default_factory=dict)

    def add_category(self, name: str, cat: FiniteCategory) -> FiniteCategory:
        if name in self.categories:
            raise UsageError(f"category name {name!r} already loaded")
        self.categories[name] = cat
        return cat

    def add_functor(self, name: str, cat_name: str, F: SetValuedFunctor) -> SetValuedFunctor:
        if name in self.functors:
            raise UsageError(f"functor name {name!r} already loaded")
        if cat_name not in self.categories:
            raise UsageError(f"functor {name!r} refers to unloaded category {cat_name!r}")
        self.functors[name] = (cat_name, F)
        return F


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="finyoneda", description=__doc__.splitlines()[0])
    p.add_argument("verb", choices=VERBS)
    p.add_argument("--cat", required=True, help="category JSON file")
    p.add_argument("--functor", help="functor JSON file (target functor)")
    p.add_argument("--F", dest="F", help="'hom' for the hom-functor at --A, or a functor file")
    p.add_argument("--source", default="hom", help="source functor for nat-enum ('hom' or file)")
    p.add_argument("--A", dest="A", help="representing object")
    p.add_argument("--X", dest="X", help="domain object (defaults to --A)")
    p.add_argument("--f", dest="f", help="morphism f_alpha for depends")
    p.add_argument("--variance", choices=["co", "contra"], default=None)
    p.add_argument("--guard", type=int, default=None, help="search-space guard")
    p.add_argument("--cap", type=int, default=SUBSET_CAP, help="powerset materialization cap")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for enumeration")
    p.add_argument("--out", choices=["json", "dot"], default="json")
    return p


class _Ctx:
    def __init__(self, args, ws: Workspace):
        self.args = args
        self.ws = ws
        self.guard = args.guard if args.guard is not None else default_guard()
        self._cat: FiniteCategory | None = None

    @property
    def variance(self) -> str | None:
        return {"co": COVARIANT, "contra": CONTRAVARIANT, None: None}[self.args.variance]

    def cat(self) -> FiniteCategory:
        if self._cat is None:
            self._cat = self.ws.add_category("cat", parse_category_file(self.args.cat))
        return self._cat

    def obj(self, flag: str, default: str | None = None) -> str:
        value = getattr(self.args, flag) or default
        if value is None:
            raise UsageError(f"--{flag} is required for {self.args.verb}")
        if value not in self.cat().objects:
            raise UsageError(f"unknown object {value!r} for --{flag}")
        return value

    def functor(self, spec: str | None, name: str, A: str | None = None) -> SetValuedFunctor:
        if spec is None:
            raise UsageError(f"{self.args.verb} needs a functor (--F or --functor)")
        cat = self.cat()
        if spec == "hom":
            A = A or self.obj("A")
            F = hom_functor(cat, A, self.variance or CONTRAVARIANT)
        else:
            data = json.loads(Path(spec).read_text(encoding="utf-8"))
            F = functor_from_json(data, cat)
            if self.variance and F.variance != self.variance:
                raise UsageError(f"--variance conflicts with the variance in {spec}")
            report = validate_functor(F)
            if not report.ok:
                raise _Failure({"functor_report": report.to_json()})
        return self.ws.add_functor(name, "cat", F)

    def target(self) -> SetValuedFunctor:
        return self.functor(self.args.functor or self.args.F, "F")

    def guards(self) -> dict:
        return {
            "search_space": self.guard,
            "subset_cap": self.args.cap,
            "alexandroff": ALEXANDROFF_GUARD,
            "max_morphisms": MAX_MORPHISMS,
        }


class _Failure(Exception):
    """A mathematical check failed; ``report`` explains."""

    def __init__(self, report: dict):
        super().__init__("check failed")
        self.report = report


def _check(ctx: _Ctx) -> tuple[int, dict]:
    data = json.loads(Path(ctx.args.cat).read_text(encoding="utf-8"))
    cat = category_from_json(data)
    report = validate_category(cat)
    out = {
        "category": report.to_json(),
        "objects": len(cat.objects),
        "morphisms": len(cat.morphisms),
    }
    if report.structural:
        return USAGE, out
    code = OK if report.ok else FAILED
    if report.ok and (ctx.args.functor or ctx.args.F):
        ctx.ws.add_category("cat", cat)
        ctx._cat = cat
        spec = ctx.args.functor or ctx.args.F
        try:
            F = ctx.functor(spec, "F")
            out["functor"] = validate_functor(F).to_json()
        except _Failure as exc:
            out.update(exc.report)
            code = FAILED
    return code, out


def _nat_enum(ctx: _Ctx):
    A = ctx.args.A
    G = ctx.target()
    if ctx.args.source == "hom":
        if A is None:
            raise UsageError("nat-enum with source 'hom' needs --A")
        F = hom_functor(ctx.cat(), ctx.obj("A"), G.variance)
    else:
        F = ctx.functor(ctx.args.source, "source")
    taus = enumerate_nat_trans(F, G, guard=ctx.guard, workers=ctx.args.jobs)
    return OK, {"count": len(taus), "transformations": [t.components for t in taus]}


def _yoneda(ctx: _Ctx):
    A = ctx.obj("A")
    F = ctx.target()
    cert = verify_yoneda_bijection(ctx.cat(), A, F, guard=ctx.guard, workers=ctx.args.jobs)
    return (OK if cert.bijection else FAILED), cert.to_json()


def _image(ctx: _Ctx):
    A = ctx.obj("A")
    F = ctx.target()
    assignment = image_assignment(ctx.cat(), A, F)
    report = assignment.naturality_violations()
    out = assignment.to_json()
    out["naturality"] = report.to_json()
    return (OK if report.ok else FAILED), out


def _im_check(ctx: _Ctx):
    cat, A = ctx.cat(), ctx.obj("A")
    F = ctx.target()
    h = hom_functor(cat, A, F.variance)
    taus = enumerate_nat_trans(h, F, guard=ctx.guard, workers=ctx.args.jobs)
    per = {}
    all_equal = True
    for x in cat.objects:
        for f in h(x):
            im = image_of_morphism(f, F, A)
            oracle = nat_image_oracle(cat, A, F, f, transformations=taus)
            per[f] = {"image": list(im), "oracle": list(oracle), "equal": im == oracle}
            all_equal &= im == oracle
    naturality = image_assignment(cat, A, F).naturality_violations()
    ok = all_equal and naturality.ok
    return (OK if ok else FAILED), {
        "morphisms": per,
        "oracle_equal": all_equal,
        "naturality": naturality.to_json(),
        "nat_count": len(taus),
    }


def _coarse(ctx: _Ctx):
    A = ctx.obj("A")
    X = ctx.obj("X", A)
    F = ctx.target()
    blocks = coarse_classes(ctx.cat(), X, A, F)
    return OK, {"X": X, "A": A, "blocks": blocks}


def _depends(ctx: _Ctx):
    cat = ctx.cat()
    G = ctx.target()
    if ctx.args.f:
        if ctx.args.f not in cat.morphisms:
            raise UsageError(f"unknown morphism {ctx.args.f!r}")
        fs = [ctx.args.f]
    else:
        A = ctx.obj("A")
        X = ctx.obj("X", A)
        fs = list(cat.hom(X, A))
    results = {}
    agree = True
    for f in fs:
        q = DependenceQuery(cat.dom(f), f, G)
        closed = depends_set(q)
        oracle = {b: depends_oracle(q, b) for b in G(q.X)}
        match = all(v == (b in closed) for b, v in oracle.items())
        agree &= match
        results[f] = {"depends_set": list(closed), "oracle": oracle, "agree": match}
    return (OK if agree else FAILED), {"queries": results, "agree": agree}


def _preorder_of(ctx: _Ctx):
    A = ctx.obj("A")
    X = ctx.obj("X", A)
    return X, A, build_L_preorder(ctx.cat(), X, A)


def _preorder(ctx: _Ctx):
    X, A, P = _preorder_of(ctx)
    if ctx.args.out == "dot":
        return OK, hasse_dot(P, f"L[{X},{A}]")
    out = P.to_json()
    out.update({"X": X, "A": A, "antisymmetric": P.is_antisymmetric()})
    return OK, out


def _quotient(ctx: _Ctx):
    X, A, P = _preorder_of(ctx)
    Q, proj = quotient_to_poset(P)
    if ctx.args.out == "dot":
        return OK, hasse_dot(Q, f"L[{X},{A}]/~")
    return OK, {"poset": Q.to_json(), "projection": proj, "X": X, "A": A}


def _alexandroff(ctx: _Ctx):
    _, _, P = _preorder_of(ctx)
    T = alexandroff_opens(P)
    ok = T.is_topology()
    opens = sorted(sorted(u) for u in T.opens)
    return (OK if ok else FAILED), {"carrier": list(P.carrier), "opens": opens, "is_topology": ok}


def _stratify(ctx: _Ctx):
    A = ctx.obj("A")
    X = ctx.obj("X", A)
    F = ctx.target()
    try:
        smap = stratification_map(ctx.cat(), X, A, F, cap=ctx.args.cap)
    except OrderError as exc:
        if "monotone" in str(exc):
            raise _Failure({"error": str(exc)}) from exc
        raise
    if ctx.args.out == "dot":
        return OK, stratification_dot(smap)
    out = smap.to_json()
    out.update({"X": X, "A": A, "monotone": True})
    return OK, out


def _export_dot(ctx: _Ctx):
    if ctx.args.functor or ctx.args.F:
        ctx.args.out = "dot"
        return _stratify(ctx)
    X, A, P = _preorder_of(ctx)
    return OK, hasse_dot(P, f"L[{X},{A}]")


_HANDLERS = {
    "check": _check,
    "nat-enum": _nat_enum,
    "yoneda": _yoneda,
    "image": _image,
    "im-check": _im_check,
    "coarse": _coarse,
    "depends": _depends,
    "preorder": _preorder,
    "quotient": _quotient,
    "alexandroff": _alexandroff,
    "stratify": _stratify,
    "export-dot": _export_dot,
}


def run_command(verb: str, args: list[str], workspace: Workspace | None = None) -> tuple[int, str]:
    """Run one verb; return ``(exit_code, report_text)``."""
    parser = _parser()
    try:
        ns = parser.parse_args([verb, *args])
    except SystemExit as exc:
        return USAGE, canonical_dumps({"verb": verb, "error": "usage", "code": exc.code})
    ctx = _Ctx(ns, workspace or Workspace())
    try:
        code, body = _HANDLERS[ns.verb](ctx)
    except _Failure as exc:
        code, body = FAILED, exc.report
    except (
        UsageError,
        SchemaError,
        CategoryError,
        FunctorError,
        NatError,
        OrderError,
        OSError,
        json.JSONDecodeError,
    ) as exc:
        code, body = USAGE, {"error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, CategoryError):
            body["witness"] = list(exc.witness)
    if isinstance(body, str):
        return code, body
    body = {"verb": ns.verb, "guards": ctx.guards(), "exit_code": code, **body}
    return code, canonical_dumps(body)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if not argv or argv[0] in ("-h", "--help"):
        _parser().print_help()
        return OK if argv else USAGE
    code, text = run_command(argv[0], argv[1:])
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
