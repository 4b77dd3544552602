"""Exit criteria for the package, one test per criterion.

Run ``pytest tests/test_acceptance.py`` to see the PASS/FAIL summary.
"""
import json
import random
import time
from itertools import product

from finyoneda.cli import run_command
from finyoneda.corpus import corpus, corpus_categories, corpus_prosets, random_proset
from finyoneda.functors import COVARIANT, direct_image, hom_functor, subset_id
from finyoneda.image import (
    DependenceQuery,
    depends_oracle,
    depends_set,
    image_of_morphism,
    nat_image_oracle,
)
from finyoneda.jsonio import canonical_dumps, category_to_json, functor_to_json
from finyoneda.nat import enumerate_nat_trans, verify_yoneda_bijection, yoneda_backward, yoneda_forward
from finyoneda.strata import (
    alexandroff_opens,
    build_L_preorder,
    is_continuous,
    is_monotone,
    quotient_to_poset,
)

CORPUS = corpus()
CONTRA = [t for t in CORPUS if "/contra/" in t.name]


def test_1_yoneda_bijection(acceptance):
    names = {t.name.split("/")[0] for t in CORPUS}
    required = {"chain1", "chain2", "chain3", "chain4", "chain5",
                "discrete1", "discrete2", "discrete3", "z2", "m2", "z3", "square"}
    per_site: dict = {}
    for t in CORPUS:
        site = tuple(t.name.split("/")[:3])
        per_site.setdefault(site, []).append(t.name.rsplit("/", 1)[1])
    shape_ok = (
        len(CORPUS) >= 30
        and required <= names
        and all("hom" in v and len(v) >= 3 for v in per_site.values())
    )
    start = time.perf_counter()
    failures = []
    for t in CORPUS:
        h = hom_functor(t.cat, t.A, t.F.variance)
        taus = enumerate_nat_trans(h, t.F)
        cert = verify_yoneda_bijection(t.cat, t.A, t.F, transformations=taus)
        round_trips = all(yoneda_forward(yoneda_backward(a, t.A, t.F), t.A) == a for a in t.F(t.A))
        round_trips &= all(yoneda_backward(yoneda_forward(tau, t.A), t.A, t.F) == tau for tau in taus)
        if not (cert.bijection and cert.nat_count == len(t.F(t.A)) and round_trips):
            failures.append(t.name)
    elapsed = time.perf_counter() - start
    ok = shape_ok and not failures and elapsed < 10
    acceptance(1, "|Nat(h^A,F)| = |F(A)| with both round trips", ok,
               f"({len(CORPUS)} triples, {elapsed:.2f}s, failures={failures})")
    assert ok


def test_2_observation_oracle(acceptance):
    start = time.perf_counter()
    checked, mismatches = 0, []
    for t in CORPUS:
        h = hom_functor(t.cat, t.A, t.F.variance)
        taus = enumerate_nat_trans(h, t.F)
        for x in t.cat.objects:
            for f in h(x):
                checked += 1
                if image_of_morphism(f, t.F, t.A) != nat_image_oracle(
                    t.cat, t.A, t.F, f, transformations=taus
                ):
                    mismatches.append((t.name, f))
    elapsed = time.perf_counter() - start
    ok = not mismatches and elapsed < 20
    acceptance(2, "Im(f) equals the values of f under all natural transformations", ok,
               f"({checked} morphisms, {elapsed:.2f}s, mismatches={mismatches})")
    assert ok


def test_3_im_naturality(acceptance):
    checked, bad = 0, []
    for t in CORPUS:
        cat, F = t.cat, t.F
        for g, (x, y) in cat.morphisms.items():
            if F.variance == COVARIANT:
                # g∘f for f: A -> x
                pairs = [(f, cat.compose(g, f)) for f in cat.hom(t.A, x)]
            else:
                pairs = [(f, cat.compose(f, g)) for f in cat.hom(y, t.A)]
            for f, composite in pairs:
                checked += 1
                if direct_image(F, g, image_of_morphism(f, F)) != image_of_morphism(composite, F):
                    bad.append((t.name, g, f))
    ok = not bad
    acceptance(3, "direct image of Im(f) along g equals Im of the composite", ok,
               f"({checked} squares, violations={bad})")
    assert ok


def test_4_dependence_theorem(acceptance):
    checked, bad = 0, []
    for t in CONTRA:
        cat, G = t.cat, t.F
        for X in cat.objects:
            for fa in cat.hom(X, t.A):
                q = DependenceQuery(X, fa, G)
                closed = set(depends_set(q))
                for beta in G(X):
                    checked += 1
                    if depends_oracle(q, beta) != (beta in closed):
                        bad.append((t.name, fa, beta))
    ok = not bad and checked > 0
    acceptance(4, "dependence oracle agrees with the image closed form", ok,
               f"({checked} (f_alpha, beta) pairs, disagreements={bad})")
    assert ok


def test_5_monotonicity_and_witnesses(acceptance):
    checked, bad = 0, []
    for t in CONTRA:
        for X in t.cat.objects:
            P = build_L_preorder(t.cat, X, t.A)
            for f, g in P.leq:
                checked += 1
                if not set(image_of_morphism(f, t.F)) <= set(image_of_morphism(g, t.F)):
                    bad.append((t.name, f, g))
    cats = corpus_categories()

    m2 = build_L_preorder(cats["m2"], "•", "•")
    qm, pm = quotient_to_poset(m2)
    m2_ok = (
        m2.le("z", "e") and not m2.le("e", "z")
        and len(qm.carrier) == 2 and qm.le(pm["z"], pm["e"]) and not qm.le(pm["e"], pm["z"])
    )
    z2 = build_L_preorder(cats["z2"], "•", "•")
    qz, _ = quotient_to_poset(z2)
    z2_ok = not z2.is_antisymmetric() and len(qz.carrier) == 1
    zz = build_L_preorder(cats["z2zero"], "•", "•")
    qzz, pzz = quotient_to_poset(zz)
    zz_ok = (not zz.is_antisymmetric() and len(qzz.carrier) == 2
             and qzz.le(pzz["z"], pzz["e"]) and pzz["e"] == pzz["s"] == subset_id("es"))
    ok = not bad and m2_ok and z2_ok and zz_ok
    acceptance(5, "f <=_L g implies Im(f) within Im(g); M2/Z2 witnesses", ok,
               f"({checked} pairs, M2 2-chain={m2_ok}, Z2 point={z2_ok}, Z2+0={zz_ok})")
    assert ok


def test_6_monotone_iff_continuous(acceptance):
    prosets = corpus_prosets(4)
    tops = [alexandroff_opens(P) for P in prosets]
    start = time.perf_counter()
    maps, mismatches = 0, 0
    for P, TP in zip(prosets, tops):
        for Q, TQ in zip(prosets, tops):
            for values in product(Q.carrier, repeat=len(P.carrier)):
                h = dict(zip(P.carrier, values))
                maps += 1
                if is_monotone(h, P, Q) != is_continuous(h, TP, TQ):
                    mismatches += 1
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and maps >= 1000 and elapsed < 10
    acceptance(6, "monotone iff continuous for Alexandroff opens", ok,
               f"({len(prosets)} prosets, {maps} maps, {elapsed:.2f}s, mismatches={mismatches})")
    assert ok


def _pairwise_quotient(P):
    classes = {a: frozenset(b for b in P.carrier if P.le(a, b) and P.le(b, a)) for a in P.carrier}
    order = {(classes[a], classes[b]) for a, b in P.leq}
    return classes, order


def test_7_quotient_against_pairwise(acceptance):
    rng = random.Random(20261016)
    bad = []
    for i in range(100):
        P = random_proset(rng, 8)
        Q, proj = quotient_to_poset(P)
        classes, order = _pairwise_quotient(P)
        same_classes = all(proj[a] == subset_id(classes[a]) for a in P.carrier)
        same_order = {(proj[a], proj[b]) for a, b in P.leq} == {
            (subset_id(x), subset_id(y)) for x, y in order
        } == set(Q.leq)
        if not (same_classes and same_order and Q.is_antisymmetric()):
            bad.append(i)
    ok = not bad
    acceptance(7, "SCC quotient equals pairwise mutual-reachability quotient", ok,
               f"(100 random prosets, failures={bad})")
    assert ok


def _dump_corpus(root):
    jobs = []
    for t in CORPUS:
        slug = t.name.replace("/", "_")
        cat_path = root / f"{slug}.cat.json"
        fun_path = root / f"{slug}.functor.json"
        cat_path.write_text(canonical_dumps(category_to_json(t.cat)), encoding="utf-8")
        fun_path.write_text(canonical_dumps(functor_to_json(t.F)), encoding="utf-8")
        jobs.append((t, str(cat_path), str(fun_path)))
    return jobs


def test_8_cli_determinism(acceptance, tmp_path):
    jobs = _dump_corpus(tmp_path)
    runs, differing, failing = 0, [], []
    for t, cat, fun in jobs:
        base = ["--cat", cat, "--A", t.A, "--functor", fun]
        invocations = [("yoneda", base), ("im-check", base), ("nat-enum", base),
                       ("image", base), ("check", ["--cat", cat, "--functor", fun])]
        if t.F.contravariant:
            for X in t.cat.objects:
                xb = base + ["--X", X]
                invocations += [("coarse", xb), ("depends", xb), ("stratify", xb),
                                ("preorder", xb), ("quotient", xb), ("alexandroff", xb),
                                ("export-dot", xb)]
        for verb, args in invocations:
            first = run_command(verb, args)
            again = run_command(verb, args)
            outputs = [first, again]
            if verb in ("yoneda", "nat-enum") and t.name.endswith("/hom+hom"):
                outputs.append(run_command(verb, args + ["--jobs", "2"]))
            runs += len(outputs)
            if any(o != first for o in outputs):
                differing.append((t.name, verb))
            if first[0] != 0:
                failing.append((t.name, verb, json.loads(first[1]).get("message")))
    ok = not differing and not failing
    acceptance(8, "CLI reports byte-identical across runs and worker counts", ok,
               f"({runs} invocations, differing={differing}, nonzero={failing[:3]})")
    assert ok
