import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finyoneda.corpus import corpus
from finyoneda.fincat import opposite
from finyoneda.functors import (
    COVARIANT,
    FunctorError,
    MaterializationError,
    SetValuedFunctor,
    constant_functor,
    direct_image,
    hom_functor,
    parse_subset_id,
    sub_functor,
    subset_id,
    validate_functor,
)

CORPUS = corpus()


def test_constant_functor_valid(Z2, C2):
    for cat in (Z2, C2):
        assert validate_functor(constant_functor(cat, ["*"])).ok


def test_hom_functor_on_c2(C2):
    h = hom_functor(C2, "1")
    assert h("0") == ("a",)
    assert h("1") == ("id_1",)
    assert h.table("a") == {"id_1": "a"}
    assert validate_functor(h).ok


def test_hom_functor_on_point(point):
    assert hom_functor(point, "X")("X") == ("id_X",)


def test_hom_functor_on_z2(Z2):
    h = hom_functor(Z2, "•")
    assert h("•") == ("e", "s")
    assert h.table("s") == {"e": "s", "s": "e"}


def test_covariant_hom_on_c2(C2):
    h = hom_functor(C2, "0", COVARIANT)
    assert h("1") == ("a",)
    assert h.table("a") == {"id_0": "a"}
    assert validate_functor(h).ok


def test_unknown_object(C2):
    with pytest.raises(FunctorError):
        hom_functor(C2, "nope")


def test_non_involution_on_z2_is_reported(Z2):
    F = SetValuedFunctor(Z2, "contravariant", {"•": ["0", "1", "2"]},
                         {"s": {"0": "1", "1": "2", "2": "0"}})
    report = validate_functor(F)
    assert any(v.kind == "composition" and v.witness[:2] == ("s", "s") for v in report.laws)


def test_missing_and_partial_tables(C2):
    F = SetValuedFunctor(C2, "contravariant", {"0": ["x"], "1": ["y"]}, {})
    assert "missing-table" in validate_functor(F).kinds()
    G = SetValuedFunctor(C2, "contravariant", {"0": ["x"], "1": ["y"]}, {"a": {"y": "q"}})
    assert "table-codomain" in validate_functor(G).kinds()


def test_direct_image_examples(C2, Z2):
    h = hom_functor(C2, "1")
    assert direct_image(h, "a", []) == ()
    assert direct_image(h, "a", ["id_1"]) == ("a",)
    hz = hom_functor(Z2, "•")
    assert direct_image(hz, "s", ["e", "s"]) == ("e", "s")
    with pytest.raises(FunctorError):
        direct_image(h, "a", ["a"])


def test_sub_functor_examples(C2, Z2):
    empty_at_0 = SetValuedFunctor(C2, COVARIANT, {"0": [], "1": ["y"]}, {"a": {}})
    assert validate_functor(empty_at_0).ok
    assert sub_functor(empty_at_0)("0") == (subset_id([]),)

    S = sub_functor(hom_functor(C2, "1"))
    assert len(S("0")) == 2 and len(S("1")) == 2
    assert validate_functor(S).ok

    Sz = sub_functor(hom_functor(Z2, "•"))
    assert len(Sz("•")) == 4
    t = Sz.table("s")
    assert t[subset_id(["e"])] == subset_id(["s"])
    assert t[subset_id(["s"])] == subset_id(["e"])
    assert t[subset_id([])] == subset_id([])
    assert t[subset_id(["e", "s"])] == subset_id(["e", "s"])


def test_sub_functor_cap(Z3):
    F = constant_functor(Z3, [str(i) for i in range(4)])
    with pytest.raises(MaterializationError) as exc:
        sub_functor(F, cap=3)
    assert exc.value.obj == "•"
    assert "materialization too large" in str(exc.value)


def test_subset_ids_round_trip():
    for s in ([], ["a"], ["b", "a,c"], ['"q"']):
        assert parse_subset_id(subset_id(s)) == tuple(sorted(s))


@pytest.mark.parametrize("t", CORPUS, ids=lambda t: t.name)
def test_corpus_functor_laws(t):
    assert validate_functor(t.F).ok
    assert validate_functor(sub_functor(t.F)).ok


@pytest.mark.parametrize("t", CORPUS, ids=lambda t: t.name)
def test_direct_image_respects_composition(t):
    F, cat = t.F, t.cat
    for (g, f), gf in cat.composition.items():
        S = F(F.source_of(gf))
        if F.contravariant:
            via = direct_image(F, f, direct_image(F, g, S))
        else:
            via = direct_image(F, g, direct_image(F, f, S))
        assert direct_image(F, gf, S) == via


@given(st.data())
@settings(max_examples=80, deadline=None)
def test_direct_image_monotone(data):
    t = data.draw(st.sampled_from(CORPUS))
    m = data.draw(st.sampled_from(sorted(t.cat.morphisms)))
    dom = t.F(t.F.source_of(m))
    T = data.draw(st.sets(st.sampled_from(dom))) if dom else set()
    S = data.draw(st.sets(st.sampled_from(sorted(T)))) if T else set()
    assert set(direct_image(t.F, m, S)) <= set(direct_image(t.F, m, T))
    assert len(direct_image(t.F, m, S)) <= len(S)


@pytest.mark.parametrize("t", [t for t in CORPUS if "/contra/" in t.name], ids=lambda t: t.name)
def test_variance_duality(t):
    F = t.F
    G = SetValuedFunctor(opposite(t.cat), COVARIANT, F.on_objects, F.on_morphisms)
    assert validate_functor(G).ok
    assert G == F.dual()
