from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finyoneda.corpus import corpus_categories
from finyoneda.fincat import (
    MAX_MORPHISMS,
    CategoryError,
    FiniteCategory,
    chain_category,
    discrete_category,
    free_category_on_dag,
    monoid_category,
    opposite,
    poset_category,
    validate_category,
)


def count_paths(edges, u, v):
    # independent DFS path counter
    if u == v:
        return 1
    return sum(count_paths(edges, w, v) for _, s, w in edges if s == u)


def test_discrete_is_valid(point):
    assert validate_category(point).ok
    assert point.hom("X", "X") == ("id_X",)


def test_c2_is_valid(C2):
    assert validate_category(C2).ok
    assert len(C2.morphisms) == 3
    assert C2.compose("a", "id_0") == "a"
    assert C2.compose("id_1", "a") == "a"


def test_rewired_composite_is_a_dom_cod_violation(C2):
    broken = FiniteCategory(C2.objects, C2.morphisms, C2.identities,
                            {**C2.composition, ("a", "id_0"): "id_0"})
    report = validate_category(broken)
    assert not report.ok
    assert any(v.kind == "dom-cod" and v.witness == ("a", "id_0") for v in report.laws)


def test_structural_errors_are_separate(C2):
    dangling = FiniteCategory(C2.objects, C2.morphisms, C2.identities,
                              {**C2.composition, ("a", "a"): "a"})
    report = validate_category(dangling)
    assert [v.kind for v in report.structural] == ["non-composable-entry"]
    assert report.laws == []

    unknown = FiniteCategory(C2.objects, C2.morphisms, C2.identities,
                             {**C2.composition, ("b", "a"): "a"})
    assert "dangling-morphism" in validate_category(unknown).kinds()


def test_missing_composite_reported():
    cat = FiniteCategory.from_tables("xyz", [("f", "x", "y"), ("g", "y", "z")])
    report = validate_category(cat)
    assert any(v.kind == "totality" and v.witness == ("g", "f") for v in report.laws)


def test_associativity_witness(fixtures_dir):
    import json

    from finyoneda.jsonio import category_from_json

    cat = category_from_json(json.loads((fixtures_dir / "broken.json").read_text()))
    report = validate_category(cat)
    assert "associativity" in report.kinds()


def test_opposite_examples(point, C2):
    assert opposite(point) == point
    op = opposite(C2)
    assert op.morphisms["a"] == ("1", "0")
    assert validate_category(op).ok


def test_opposite_of_commutative_monoid_keeps_table(Z2, Z3):
    for cat in (Z2, Z3):
        assert opposite(cat).composition == cat.composition


@pytest.mark.parametrize("name", sorted(corpus_categories()))
def test_corpus_valid_and_opposite_involution(name):
    cat = corpus_categories()[name]
    assert validate_category(cat).ok
    assert validate_category(opposite(cat)).ok
    assert opposite(opposite(cat)) == cat


def test_poset_category_examples(C2):
    cat = poset_category(["0", "1"], [("0", "1")])
    assert len(cat.morphisms) == 3
    assert cat.hom("0", "1") == ("0->1",)
    one = poset_category(["x"], [])
    assert list(one.morphisms) == ["id_x"]
    with pytest.raises(CategoryError) as exc:
        poset_category(["a", "b"], [("a", "b"), ("b", "a")])
    assert set(exc.value.witness) == {"a", "b"}


@given(st.integers(1, 6), st.sets(st.tuples(st.integers(0, 5), st.integers(0, 5))))
@settings(max_examples=60, deadline=None)
def test_poset_category_thin(n, raw):
    elems = [str(i) for i in range(n)]
    pairs = [(str(a), str(b)) for a, b in raw if a < b < n]
    cat = poset_category(elems, pairs)
    assert validate_category(cat).ok
    assert all(len(cat.hom(x, y)) <= 1 for x, y in product(elems, repeat=2))


def test_monoid_examples(Z2, M2):
    assert Z2.objects == ("•",) and len(Z2.morphisms) == 2
    assert M2.compose("z", "z") == "z"
    trivial = monoid_category(["e"], {("e", "e"): "e"}, "e")
    assert list(trivial.morphisms) == ["e"]


def test_monoid_rejects_bad_tables():
    els = ["e", "r", "r2"]
    power = {"e": 0, "r": 1, "r2": 2}
    table = {(x, y): els[(power[x] + power[y]) % 3] for x, y in product(els, repeat=2)}
    table[("r", "r2")] = "r"
    with pytest.raises(CategoryError) as exc:
        monoid_category(els, table, "e")
    assert len(exc.value.witness) == 3
    with pytest.raises(CategoryError):
        monoid_category(["e", "s"], {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "e",
                                     ("s", "s"): "e"}, "e")


def test_free_category_examples(square):
    single = free_category_on_dag(["u", "v"], [("a", "u", "v")])
    assert len(single.morphisms) == 3
    pair = free_category_on_dag(["u", "v"], [("a", "u", "v"), ("b", "u", "v")])
    assert len(pair.hom("u", "v")) == 2
    assert square.hom("u", "w") == ("q.p", "s.r")
    assert square.compose("q", "p") == "q.p"


def test_free_category_rejects_cycle():
    with pytest.raises(CategoryError) as exc:
        free_category_on_dag("uv", [("a", "u", "v"), ("b", "v", "u")])
    assert exc.value.witness[0] == exc.value.witness[-1]


@st.composite
def dags(draw):
    n = draw(st.integers(1, 5))
    vs = [f"v{i}" for i in range(n)]
    raw = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=7))
    edges = [(f"e{k}", vs[a], vs[b]) for k, (a, b) in enumerate(raw) if a < b]
    return vs, edges


@given(dags())
@settings(max_examples=60, deadline=None)
def test_free_category_hom_counts_match_dfs(dag):
    vs, edges = dag
    cat = free_category_on_dag(vs, edges)
    assert validate_category(cat).ok
    for u, v in product(vs, repeat=2):
        assert len(cat.hom(u, v)) == count_paths(edges, u, v)


def test_size_guard():
    with pytest.raises(CategoryError):
        discrete_category([f"x{i}" for i in range(MAX_MORPHISMS + 1)])


def test_chain_category_shape():
    cat = chain_category(4)
    assert len(cat.morphisms) == 10
