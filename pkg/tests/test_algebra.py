import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kapcheck.algebra import (
    FAMILIES,
    AlgebraElement,
    AlgebraError,
    FiniteGroupModel,
    build_unit_graph,
    build_zero_divisor_graph,
    delta_feasibility,
    multiply,
    statistics,
    support_profile,
)
from kapcheck.word import FreeWord

C10 = FiniteGroupModel.cyclic(10)
ALPHA = AlgebraElement.from_support(C10, 2, [0, 1, 4, 9])
BETA = AlgebraElement.from_support(C10, 2, [0, 2, 4, 6, 8])


def test_worked_example_product_is_zero():
    assert multiply(ALPHA, BETA).is_zero()


def test_zero_divisor_graph_is_complete_on_five_vertices():
    z = build_zero_divisor_graph(ALPHA, BETA)
    assert len(z.vertices) == 5
    assert set(z.degrees().values()) == {4}
    assert z.multigraph.max_multiplicity() == 1
    assert len(z.multigraph.multiplicity) == 10


def test_reversed_graph_has_two_components_with_multiplicity_five():
    z = build_zero_divisor_graph(BETA, ALPHA)
    assert sorted(z.components()) == [(0, 4), (1, 9)]
    assert z.multigraph.max_multiplicity() == 5
    assert set(z.degrees().values()) == {5}


@pytest.mark.parametrize("left,right", [(ALPHA, BETA), (BETA, ALPHA)])
def test_degree_formula_and_level_identities(left, right):
    st_ = statistics(left, right)
    st_.check_identities()
    g = build_zero_divisor_graph(left, right)
    for v in g.vertices:
        assert st_.predicted_degree(v) == g.degree(v)


def test_nonzero_product_is_rejected():
    with pytest.raises(AlgebraError):
        build_zero_divisor_graph(ALPHA, ALPHA)


def test_mismatched_characteristic_is_rejected():
    with pytest.raises(AlgebraError):
        multiply(ALPHA, AlgebraElement.from_support(C10, 3, [0]))


def test_parse_and_text_round_trip():
    e = AlgebraElement.parse("3; cyclic:6; g0+2*g5")
    assert AlgebraElement.parse(e.text()) == e


def test_group_table_validation():
    with pytest.raises(AlgebraError):
        FiniteGroupModel.from_table([[0, 1], [0, 1]])


def test_unit_graph_for_a_trivial_unit():
    one = AlgebraElement.from_support(C10, 2, [3])
    inv = AlgebraElement.from_support(C10, 2, [7])
    g = build_unit_graph(one, inv)
    assert g.vertices == (7,)


elements = st.lists(st.tuples(st.integers(0, 11), st.integers(1, 4)), min_size=1, max_size=6)


@given(elements, elements, elements)
@settings(max_examples=100, deadline=None)
def test_multiplication_is_associative(a, b, c):
    model = FiniteGroupModel.cyclic(12)
    x, y, z = (AlgebraElement(model, 5, tuple(t)) for t in (a, b, c))
    assert (x * y) * z == x * (y * z)


def test_delta_profiles_for_six():
    assert sorted(delta_feasibility(6, "S10", "zero-divisor")) == [(11, (9, 2, 0)), (11, (10, 0, 1)), (12, (12, 0, 0))]


def test_no_unit_profile_over_f2():
    assert all(not delta_feasibility(c, "S10", "unit", "F2") for c in range(1, 30))


def test_support_profiles_of_free_words():
    w = lambda s: FreeWord.parse(s, 3)
    assert support_profile([w("1"), w("x"), w("y"), w("z")]).size == 12
    s10 = support_profile([w("1"), w("x"), w("X"), w("y")])
    assert s10.size == 10
    assert FAMILIES[0] in s10.families
