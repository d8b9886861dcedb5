import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kapcheck import decide
from kapcheck.decide import (
    Budget,
    GroupSolver,
    equal_in_group,
    knuth_bendix,
    order_of,
    permutation_group_order,
    todd_coxeter,
    validate_coset_table,
)
from kapcheck.oracle import replay_derivation
from kapcheck.present import Presentation
from kapcheck.word import FreeWord

KNOWN_ORDERS = [
    ("S3", 2, "xxx,yy,xyxy", 6),
    ("A4", 2, "xxx,yyy,xyxy", 12),
    ("A5", 2, "xx,yyy,xyxyxyxyxy", 60),
    ("Q8", 2, "xxxx,xxYY,yxYx", 8),
    ("D5", 2, "xxxxx,yy,yxyx", 10),
    ("trivial", 3, "x,y,z", 1),
]

BACKENDS = ["python"] + (["cython"] if decide._tc_kernel is not None else [])


@pytest.mark.parametrize("name,rank,rels,order", KNOWN_ORDERS, ids=[k[0] for k in KNOWN_ORDERS])
@pytest.mark.parametrize("backend", BACKENDS)
def test_coset_enumeration_known_orders(name, rank, rels, order, backend):
    p = Presentation.parse(rank, rels)
    table = todd_coxeter(p, backend=backend)
    assert table.complete
    assert table.index == order
    assert validate_coset_table(table, p)


@given(st.integers(1, 40))
@settings(max_examples=30, deadline=None)
def test_cyclic_group_index(n):
    p = Presentation(1, (FreeWord.parse("x" * n, 1),))
    assert todd_coxeter(p).index == n


def test_subgroup_index():
    p = Presentation.parse(2, "xx,yyy,xyxyxyxyxy")
    table = todd_coxeter(p, subgroup=[FreeWord.parse("y", 2)])
    assert table.index == 20


def test_coset_budget_reports_exhaustion():
    p = Presentation.parse(2, "xx,yyy,xyxyxyxyxy")
    table = todd_coxeter(p, budget=Budget(max_cosets=10))
    assert not table.complete
    assert table.index is None


def test_backends_agree_on_permutation_group_order():
    p = Presentation.parse(2, "xxx,yyy,xyxy")
    orders = {permutation_group_order([todd_coxeter(p, backend=b).permutation(c) for c in (0, 2)]) for b in BACKENDS}
    assert orders == {12}


def test_knuth_bendix_free_abelian_is_confluent():
    kb = knuth_bendix(Presentation.parse(2, "xyXY"))
    assert kb.confluent
    a, b = FreeWord.parse("xyxY", 2), FreeWord.parse("xx", 2)
    assert kb.normal_form(a) == kb.normal_form(b)


def test_knuth_bendix_proofs_replay():
    p = Presentation.parse(2, "xxx,yy,xyxy")
    kb = knuth_bendix(p)
    proof = kb.prove_equal(FreeWord.parse("yx", 2).codes, FreeWord.parse("xxy", 2).codes)
    assert proof is not None
    replay_derivation(p, proof)


def test_word_problem_queries():
    p = Presentation.parse(2, "xxx,yy,xyxy")
    assert equal_in_group(p, FreeWord.parse("xy", 2), FreeWord.parse("yX", 2)) == "yes"
    assert equal_in_group(p, FreeWord.parse("x", 2), FreeWord.parse("y", 2)) == "no"
    assert order_of(p, FreeWord.parse("xy", 2)) == 2
    assert order_of(Presentation.parse(2, "xyXY"), FreeWord.parse("x", 2)) is None


def test_solver_skips_enumeration_for_infinite_abelianization():
    assert GroupSolver(Presentation.parse(2, "xyXY")).coset_table() is None


@given(st.integers(2, 12), st.integers(1, 24))
@settings(max_examples=40, deadline=None)
def test_power_orders_in_cyclic_groups(n, k):
    from math import gcd

    p = Presentation(1, (FreeWord.parse("x" * n, 1),))
    assert order_of(p, FreeWord.parse("x" * k, 1)) == n // gcd(n, k)
