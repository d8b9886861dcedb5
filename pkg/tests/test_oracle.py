import dataclasses
import json

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from kapcheck.decide import Budget, CosetTable
from kapcheck.oracle import (
    BSQuotient,
    Collision,
    Finite,
    Inconclusive,
    ProtectedSet,
    Torsion,
    classify,
    classify_all,
    presentation_key,
    verdict_from_json,
    verdict_to_json,
    verify_certificate,
)
from kapcheck.present import Presentation
from kapcheck.word import FreeWord

S12_PS = ProtectedSet.s12()
S10_PS = ProtectedSet.s10()

SMALL_BUDGET = Budget(max_rewrite_rules=2000, max_steps=1500, max_cosets=20000)


def _p(text, rank):
    return Presentation.parse(rank, text)


@pytest.mark.parametrize(
    "relators,rank,kind",
    [
        ("xxx", 3, "Torsion"),
        ("xy,xyy", 2, "Finite"),
        ("xxyxy", 2, "Abelian"),
        ("yxYXX", 2, "BSQuotient"),
        ("xxy", 2, "Collision"),
    ],
)
def test_first_verdict_kind(relators, rank, kind):
    p = _p(relators, rank)
    ps = S12_PS if rank == 3 else S10_PS
    v = classify(p, ps)
    assert v.kind == kind
    assert verify_certificate(p, v, ps) == (True, "ok")


def test_commutator_is_inconclusive():
    v = classify(_p("xyzXYZ", 3), S12_PS)
    assert isinstance(v, Inconclusive)
    assert not verify_certificate(_p("xyzXYZ", 3), v, S12_PS)[0]


def test_bs_quotient_label():
    v = classify(_p("yxYXX", 2), S10_PS)
    assert isinstance(v, BSQuotient)
    assert min(abs(v.m), abs(v.n)) == 1


def test_rank_mismatch_is_rejected():
    with pytest.raises(ValueError):
        classify(_p("xxx", 3), S10_PS)


def test_json_round_trip_for_every_kind():
    p = _p("xy,xyy", 2)
    for v in classify_all(p, S10_PS):
        text = json.dumps(verdict_to_json(v))
        back = verdict_from_json(json.loads(text), 2)
        assert back.kind == v.kind
        assert verify_certificate(p, back, S10_PS)[0]


def test_tampered_torsion_order_is_rejected():
    p = _p("xxx", 3)
    v = classify(p, S12_PS)
    assert isinstance(v, Torsion)
    assert not verify_certificate(p, dataclasses.replace(v, order=2), S12_PS)[0]
    assert not verify_certificate(p, dataclasses.replace(v, word=FreeWord.parse("xy", 3)), S12_PS)[0]


def test_certificate_does_not_transfer_to_another_presentation():
    v = classify(_p("xxx", 3), S12_PS)
    assert not verify_certificate(_p("yyy", 3), v, S12_PS)[0]


def test_collision_must_cite_protected_words():
    p = _p("xxy", 2)
    v = classify(p, S10_PS)
    assert isinstance(v, Collision)
    forged = dataclasses.replace(v, first=FreeWord.parse("xyxy", 2))
    assert not verify_certificate(p, forged, S10_PS)[0]


def test_finite_table_with_wrong_order_is_rejected():
    p = _p("xy,xyy", 2)
    v = classify(p, S10_PS)
    assert isinstance(v, Finite)
    assert not verify_certificate(p, Finite(v.order + 1, v.table), S10_PS)[0]
    bogus = CosetTable(2, [[0, 0, 0, 0], [1, 1, 1, 1]], True)
    assert not verify_certificate(p, Finite(2, bogus), S10_PS)[0]


def test_presentation_key_ignores_rotation_and_order():
    a = _p("xyXX,yyx", 2)
    b = _p("xyy,XXxy", 2)
    assert presentation_key(a) == presentation_key(b)


s10_words = st.lists(st.sampled_from("xXyY"), min_size=2, max_size=8).map("".join)


@given(st.lists(s10_words, min_size=1, max_size=2))
@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
def test_every_emitted_verdict_verifies(words):
    p = _p(",".join(words), 2)
    for v in classify_all(p, S10_PS, SMALL_BUDGET):
        if not isinstance(v, Inconclusive):
            assert verify_certificate(p, v, S10_PS)[0]
