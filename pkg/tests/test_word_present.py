import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kapcheck.present import (
    Presentation,
    PresentationError,
    abelianize,
    eliminate_generator,
    exponent_matrix,
    minor_gcds,
    smith_normal_form,
    tietze_substitute,
)
from kapcheck.word import (
    FreeWord,
    cyclic_normal_form,
    cyclic_reduce,
    free_reduce,
    invert,
    parse_tex,
    primitive_root,
    rotations,
)

codes3 = st.lists(st.integers(0, 5), max_size=24)
codes2 = st.lists(st.integers(0, 3), max_size=24)


def test_parse_and_print_round_trip():
    w = FreeWord.parse("xYzZyX", 3)
    assert str(w) == "1"
    assert str(FreeWord.parse("xyXz", 3)) == "xyXz"
    assert len(FreeWord.parse("xxY", 2)) == 3


def test_parse_rejects_generator_outside_rank():
    with pytest.raises(ValueError):
        FreeWord.parse("z", 2)


def test_parse_tex_powers():
    assert parse_tex("x^{-1}y^2", 2) == FreeWord.parse("Xyy", 2)


def test_primitive_root_of_power():
    root, k = primitive_root(FreeWord.parse("xYxYxY", 2))
    assert (str(root), k) == ("xY", 3)


@given(codes3)
def test_free_reduce_is_idempotent(codes):
    r = free_reduce(codes)
    assert free_reduce(r) == r
    assert all(r[i] != r[i + 1] ^ 1 for i in range(len(r) - 1))


@given(codes3, codes3)
def test_inverse_of_product(a, b):
    u, v = FreeWord(a, 3), FreeWord(b, 3)
    assert invert(u * v) == invert(v) * invert(u)
    assert invert(invert(u)) == u
    assert not (u * invert(u))


@given(codes3, st.integers(0, 30))
def test_cyclic_normal_form_invariant_under_rotation_and_inversion(codes, shift):
    w = FreeWord(codes, 3)
    core, conj = cyclic_reduce(w)
    assert conj * core * invert(conj) == w
    rots = rotations(core.codes)
    rotated = FreeWord(rots[shift % len(rots)], 3)
    nf = cyclic_normal_form(w)
    assert cyclic_normal_form(rotated) == nf
    assert cyclic_normal_form(invert(w)) == nf


@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=4))
@settings(max_examples=200)
def test_smith_form_transform_identities(rows):
    sf = smith_normal_form(rows)
    assert sf.check()
    nonzero = [d for d in sf.diagonal if d]
    gcds = minor_gcds(rows)
    prod = 1
    for i, d in enumerate(nonzero):
        prod *= d
        assert gcds[i] == prod


def test_abelianize_known_groups():
    z6 = abelianize(Presentation.parse(2, "xxx,yy,xyXY"))
    assert z6.order == 6
    free = abelianize(Presentation.parse(2, "xyXY"))
    assert free.free_rank == 2
    assert not free.is_finite


@given(codes2)
def test_exponent_matrix_counts_letters(codes):
    w = FreeWord(codes, 2)
    p = Presentation(2, (w,))
    if w:
        assert exponent_matrix(p)[0] == [w.exponent_sum(1), w.exponent_sum(2)]


def test_tietze_substitution_keeps_relators_cyclically_reduced():
    p = Presentation.parse(2, "xyXY")
    q = tietze_substitute(p, 2, FreeWord.parse("Xyx", 2))
    for r in q.relators:
        assert cyclic_reduce(r)[0] == r
    with pytest.raises(PresentationError):
        tietze_substitute(p, 2, FreeWord.parse("yy", 2))


def test_eliminate_generator_removes_a_generator():
    p = Presentation.parse(2, "xY,xxx")
    out = eliminate_generator(p)
    assert out is not None
    q, _ = out
    assert abelianize(q).order == 3
