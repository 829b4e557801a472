from hypothesis import given, strategies as st

from symx.hf import EMPTY, HF, hf_set, nat, pair

from _reference import hf_to_fs, kpair, von_neumann


@st.composite
def hf_sets(draw, depth=3):
    if depth == 0 or draw(st.booleans()):
        return nat(draw(st.integers(0, 3)))
    return HF(draw(st.lists(hf_sets(depth=depth - 1), max_size=3)))


def test_naturals_are_von_neumann():
    for n in range(6):
        assert hf_to_fs(nat(n)) == von_neumann(n)
        assert nat(n).as_nat() == n
    assert nat(0) == EMPTY
    assert hf_set(nat(0), nat(1)) == nat(2)
    assert hf_set(nat(1)).as_nat() is None


@given(hf_sets(), hf_sets())
def test_equality_is_extensional(a, b):
    assert (a == b) == (hf_to_fs(a) == hf_to_fs(b))
    if a == b:
        assert hash(a) == hash(b) and a.key() == b.key()


@given(hf_sets(), hf_sets())
def test_pairs_decode(a, b):
    p = pair(a, b)
    assert hf_to_fs(p) == kpair(hf_to_fs(a), hf_to_fs(b))
    assert p.unpair() == (a, b)


def test_non_pairs_do_not_decode():
    assert nat(3).unpair() is None
    assert HF([nat(1), nat(2), nat(3)]).unpair() is None


def test_printing():
    assert str(nat(3)) == "3"
    assert str(hf_set(nat(1))) == "(set 1)"
