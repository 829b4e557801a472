import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from symx.errors import LengthMismatch, NotBased, NotInRange, OddLength, VariantMismatch, ZeroBound
from symx.group import PlMap, transposition
from symx.models import (
    ASCode, BasedFn, SeqCode, a_n_descriptor, code_universe, deinterleave, eval_based,
    in_product_range, interleave, intersect_code_law, is_based, normalize_steps, prec_name_check,
    product_based, product_code, unproduct_based, unproduct_code, zero_code,
)
from symx.order import Nat, Rat

GRID = [Rat(Fraction(i, 2)) for i in range(-4, 5)]


@st.composite
def based_fns(draw, n):
    """A weakly decreasing assignment of values to the intervals cut by some grid points."""
    pts = sorted(draw(st.sets(st.sampled_from(GRID), max_size=4)), key=lambda b: b.q)
    vals = sorted(draw(st.lists(st.integers(0, n - 1), min_size=len(pts) + 1, max_size=len(pts) + 1)),
                  reverse=True)
    return BasedFn(vals[0], normalize_steps(vals[0], zip(pts, vals[1:])), n)


def ref_eval(f, q):
    """Value on the interval containing q, read off the step list by hand."""
    below = [v for b, v in f.steps if b.q <= q]
    return below[-1] if below else f.top


def probe_points(*fns):
    qs = sorted({b.q for f in fns for b, _ in f.steps})
    mids = [(a + b) / 2 for a, b in zip(qs, qs[1:])]
    return [Fraction(-10)] + qs + mids + [Fraction(10)]


# ---------------------------------------------------------------- Model I

def test_based_examples():
    f = BasedFn(2, ((Rat(0), 1), (Rat(5), 0)), 3)
    assert is_based(f)
    assert [f.eval(Rat(q)) for q in (-1, 0, 3, 5, 9)] == [2, 1, 1, 0, 0]
    assert eval_based(f, Rat(Fraction(1, 2))) == 1
    assert not is_based(BasedFn(1, ((Rat(0), 2),), 3))
    assert not is_based(BasedFn(3, (), 3))
    assert not is_based(BasedFn(2, ((Rat(5), 1), (Rat(0), 0)), 3))
    assert not is_based(BasedFn(2, ((Rat(0), 1), (Nat(5), 0)), 3))


def test_worked_product_example():
    f2 = BasedFn(1, ((Rat(1), 0),), 2)
    f3 = BasedFn(2, ((Rat(0), 1), (Rat(5), 0)), 3)
    f6 = product_based(f2, f3, 2, 3)
    assert f6 == BasedFn(5, ((Rat(0), 4), (Rat(1), 1), (Rat(5), 0)), 6)
    assert unproduct_based(f6, 2, 3) == (f2, f3)


def test_product_is_not_onto():
    # 2 = 1*2 + 0 then 1 = 0*2 + 1: the remainder would have to rise
    f = BasedFn(2, ((Rat(0), 1),), 4)
    assert is_based(f)
    assert not in_product_range(f, 2, 2)
    with pytest.raises(NotInRange):
        unproduct_based(f, 2, 2)
    with pytest.raises(NotInRange):
        unproduct_based(BasedFn(7, (), 8), 2, 2)


def test_product_errors():
    f = BasedFn(0, (), 1)
    with pytest.raises(ZeroBound):
        product_based(f, f, 0, 1)
    with pytest.raises(NotBased):
        product_based(BasedFn(3, (), 3), f, 3, 1)
    with pytest.raises(VariantMismatch):
        product_based(BasedFn(1, ((Rat(0), 0),), 2), BasedFn(1, ((Nat(0), 0),), 2), 2, 2)


@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_product_laws(n, m, data):
    fn, fm = data.draw(based_fns(n)), data.draw(based_fns(m))
    prod = product_based(fn, fm, n, m)
    assert is_based(prod) and prod.bound == n * m
    assert unproduct_based(prod, n, m) == (fn, fm)
    assert in_product_range(prod, n, m)
    for q in probe_points(fn, fm):
        assert ref_eval(prod, q) == m * ref_eval(fn, q) + ref_eval(fm, q)


@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_unproduct_on_the_image_round_trips(n, m, data):
    f = data.draw(based_fns(n * m))
    vals = [f.top] + [v for _, v in f.steps]
    remainders_fall = all(b % m <= a % m for a, b in zip(vals, vals[1:]))
    assert in_product_range(f, n, m) == remainders_fall
    if remainders_fall:
        assert product_based(*unproduct_based(f, n, m), n, m) == f


def test_image_is_exactly_the_products_on_a_small_grid():
    grid = GRID[:3]
    for n, m in [(2, 2), (2, 3), (3, 2)]:
        image = {product_based(a, b, n, m)
                 for a in a_n_descriptor(n).enumerate(grid) for b in a_n_descriptor(m).enumerate(grid)}
        for f in a_n_descriptor(n * m).enumerate(grid):
            assert in_product_range(f, n, m) == (f in image)


def brute_count(n, g):
    return sum(1 for vals in itertools.product(range(n), repeat=g + 1)
               if all(a >= b for a, b in zip(vals, vals[1:])))


@pytest.mark.parametrize("n,g", [(1, 0), (1, 3), (2, 2), (3, 3), (4, 2), (0, 2)])
def test_family_counts(n, g):
    fam = a_n_descriptor(n)
    members = fam.enumerate(GRID[:g])
    assert len(members) == len(set(members)) == fam.count_on_grid(g) == brute_count(n, g)
    assert all(fam.contains(f) for f in members)


def test_families_are_nested():
    grid = GRID[:3]
    for n in range(1, 4):
        assert set(a_n_descriptor(n).enumerate(grid)) <= {
            BasedFn(f.top, f.steps, n) for f in a_n_descriptor(n + 1).enumerate(grid)}


def test_family_invariance():
    pi = PlMap(((-2, -2), (0, 1), (2, 2)))
    assert a_n_descriptor(3).invariant_under(pi, GRID)
    with pytest.raises(VariantMismatch):
        a_n_descriptor(3).invariant_under(transposition(Nat(0), Nat(1)), GRID)
    with pytest.raises(ValueError):
        a_n_descriptor(-1)


def test_prec_name_check():
    assert prec_name_check(PlMap(((0, 0), (1, 3), (4, 4))))
    with pytest.raises(VariantMismatch):
        prec_name_check(transposition(Nat(0), Nat(1)))


# ---------------------------------------------------------------- Model II

def test_interleave_examples():
    h = interleave(SeqCode((1, 2, 3)), SeqCode((4, 5, 6)))
    assert h.prefix == (1, 4, 2, 5, 3, 6)
    assert deinterleave(h) == (SeqCode((1, 2, 3)), SeqCode((4, 5, 6)))
    with pytest.raises(LengthMismatch):
        interleave(SeqCode((1,)), SeqCode(()))
    with pytest.raises(OddLength):
        deinterleave(SeqCode((1, 2, 3)))


@given(st.integers(0, 32).flatmap(lambda n: st.tuples(
    st.lists(st.integers(0, 9), min_size=n, max_size=n), st.lists(st.integers(0, 9), min_size=n, max_size=n))))
def test_interleave_round_trip(fg):
    f, g = SeqCode(tuple(fg[0])), SeqCode(tuple(fg[1]))
    h = interleave(f, g)
    assert len(h) == 2 * len(f)
    assert all(h.prefix[2 * i] == f.prefix[i] and h.prefix[2 * i + 1] == g.prefix[i] for i in range(len(f)))
    assert deinterleave(h) == (f, g)


@st.composite
def codes(draw, rows=range(6), length=None):
    S = draw(st.frozensets(st.sampled_from(list(rows))))
    L = length if length is not None else draw(st.integers(1, 4))
    return ASCode(S, {r: tuple(draw(st.lists(st.integers(0, 1), min_size=L, max_size=L))) for r in S})


@given(st.integers(1, 4).flatmap(lambda L: st.tuples(codes(length=L), codes(length=L))))
def test_product_code_round_trip(ab):
    a, b = ab
    c = product_code(a, b)
    assert c.S == a.S | b.S
    assert unproduct_code(c, a.S, b.S) == (a, b)
    assert c.support() == a.support() | b.support()


def test_code_validation_and_zero():
    with pytest.raises(ValueError):
        ASCode(frozenset({0, 1}), {0: (1,)})
    z = zero_code({0, 3}, 2)
    assert z.support() == frozenset() and z.in_family(())
    c = ASCode(frozenset({0, 3}), {0: (0, 1), 3: (0, 0)})
    assert c.support() == {0} and c.in_family({0}) and not c.in_family({3})


def test_intersection_law_exhaustive():
    universe = code_universe(range(8))
    for s in range(256):
        S = {r for r in range(8) if s >> r & 1}
        for T in ({0, 1, 2}, {2, 5}, set(), set(range(8))):
            rep = intersect_code_law(S, T, universe)
            assert rep.holds and rep.witness_support == frozenset(S & T)


def test_intersection_law_rejects_a_bad_membership():
    class Loose(ASCode):
        def in_family(self, U):
            return bool(set(U))
    bad = Loose(frozenset({1}), {1: (1,)})
    rep = intersect_code_law({0}, {1}, [bad])
    assert not rep.holds and rep.counterexample is bad
