import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from symx.errors import (
    ImageNotInIdeal, NoWitness, NotOrderPreserving, Unsatisfiable, UnsupportedGroupShape,
    VariantMismatch,
)
from symx.group import (
    FINITE_IDEAL, CUT_IDEAL, IDENTITY, Condition, Constraints, FilterDesc, Fix, FullGroup,
    Generated, Ideal, Meet, PlainPerm, PlMap, ProdPerm, apply_condition, apply_point, compose,
    conjugate_fix, filter_contains, find_automorphism, group_elements, in_fix, invert,
    is_tenacious, orbits, transposition,
)
from symx.order import FiniteSet, InitialSegment, Lex, Nat, Plain, Prod, Rat

N = [Nat(i) for i in range(6)]


def perm(mapping: dict) -> PlainPerm:
    return PlainPerm(tuple((Nat(a), Nat(b)) for a, b in mapping.items()))


@st.composite
def plain_perms(draw, n=5):
    image = draw(st.permutations(range(n)))
    return perm(dict(enumerate(image)))


@st.composite
def pl_maps(draw):
    """Random increasing PL maps that are the identity outside their hull."""
    k = draw(st.integers(0, 3))
    xs = sorted(set(draw(st.lists(st.fractions(-6, 6, max_denominator=4), min_size=k + 2, max_size=k + 2))))
    assume(len(xs) >= 2)
    inner = xs[1:-1]
    ys = sorted(draw(st.lists(st.fractions(xs[0], xs[-1], max_denominator=4),
                              min_size=len(inner), max_size=len(inner), unique=True)))
    assume(all(xs[0] < y < xs[-1] for y in ys))
    return PlMap(tuple([(xs[0], xs[0])] + list(zip(inner, ys)) + [(xs[-1], xs[-1])]))


def interpolate(bps, q):
    """Piecewise linear evaluation written out by hand."""
    for (x0, y0), (x1, y1) in zip(bps, bps[1:]):
        if x0 <= q <= x1:
            return y0 + (y1 - y0) * (q - x0) / (x1 - x0)
    return q


conditions = st.dictionaries(
    st.tuples(st.integers(0, 4).map(Nat), st.integers(0, 2)), st.integers(0, 1), max_size=4
).map(Condition)


# ---------------------------------------------------------------- points

def test_apply_point_examples():
    assert apply_point(perm({0: 1, 1: 0}), Nat(2)) == Nat(2)
    pl = PlMap(((0, 0), (1, 2), (3, 3)))
    assert apply_point(pl, Rat(1)) == Rat(2)
    assert apply_point(pl, Rat(2)) == Rat(Fraction(5, 2))
    assert apply_point(pl, Rat(-7)) == Rat(-7)


def test_compose_and_invert_examples():
    pi = perm({0: 1, 1: 0})
    assert compose(pi, invert(pi)).is_identity
    assert compose(perm({0: 1, 1: 0}), perm({1: 2, 2: 1})).apply(Nat(2)) == Nat(0)
    assert invert(PlMap(((0, 0), (1, 2), (3, 3)))).apply(Rat(2)) == Rat(1)


@given(pl_maps(), st.fractions(-8, 8, max_denominator=6))
def test_pl_evaluation_matches_interpolation(pi, q):
    assert pi.apply(Rat(q)).q == interpolate(pi.breakpoints, q)


@given(pl_maps(), st.fractions(-8, 8, max_denominator=6), st.fractions(-8, 8, max_denominator=6))
def test_pl_maps_preserve_order(pi, a, b):
    if a < b:
        assert pi.apply(Rat(a)).q < pi.apply(Rat(b)).q


@given(pl_maps(), pl_maps(), st.fractions(-8, 8, max_denominator=6))
def test_pl_composition_is_pointwise(pi, sigma, q):
    x = Rat(q)
    assert compose(pi, sigma).apply(x) == pi.apply(sigma.apply(x))
    assert compose(invert(pi), pi).apply(x) == x


@given(plain_perms(), plain_perms(), st.integers(0, 5))
def test_perm_composition_is_pointwise(pi, sigma, i):
    assert compose(pi, sigma).apply(Nat(i)) == pi.apply(sigma.apply(Nat(i)))
    assert invert(pi).apply(pi.apply(Nat(i))) == Nat(i)


def test_non_monotone_pl_datum_is_rejected():
    with pytest.raises(NotOrderPreserving):
        PlMap(((0, 0), (1, 3), (2, 2), (3, 3)))
    with pytest.raises(NotOrderPreserving):
        PlMap(((0, 1), (2, 2)))


def test_prodperm_keeps_rows():
    pi = ProdPerm(((2, perm({0: 1, 1: 0})),))
    assert pi.apply(Prod(2, 0)) == Prod(2, 1)
    assert pi.apply(Prod(1, 0)) == Prod(1, 0)
    with pytest.raises(VariantMismatch):
        pi.apply(Nat(0))


def test_block_confined_pl_map():
    pi = PlMap(((0, 0), (1, 2), (3, 3)), block=1)
    assert pi.apply(Lex(1, 1)) == Lex(1, 2)
    assert pi.apply(Lex(0, 1)) == Lex(0, 1)


# ---------------------------------------------------------------- conditions

def test_apply_condition_examples():
    p = Condition({(Nat(0), 0): 1})
    assert apply_condition(IDENTITY, p) == p
    assert apply_condition(perm({0: 1, 1: 0}), p) == Condition({(Nat(1), 0): 1})


@given(plain_perms(), plain_perms(), conditions)
def test_action_on_conditions_is_a_group_action(pi, sigma, p):
    assert apply_condition(compose(pi, sigma), p) == apply_condition(pi, apply_condition(sigma, p))
    assert apply_condition(IDENTITY, p) == p
    assert apply_condition(pi, p).supp() == frozenset(pi.apply(x) for x in p.supp())


def test_condition_rejects_non_functions():
    with pytest.raises(ValueError):
        Condition([((Nat(0), 0), 1), ((Nat(0), 0), 0)])


@given(conditions, conditions)
def test_compatibility_is_union_being_a_function(p, q):
    merged = {}
    ok = True
    for cell, bit in list(p.items()) + list(q.items()):
        ok &= merged.setdefault(cell, bit) == bit
    assert p.compatible(q) == ok
    if ok:
        r = p.union(q)
        assert r.extends(p) and r.extends(q)


# ---------------------------------------------------------------- fix, normality, filters

def test_conjugate_fix_examples():
    E = FiniteSet({Nat(0), Nat(2)})
    assert conjugate_fix(IDENTITY, E) == E
    assert conjugate_fix(perm({0: 1, 1: 0}), E) == FiniteSet({Nat(1), Nat(2)})
    pi = PlMap(((0, 0), (1, 2), (3, 3)))
    assert conjugate_fix(pi, InitialSegment(Rat(0))) == InitialSegment(Rat(0))


def test_conjugate_fix_reports_leaving_the_ideal():
    ideal = Ideal("listed", (FiniteSet({Nat(0)}),))
    with pytest.raises(ImageNotInIdeal):
        conjugate_fix(perm({0: 1, 1: 0}), FiniteSet({Nat(0)}), ideal)


def test_normality_extensionally_on_s4():
    """sigma fixes pi[E] pointwise iff pi^-1 sigma pi fixes E, for all of S_4."""
    pts = N[:4]
    G = group_elements(FullGroup(Plain(4)), pts)
    assert len(G) == 24
    for pi in G:
        for r in range(5):
            for E in itertools.combinations(pts, r):
                E = FiniteSet(frozenset(E))
                image = conjugate_fix(pi, E, FINITE_IDEAL)
                for sigma in G:
                    by_points = all(sigma.apply(pi.apply(x)) == pi.apply(x) for x in E.points)
                    assert in_fix(sigma, image) == by_points
                    assert by_points == in_fix(compose(invert(pi), compose(sigma, pi)), E)


@given(pl_maps(), pl_maps(), st.fractions(-6, 6, max_denominator=4))
def test_normality_for_cuts(pi, sigma, b):
    E = InitialSegment(Rat(b))
    image = conjugate_fix(pi, E, CUT_IDEAL)
    assert in_fix(sigma, image) == in_fix(compose(invert(pi), compose(sigma, pi)), E)


@given(pl_maps(), st.fractions(-6, 6, max_denominator=4))
def test_in_fix_for_cuts_matches_sampling(sigma, b):
    """A PL map fixes (-inf, b] iff it fixes every sampled point there."""
    samples = [b - Fraction(j, 8) for j in range(0, 120)]
    by_sampling = all(sigma.apply(Rat(q)) == Rat(q) for q in samples)
    assert in_fix(sigma, InitialSegment(Rat(b))) == by_sampling


def test_filter_contains_examples():
    assert filter_contains(FilterDesc(FullGroup(Plain(4))), Fix(FiniteSet({Nat(0), Nat(1)})))
    assert filter_contains(FilterDesc(FullGroup(Plain(4)), CUT_IDEAL), Fix(InitialSegment(Rat(5))))
    listed = Ideal("listed", (FiniteSet(), FiniteSet({Nat(0)})))
    assert not filter_contains(FilterDesc(FullGroup(Plain(4)), listed), Fix(FiniteSet({Nat(1)})))
    assert filter_contains(FilterDesc(FullGroup(Plain(4)), listed),
                           Meet((Fix(FiniteSet({Nat(0)})), Fix(FiniteSet()))))
    with pytest.raises(UnsupportedGroupShape):
        filter_contains(FilterDesc(FullGroup(Plain(4))), Generated((perm({0: 1, 1: 0}),)))


def test_tenacity_examples():
    F = FilterDesc(FullGroup(Plain(6)))
    p = Condition({(Nat(0), 0): 1, (Nat(2), 1): 0})
    assert is_tenacious(p, F) == FiniteSet({Nat(0), Nat(2)})
    assert is_tenacious(Condition(), F) == FiniteSet()
    listed = FilterDesc(FullGroup(Plain(6)), Ideal("listed", (FiniteSet(), FiniteSet({Nat(0)}))))
    with pytest.raises(NoWitness):
        is_tenacious(Condition({(Nat(5), 0): 1}), listed)


@given(conditions)
def test_tenacious_witness_fixes_the_condition(p):
    F = FilterDesc(FullGroup(Plain(5)))
    E = is_tenacious(p, F)
    for g in group_elements(Fix(E), N[:5]):
        assert apply_condition(g, p) == p


# ---------------------------------------------------------------- orbits

def brute_orbits(gens, points):
    """Connected components of the graph x -- g(x)."""
    comp = {x: {x} for x in points}
    for g in gens:
        for x in points:
            y = g.apply(x)
            if comp[x] is not comp[y]:
                merged = comp[x] | comp[y]
                for z in merged:
                    comp[z] = merged
    return {frozenset(c) for c in comp.values()}


def test_orbit_examples():
    got = orbits(Generated((perm({0: 1, 1: 0}),)), N[:3])
    assert [o.members for o in got] == [(Nat(0), Nat(1)), (Nat(2),)]
    assert [o.rep for o in got] == [Nat(0), Nat(2)]
    assert len(orbits(Generated(()), N[:3])) == 3
    assert len(orbits(FullGroup(Plain(4)), N[:4])) == 1


@given(st.lists(plain_perms(), max_size=3))
def test_orbits_match_components(gens):
    got = orbits(Generated(tuple(gens)), N[:5])
    assert {frozenset(o.members) for o in got} == brute_orbits(gens, N[:5])
    for o in got:
        assert o.rep == min(o.members, key=lambda x: x.n)


# ---------------------------------------------------------------- find_automorphism

def test_find_automorphism_examples():
    c = Constraints(InitialSegment(Rat(0), True), (Rat(1), Rat(2)), (Rat(0), Rat(3)))
    pi = find_automorphism(c)
    assert pi.apply(Rat(1)) == Rat(2)
    assert all(pi.apply(Rat(Fraction(-j, 3))) == Rat(Fraction(-j, 3)) for j in range(20))
    assert all(pi.apply(Rat(3 + Fraction(j, 3))) == Rat(3 + Fraction(j, 3)) for j in range(20))
    assert find_automorphism(Constraints()).is_identity
    with pytest.raises(Unsatisfiable):
        find_automorphism(Constraints(InitialSegment(Rat(0), True), (Rat(1), Rat(-1))))


def test_find_automorphism_in_plain_and_product_domains():
    pi = find_automorphism(Constraints(FiniteSet({Nat(0)}), (Nat(1), Nat(3))))
    assert pi.apply(Nat(1)) == Nat(3) and pi.apply(Nat(0)) == Nat(0)
    pi = find_automorphism(Constraints(None, (Prod(1, 0), None), None,
                                       Condition({(Prod(1, 0), 0): 1})))
    assert pi.apply(Prod(1, 0)) != Prod(1, 0)
    assert apply_condition(pi, Condition({(Prod(1, 0), 0): 1})).compatible(
        Condition({(Prod(1, 0), 0): 1}))


@given(st.fractions(-5, 5, max_denominator=3), st.fractions(-5, 5, max_denominator=3),
       st.fractions(-5, 5, max_denominator=3))
def test_pl_moves_respect_a_fixed_cut(bound, a, b):
    """Moving a to b while fixing (-inf, bound] is possible iff both lie above it."""
    c = Constraints(InitialSegment(Rat(bound), True), (Rat(a), Rat(b)))
    possible = a == b or (a > bound and b > bound)
    try:
        pi = find_automorphism(c)
    except Unsatisfiable:
        assert not possible
        return
    assert possible
    assert pi.apply(Rat(a)) == Rat(b)
    assert in_fix(pi, InitialSegment(Rat(bound)))
