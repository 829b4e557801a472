"""Symmetry analysis: sym groups, hereditary symmetry, the measurability
battery, mixing, absolute representatives and the choice-name construction.

Group-theoretic checks enumerate the group acting on a finite list of
points, so every search here is bounded by an element cap.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import (
    EnumerationBudgetExceeded, HSCertificationFailed, NotInIdeal, WellDefinednessFailure,
)
from .forcing import (
    Elem, Eq, InValue, IsFunctionOn, AppliesInto, Not, TruncatedPoset, ValueIs,
    forces, forces_oracle,
)
from .group import (
    DEFAULT_CAP, ONE, Automorphism, Condition, FilterDesc, Fix, GroupDesc, Ideal,
    closure, compose, conjugate, group_elements, in_fix, invert,
)
from .names import (
    Bullet, Check, Mix, Name, OPair, Raw, apply_name, mix, raw_depth, structural_points, support,
)
from .order import Cut, FiniteSet, OrderPoint, cut_subset


@dataclass(frozen=True)
class SymmetricSystem:
    """Poset (a truncation, or None for purely symbolic work), group and filter.

    ``points`` is the finite coordinate list the group is enumerated on.
    """

    group: GroupDesc
    filter: FilterDesc
    points: tuple
    poset: TruncatedPoset | None = None
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))

    @classmethod
    def over(cls, T: TruncatedPoset, group: GroupDesc, ideal: Ideal, cap: int = DEFAULT_CAP):
        return cls(group, FilterDesc(group, ideal), T.points, T, cap)

    def elements(self, H: GroupDesc | None = None) -> list[Automorphism]:
        H = self.group if H is None else H
        base = None if H is self.group else self.group
        return group_elements(H, self.points, self.cap, base=base)

    def fix_elements(self, E: Cut) -> list[Automorphism]:
        return [g for g in self.elements() if in_fix(g, E)]


@dataclass(frozen=True)
class FamilyName:
    """A bullet family of names indexed by distinct labels."""

    elems: tuple

    def __post_init__(self):
        elems = tuple(self.elems.items()) if isinstance(self.elems, Mapping) else tuple(self.elems)
        labels = [i for i, _ in elems]
        if len(set(labels)) != len(labels):
            raise ValueError("family indices must be distinct")
        object.__setattr__(self, "elems", elems)

    @property
    def indices(self) -> list:
        return [i for i, _ in self.elems]

    def __getitem__(self, i) -> Name:
        for j, n in self.elems:
            if j == i:
                return n
        raise KeyError(i)

    def names(self) -> list[Name]:
        return [n for _, n in self.elems]

    def as_name(self) -> Bullet:
        return Bullet(self.names())


def is_in_sym(pi: Automorphism, n: Name) -> bool:
    return apply_name(pi, n) == n


def sym_elements(elems: Iterable[Automorphism], n: Name) -> list[Automorphism]:
    return [g for g in elems if is_in_sym(g, n)]


# ---------------------------------------------------------------- hereditary symmetry

@dataclass
class HSWitness:
    name: str
    support: Cut
    children: list = field(default_factory=list)

    def __bool__(self):
        return True

    def to_json(self) -> dict:
        return {"name": self.name, "support": str(self.support),
                "children": [c.to_json() for c in self.children]}


@dataclass
class HSFailure:
    path: list
    reason: str

    def __bool__(self):
        return False

    def to_json(self) -> dict:
        return {"failure": self.reason, "path": self.path}


def minimal_support(n: Name, S: SymmetricSystem, elems: Sequence[Automorphism] | None = None) -> Cut | None:
    """Smallest ideal member E with fix(E) inside sym(n), checked on the enumerated group."""
    ideal = S.filter.ideal
    try:
        structural = support(n, ideal)
    except NotInIdeal:
        structural = None
    elems = S.elements() if elems is None else elems
    stable = sym_elements(elems, n)
    stable_set = set(stable)

    def works(E):
        return all(g in stable_set for g in elems if in_fix(g, E))

    members = ideal.members(list(S.points))
    if structural is not None:
        inside = [E for E in members if cut_subset(E, structural)]
        for E in inside:
            if works(E):
                return E
    for E in members:
        if works(E):
            return E
    return None


def is_hereditarily_symmetric(n: Name, S: SymmetricSystem):
    """A witness tree of supports, or an HSFailure naming the first bad subname."""
    elems = S.elements()
    memo: dict = {}

    def walk(m: Name, path: list):
        if m in memo:
            E = memo[m]
        else:
            E = memo[m] = minimal_support(m, S, elems)
        if E is None:
            return HSFailure(path + [str(m)], f"no ideal member supports {m}")
        kids = []
        for child in dict.fromkeys(m.children()):
            got = walk(child, path + [str(m)])
            if not got:
                return got
            kids.append(got)
        return HSWitness(str(m), E, kids)

    return walk(n, [])


# ---------------------------------------------------------------- the measurability battery

def is_injective_name(X: FamilyName, T: TruncatedPoset) -> bool:
    names = X.names()
    return all(forces(ONE, Not(Eq(a, b)), T)
               for i, a in enumerate(names) for b in names[i + 1:])


def _generates_all(parts: Iterable[Automorphism], size: int, cap: int) -> bool:
    return len(closure(parts, cap)) == size


def measures(H: GroupDesc, X: FamilyName, S: SymmetricSystem) -> bool:
    """Each member is fixed by all of H, or H together with its stabiliser generates G."""
    G = S.elements()
    Hs = S.elements(H)
    return _measures(Hs, X, G, S.cap)


def _measures(Hs: Sequence[Automorphism], X: FamilyName, G: Sequence[Automorphism], cap: int) -> bool:
    for x in X.names():
        stab = sym_elements(G, x)
        stab_set = set(stab)
        if all(h in stab_set for h in Hs):
            continue
        if not _generates_all(list(Hs) + stab, len(G), cap):
            return False
    return True


def is_densely_measurable(X: FamilyName, S: SymmetricSystem) -> bool:
    """Every generator fix(E) has some fix(E') with E within E' that measures X."""
    G = S.elements()
    members = S.filter.ideal.members(list(S.points))
    measured: dict = {}
    for E in members:
        ok = False
        for E2 in members:
            if not cut_subset(E, E2):
                continue
            if E2 not in measured:
                measured[E2] = _measures([g for g in G if in_fix(g, E2)], X, G, S.cap)
            if measured[E2]:
                ok = True
                break
        if not ok:
            return False
    return True


# ---------------------------------------------------------------- mixing

@dataclass
class MixReport:
    name: Name
    support: Cut
    branch_supports: list
    forced: list

    @property
    def ok(self) -> bool:
        return all(self.forced)

    def __bool__(self):
        return self.ok


def check_mixable(S: SymmetricSystem, branches: Sequence[tuple[Condition, Name]]) -> MixReport:
    """Mix HS names along an antichain; the mixed name is supported by the union
    of the branch supports (its symmetry group is their intersection)."""
    m = mix(branches)  # raises NotAnAntichain
    ideal = S.filter.ideal
    pts: set = set()
    branch_supports = []
    for p, x in branches:
        w = is_hereditarily_symmetric(x, S)
        if not w:
            raise HSCertificationFailed(f"branch name {x} is not hereditarily symmetric")
        branch_supports.append(w.support)
        pts |= _cut_points(w.support) | p.supp()
    E = ideal.cover(pts)
    if E is None:
        raise HSCertificationFailed("the branch supports lie jointly outside the ideal")
    for g in S.elements():
        if in_fix(g, E) and not is_in_sym(g, m):
            raise HSCertificationFailed(f"{g} fixes the joint support but moves the mixed name")
    forced = []
    if S.poset is not None:
        forced = [forces(p, Eq(m, x), S.poset) for p, x in branches]
    return MixReport(m, E, branch_supports, forced)


def _cut_points(E: Cut) -> set:
    if isinstance(E, FiniteSet):
        return set(E.points)
    return {E.bound}


# ---------------------------------------------------------------- absolute representatives

@dataclass
class RepresentativeResult:
    witness: Cut | None
    reason: str = ""

    def __bool__(self):
        return self.witness is not None


def has_absolute_representative(S: SymmetricSystem) -> RepresentativeResult:
    """Search the generators fix(E) for an absolute representative.

    The quantifiers over the filter range over the generated family
    {fix(E) : E in the ideal} on the enumerated group.
    """
    G = S.elements()
    members = S.filter.ideal.members(list(S.points))
    groups = {E: frozenset(g for g in G if in_fix(g, E)) for E in members}
    family = list(dict.fromkeys(groups.values()))
    conj_cache: dict = {}

    def conj(pi, H):
        key = (pi, H)
        got = conj_cache.get(key)
        if got is None:
            got = conj_cache[key] = frozenset(conjugate(pi, h) for h in H)
        return got

    def representative(H) -> bool:
        for H0 in family:
            for H1 in family:
                meet = H & H0
                if not any(meet <= conj(pi, H1) for pi in H0):
                    return False
        return True

    for E in members:
        H = groups[E]
        if all(representative(conj(s, H)) for s in G):
            return RepresentativeResult(E)
    return RepresentativeResult(None, "no generator is an absolute representative")


# ---------------------------------------------------------------- semicanonical names

def candidate_values(T: TruncatedPoset, S: SymmetricSystem, rank_bound: int,
                     extra: Iterable[Name] = ()) -> list[Name]:
    """Hereditarily symmetric candidate members of rank below the bound."""
    from .forcing import name_pool
    pool = [n for layer in name_pool(T, max(0, rank_bound - 1)) for n in layer]
    pool += [Check(j) for j in range(rank_bound + 1)] + list(extra)
    pool = [n for n in dict.fromkeys(pool) if raw_depth(n) < rank_bound]
    return [n for n in pool if is_hereditarily_symmetric(n, S)]


def build_semicanonical(F: Name, x: Name, T: TruncatedPoset, rank_bound: int | None = None,
                        S: SymmetricSystem | None = None, candidates: Sequence[Name] | None = None,
                        budget: int = 10 ** 6) -> Raw:
    """{(p, a) : p forces a in F(x), a symmetric of rank below the bound}.

    Only the weakest forcing conditions are kept; stronger ones add nothing.
    """
    if rank_bound is None:
        rank_bound = raw_depth(F)
    if candidates is None:
        if S is None:
            raise ValueError("pass a symmetric system or an explicit candidate list")
        candidates = candidate_values(T, S, rank_bound)
    conds = list(T.conditions())
    if len(conds) * len(candidates) > budget:
        raise EnumerationBudgetExceeded("semicanonical search exceeds the budget")
    entries = []
    for a in candidates:
        target = T.formula_set(InValue(a, F, x))
        forcing = [p for p in conds if T.below(p) & ~target == 0]
        fset = set(forcing)
        for p in forcing:
            weaker = (Condition(kv for kv in p.items() if kv[0] != key) for key in p.keys())
            if not any(q in fset for q in weaker):
                entries.append((p, a))
    return Raw(entries)


# ---------------------------------------------------------------- the choice name

@dataclass
class ChoiceResult:
    name: Bullet
    representatives: list
    orbits: list
    chosen: dict
    repaired: list


def index_orbits(X: FamilyName, Hs: Sequence[Automorphism]) -> tuple[list[list], dict]:
    """Orbits of indices under the action on member names; also the moves i -> (pi, j)."""
    lookup = {n: i for i, n in X.elems}
    order = {i: k for k, i in enumerate(X.indices)}
    moves: dict = {}
    parent = {i: i for i in X.indices}

    def find(i):
        while parent[i] != i:
            i = parent[i]
        return i

    for i, n in X.elems:
        for pi in Hs:
            j = lookup.get(apply_name(pi, n))
            if j is None:
                raise WellDefinednessFailure(f"{pi} maps {n} outside the family")
            moves.setdefault(i, []).append((pi, j))
            a, b = find(i), find(j)
            if a != b:
                if order[a] < order[b]:
                    parent[b] = a
                else:
                    parent[a] = b
    groups: dict = {}
    for i in X.indices:
        groups.setdefault(find(i), []).append(i)
    orbs = sorted((sorted(g, key=order.get) for g in groups.values()), key=lambda g: order[g[0]])
    return orbs, moves


def build_choice_name(X: FamilyName, a_names: Mapping, H: GroupDesc, S: SymmetricSystem,
                      K: GroupDesc | None = None) -> ChoiceResult:
    """Pairs (pi x_j, pi a_j) over orbit representatives j and pi in H."""
    Hs = S.elements(H)
    Ks = S.elements(K) if K is not None else S.elements()
    orbs, _ = index_orbits(X, Hs)
    reps = [o[0] for o in orbs]
    chosen, repaired = {}, []
    for j in reps:
        xj, aj = X[j], a_names[j]
        stab = [pi for pi in Hs if is_in_sym(pi, xj)]
        if not all(is_in_sym(pi, aj) for pi in stab):
            fix_j = [s for s in Ks if is_in_sym(s, xj)]
            for s in fix_j:
                cand = apply_name(s, aj)
                if all(is_in_sym(pi, cand) for pi in stab):
                    aj = cand
                    repaired.append((j, str(s)))
                    break
            else:
                raise WellDefinednessFailure(
                    f"the stabiliser of {xj} moves {aj} and no conjugate repairs it")
        chosen[j] = aj
    pairs = {}
    for j in reps:
        for pi in Hs:
            x, a = apply_name(pi, X[j]), apply_name(pi, chosen[j])
            if pairs.setdefault(x, a) != a:
                raise WellDefinednessFailure(f"{x} receives two values")
    f = Bullet(OPair(x, a) for x, a in pairs.items())
    return ChoiceResult(f, reps, orbs, chosen, repaired)


def complement_antichain(p: Condition) -> list[Condition]:
    """A maximal antichain below the conditions incompatible with ``p``.

    The i-th member agrees with ``p`` on its first i-1 cells and flips the
    i-th, so together with ``p`` the list is a maximal antichain.
    """
    items = list(p.items())
    return [Condition(dict(items[:i]) | {cell: 1 - bit}) for i, (cell, bit) in enumerate(items)]


def mix_to_one(p: Condition, f: Name, fallback: Name) -> Mix:
    """Glue ``f`` below ``p`` to ``fallback`` elsewhere.

    If p forces f to be a function on the family and 1 forces the same of
    the fallback, 1 forces it of the result.
    """
    return Mix([(p, f)] + [(q, fallback) for q in complement_antichain(p)])


@dataclass
class ChoiceCheck:
    function: bool
    function_oracle: bool
    choices: dict

    @property
    def ok(self) -> bool:
        return self.function and self.function_oracle and all(all(v) for v in self.choices.values())


def verify_choice_name(f: Name, X: FamilyName, targets: Mapping, T: TruncatedPoset) -> ChoiceCheck:
    """1 forces f is a function on X with f(x_i) in A_i, by recursion and by the oracle."""
    phi = IsFunctionOn(f, tuple(X.names()))
    choices = {}
    for i in X.indices:
        psi = AppliesInto(f, X[i], targets[i])
        choices[i] = (forces(ONE, psi, T), forces_oracle(ONE, psi, T))
    return ChoiceCheck(forces(ONE, phi, T), forces_oracle(ONE, phi, T), choices)


def non_measurable_fixture():
    """Four coordinates, full group, a single listed support {0, 1}, and a name
    pairing the generics 0-2 and 1-3.  Its stabiliser with fix({0, 1}) generates
    a group of order 4, not the whole group of order 24."""
    from .group import FullGroup
    from .order import Nat, Plain
    pts = [Nat(i) for i in range(4)]
    G = FullGroup(Plain(4))
    ideal = Ideal("listed", (FiniteSet(frozenset(pts[:2])),))
    S = SymmetricSystem(G, FilterDesc(G, ideal), pts)
    name = Bullet([OPair(_gen(0), _gen(2)), OPair(_gen(1), _gen(3))])
    return S, FamilyName(((0, name),))


def _gen(i: int):
    from .names import Gen
    from .order import Nat
    return Gen(Nat(i))
