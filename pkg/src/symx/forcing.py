"""Forcing over finite truncations of Cohen forcing.

A ``TruncatedPoset`` has finitely many coordinates and ``k`` slots per
coordinate.  Its atoms (total conditions) are encoded as integers whose
bit ``c`` is the value of cell ``c = coordinate_index * k + slot``.  Sets
of atoms are Python ints used as bitsets indexed by atom.

Names compile to interned tables of entries ``(atom set, child id)``.  In
a finite poset a condition forces a formula exactly when every atom below
it does, so the forcing relation is computed as a set of atoms by
recursion on compiled names.  The oracle ``forces_oracle`` instead
evaluates the symbolic names to hereditarily finite sets atom by atom and
checks the formula set-theoretically.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .errors import CoordinateOutOfDomain, EnumerationBudgetExceeded
from .group import (
    ONE, Automorphism, Condition, GroupDesc, apply_condition, group_elements,
)
from .hf import EMPTY, HF, nat, pair
from .names import (
    BasedName, Bullet, Check, Gen, Mix, Name, OPair, PrecName, Raw, Restrict,
    apply_name, kpair_bullet,
)
from .order import OrderPoint


# ---------------------------------------------------------------- formulas

class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Elem(Formula):
    a: Name
    b: Name

    def __str__(self):
        return f"(elem {self.a} {self.b})"


@dataclass(frozen=True)
class Eq(Formula):
    a: Name
    b: Name

    def __str__(self):
        return f"(eq {self.a} {self.b})"


@dataclass(frozen=True)
class Not(Formula):
    f: Formula

    def __str__(self):
        return f"(not {self.f})"


@dataclass(frozen=True)
class And(Formula):
    f: Formula
    g: Formula

    def __str__(self):
        return f"(and {self.f} {self.g})"


@dataclass(frozen=True)
class Or(Formula):
    f: Formula
    g: Formula

    def __str__(self):
        return f"(or {self.f} {self.g})"


@dataclass(frozen=True)
class IsFunctionOn(Formula):
    """f is single valued and total on each listed name."""

    f: Name
    xs: tuple

    def __str__(self):
        return f"(isfun {self.f}" + "".join(" " + str(x) for x in self.xs) + ")"


@dataclass(frozen=True)
class AppliesInto(Formula):
    """Some pair (x, y) lies in f with y in A."""

    f: Name
    x: Name
    A: Name

    def __str__(self):
        return f"(into {self.f} {self.x} {self.A})"


@dataclass(frozen=True)
class InValue(Formula):
    """a lies in some y with (x, y) in f."""

    a: Name
    f: Name
    x: Name

    def __str__(self):
        return f"(invalue {self.a} {self.f} {self.x})"


@dataclass(frozen=True)
class ValueIs(Formula):
    """Some (x, y) in f has y = A."""

    A: Name
    f: Name
    x: Name

    def __str__(self):
        return f"(valueis {self.A} {self.f} {self.x})"


def formula_depth(phi: Formula) -> int:
    if isinstance(phi, Not):
        return 1 + formula_depth(phi.f)
    if isinstance(phi, (And, Or)):
        return 1 + max(formula_depth(phi.f), formula_depth(phi.g))
    return 0


def map_names(phi: Formula, fn: Callable[[Name], Name]) -> Formula:
    if isinstance(phi, (Elem, Eq)):
        return type(phi)(fn(phi.a), fn(phi.b))
    if isinstance(phi, Not):
        return Not(map_names(phi.f, fn))
    if isinstance(phi, (And, Or)):
        return type(phi)(map_names(phi.f, fn), map_names(phi.g, fn))
    if isinstance(phi, IsFunctionOn):
        return IsFunctionOn(fn(phi.f), tuple(fn(x) for x in phi.xs))
    if isinstance(phi, AppliesInto):
        return AppliesInto(fn(phi.f), fn(phi.x), fn(phi.A))
    return type(phi)(*(fn(getattr(phi, f)) for f in phi.__dataclass_fields__))


def big_or(parts: Sequence[Formula]) -> Formula:
    if not parts:
        return Not(Eq(Check(0), Check(0)))
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def big_and(parts: Sequence[Formula]) -> Formula:
    if not parts:
        return Eq(Check(0), Check(0))
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


# ---------------------------------------------------------------- symbolic entries

def appearing(n: Name, k: int, points: Sequence[OrderPoint]) -> list[Name]:
    """Names appearing as second coordinates of the entries of n."""
    if isinstance(n, Check):
        return [Check(m) for m in n.x]
    if isinstance(n, Gen):
        return [Check(j) for j in range(k)]
    if isinstance(n, Bullet):
        return list(n.elems)
    if isinstance(n, OPair):
        return [Bullet([n.fst]), Bullet([n.fst, n.snd])]
    if isinstance(n, Raw):
        return [y for _, y in n.entries]
    if isinstance(n, Restrict):
        return [Restrict(y, n.p) for y in appearing(n.inner, k, points)]
    if isinstance(n, Mix):
        return [Restrict(y, p) for p, z in n.branches for y in appearing(z, k, points)]
    if isinstance(n, BasedName):
        return [OPair(Gen(x), Check(n.F.eval(x))) for x in points]
    if isinstance(n, PrecName):
        pts = [x for x in points if n.domain.admits(x)]
        return [OPair(Gen(x), Gen(y)) for x in pts for y in pts if x < y]
    raise TypeError(f"not a name: {n!r}")


def pair_seconds(f: Name, k: int, points: Sequence[OrderPoint]) -> list[Name]:
    """Candidate second components of the pairs that may lie in f."""
    out = []
    for y in appearing(f, k, points):
        out.extend(_seconds_of(y))
    return list(dict.fromkeys(out))


def _seconds_of(y: Name) -> list[Name]:
    if isinstance(y, OPair):
        return [y.snd]
    if isinstance(y, Check):
        decoded = y.x.unpair()
        if decoded is None:
            raise ValueError(f"{y} is not a pair")
        return [Check(decoded[1])]
    if isinstance(y, Restrict):
        return [Restrict(s, y.p) for s in _seconds_of(y.inner)]
    raise ValueError(f"{y} is not a pair name")


# ---------------------------------------------------------------- the poset

class TruncatedPoset:
    """Conditions are partial functions from points x range(k) to {0, 1}."""

    def __init__(self, points: Iterable[OrderPoint], k: int):
        pts = sorted(set(points), key=lambda x: x.sort_key())
        if k < 1 or not pts:
            raise ValueError("a truncated poset needs at least one coordinate and one slot")
        self.points = tuple(pts)
        self.k = k
        self.index = {x: i for i, x in enumerate(pts)}
        self.n_cells = len(pts) * k
        if self.n_cells > 14:
            raise EnumerationBudgetExceeded(f"{self.n_cells} cells give too many atoms")
        self.n_atoms = 1 << self.n_cells
        self.ALL = (1 << self.n_atoms) - 1
        self._cell_one = [self._atoms_with_bit(c) for c in range(self.n_cells)]
        self._table: list[tuple] = []
        self._intern: dict = {}
        self._compiled: dict = {}
        self._restricted: dict = {}
        self._elem: dict = {}
        self._eq: dict = {}
        self._val: dict = {}
        self._val_c: dict = {}
        self._below: dict = {}

    def __repr__(self):
        return f"TruncatedPoset({len(self.points)} coords x {self.k} slots)"

    def _atoms_with_bit(self, c: int) -> int:
        block = (1 << (1 << c)) - 1  # 2^c ones
        period = 1 << (c + 1)
        unit = block << (1 << c)
        out = 0
        for start in range(0, self.n_atoms, period):
            out |= unit << start
        return out

    # conditions -----------------------------------------------------------

    def encode(self, p: Condition) -> tuple[int, int]:
        mask = bits = 0
        for (x, n), b in p.items():
            i = self.index.get(x)
            if i is None or n >= self.k:
                raise CoordinateOutOfDomain(f"({x}, {n}) is outside {self!r}")
            c = i * self.k + n
            mask |= 1 << c
            bits |= b << c
        return mask, bits

    def decode(self, mask: int, bits: int) -> Condition:
        entries = {}
        for c in range(self.n_cells):
            if mask >> c & 1:
                entries[(self.points[c // self.k], c % self.k)] = bits >> c & 1
        return Condition(entries)

    def atom_condition(self, atom: int) -> Condition:
        return self.decode((1 << self.n_cells) - 1, atom)

    def below(self, p: Condition) -> int:
        """The set of atoms extending p."""
        got = self._below.get(p)
        if got is None:
            got = self.ALL
            mask, bits = self.encode(p)
            for c in range(self.n_cells):
                if mask >> c & 1:
                    got &= self._cell_one[c] if bits >> c & 1 else ~self._cell_one[c]
            got &= self.ALL
            self._below[p] = got
        return got

    def atoms_below(self, p: Condition) -> Iterator[int]:
        mask, bits = self.encode(p)
        free = ((1 << self.n_cells) - 1) & ~mask
        sub = free
        while True:
            yield bits | sub
            if sub == 0:
                break
            sub = (sub - 1) & free

    def conditions(self, max_size: int | None = None) -> Iterator[Condition]:
        """Every condition (up to ``max_size`` cells), smallest first."""
        cells = [(x, n) for x in self.points for n in range(self.k)]
        top = len(cells) if max_size is None else min(max_size, len(cells))
        for r in range(top + 1):
            for chosen in itertools.combinations(cells, r):
                for vals in itertools.product((0, 1), repeat=r):
                    yield Condition(zip(chosen, vals))

    # compilation ----------------------------------------------------------

    def _make(self, entries: Iterable[tuple[int, int]]) -> int:
        merged: dict[int, int] = {}
        for S, child in entries:
            if S:
                merged[child] = merged.get(child, 0) | S
        key = tuple(sorted((child, S) for child, S in merged.items()))
        cid = self._intern.get(key)
        if cid is None:
            cid = len(self._table)
            self._table.append(tuple((S, child) for child, S in key))
            self._intern[key] = cid
        return cid

    def entries(self, cid: int) -> tuple:
        return self._table[cid]

    def compile(self, n: Name) -> int:
        got = self._compiled.get(n)
        if got is not None:
            return got
        ALL = self.ALL
        if isinstance(n, Check):
            cid = self._make((ALL, self.compile(Check(m))) for m in n.x)
        elif isinstance(n, Gen):
            i = self.index.get(n.i)
            if i is None:
                raise CoordinateOutOfDomain(f"{n.i} is not a coordinate of {self!r}")
            cid = self._make((self._cell_one[i * self.k + j], self.compile(Check(j))) for j in range(self.k))
        elif isinstance(n, Bullet):
            cid = self._make((ALL, self.compile(e)) for e in n.elems)
        elif isinstance(n, OPair):
            cid = self.compile(kpair_bullet(n.fst, n.snd))
        elif isinstance(n, Raw):
            cid = self._make((self.below(p), self.compile(y)) for p, y in n.entries)
        elif isinstance(n, Restrict):
            cid = self._restrict(self.compile(n.inner), self.below(n.p))
        elif isinstance(n, Mix):
            parts = []
            for p, y in n.branches:
                parts.extend(self.entries(self._restrict(self.compile(y), self.below(p))))
            cid = self._make(parts)
        elif isinstance(n, (BasedName, PrecName)):
            cid = self._make((ALL, self.compile(y)) for y in appearing(n, self.k, self.points))
        else:
            raise TypeError(f"not a name: {n!r}")
        self._compiled[n] = cid
        return cid

    def _restrict(self, cid: int, B: int) -> int:
        """Entries (q, y restricted) for atoms q below the condition with q forcing y in x."""
        key = (cid, B)
        got = self._restricted.get(key)
        if got is None:
            got = self._make((B & self.elem_set(y, cid), self._restrict(y, B)) for _, y in self.entries(cid))
            self._restricted[key] = got
        return got

    def raw_entries(self, n: Name) -> list[tuple[int, int]]:
        return list(self.entries(self.compile(n)))

    # the forcing relation on atoms ------------------------------------------

    def elem_set(self, a: int, b: int) -> int:
        """Atoms forcing a in b."""
        key = (a, b)
        got = self._elem.get(key)
        if got is None:
            got = 0
            for S, w in self.entries(b):
                got |= S & self.eq_set(a, w)
            self._elem[key] = got
        return got

    def eq_set(self, a: int, b: int) -> int:
        """Atoms forcing a = b."""
        if a == b:
            return self.ALL
        key = (a, b) if a < b else (b, a)
        got = self._eq.get(key)
        if got is None:
            got = self.ALL
            for S, z in self.entries(a):
                got &= ~S | self.elem_set(z, b)
            for S, z in self.entries(b):
                got &= ~S | self.elem_set(z, a)
            got &= self.ALL
            self._eq[key] = got
        return got

    def formula_set(self, phi: Formula) -> int:
        """Atoms forcing phi."""
        if isinstance(phi, Elem):
            return self.elem_set(self.compile(phi.a), self.compile(phi.b))
        if isinstance(phi, Eq):
            return self.eq_set(self.compile(phi.a), self.compile(phi.b))
        if isinstance(phi, Not):
            return self.ALL & ~self.formula_set(phi.f)
        if isinstance(phi, And):
            return self.formula_set(phi.f) & self.formula_set(phi.g)
        if isinstance(phi, Or):
            return self.formula_set(phi.f) | self.formula_set(phi.g)
        return self.formula_set(expand(phi, self))

    # evaluation ------------------------------------------------------------

    def atom_bit(self, atom: int, x: OrderPoint, j: int) -> int:
        return atom >> (self.index[x] * self.k + j) & 1

    def val(self, n: Name, atom: int) -> HF:
        """Value of the symbolic name under the generic generated by ``atom``."""
        key = (n, atom)
        got = self._val.get(key)
        if got is not None:
            return got
        if isinstance(n, Check):
            out = n.x
        elif isinstance(n, Gen):
            if n.i not in self.index:
                raise CoordinateOutOfDomain(f"{n.i} is not a coordinate of {self!r}")
            out = HF(nat(j) for j in range(self.k) if self.atom_bit(atom, n.i, j))
        elif isinstance(n, Bullet):
            out = HF(self.val(e, atom) for e in n.elems)
        elif isinstance(n, OPair):
            out = pair(self.val(n.fst, atom), self.val(n.snd, atom))
        elif isinstance(n, Raw):
            out = HF(self.val(y, atom) for p, y in n.entries if self._holds_at(p, atom))
        elif isinstance(n, Restrict):
            if not self._holds_at(n.p, atom):
                out = EMPTY
            else:
                whole = self.val(n.inner, atom)
                out = HF(self.val(Restrict(y, n.p), atom)
                         for y in appearing(n.inner, self.k, self.points)
                         if self.val(y, atom) in whole)
        elif isinstance(n, Mix):
            acc: set = set()
            for p, y in n.branches:
                acc |= self.val(Restrict(y, p), atom).members
            out = HF(acc)
        elif isinstance(n, (BasedName, PrecName)):
            out = HF(self.val(y, atom) for y in appearing(n, self.k, self.points))
        else:
            raise TypeError(f"not a name: {n!r}")
        self._val[key] = out
        return out

    def val_compiled(self, cid: int, atom: int) -> HF:
        key = (cid, atom)
        got = self._val_c.get(key)
        if got is None:
            got = HF(self.val_compiled(y, atom) for S, y in self.entries(cid) if S >> atom & 1)
            self._val_c[key] = got
        return got

    def _holds_at(self, p: Condition, atom: int) -> bool:
        mask, bits = self.encode(p)
        return atom & mask == bits

    def truth(self, phi: Formula, atom: int) -> bool:
        """Set-theoretic truth of phi in the values at ``atom``."""
        if isinstance(phi, Elem):
            return self.val(phi.a, atom) in self.val(phi.b, atom)
        if isinstance(phi, Eq):
            return self.val(phi.a, atom) == self.val(phi.b, atom)
        if isinstance(phi, Not):
            return not self.truth(phi.f, atom)
        if isinstance(phi, And):
            return self.truth(phi.f, atom) and self.truth(phi.g, atom)
        if isinstance(phi, Or):
            return self.truth(phi.f, atom) or self.truth(phi.g, atom)
        if isinstance(phi, IsFunctionOn):
            graph = self.val(phi.f, atom)
            decoded = [m.unpair() for m in graph]
            for x in phi.xs:
                vx = self.val(x, atom)
                images = {d[1] for d in decoded if d is not None and d[0] == vx}
                if len(images) != 1:
                    return False
            return True
        if isinstance(phi, (AppliesInto, InValue, ValueIs)):
            graph = self.val(phi.f, atom)
            vx = self.val(phi.x, atom)
            images = [d[1] for d in (m.unpair() for m in graph) if d is not None and d[0] == vx]
            if isinstance(phi, AppliesInto):
                va = self.val(phi.A, atom)
                return any(v in va for v in images)
            if isinstance(phi, InValue):
                va = self.val(phi.a, atom)
                return any(va in v for v in images)
            return self.val(phi.A, atom) in images
        raise TypeError(f"not a formula: {phi!r}")


def expand(phi: Formula, T: TruncatedPoset) -> Formula:
    """Quantifier-free expansion of the function macros over candidate pairs."""
    if isinstance(phi, IsFunctionOn):
        ys = pair_seconds(phi.f, T.k, T.points)
        parts = []
        for x in phi.xs:
            has = [Elem(OPair(x, y), phi.f) for y in ys]
            parts.append(big_or(has))
            for i, j in itertools.combinations(range(len(ys)), 2):
                parts.append(Or(Not(And(has[i], has[j])), Eq(ys[i], ys[j])))
        return big_and(parts)
    ys = pair_seconds(phi.f, T.k, T.points)
    if isinstance(phi, AppliesInto):
        return big_or([And(Elem(OPair(phi.x, y), phi.f), Elem(y, phi.A)) for y in ys])
    if isinstance(phi, InValue):
        return big_or([And(Elem(OPair(phi.x, y), phi.f), Elem(phi.a, y)) for y in ys])
    if isinstance(phi, ValueIs):
        return big_or([And(Elem(OPair(phi.x, y), phi.f), Eq(y, phi.A)) for y in ys])
    raise TypeError(f"no expansion for {phi!r}")


# ---------------------------------------------------------------- public API

def compile_name(n: Name, T: TruncatedPoset) -> Raw:
    """The compiled name as an explicit Raw name.

    Each atom set is written as a union of maximal conditions, and compiled
    subnames that are ground (every entry under the weakest condition)
    print as check-names.
    """
    top = _to_raw(T.compile(n), T, {})
    if isinstance(top, Check):
        return Raw((ONE, Check(m)) for m in top.x)
    return top


def _to_raw(cid: int, T: TruncatedPoset, memo: dict) -> Name:
    got = memo.get(cid)
    if got is None:
        kids = [(S, _to_raw(y, T, memo)) for S, y in T.entries(cid)]
        if all(S == T.ALL and isinstance(c, Check) for S, c in kids):
            got = Check(HF(c.x for _, c in kids))
        else:
            got = Raw((T.decode(mask, bits), c) for S, c in kids for mask, bits in _cover(S, T))
        memo[cid] = got
    return got


def _cover(S: int, T: TruncatedPoset) -> list[tuple[int, int]]:
    """Maximal conditions (as cell mask, bits) whose atoms lie in S, covering S."""
    full = (1 << T.n_cells) - 1
    cubes = {(full, a) for a in range(T.n_atoms) if S >> a & 1}
    primes: set = set()
    while cubes:
        merged, used = set(), set()
        for mask, bits in cubes:
            for c in range(T.n_cells):
                if mask >> c & 1 and not bits >> c & 1:
                    other = (mask, bits | 1 << c)
                    if other in cubes:
                        merged.add((mask & ~(1 << c), bits))
                        used.add((mask, bits))
                        used.add(other)
        primes |= cubes - used
        cubes = merged
    # greedy cover of S by prime conditions
    chosen, left = [], S
    by_atoms = {cube: _cube_atoms(cube, T) for cube in primes}
    while left:
        cube = max(by_atoms, key=lambda c: (bin(by_atoms[c] & left).count("1"), -bin(c[0]).count("1")))
        chosen.append(cube)
        left &= ~by_atoms[cube]
    return sorted(chosen)


def _cube_atoms(cube: tuple[int, int], T: TruncatedPoset) -> int:
    mask, bits = cube
    out = T.ALL
    for c in range(T.n_cells):
        if mask >> c & 1:
            out &= T._cell_one[c] if bits >> c & 1 else ~T._cell_one[c]
    return out & T.ALL


def forces(p: Condition, phi: Formula, T: TruncatedPoset) -> bool:
    return T.below(p) & ~T.formula_set(phi) == 0


def forces_oracle(p: Condition, phi: Formula, T: TruncatedPoset) -> bool:
    return all(T.truth(phi, atom) for atom in T.atoms_below(p))


def val(n: Name, atom: int, T: TruncatedPoset) -> HF:
    return T.val(n, atom)


# ---------------------------------------------------------------- the symmetry lemma

@dataclass
class SymmetryReport:
    counterexamples: list
    n_counterexamples: int
    tuples: int
    names: int
    formulas: int
    group_size: int
    conditions: int
    wall: float

    @property
    def ok(self) -> bool:
        return self.n_counterexamples == 0

    def summary(self) -> dict:
        return {"kind": "summary", "tuples": self.tuples, "names": self.names,
                "formulas": self.formulas, "group_size": self.group_size,
                "conditions": self.conditions, "counterexamples": self.n_counterexamples,
                "wall_s": round(self.wall, 3)}


def name_pool(T: TruncatedPoset, depth: int, cond_cells: int = 1) -> list[list[Name]]:
    """Names by layer: layer 0 holds check 0, check 1 and the generics; layer d
    adds one-entry raw names over layer d-1 with conditions of at most
    ``cond_cells`` cells."""
    conds = list(T.conditions(cond_cells))
    layers = [[Check(0), Check(1)] + [Gen(x) for x in T.points]]
    pool = list(layers[0])
    for _ in range(depth):
        new = [Raw([(p, y)]) for y in pool for p in conds]
        new = [n for n in dict.fromkeys(new) if n not in set(pool)]
        layers.append(new)
        pool = pool + new
    return layers


def unary_templates(formula_depth: int) -> list[Callable[[Name], Formula]]:
    c0, c1, c2 = Check(0), Check(1), Check(2)
    atoms = [
        lambda x: Elem(c0, x), lambda x: Elem(c1, x),
        lambda x: Elem(x, c1), lambda x: Elem(x, c2),
        lambda x: Eq(x, c0), lambda x: Eq(x, c1),
    ]
    out = list(atoms)
    if formula_depth >= 1:
        out += [lambda x, f=f: Not(f(x)) for f in atoms]
        for f, g in itertools.combinations(atoms, 2):
            out.append(lambda x, f=f, g=g: And(f(x), g(x)))
            out.append(lambda x, f=f, g=g: Or(f(x), g(x)))
    return out


def binary_templates(formula_depth: int) -> list[Callable[[Name, Name], Formula]]:
    atoms = [lambda x, y: Elem(x, y), lambda x, y: Eq(x, y)]
    out = list(atoms)
    if formula_depth >= 1:
        out += [lambda x, y, f=f: Not(f(x, y)) for f in atoms]
    return out


def check_symmetry_lemma(T: TruncatedPoset, G: GroupDesc, name_depth: int = 2, formula_depth: int = 1,
                         action: Callable[[Automorphism, Name], Name] = apply_name,
                         budget: int = 10 ** 6, base: GroupDesc | None = None,
                         keep: int = 50) -> SymmetryReport:
    """Exhaustively compare p forces phi(x) with pi p forces phi(pi x)."""
    start = time.perf_counter()
    elems = group_elements(G, T.points, base=base)
    conds = list(T.conditions())
    below = [T.below(p) for p in conds]
    cond_index = {p: i for i, p in enumerate(conds)}
    layers = name_pool(T, name_depth)
    unary_pool = [n for layer in layers for n in layer]
    binary_pool = [n for layer in layers[:2] for n in layer]
    unary = unary_templates(formula_depth)
    binary = binary_templates(formula_depth)
    per_pi = len(unary_pool) * len(unary) + len(binary_pool) ** 2 * len(binary)
    total = per_pi * len(elems) * len(conds)
    if total > budget:
        raise EnumerationBudgetExceeded(f"{total} (p, pi, name, formula) tuples exceed the budget {budget}")
    found: list = []
    count = 0
    for pi in elems:
        image = [cond_index[apply_condition(pi, p)] for p in conds]
        moved: dict = {}

        def act(n, pi=pi, moved=moved):
            got = moved.get(n)
            if got is None:
                got = moved[n] = action(pi, n)
            return got

        def compare(phi, phi_pi, label):
            nonlocal count
            s1, s2 = T.formula_set(phi), T.formula_set(phi_pi)
            miss1, miss2 = ~s1, ~s2
            for i, b in enumerate(below):
                lhs = b & miss1 == 0
                rhs = below[image[i]] & miss2 == 0
                if lhs != rhs:
                    count += 1
                    if len(found) < keep:
                        found.append({"p": str(conds[i]), "pi": str(pi), "name": label,
                                      "formula": str(phi), "lhs": lhs, "rhs": rhs})

        for x in unary_pool:
            px = act(x)
            for tpl in unary:
                compare(tpl(x), tpl(px), str(x))
        for x in binary_pool:
            px = act(x)
            for y in binary_pool:
                py = act(y)
                for tpl in binary:
                    compare(tpl(x, y), tpl(px, py), f"{x} {y}")
    return SymmetryReport(found, count, total, len(unary_pool), len(unary) + len(binary),
                          len(elems), len(conds), time.perf_counter() - start)


def corrupted_action(pi: Automorphism, n: Name) -> Name:
    """Test fixture: moves the conditions of a raw name but none of its subnames."""
    if isinstance(n, Raw):
        return Raw((apply_condition(pi, p), y) for p, y in n.entries)
    return n
