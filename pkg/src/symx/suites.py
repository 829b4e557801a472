"""Law suites run by the command line and the acceptance tests.

Each suite takes a ``RunConfig`` and returns a ``Report``; a report fails
exactly when it carries counterexamples.  Randomised suites draw from a
``random.Random`` seeded by the config, so reports replay exactly.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import (
    EnumerationBudgetExceeded, HSCertificationFailed, NotAnAntichain, Unsatisfiable,
    UnknownSuite, WellDefinednessFailure,
)
from .forcing import (
    And, Elem, Eq, Not, Or, TruncatedPoset, check_symmetry_lemma, corrupted_action,
    forces, forces_oracle,
)
from .group import (
    CUT_IDEAL, FINITE_IDEAL, ONE, Condition, Constraints, FilterDesc, Fix, FullGroup,
    Generated, Ideal, PlainPerm, PlMap, ProdPerm, apply_condition, compose,
    conjugate_fix, find_automorphism, group_elements, in_fix, invert, is_tenacious,
    transposition,
)
from .models import (
    ASCode, BasedFn, SeqCode, code_universe, deinterleave, eval_based, family_masks,
    interleave, is_based, product_based, product_code, unproduct_based, unproduct_code,
)
from .names import Bullet, Check, Gen, Mix, Name, OPair, Raw, Restrict, apply_name
from .order import FiniteSet, InitialSegment, Nat, Plain, Prod, Rat, between, cut_points
from .symmetry import (
    FamilyName, SymmetricSystem, build_choice_name, check_mixable, is_densely_measurable,
    is_injective_name, measures, non_measurable_fixture, verify_choice_name,
)


@dataclass
class RunConfig:
    suite: str
    index_size: int = 2
    slots: int = 2
    depth: int = 2
    cases: int = 1000
    seed: int = 0
    budget: int = 10 ** 7
    format: str = "json"

    def __post_init__(self):
        for f in ("index_size", "slots", "cases", "budget"):
            if getattr(self, f) < 1:
                raise ValueError(f"{f} must be positive")


@dataclass
class Report:
    suite: str
    seed: int
    counterexamples: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    wall: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        return {"suite": self.suite, "pass": self.passed, "seed": self.seed,
                "counts": self.counts, "counterexamples": self.counterexamples[:20],
                "n_counterexamples": len(self.counterexamples), "wall_s": round(self.wall, 3)}


# ---------------------------------------------------------------- random generators

def random_condition(rng: random.Random, T: TruncatedPoset, max_cells: int = 2) -> Condition:
    cells = [(x, n) for x in T.points for n in range(T.k)]
    chosen = rng.sample(cells, rng.randint(0, min(max_cells, len(cells))))
    return Condition({c: rng.randint(0, 1) for c in chosen})


def random_antichain(rng: random.Random, T: TruncatedPoset, size: int) -> list[Condition]:
    """Pairwise incompatible conditions, all built from a few shared cells."""
    cells = [(x, n) for x in T.points for n in range(T.k)]
    width = min(len(cells), max(1, (size - 1).bit_length()))
    base = rng.sample(cells, width)
    words = rng.sample(list(itertools.product((0, 1), repeat=width)), min(size, 2 ** width))
    out = []
    for w in words:
        entries = dict(zip(base, w))
        extra = rng.choice(cells)
        if extra not in entries and rng.random() < 0.5:
            entries[extra] = rng.randint(0, 1)
        out.append(Condition(entries))
    return out


def random_name(rng: random.Random, T: TruncatedPoset, depth: int) -> Name:
    if depth <= 0 or rng.random() < 0.25:
        if rng.random() < 0.5:
            return Check(rng.randint(0, 2))
        return Gen(rng.choice(T.points))
    kind = rng.choice(("bullet", "opair", "raw", "restrict", "mix"))
    sub = lambda: random_name(rng, T, depth - 1)
    if kind == "bullet":
        return Bullet(sub() for _ in range(rng.randint(0, 2)))
    if kind == "opair":
        return OPair(sub(), sub())
    if kind == "raw":
        return Raw((random_condition(rng, T), sub()) for _ in range(rng.randint(1, 2)))
    if kind == "restrict":
        return Restrict(sub(), random_condition(rng, T))
    conds = random_antichain(rng, T, rng.randint(1, 3))
    return Mix((p, sub()) for p in conds)


def random_formula(rng: random.Random, names: Callable[[], Name], depth: int):
    if depth <= 0 or rng.random() < 0.4:
        return (Elem if rng.random() < 0.5 else Eq)(names(), names())
    kind = rng.choice(("not", "and", "or"))
    if kind == "not":
        return Not(random_formula(rng, names, depth - 1))
    cls = And if kind == "and" else Or
    return cls(random_formula(rng, names, depth - 1), random_formula(rng, names, depth - 1))


def nat_points(n: int) -> list[Nat]:
    return [Nat(i) for i in range(n)]


def random_based(rng: random.Random, bound: int, grid: list, max_steps: int = 4) -> BasedFn:
    """A based function with values below ``bound`` and base points from ``grid``."""
    top = rng.randrange(bound)
    k = rng.randint(0, min(max_steps, top, len(grid)))
    pts = sorted(rng.sample(grid, k), key=lambda x: x.sort_key())
    vals = sorted(rng.sample(range(top), k), reverse=True)
    return BasedFn(top, tuple(zip(pts, vals)), bound)


# ---------------------------------------------------------------- suites

def suite_symmetry_lemma(cfg: RunConfig) -> Report:
    rep = Report(cfg.suite, cfg.seed)
    T = TruncatedPoset(nat_points(cfg.index_size), cfg.slots)
    r = check_symmetry_lemma(T, FullGroup(Plain(cfg.index_size)), cfg.depth, 1, budget=cfg.budget)
    rep.counterexamples = r.counterexamples
    rep.counts = r.summary()
    mutant = check_symmetry_lemma(T, FullGroup(Plain(cfg.index_size)), min(cfg.depth, 1), 0,
                                  action=corrupted_action, budget=cfg.budget)
    rep.counts["mutant_counterexamples"] = mutant.n_counterexamples
    if cfg.index_size > 1 and mutant.n_counterexamples == 0:
        rep.counterexamples.append({"mutation": "corrupted action went undetected"})
    return rep


def suite_oracle_equiv(cfg: RunConfig) -> Report:
    rng = random.Random(cfg.seed)
    rep = Report(cfg.suite, cfg.seed)
    posets = [TruncatedPoset(nat_points(n), k)
              for n in range(1, cfg.index_size + 1) for k in range(1, cfg.slots + 1)]
    for case in range(cfg.cases):
        T = posets[case % len(posets)]
        phi = random_formula(rng, lambda: random_name(rng, T, cfg.depth), 2)
        p = random_condition(rng, T, 3)
        a, b = forces(p, phi, T), forces_oracle(p, phi, T)
        if a != b:
            rep.counterexamples.append({"T": repr(T), "p": str(p), "formula": str(phi),
                                        "forces": a, "oracle": b})
    rep.counts = {"instances": cfg.cases, "posets": len(posets)}
    return rep


def suite_restriction(cfg: RunConfig) -> Report:
    rng = random.Random(cfg.seed)
    rep = Report(cfg.suite, cfg.seed)
    posets = [TruncatedPoset(nat_points(n), k) for n in range(1, cfg.index_size + 1)
              for k in range(1, cfg.slots + 1)]
    checked = 0
    while checked < cfg.cases:
        T = rng.choice(posets)
        n = random_name(rng, T, cfg.depth)
        p = random_condition(rng, T, 2)
        if not len(p):
            continue
        (x, slot), bit = rng.choice(p.items())
        q = Condition({(x, slot): 1 - bit}).union(
            Condition({k: v for k, v in random_condition(rng, T, 1).items() if k != (x, slot)}))
        r = Restrict(n, p)
        laws = {
            "p forces restriction = name": Eq(r, n),
            "incompatible q forces restriction = empty": Eq(r, Check(0)),
        }
        for label, phi in laws.items():
            cond = p if label.startswith("p ") else q
            a, b = forces(cond, phi, T), forces_oracle(cond, phi, T)
            if not (a and b):
                rep.counterexamples.append({"law": label, "name": str(n), "p": str(p), "q": str(q),
                                            "forces": a, "oracle": b})
        checked += 1
    rep.counts = {"triples": checked}
    return rep


def suite_mixing(cfg: RunConfig) -> Report:
    rng = random.Random(cfg.seed)
    rep = Report(cfg.suite, cfg.seed)
    systems = []
    for n in range(1, cfg.index_size + 1):
        for k in range(1, cfg.slots + 1):
            T = TruncatedPoset(nat_points(n), k)
            systems.append(SymmetricSystem.over(T, FullGroup(Plain(n)), FINITE_IDEAL))
    for _ in range(cfg.cases):
        S = rng.choice(systems)
        T = S.poset
        conds = random_antichain(rng, T, rng.randint(1, 4))
        branches = [(p, random_name(rng, T, min(cfg.depth, 2))) for p in conds]
        try:
            report = check_mixable(S, branches)
        except (HSCertificationFailed, NotAnAntichain) as exc:
            rep.counterexamples.append({"branches": [(str(p), str(x)) for p, x in branches], "error": str(exc)})
            continue
        pts = set()
        for E, (p, _) in zip(report.branch_supports, branches):
            pts |= set(E.points) | p.supp()
        oracle_ok = all(forces_oracle(p, Eq(report.name, x), T) for p, x in branches)
        if not report.ok or not oracle_ok or report.support != FiniteSet(frozenset(pts)):
            rep.counterexamples.append({"branches": [(str(p), str(x)) for p, x in branches],
                                        "forced": report.forced, "oracle": oracle_ok,
                                        "support": str(report.support)})
    rep.counts = {"antichains": cfg.cases}
    return rep


def random_pl(rng: random.Random, lo: int = -4, hi: int = 4) -> PlMap:
    k = rng.randint(1, 3)
    xs = sorted(set(Fraction(rng.randint(4 * lo, 4 * hi), 4) for _ in range(k + 2)))
    if len(xs) < 3:
        return PlMap(())
    ys = [xs[0]]
    for i in range(1, len(xs) - 1):
        gap_lo, gap_hi = ys[-1], xs[-1]
        ys.append(gap_lo + (gap_hi - gap_lo) * Fraction(rng.randint(1, 7), 8))
    ys.append(xs[-1])
    return PlMap(tuple(zip(xs, ys)))


def suite_normality(cfg: RunConfig) -> Report:
    rng = random.Random(cfg.seed)
    rep = Report(cfg.suite, cfg.seed)
    n = max(cfg.index_size, 3)
    pts = nat_points(n)
    G = group_elements(FullGroup(Plain(n)), pts, cap=10 ** 5)
    pl_group = [random_pl(rng) for _ in range(40)] + [PlMap(())]
    for case in range(cfg.cases):
        if case % 2 == 0:
            pi = rng.choice(G)
            E = FiniteSet(frozenset(rng.sample(pts, rng.randint(0, n))))
            sample = G
            image = conjugate_fix(pi, E, FINITE_IDEAL)
        else:
            pi = random_pl(rng)
            E = InitialSegment(Rat(Fraction(rng.randint(-16, 16), 4)), rng.random() < 0.5)
            sample = pl_group
            image = conjugate_fix(pi, E, CUT_IDEAL)
        for sigma in sample:
            lhs = in_fix(sigma, image)
            rhs = in_fix(compose(invert(pi), compose(sigma, pi)), E)
            if lhs != rhs:
                rep.counterexamples.append({"pi": str(pi), "E": str(E), "sigma": str(sigma),
                                            "in_fix_image": lhs, "conjugate_in_fix": rhs})
                break
    rep.counts = {"pairs": cfg.cases}
    return rep


def suite_tenacity(cfg: RunConfig) -> Report:
    rep = Report(cfg.suite, cfg.seed)
    total = 0
    for n in range(1, cfg.index_size + 1):
        pts = nat_points(n)
        G = group_elements(FullGroup(Plain(n)), pts, cap=10 ** 5)
        F = FilterDesc(FullGroup(Plain(n)), FINITE_IDEAL)
        for k in range(1, cfg.slots + 1):
            T = TruncatedPoset(pts, k)
            for p in T.conditions():
                total += 1
                E = is_tenacious(p, F)
                if E != FiniteSet(p.supp()):
                    rep.counterexamples.append({"p": str(p), "witness": str(E)})
                    continue
                for g in G:
                    if in_fix(g, E) and apply_condition(g, p) != p:
                        rep.counterexamples.append({"p": str(p), "witness": str(E), "moved_by": str(g)})
                        break
    rep.counts = {"conditions": total}
    return rep


def _sample_points(*fns: BasedFn) -> list:
    pts = sorted({b for f in fns for b, _ in f.steps}, key=lambda x: x.sort_key())
    if not pts:
        return [Rat(0)]
    out = [Rat(pts[0].q - 1)] + pts + [Rat(pts[-1].q + 1)]
    out += [between(a, b) for a, b in zip(pts, pts[1:])]
    return out


def suite_model1_product(cfg: RunConfig) -> Report:
    rng = random.Random(cfg.seed)
    rep = Report(cfg.suite, cfg.seed)
    grid = [Rat(Fraction(i, 2)) for i in range(-8, 9)]
    f2 = BasedFn(1, ((Rat(1), 0),), 2)
    f3 = BasedFn(2, ((Rat(0), 1), (Rat(5), 0)), 3)
    f6 = product_based(f2, f3, 2, 3)
    expected = BasedFn(5, ((Rat(0), 4), (Rat(1), 1), (Rat(5), 0)), 6)
    if f6 != expected:
        rep.counterexamples.append({"worked_example": str(f6), "expected": str(expected)})
    pairs = 0
    for n in range(1, 6):
        for m in range(1, 6):
            for _ in range(max(1, cfg.cases // 25)):
                fn, fm = random_based(rng, n, grid), random_based(rng, m, grid)
                pairs += 1
                prod = product_based(fn, fm, n, m)
                problems = []
                if not is_based(prod):
                    problems.append("product not based")
                if unproduct_based(prod, n, m) != (fn, fm):
                    problems.append("unproduct after product")
                if product_based(*unproduct_based(prod, n, m), n, m) != prod:
                    problems.append("product after unproduct")
                for x in _sample_points(fn, fm):
                    if eval_based(prod, x) != m * eval_based(fn, x) + eval_based(fm, x):
                        problems.append(f"pointwise law at {x}")
                        break
                if problems:
                    rep.counterexamples.append({"n": n, "m": m, "fn": str(fn), "fm": str(fm),
                                                "problems": problems})
    rep.counts = {"pairs": pairs}
    return rep


def suite_model2_codes(cfg: RunConfig) -> Report:
    rng = random.Random(cfg.seed)
    rep = Report(cfg.suite, cfg.seed)
    for _ in range(cfg.cases):
        n = rng.randint(0, 32)
        f = SeqCode(tuple(rng.randint(0, 9) for _ in range(n)))
        g = SeqCode(tuple(rng.randint(0, 9) for _ in range(n)))
        h = interleave(f, g)
        if deinterleave(h) != (f, g) or h.prefix[0::2] != f.prefix:
            rep.counterexamples.append({"f": f.prefix, "g": g.prefix})
    for _ in range(cfg.cases):
        S = frozenset(r for r in range(8) if rng.random() < 0.5)
        T = frozenset(r for r in range(8) if rng.random() < 0.5)
        L = rng.randint(1, 4)
        a = ASCode(S, {r: tuple(rng.randint(0, 1) for _ in range(L)) for r in S})
        b = ASCode(T, {r: tuple(rng.randint(0, 1) for _ in range(L)) for r in T})
        if unproduct_code(product_code(a, b), S, T) != (a, b):
            rep.counterexamples.append({"a": str(a), "b": str(b)})
    codes = code_universe(range(8))
    masks = family_masks(codes, range(256))
    for s in range(256):
        for t in range(256):
            if masks[s] & masks[t] != masks[s & t]:
                rep.counterexamples.append({"S": s, "T": t})
    zero_only = [c for i, c in enumerate(codes) if masks[0] >> i & 1]
    if not zero_only or any(c.support() for c in zero_only):
        rep.counterexamples.append({"empty_family": "not exactly the zero codes"})
    small = code_universe(range(3), (1, 2), words="full")
    small_masks = family_masks(small, range(8))
    for s in range(8):
        for t in range(8):
            if small_masks[s] & small_masks[t] != small_masks[s & t]:
                rep.counterexamples.append({"S": s, "T": t, "grid": "full"})
    rep.counts = {"prefixes": cfg.cases, "codes": len(codes), "pairs": 256 * 256}
    return rep


def choice_instances(rng: random.Random, count: int) -> list[dict]:
    """Desk instances for the choice-name construction.

    Family members are tagged by their orbit so members of different orbits
    never coincide; each chosen value is determined by its member's value, so
    the resulting name is a function on every atom.
    """
    out = []
    while len(out) < count:
        n = rng.randint(2, 3)
        k = rng.randint(1, 2)
        pts = nat_points(n)
        T = TruncatedPoset(pts, k)
        S = SymmetricSystem.over(T, FullGroup(Plain(n)), FINITE_IDEAL)
        n_orbits = rng.randint(1, 2)
        members, orbit_of = [], {}
        for o in range(n_orbits):
            width = rng.randint(1, n)
            for x in rng.sample(pts, width):
                members.append(OPair(Check(o), Gen(x)))
        members = list(dict.fromkeys(members))[:6]
        moved = [x.snd.i for x in members]
        gens = [transposition(a, b) for a, b in zip(moved, moved[1:]) if rng.random() < 0.7]
        H = Generated(tuple(gens))
        Hs = S.elements(H)
        closed = set(members)
        for m in list(members):
            for h in Hs:
                closed.add(apply_name(h, m))
        members = sorted(closed, key=Name.key)[:6]
        if any(apply_name(h, m) not in set(members) for m in members for h in Hs):
            continue
        X = FamilyName(tuple(enumerate(members)))
        value_forms = [
            lambda x: x,
            lambda x: Bullet([x, Check(3)]),
            lambda x: OPair(x.snd, Check(2)),
            lambda x: Bullet([x.snd]),
        ]
        # one value form per orbit tag keeps the choice a function of the member's value
        form = {o: rng.choice(value_forms) for o in range(n_orbits)}
        a_names = {i: form[x.fst.x.as_nat()](x) for i, x in X.elems}
        out.append({"T": T, "S": S, "X": X, "H": H, "a": a_names})
    return out


def suite_choice_build(cfg: RunConfig) -> Report:
    rng = random.Random(cfg.seed)
    rep = Report(cfg.suite, cfg.seed)
    instances = choice_instances(rng, max(20, cfg.cases // 50))
    for inst in instances:
        X, S, T = inst["X"], inst["S"], inst["T"]
        try:
            res = build_choice_name(X, inst["a"], inst["H"], S)
        except WellDefinednessFailure as exc:
            rep.counterexamples.append({"family": str(X.as_name()), "error": str(exc)})
            continue
        targets = {}
        for i, x in X.elems:
            pair = next(y for y in res.name.elems if y.fst == x)
            targets[i] = Bullet([pair.snd, Check(4)])
        check = verify_choice_name(res.name, X, targets, T)
        if not check.ok:
            rep.counterexamples.append({"family": str(X.as_name()), "f": str(res.name),
                                        "function": check.function, "oracle": check.function_oracle})
    T = TruncatedPoset(nat_points(2), 1)
    S = SymmetricSystem.over(T, FullGroup(Plain(2)), FINITE_IDEAL)
    try:
        build_choice_name(FamilyName(((0, Check(0)),)), {0: Gen(Nat(0))},
                          Generated((transposition(Nat(0), Nat(1)),)), S)
        rep.counterexamples.append({"fixture": "ill-defined choice was accepted"})
    except WellDefinednessFailure:
        pass
    rep.counts = {"instances": len(instances)}
    return rep


def suite_measurability(cfg: RunConfig) -> Report:
    rep = Report(cfg.suite, cfg.seed)
    count = 0
    for n in range(1, max(cfg.index_size, 3) + 1):
        for k in range(1, cfg.slots + 1):
            T = TruncatedPoset(nat_points(n), k)
            S = SymmetricSystem.over(T, FullGroup(Plain(n)), FINITE_IDEAL)
            for size in range(1, 5):
                X = FamilyName(tuple((i, Check(i)) for i in range(size)))
                count += 1
                got = (is_injective_name(X, T), measures(S.group, X, S), is_densely_measurable(X, S))
                if not all(got):
                    rep.counterexamples.append({"n": n, "k": k, "size": size, "results": got})
    S, X = non_measurable_fixture()
    if is_densely_measurable(X, S):
        rep.counterexamples.append({"fixture": "non-measurable family passed"})
    rep.counts = {"families": count}
    return rep


# find-auto ----------------------------------------------------------------

def _q(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-12, 12), 2)


def random_spec(rng: random.Random) -> Constraints:
    kind = rng.random()
    if kind < 0.6:
        a = Rat(_q(rng))
        cut = None
        r = rng.random()
        if r < 0.4:
            cut = InitialSegment(Rat(_q(rng)), rng.random() < 0.5)
        elif r < 0.7:
            cut = FiniteSet(frozenset(Rat(_q(rng)) for _ in range(rng.randint(0, 3))))
        b = None if rng.random() < 0.3 else Rat(_q(rng))
        confine = None
        if rng.random() < 0.4:
            lo, hi = sorted((_q(rng), _q(rng)))
            confine = (Rat(lo) if rng.random() < 0.8 else None, Rat(hi) if rng.random() < 0.8 else None)
        avoid = Condition({(Rat(_q(rng)), rng.randint(0, 1)): rng.randint(0, 1) for _ in range(rng.randint(0, 3))})
        if rng.random() < 0.3:
            avoid = avoid.union(Condition({(a, 0): 1})) if avoid.compatible(Condition({(a, 0): 1})) else avoid
        return Constraints(cut, (a, b), confine, avoid)
    if kind < 0.8:
        a = Nat(rng.randint(0, 5))
        cut = FiniteSet(frozenset(Nat(rng.randint(0, 5)) for _ in range(rng.randint(0, 3))))
        b = None if rng.random() < 0.5 else Nat(rng.randint(0, 6))
        avoid = Condition({(Nat(rng.randint(0, 6)), rng.randint(0, 1)): rng.randint(0, 1)
                           for _ in range(rng.randint(0, 3))})
        return Constraints(cut, (a, b), None, avoid)
    a = Prod(rng.randint(0, 2), rng.randint(0, 3))
    cut = FiniteSet(frozenset(Prod(rng.randint(0, 2), rng.randint(0, 3)) for _ in range(rng.randint(0, 3))))
    b = None if rng.random() < 0.5 else Prod(rng.randint(0, 2), rng.randint(0, 4))
    return Constraints(cut, (a, b), None, Condition())


def satisfiable(c: Constraints) -> bool:
    """Order-theoretic decision of whether a spec has a solution.

    Written independently of the solver: an increasing map fixing E and
    fixing everything outside the confining interval can move a to b iff a
    and b lie strictly inside the same fixed-point-free gap; permutations
    need a and b both movable and in one row.  A target already carrying
    conflicting bits of the avoided condition is never allowed.
    """
    a, b = c.move
    if b == a:
        return True
    avoid = c.avoid or Condition()
    if b is not None:
        for (x, n), bit in avoid.items():
            if x == a and avoid.get((b, n), bit) != bit:
                return False
    frozen = []
    if isinstance(c.fix_cut, FiniteSet):
        frozen = list(c.fix_cut.points)
    if isinstance(a, Rat):
        def movable(q):
            if isinstance(c.fix_cut, InitialSegment) and q <= c.fix_cut.bound.q:
                return False
            if c.confine is not None:
                lo, hi = c.confine
                if (lo is not None and q <= lo.q) or (hi is not None and q >= hi.q):
                    return False
            return True
        if not movable(a.q) or a in frozen:
            return False
        if b is None:
            return True
        lo, hi = sorted((a.q, b.q))
        if not movable(b.q) or any(lo <= x.q <= hi for x in frozen):
            return False
        return True
    if a in frozen:
        return False
    if b is None:
        return True
    if isinstance(a, Prod) and a.row != b.row:
        return False
    return b not in frozen


def verify_by_evaluation(c: Constraints, pi) -> list[str]:
    bad = []
    a, b = c.move
    image = pi.apply(a)
    if (b is None and image == a) or (b is not None and image != b):
        bad.append("move")
    if isinstance(c.fix_cut, FiniteSet):
        if any(pi.apply(x) != x for x in c.fix_cut.points):
            bad.append("fix")
    elif isinstance(c.fix_cut, InitialSegment):
        bound = c.fix_cut.bound.q
        probes = [bound - Fraction(j, 3) for j in range(0, 30)]
        if isinstance(pi, PlMap) and not pi.is_identity:
            probes.append(min(bound, pi.breakpoints[0][0]))
        if any(pi.apply(Rat(q)) != Rat(q) for q in probes):
            bad.append("fix")
        if isinstance(pi, PlMap) and not pi.is_identity and pi.breakpoints[0][0] < bound:
            bad.append("fix")
    if c.confine is not None and isinstance(pi, PlMap) and not pi.is_identity:
        lo, hi = c.confine
        x0, x1 = pi.breakpoints[0][0], pi.breakpoints[-1][0]
        if (lo is not None and x0 < lo.q) or (hi is not None and x1 > hi.q):
            bad.append("confine")
    if c.avoid is not None and not apply_condition(pi, c.avoid).compatible(c.avoid):
        bad.append("avoid")
    return bad


UNSAT_FIXTURES = [
    ("fixed cut blocks a downward move",
     Constraints(InitialSegment(Rat(0), True), (Rat(1), Rat(-1)))),
    ("moved point lies in the fixed cut",
     Constraints(InitialSegment(Rat(0), True), (Rat(-2), Rat(-3)))),
    ("a fixed point separates source and target",
     Constraints(FiniteSet(frozenset({Rat(2)})), (Rat(1), Rat(3)))),
    ("target outside the confining interval",
     Constraints(None, (Rat(1), Rat(5)), (Rat(0), Rat(3)))),
    ("target bits conflict with the avoided condition",
     Constraints(None, (Rat(1), Rat(2)), None, Condition({(Rat(1), 0): 1, (Rat(2), 0): 0}))),
    ("rows are preserved in the product domain",
     Constraints(None, (Prod(0, 1), Prod(1, 1)))),
    ("a pointwise fixed natural cannot move",
     Constraints(FiniteSet(frozenset({Nat(3)})), (Nat(3), None))),
    ("open cut bound is pinned by continuity",
     Constraints(InitialSegment(Rat(0), False), (Rat(0), Rat(1)))),
]

SAT_FIXTURES = [
    ("small interval move", Constraints(InitialSegment(Rat(0), True), (Rat(1), Rat(2)), (Rat(0), Rat(3)))),
    ("no constraints", Constraints()),
    ("move anywhere past support", Constraints(None, (Rat(1), None), None, Condition({(Rat(1), 0): 1, (Rat(2), 0): 0}))),
]


def suite_find_auto(cfg: RunConfig) -> Report:
    rng = random.Random(cfg.seed)
    rep = Report(cfg.suite, cfg.seed)
    solved = unsat = 0
    for _ in range(cfg.cases):
        c = random_spec(rng)
        expect = satisfiable(c)
        try:
            pi = find_automorphism(c)
        except Unsatisfiable as exc:
            unsat += 1
            if expect:
                rep.counterexamples.append({"spec": repr(c), "error": f"solver gave up: {exc}"})
            continue
        solved += 1
        bad = verify_by_evaluation(c, pi)
        if bad or not expect:
            rep.counterexamples.append({"spec": repr(c), "pi": str(pi), "violated": bad,
                                        "oracle_satisfiable": expect})
    for label, c in UNSAT_FIXTURES:
        try:
            pi = find_automorphism(c)
            rep.counterexamples.append({"fixture": label, "pi": str(pi)})
        except Unsatisfiable:
            pass
    for label, c in SAT_FIXTURES:
        try:
            pi = find_automorphism(c)
            if c.move is not None and verify_by_evaluation(c, pi):
                rep.counterexamples.append({"fixture": label, "pi": str(pi)})
        except Unsatisfiable as exc:
            rep.counterexamples.append({"fixture": label, "error": str(exc)})
    rep.counts = {"specs": cfg.cases, "solved": solved, "unsatisfiable": unsat}
    return rep


SUITES: dict[str, Callable[[RunConfig], Report]] = {
    "symmetry-lemma": suite_symmetry_lemma,
    "oracle-equiv": suite_oracle_equiv,
    "restriction": suite_restriction,
    "mixing": suite_mixing,
    "normality": suite_normality,
    "tenacity": suite_tenacity,
    "model1-product": suite_model1_product,
    "model2-codes": suite_model2_codes,
    "choice-build": suite_choice_build,
    "measurability": suite_measurability,
    "find-auto": suite_find_auto,
}


def run_suite(cfg: RunConfig) -> Report:
    fn = SUITES.get(cfg.suite)
    if fn is None:
        raise UnknownSuite(f"unknown suite {cfg.suite!r}; known: {', '.join(SUITES)}")
    start = time.perf_counter()
    try:
        rep = fn(cfg)
    except EnumerationBudgetExceeded as exc:
        rep = Report(cfg.suite, cfg.seed, [{"budget_exceeded": str(exc)}])
    rep.wall = time.perf_counter() - start
    return rep
