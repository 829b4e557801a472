"""Symbolic P-names and the automorphism action on them.

Names are immutable and canonical: bullet members, raw entries and mix
branches are kept sorted and deduplicated, so structural equality is
plain ``==``.  ``Gen``, ``BasedName`` and ``PrecName`` are intensional;
they are expanded only by the forcing engine against a finite truncation.
"""
from __future__ import annotations

from typing import Iterable, Iterator

from .errors import NotAnAntichain, NotInIdeal, VariantMismatch
from .group import IDENTITY, Automorphism, Condition, Ideal, apply_condition
from .hf import HF, nat
from .order import Cut, Dlo, IndexDomain, LexDlo, OrderPoint, Plain


class Name:
    __slots__ = ("_k", "_h")

    def _set_key(self, k: tuple):
        object.__setattr__(self, "_k", k)
        object.__setattr__(self, "_h", hash(k))

    def key(self) -> tuple:
        return self._k

    def __eq__(self, other):
        return isinstance(other, Name) and (self is other or self._k == other._k)

    def __hash__(self):
        return self._h

    def __setattr__(self, *_):
        raise AttributeError("names are immutable")

    def children(self) -> Iterator[Name]:
        return iter(())


def _sorted_names(names: Iterable[Name]) -> tuple:
    return tuple(sorted(set(names), key=Name.key))


def _sorted_entries(entries: Iterable[tuple[Condition, Name]]) -> tuple:
    uniq = set((p, n) for p, n in entries)
    return tuple(sorted(uniq, key=lambda e: (e[0].sort_key(), e[1].key())))


class Check(Name):
    __slots__ = ("x",)

    def __init__(self, x: HF | int):
        if isinstance(x, int):
            x = nat(x)
        object.__setattr__(self, "x", x)
        self._set_key((0, x.key()))

    def __str__(self):
        return f"(check {self.x})"


class Gen(Name):
    """The name of the generic real added at coordinate ``i``."""

    __slots__ = ("i",)

    def __init__(self, i: OrderPoint):
        object.__setattr__(self, "i", i)
        self._set_key((1, i.sort_key()))

    def __str__(self):
        return f"(gen {self.i})"


class Bullet(Name):
    __slots__ = ("elems",)

    def __init__(self, elems: Iterable[Name] = ()):
        object.__setattr__(self, "elems", _sorted_names(elems))
        self._set_key((2, tuple(e.key() for e in self.elems)))

    def children(self):
        return iter(self.elems)

    def __str__(self):
        return "(bullet" + "".join(" " + str(e) for e in self.elems) + ")"


class OPair(Name):
    __slots__ = ("fst", "snd")

    def __init__(self, fst: Name, snd: Name):
        object.__setattr__(self, "fst", fst)
        object.__setattr__(self, "snd", snd)
        self._set_key((3, fst.key(), snd.key()))

    def children(self):
        return iter((self.fst, self.snd))

    def __str__(self):
        return f"(opair {self.fst} {self.snd})"


class Raw(Name):
    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[tuple[Condition, Name]] = ()):
        object.__setattr__(self, "entries", _sorted_entries(entries))
        self._set_key((4, tuple((p.sort_key(), n.key()) for p, n in self.entries)))

    def children(self):
        return (n for _, n in self.entries)

    def __str__(self):
        return "(raw" + "".join(f" ({p} {n})" for p, n in self.entries) + ")"


class Restrict(Name):
    __slots__ = ("inner", "p")

    def __init__(self, inner: Name, p: Condition):
        object.__setattr__(self, "inner", inner)
        object.__setattr__(self, "p", p)
        self._set_key((5, inner.key(), p.sort_key()))

    def children(self):
        return iter((self.inner,))

    def __str__(self):
        return f"(restrict {self.inner} {self.p})"


class Mix(Name):
    """Names glued along an antichain of conditions."""

    __slots__ = ("branches",)

    def __init__(self, branches: Iterable[tuple[Condition, Name]]):
        branches = _sorted_entries(branches)
        for i, (p, _) in enumerate(branches):
            for q, _ in branches[i + 1:]:
                if p.compatible(q):
                    raise NotAnAntichain(f"{p} and {q} are compatible")
        object.__setattr__(self, "branches", branches)
        self._set_key((6, tuple((p.sort_key(), n.key()) for p, n in branches)))

    def children(self):
        return (n for _, n in self.branches)

    def __str__(self):
        return "(mix" + "".join(f" ({p} {n})" for p, n in self.branches) + ")"


class BasedName(Name):
    """The bullet name of the pairs (generic at x, check F(x))."""

    __slots__ = ("F",)

    def __init__(self, F):
        object.__setattr__(self, "F", F)
        self._set_key((7, F.key()))

    def __str__(self):
        return str(self.F)


class PrecName(Name):
    """The name of the order inherited by the generic reals."""

    __slots__ = ("domain",)

    def __init__(self, domain: IndexDomain):
        object.__setattr__(self, "domain", domain)
        self._set_key((8, str(domain)))

    def __str__(self):
        return f"(prec {self.domain})"


def restrict(n: Name, p: Condition) -> Restrict:
    return Restrict(n, p)


def mix(branches: Iterable[tuple[Condition, Name]]) -> Mix:
    return Mix(branches)


def names_equal_structural(a: Name, b: Name) -> bool:
    return a == b


def kpair_bullet(a: Name, b: Name) -> Bullet:
    """The Kuratowski pair as an explicit bullet name."""
    return Bullet([Bullet([a]), Bullet([a, b])])


# ---------------------------------------------------------------- action

def apply_name(pi: Automorphism, n: Name) -> Name:
    if pi.is_identity:
        return n
    return _apply(pi, n, {})


def _apply(pi: Automorphism, n: Name, memo: dict) -> Name:
    got = memo.get(n)
    if got is not None:
        return got
    if isinstance(n, Check):
        out = n
    elif isinstance(n, Gen):
        out = Gen(pi.apply(n.i))
    elif isinstance(n, Bullet):
        out = Bullet(_apply(pi, e, memo) for e in n.elems)
    elif isinstance(n, OPair):
        out = OPair(_apply(pi, n.fst, memo), _apply(pi, n.snd, memo))
    elif isinstance(n, Raw):
        out = Raw((apply_condition(pi, p), _apply(pi, y, memo)) for p, y in n.entries)
    elif isinstance(n, Restrict):
        out = Restrict(_apply(pi, n.inner, memo), apply_condition(pi, n.p))
    elif isinstance(n, Mix):
        out = Mix((apply_condition(pi, p), _apply(pi, y, memo)) for p, y in n.branches)
    elif isinstance(n, BasedName):
        if not pi.order_preserving:
            raise VariantMismatch("based-function names move only under order automorphisms")
        # F o pi^-1 has base points pi[b]
        out = BasedName(n.F.moved(pi.apply))
    elif isinstance(n, PrecName):
        if not pi.order_preserving:
            raise VariantMismatch("the order name is only acted on by order automorphisms")
        out = n
    else:
        raise TypeError(f"not a name: {n!r}")
    memo[n] = out
    return out


# ---------------------------------------------------------------- supports

def structural_points(n: Name) -> frozenset:
    """Coordinates mentioned by n: generic indices, condition supports, base points."""
    acc: set = set()
    seen: set = set()
    stack = [n]
    while stack:
        m = stack.pop()
        if m in seen:
            continue
        seen.add(m)
        if isinstance(m, Gen):
            acc.add(m.i)
        elif isinstance(m, (Raw, Mix)):
            for p, _ in (m.entries if isinstance(m, Raw) else m.branches):
                acc |= p.supp()
        elif isinstance(m, Restrict):
            acc |= m.p.supp()
        elif isinstance(m, BasedName):
            acc |= {x for x, _ in m.F.steps}
        elif isinstance(m, PrecName):
            acc |= _prec_points(m.domain)
        stack.extend(m.children())
    return frozenset(acc)


def _prec_points(domain: IndexDomain) -> set:
    if isinstance(domain, (Dlo, LexDlo)):
        return set()
    if isinstance(domain, Plain) and domain.size is not None:
        return set(domain.points())
    raise NotInIdeal(f"the order name over {domain} has no finite support")


def support(n: Name, ideal: Ideal) -> Cut:
    """Least ideal member whose pointwise stabiliser fixes n structurally."""
    pts = structural_points(n)
    E = ideal.cover(pts)
    if E is None:
        raise NotInIdeal(f"support points {sorted(map(str, pts))} lie in no ideal member")
    return E


def subnames(n: Name) -> Iterator[Name]:
    """All names reachable from n, n included (each once)."""
    seen: set = set()
    stack = [n]
    while stack:
        m = stack.pop()
        if m in seen:
            continue
        seen.add(m)
        yield m
        stack.extend(m.children())


def raw_depth(n: Name) -> int:
    """Nesting depth of the name tree; check names count their von Neumann rank."""
    if isinstance(n, Check):
        return _hf_rank(n.x)
    if isinstance(n, Gen):
        return 2
    kids = list(n.children())
    if isinstance(n, OPair):
        return 2 + max(raw_depth(k) for k in kids)
    if isinstance(n, (BasedName, PrecName)):
        return 5
    return 1 + max((raw_depth(k) for k in kids), default=0)


def _hf_rank(x: HF) -> int:
    return 1 + max((_hf_rank(m) for m in x), default=-1) if len(x) else 0


__all__ = [
    "Name", "Check", "Gen", "Bullet", "OPair", "Raw", "Restrict", "Mix", "BasedName",
    "PrecName", "restrict", "mix", "apply_name", "support", "structural_points",
    "names_equal_structural", "subnames", "raw_depth", "kpair_bullet", "IDENTITY",
]
