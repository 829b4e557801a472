"""Reference semantics used as test oracles.

Names are evaluated to nested frozensets under a total assignment
``g: (point, slot) -> bit``.  Nothing here calls the package's evaluator or
forcing code; only the name and condition records are shared.
"""
from __future__ import annotations

import itertools

from symx.forcing import And, AppliesInto, Elem, Eq, IsFunctionOn, Not, Or
from symx.names import BasedName, Bullet, Check, Gen, Mix, OPair, PrecName, Raw, Restrict
from symx.order import cmp, Ordering


def von_neumann(n: int) -> frozenset:
    out = frozenset()
    for _ in range(n):
        out = out | {out}
    return out


def hf_to_fs(x) -> frozenset:
    return frozenset(hf_to_fs(m) for m in x.members)


def kpair(a, b) -> frozenset:
    return frozenset({frozenset({a}), frozenset({a, b})})


def holds(p, g: dict) -> bool:
    return all(g[cell] == bit for cell, bit in p.items())


def ref_val(n, g: dict, points, k: int) -> frozenset:
    if isinstance(n, Check):
        return hf_to_fs(n.x)
    if isinstance(n, Gen):
        return frozenset(von_neumann(j) for j in range(k) if g[(n.i, j)])
    if isinstance(n, Bullet):
        return frozenset(ref_val(e, g, points, k) for e in n.elems)
    if isinstance(n, OPair):
        return kpair(ref_val(n.fst, g, points, k), ref_val(n.snd, g, points, k))
    if isinstance(n, Raw):
        return frozenset(ref_val(y, g, points, k) for p, y in n.entries if holds(p, g))
    if isinstance(n, Restrict):
        # below p the restriction agrees with the name; elsewhere it is empty
        return ref_val(n.inner, g, points, k) if holds(n.p, g) else frozenset()
    if isinstance(n, Mix):
        for p, y in n.branches:
            if holds(p, g):
                return ref_val(y, g, points, k)
        return frozenset()
    if isinstance(n, BasedName):
        return frozenset(kpair(ref_val(Gen(x), g, points, k), von_neumann(n.F.eval(x)))
                         for x in points)
    if isinstance(n, PrecName):
        return frozenset(kpair(ref_val(Gen(x), g, points, k), ref_val(Gen(y), g, points, k))
                         for x in points for y in points if cmp(x, y) is Ordering.LESS)
    raise TypeError(n)


def _images(graph, x):
    out = set()
    for m in graph:
        parts = list(m)
        if len(parts) == 1 and len(parts[0]) == 1:
            (a,) = parts[0]
            if a == x:
                out.add(a)
        elif len(parts) == 2:
            small, big = sorted(parts, key=len)
            if len(small) == 1 and len(big) == 2 and small <= big:
                (a,) = small
                (b,) = big - small
                if a == x:
                    out.add(b)
    return out


def ref_truth(phi, g: dict, points, k: int) -> bool:
    v = lambda n: ref_val(n, g, points, k)
    if isinstance(phi, Elem):
        return v(phi.a) in v(phi.b)
    if isinstance(phi, Eq):
        return v(phi.a) == v(phi.b)
    if isinstance(phi, Not):
        return not ref_truth(phi.f, g, points, k)
    if isinstance(phi, And):
        return ref_truth(phi.f, g, points, k) and ref_truth(phi.g, g, points, k)
    if isinstance(phi, Or):
        return ref_truth(phi.f, g, points, k) or ref_truth(phi.g, g, points, k)
    if isinstance(phi, IsFunctionOn):
        graph = v(phi.f)
        return all(len(_images(graph, v(x))) == 1 for x in phi.xs)
    if isinstance(phi, AppliesInto):
        target = v(phi.A)
        return any(b in target for b in _images(v(phi.f), v(phi.x)))
    raise TypeError(phi)


def atoms(points, k: int, p=None):
    """All total assignments extending p."""
    cells = [(x, j) for x in points for j in range(k)]
    for bits in itertools.product((0, 1), repeat=len(cells)):
        g = dict(zip(cells, bits))
        if p is None or holds(p, g):
            yield g


def ref_forces(p, phi, points, k: int) -> bool:
    """On a finite atomic poset, p forces phi iff phi holds at every atom below p."""
    return all(ref_truth(phi, g, points, k) for g in atoms(points, k, p))
