"""Combinatorics of the two permutation models.

Model I works with based functions: weakly decreasing maps from a linear
order into ``n`` whose non-top level sets have least elements.  Model II
works with sequence codes and their interleavings.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Iterable, Sequence

from .errors import (
    LengthMismatch, NotBased, NotInRange, OddLength, VariantMismatch, ZeroBound,
)
from .group import Automorphism
from .names import BasedName, PrecName, apply_name
from .order import Dlo, OrderPoint, cmp, Ordering


# ---------------------------------------------------------------- Model I

@dataclass(frozen=True)
class BasedFn:
    """``top`` on the initial segment below the first base point, then step values.

    The record is not validated on construction; ``is_based`` does that.
    """

    top: int
    steps: tuple = ()
    bound: int = 0

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple((x, int(v)) for x, v in self.steps))

    def eval(self, x: OrderPoint) -> int:
        value = self.top
        for b, v in self.steps:
            if cmp(b, x) is Ordering.GREATER:
                break
            value = v
        return value

    def base_points(self) -> list[OrderPoint]:
        return [b for b, _ in self.steps]

    def moved(self, image: Callable[[OrderPoint], OrderPoint]) -> BasedFn:
        """The function ``F o pi^-1`` for an order automorphism ``pi`` given pointwise."""
        return BasedFn(self.top, tuple((image(b), v) for b, v in self.steps), self.bound)

    def key(self) -> tuple:
        return (self.bound, self.top, tuple((b.sort_key(), v) for b, v in self.steps))

    def __str__(self):
        pts = "".join(f" (pt {b} {v})" for b, v in self.steps)
        return f"(based (bound {self.bound}) (top {self.top}){pts})"


def eval_based(f: BasedFn, x: OrderPoint) -> int:
    return f.eval(x)


def is_based(f: BasedFn) -> bool:
    if not (0 <= f.top < f.bound):
        return False
    prev_pt, prev_val = None, f.top
    for b, v in f.steps:
        if not isinstance(b, OrderPoint):
            return False
        if prev_pt is not None:
            try:
                if cmp(prev_pt, b) is not Ordering.LESS:
                    return False
            except VariantMismatch:
                return False
        if not (0 <= v < prev_val):
            return False
        prev_pt, prev_val = b, v
    return True


def normalize_steps(top: int, steps: Iterable[tuple[OrderPoint, int]]) -> tuple:
    """Drop steps that do not change the value."""
    out, current = [], top
    for b, v in steps:
        if v != current:
            out.append((b, v))
            current = v
    return tuple(out)


def _merged_points(*fns: BasedFn) -> list[OrderPoint]:
    pts = {b for f in fns for b, _ in f.steps}
    kinds = {type(b) for b in pts}
    if len(kinds) > 1:
        raise VariantMismatch("based functions over different orders")
    return sorted(pts, key=lambda b: b.sort_key())


def product_based(fn: BasedFn, fm: BasedFn, n: int, m: int) -> BasedFn:
    """The based function ``x -> m * fn(x) + fm(x)`` bounded by ``n * m``."""
    if n * m == 0:
        raise ZeroBound("the product of bounds is 0; A_0 is empty")
    for f, k in ((fn, n), (fm, m)):
        if not is_based(BasedFn(f.top, f.steps, k)):
            raise NotBased(f"{f} is not based with bound {k}")
    top = m * fn.top + fm.top
    steps = [(x, m * fn.eval(x) + fm.eval(x)) for x in _merged_points(fn, fm)]
    return BasedFn(top, normalize_steps(top, steps), n * m)


def unproduct_based(f: BasedFn, n: int, m: int) -> tuple[BasedFn, BasedFn]:
    if n * m == 0:
        raise ZeroBound("the product of bounds is 0; A_0 is empty")
    values = [f.top] + [v for _, v in f.steps]
    bad = [v for v in values if not 0 <= v < n * m]
    if bad:
        raise NotInRange(f"value {bad[0]} is outside 0..{n * m - 1}")
    hi_top, lo_top = divmod(f.top, m)
    hi = BasedFn(hi_top, normalize_steps(hi_top, ((b, v // m) for b, v in f.steps)), n)
    lo = BasedFn(lo_top, normalize_steps(lo_top, ((b, v % m) for b, v in f.steps)), m)
    # the product map is injective but not onto: a remainder may increase
    if not (is_based(hi) and is_based(lo)):
        raise NotInRange(f"{f} is not the product of two based functions")
    return hi, lo


def in_product_range(f: BasedFn, n: int, m: int) -> bool:
    try:
        unproduct_based(f, n, m)
    except NotInRange:
        return False
    return True


def based_name(f: BasedFn) -> BasedName:
    return BasedName(f)


@dataclass(frozen=True)
class AnFamily:
    """Intensional description of the family of based functions into ``n``."""

    n: int

    def contains(self, f: BasedFn) -> bool:
        return is_based(BasedFn(f.top, f.steps, self.n))

    def enumerate(self, grid: Sequence[OrderPoint]) -> list[BasedFn]:
        """All members whose base points lie in ``grid``."""
        if self.n == 0:
            return []
        grid = sorted(set(grid), key=lambda b: b.sort_key())
        out = []
        # a member is a weakly decreasing assignment of values to the g+1 grid intervals
        for vals in itertools.combinations_with_replacement(range(self.n - 1, -1, -1), len(grid) + 1):
            top = vals[0]
            out.append(BasedFn(top, normalize_steps(top, zip(grid, vals[1:])), self.n))
        return out

    def count_on_grid(self, g: int) -> int:
        return comb(g + self.n, self.n - 1) if self.n else 0

    def invariant_under(self, pi: Automorphism, grid: Sequence[OrderPoint]) -> bool:
        """Every grid member moved by pi is again a member."""
        if not pi.order_preserving:
            raise VariantMismatch("the family is only acted on by order automorphisms")
        return all(self.contains(f.moved(pi.apply)) for f in self.enumerate(grid))


def a_n_descriptor(n: int) -> AnFamily:
    if n < 0:
        raise ValueError("n must be a natural number")
    return AnFamily(n)


def prec_name_check(pi: Automorphism, domain=None) -> bool:
    if not pi.order_preserving:
        raise VariantMismatch(f"{type(pi).__name__} is not an order automorphism")
    name = PrecName(domain if domain is not None else Dlo())
    return apply_name(pi, name) == name


# ---------------------------------------------------------------- Model II

@dataclass(frozen=True)
class SeqCode:
    """A finite prefix of an omega-sequence, tagged with the row it codes for."""

    prefix: tuple = ()
    tag: int = 0

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(int(v) for v in self.prefix))

    @property
    def is_zero(self) -> bool:
        return not any(self.prefix)

    def __len__(self):
        return len(self.prefix)


def interleave(f: SeqCode, g: SeqCode) -> SeqCode:
    if len(f) != len(g):
        raise LengthMismatch(f"prefixes of lengths {len(f)} and {len(g)}")
    h = [0] * (2 * len(f))
    h[0::2] = f.prefix
    h[1::2] = g.prefix
    return SeqCode(tuple(h), f.tag)


def deinterleave(h: SeqCode) -> tuple[SeqCode, SeqCode]:
    if len(h) % 2:
        raise OddLength(f"prefix of odd length {len(h)}")
    return SeqCode(h.prefix[0::2], h.tag), SeqCode(h.prefix[1::2], h.tag)


@dataclass(frozen=True)
class ASCode:
    """An element of the product over rows in S; rows outside S are zero."""

    S: frozenset
    components: tuple = ()
    _mask: int = field(default=0, compare=False, repr=False)

    def __post_init__(self):
        S = frozenset(int(n) for n in self.S)
        comps = self.components.items() if isinstance(self.components, dict) else self.components
        comps = tuple(sorted(((int(r), c if isinstance(c, SeqCode) else SeqCode(c, int(r)))
                              for r, c in comps), key=lambda rc: rc[0]))
        rows = [r for r, _ in comps]
        if len(set(rows)) != len(rows) or set(rows) != S:
            raise ValueError(f"components must be given exactly on S = {sorted(S)}")
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "components", comps)
        mask = 0
        for r, c in comps:
            if not c.is_zero:
                mask |= 1 << r
        object.__setattr__(self, "_mask", mask)

    def component(self, row: int) -> SeqCode:
        for r, c in self.components:
            if r == row:
                return c
        raise KeyError(row)

    def support(self) -> frozenset:
        return frozenset(r for r, c in self.components if not c.is_zero)

    def support_mask(self) -> int:
        return self._mask

    def in_family(self, U: Iterable[int]) -> bool:
        """Membership in A_U: every nonzero component sits on a row of U."""
        return self.support() <= frozenset(U)

    def __str__(self):
        rows = "".join(f" (row {r} ({' '.join(map(str, c.prefix))}))" for r, c in self.components)
        return f"(ascode (s{''.join(' ' + str(n) for n in sorted(self.S))}){rows})"


def product_code(a: ASCode, b: ASCode) -> ASCode:
    comps = {}
    for r in a.S | b.S:
        if r in a.S and r in b.S:
            comps[r] = interleave(a.component(r), b.component(r))
        else:
            comps[r] = (a if r in a.S else b).component(r)
    return ASCode(a.S | b.S, comps)


def unproduct_code(c: ASCode, S: Iterable[int], T: Iterable[int]) -> tuple[ASCode, ASCode]:
    S, T = frozenset(S), frozenset(T)
    if c.S != S | T:
        raise ValueError("code rows do not match S union T")
    left, right = {}, {}
    for r in c.S:
        if r in S and r in T:
            left[r], right[r] = deinterleave(c.component(r))
        elif r in S:
            left[r] = c.component(r)
        else:
            right[r] = c.component(r)
    return ASCode(S, left), ASCode(T, right)


def zero_code(S: Iterable[int] = (), length: int = 1) -> ASCode:
    return ASCode(frozenset(S), {r: SeqCode((0,) * length, r) for r in S})


def code_universe(rows: Iterable[int], lengths: Iterable[int] = (1, 2, 3, 4),
                  words: str = "sparse") -> list[ASCode]:
    """Small codes over ``rows``.

    ``sparse`` gives each row the zero word or the word 0...01; ``full``
    lets each row range over every binary word of the given length.
    """
    rows = sorted(set(rows))
    out = []
    for n in lengths:
        if words == "full":
            choices = list(itertools.product((0, 1), repeat=n))
        else:
            choices = [(0,) * n, (0,) * (n - 1) + (1,)]
        for combo in itertools.product(choices, repeat=len(rows)):
            out.append(ASCode(frozenset(rows), dict(zip(rows, combo))))
    return out


@dataclass(frozen=True)
class LawReport:
    holds: bool
    witness_support: frozenset
    checked: int
    counterexample: ASCode | None = None


def intersect_code_law(S: Iterable[int], T: Iterable[int], codes: Sequence[ASCode] | None = None) -> LawReport:
    """Check A_S and A_T meet exactly in A_(S n T) over a finite code grid."""
    S, T = frozenset(S), frozenset(T)
    if codes is None:
        outside = next(r for r in itertools.count() if r not in S | T)
        codes = code_universe(S | T | {outside})
    meet = S & T
    for c in codes:
        if (c.in_family(S) and c.in_family(T)) != c.in_family(meet):
            return LawReport(False, meet, len(codes), c)
    return LawReport(True, meet, len(codes))


def family_masks(codes: Sequence[ASCode], subsets: Iterable[int]) -> dict[int, int]:
    """For each subset (as a row bitmask) the bitset of code indices in its family."""
    out = {}
    for s in subsets:
        rows = [r for r in range(s.bit_length()) if s >> r & 1]
        bits = 0
        for i, c in enumerate(codes):
            if c.in_family(rows):
                bits |= 1 << i
        out[s] = bits
    return out


def generic_atom_from_code(T, bits: Sequence[int]) -> int:
    """Read a prefix of bits as an atom of a truncated poset, cell by cell."""
    need = T.n_cells
    if len(bits) < need:
        raise LengthMismatch(f"need {need} bits, got {len(bits)}")
    atom = 0
    for c in range(need):
        if bits[c]:
            atom |= 1 << c
    return atom
