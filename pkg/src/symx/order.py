"""Linear orders and index domains for the forcing coordinates.

Points come in four variants: naturals, exact rationals, points of a
lexicographic product ``blocks x Q`` and points of the product domain
``omega x omega``.  Comparison is only defined inside one variant.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import Iterable, Union

from .errors import NoPointBetween, ParseError, VariantMismatch

__all__ = [
    "Ordering", "OrderPoint", "Nat", "Rat", "Lex", "Prod",
    "IndexDomain", "Plain", "Dlo", "LexDlo", "ProdOmega",
    "Cut", "FiniteSet", "InitialSegment",
    "cmp", "between", "cut_contains", "parse_point", "parse_rational",
    "format_rational", "cut_points", "cut_subset", "cut_union",
]


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}") from exc


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class OrderPoint:
    """Common base of the point variants."""

    __slots__ = ()
    rank: int = -1

    def sort_key(self) -> tuple:
        """Total key across variants, used only for canonical ordering."""
        raise NotImplementedError

    def __lt__(self, other: OrderPoint) -> bool:
        return cmp(self, other) is Ordering.LESS

    def __le__(self, other: OrderPoint) -> bool:
        return cmp(self, other) is not Ordering.GREATER

    def __gt__(self, other: OrderPoint) -> bool:
        return cmp(self, other) is Ordering.GREATER

    def __ge__(self, other: OrderPoint) -> bool:
        return cmp(self, other) is not Ordering.LESS


@dataclass(frozen=True, eq=True, order=False)
class Nat(OrderPoint):
    n: int
    rank = 0

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError(f"Nat needs a natural number, got {self.n!r}")

    def sort_key(self) -> tuple:
        return (0, self.n)

    def __str__(self) -> str:
        return f"n:{self.n}"


@dataclass(frozen=True, eq=True, order=False)
class Rat(OrderPoint):
    q: Fraction
    rank = 1

    def __post_init__(self):
        if not isinstance(self.q, Fraction):
            object.__setattr__(self, "q", Fraction(self.q))

    def sort_key(self) -> tuple:
        return (1, self.q)

    def __str__(self) -> str:
        return f"q:{format_rational(self.q)}"


@dataclass(frozen=True, eq=True, order=False)
class Lex(OrderPoint):
    block: int
    q: Fraction
    rank = 2

    def __post_init__(self):
        if not isinstance(self.block, int) or self.block < 0:
            raise ValueError(f"Lex block must be a natural number, got {self.block!r}")
        if not isinstance(self.q, Fraction):
            object.__setattr__(self, "q", Fraction(self.q))

    def sort_key(self) -> tuple:
        return (2, self.block, self.q)

    def __str__(self) -> str:
        return f"lex:{self.block},{format_rational(self.q)}"


@dataclass(frozen=True, eq=True, order=False)
class Prod(OrderPoint):
    row: int
    col: int
    rank = 3

    def __post_init__(self):
        if self.row < 0 or self.col < 0:
            raise ValueError("Prod coordinates must be natural numbers")

    def sort_key(self) -> tuple:
        return (3, self.row, self.col)

    def __str__(self) -> str:
        return f"prod:{self.row},{self.col}"


def _same_variant(a: OrderPoint, b: OrderPoint) -> None:
    if type(a) is not type(b):
        raise VariantMismatch(f"cannot compare {a} with {b}")


def cmp(a: OrderPoint, b: OrderPoint) -> Ordering:
    _same_variant(a, b)
    ka, kb = a.sort_key(), b.sort_key()
    if ka < kb:
        return Ordering.LESS
    if ka > kb:
        return Ordering.GREATER
    return Ordering.EQUAL


def between(a: OrderPoint, b: OrderPoint) -> OrderPoint:
    """A point strictly between ``a`` and ``b`` (requires ``a < b``)."""
    _same_variant(a, b)
    if isinstance(a, (Nat, Prod)):
        raise NoPointBetween(f"{type(a).__name__} is not a dense order")
    if cmp(a, b) is not Ordering.LESS:
        raise NoPointBetween(f"empty interval ({a}, {b})")
    if isinstance(a, Rat):
        return Rat((a.q + b.q) / 2)
    if a.block == b.block:
        return Lex(a.block, (a.q + b.q) / 2)
    # the lower block is unbounded above
    return Lex(a.block, a.q + 1)


# ---------------------------------------------------------------- domains

class IndexDomain:
    """The index set X of Add(omega, X)."""

    __slots__ = ()

    def admits(self, x: OrderPoint) -> bool:
        raise NotImplementedError

    @property
    def ordered(self) -> bool:
        return False


@dataclass(frozen=True)
class Plain(IndexDomain):
    size: int | None = None  # None means unbounded

    def admits(self, x):
        return isinstance(x, Nat) and (self.size is None or x.n < self.size)

    def points(self) -> list[Nat]:
        if self.size is None:
            raise ValueError("unbounded plain domain has no finite point list")
        return [Nat(i) for i in range(self.size)]

    def __str__(self):
        return f"(plain {'inf' if self.size is None else self.size})"


@dataclass(frozen=True)
class Dlo(IndexDomain):
    def admits(self, x):
        return isinstance(x, Rat)

    @property
    def ordered(self):
        return True

    def __str__(self):
        return "dlo"


@dataclass(frozen=True)
class LexDlo(IndexDomain):
    blocks: int

    def admits(self, x):
        return isinstance(x, Lex) and x.block < self.blocks

    @property
    def ordered(self):
        return True

    def __str__(self):
        return f"(lexdlo {self.blocks})"


@dataclass(frozen=True)
class ProdOmega(IndexDomain):
    rows: int | None = None

    def admits(self, x):
        return isinstance(x, Prod) and (self.rows is None or x.row < self.rows)

    def __str__(self):
        return f"(prodomega {'inf' if self.rows is None else self.rows})"


# ---------------------------------------------------------------- cuts

class Cut:
    __slots__ = ()


@dataclass(frozen=True)
class FiniteSet(Cut):
    points: frozenset = frozenset()

    def __post_init__(self):
        if not isinstance(self.points, frozenset):
            object.__setattr__(self, "points", frozenset(self.points))

    def sorted(self) -> list[OrderPoint]:
        return sorted(self.points, key=lambda p: p.sort_key())

    def __str__(self):
        return "{" + ", ".join(str(p) for p in self.sorted()) + "}"


@dataclass(frozen=True)
class InitialSegment(Cut):
    bound: OrderPoint
    inclusive: bool = True

    def __str__(self):
        return f"({'<=' if self.inclusive else '<'} {self.bound})"


def cut_contains(E: Cut, x: OrderPoint) -> bool:
    if isinstance(E, FiniteSet):
        for p in E.points:
            _same_variant(p, x)
        return x in E.points
    order = cmp(x, E.bound)
    return order is Ordering.LESS or (E.inclusive and order is Ordering.EQUAL)


def cut_points(E: Cut) -> Iterable[OrderPoint]:
    """The listable points of a cut; initial segments over naturals are finite."""
    if isinstance(E, FiniteSet):
        return E.sorted()
    b = E.bound
    if isinstance(b, Nat):
        top = b.n + 1 if E.inclusive else b.n
        return [Nat(i) for i in range(top)]
    raise ValueError(f"initial segment {E} is not a finite point set")


def cut_subset(A: Cut, B: Cut) -> bool:
    """Whether A is contained in B."""
    if isinstance(A, FiniteSet):
        return all(cut_contains(B, x) for x in A.points)
    if isinstance(B, FiniteSet):
        if isinstance(A.bound, Nat):
            return all(x in B.points for x in cut_points(A))
        return False
    order = cmp(A.bound, B.bound)
    if order is Ordering.LESS:
        return True
    if order is Ordering.EQUAL:
        return B.inclusive or not A.inclusive
    return False


def cut_union(cuts: Iterable[Cut]) -> Cut:
    """Least cut covering the union of finitely many cuts.

    Finite sets stay finite sets.  Once an initial segment is involved the
    result is the initial segment up to the largest bound or point.
    """
    cuts = list(cuts)
    finite: set = set()
    best: InitialSegment | None = None
    for E in cuts:
        if isinstance(E, FiniteSet):
            finite |= E.points
        elif best is None:
            best = E
        else:
            order = cmp(E.bound, best.bound)
            if order is Ordering.GREATER or (order is Ordering.EQUAL and E.inclusive):
                best = E
    if best is None:
        return FiniteSet(frozenset(finite))
    for x in finite:
        if not cut_contains(best, x):
            best = InitialSegment(x, True)
    return best


PointLike = Union[OrderPoint, int]


def parse_point(text: str) -> OrderPoint:
    """Parse ``n:5``, ``q:3/4``, ``lex:2,3/4`` or ``prod:1,7``; bare integers are naturals."""
    text = text.strip()
    if ":" not in text:
        try:
            return Nat(int(text))
        except ValueError as exc:
            raise ParseError(f"bad point {text!r}") from exc
    tag, _, body = text.partition(":")
    try:
        if tag == "n":
            return Nat(int(body))
        if tag == "q":
            return Rat(parse_rational(body))
        if tag == "lex":
            block, _, q = body.partition(",")
            return Lex(int(block), parse_rational(q))
        if tag == "prod":
            row, _, col = body.partition(",")
            return Prod(int(row), int(col))
    except ValueError as exc:
        raise ParseError(f"bad point {text!r}") from exc
    raise ParseError(f"unknown point tag {tag!r} in {text!r}")
