"""S-expression reader and printers for automorphisms, names, conditions,
formulas, cuts, based functions and sequence codes."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError
from .forcing import And, AppliesInto, Elem, Eq, IsFunctionOn, Not, Or
from .group import IDENTITY, Condition, PlainPerm, PlMap, ProdPerm
from .hf import HF, nat
from .models import ASCode, BasedFn, SeqCode
from .names import (
    BasedName, Bullet, Check, Gen, Mix, OPair, PrecName, Raw, Restrict,
)
from .order import (
    Dlo, FiniteSet, InitialSegment, LexDlo, Nat, Plain, ProdOmega, parse_point,
    parse_rational,
)


@dataclass(frozen=True)
class Atom:
    text: str
    pos: int


@dataclass(frozen=True)
class SList:
    items: tuple
    pos: int

    @property
    def head(self) -> str | None:
        if self.items and isinstance(self.items[0], Atom):
            return self.items[0].text
        return None

    @property
    def args(self) -> tuple:
        return self.items[1:]


def read(text: str):
    """Read exactly one s-expression."""
    expr, pos = _read(text, _skip(text, 0))
    pos = _skip(text, pos)
    if pos != len(text):
        raise ParseError("trailing input after expression", pos)
    return expr


def _skip(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _read(text: str, pos: int):
    if pos >= len(text):
        raise ParseError("unexpected end of input", pos)
    ch = text[pos]
    if ch == ")":
        raise ParseError("unexpected ')'", pos)
    if ch == "(":
        start, items = pos, []
        pos = _skip(text, pos + 1)
        while True:
            if pos >= len(text):
                raise ParseError("unclosed '('", start)
            if text[pos] == ")":
                return SList(tuple(items), start), pos + 1
            item, pos = _read(text, pos)
            items.append(item)
            pos = _skip(text, pos)
    end = pos
    while end < len(text) and not text[end].isspace() and text[end] not in "()":
        end += 1
    return Atom(text[pos:end], pos), end


# ---------------------------------------------------------------- helpers

def _list(e, head: str | None = None, n: int | None = None) -> SList:
    if not isinstance(e, SList):
        raise ParseError(f"expected a list{f' ({head} ...)' if head else ''}", e.pos)
    if head is not None and e.head != head:
        raise ParseError(f"expected ({head} ...)", e.pos)
    if n is not None and len(e.args) != n:
        raise ParseError(f"({e.head} ...) takes {n} argument(s)", e.pos)
    return e


def _atom(e) -> str:
    if not isinstance(e, Atom):
        raise ParseError("expected an atom", e.pos)
    return e.text


def _int(e) -> int:
    try:
        return int(_atom(e))
    except ValueError:
        raise ParseError(f"expected an integer, got {e.text!r}", e.pos) from None


def _rat(e) -> Fraction:
    try:
        return parse_rational(_atom(e))
    except ParseError:
        raise ParseError(f"expected a rational, got {e.text!r}", e.pos) from None


def _point(e):
    try:
        return parse_point(_atom(e))
    except (ParseError, ValueError):
        raise ParseError(f"bad point {getattr(e, 'text', '')!r}", e.pos) from None


def _wrap(fn, e):
    try:
        return fn()
    except ParseError:
        raise
    except (ValueError, TypeError) as exc:
        raise ParseError(str(exc), e.pos) from None


# ---------------------------------------------------------------- domain objects

def to_automorphism(e):
    e = _list(e)
    h = e.head
    if h == "id":
        return IDENTITY
    if h == "perm":
        pairs = []
        for item in e.args:
            item = _list(item, n=None)
            if len(item.items) != 2:
                raise ParseError("perm entries are (x y) pairs", item.pos)
            pairs.append((_point(item.items[0]), _point(item.items[1])))
        return _wrap(lambda: PlainPerm(tuple(pairs)), e)
    if h == "pl":
        block, bps = None, []
        for item in e.args:
            item = _list(item)
            if item.head == "block":
                block = _int(_list(item, "block", 1).args[0])
                continue
            if len(item.items) != 2:
                raise ParseError("pl breakpoints are (x y) pairs", item.pos)
            bps.append((_rat(item.items[0]), _rat(item.items[1])))
        return _wrap(lambda: PlMap(tuple(bps), block), e)
    if h == "prodperm":
        rows = []
        for item in e.args:
            item = _list(item, "row", 2)
            rows.append((_int(item.args[0]), to_automorphism(item.args[1])))
        return _wrap(lambda: ProdPerm(tuple(rows)), e)
    raise ParseError(f"unknown automorphism form {h!r}", e.pos)


def to_condition(e) -> Condition:
    e = _list(e, "cond")
    entries = []
    for item in e.args:
        item = _list(item)
        if len(item.items) != 2:
            raise ParseError("condition entries are ((point slot) bit)", item.pos)
        key = _list(item.items[0])
        if len(key.items) != 2:
            raise ParseError("condition keys are (point slot)", key.pos)
        entries.append(((_point(key.items[0]), _int(key.items[1])), _int(item.items[1])))
    return _wrap(lambda: Condition(entries), e)


def to_hf(e) -> HF:
    if isinstance(e, Atom):
        n = _int(e)
        if n < 0:
            raise ParseError("ordinals are natural numbers", e.pos)
        return nat(n)
    e = _list(e, "set")
    return HF(to_hf(m) for m in e.args)


def to_domain(e):
    if isinstance(e, Atom):
        if e.text == "dlo":
            return Dlo()
        raise ParseError(f"unknown domain {e.text!r}", e.pos)
    e = _list(e)
    h = e.head
    arg = e.args[0] if len(e.args) == 1 else None
    size = None if arg is None or _atom(arg) == "inf" else _int(arg)
    if h == "plain":
        return Plain(size)
    if h == "lexdlo":
        return LexDlo(_int(e.args[0]))
    if h == "prodomega":
        return ProdOmega(size)
    if h == "dlo":
        return Dlo()
    raise ParseError(f"unknown domain {h!r}", e.pos)


def to_based(e) -> BasedFn:
    e = _list(e, "based")
    top, bound, steps = None, None, []
    for item in e.args:
        item = _list(item)
        if item.head == "top":
            top = _int(_list(item, "top", 1).args[0])
        elif item.head == "bound":
            bound = _int(_list(item, "bound", 1).args[0])
        elif item.head == "pt":
            item = _list(item, "pt", 2)
            steps.append((_point(item.args[0]), _int(item.args[1])))
        else:
            raise ParseError(f"unknown based-function field {item.head!r}", item.pos)
    if top is None:
        raise ParseError("based function needs (top t)", e.pos)
    if bound is None:
        bound = max([top] + [v for _, v in steps]) + 1
    return BasedFn(top, tuple(steps), bound)


def to_name(e):
    e = _list(e)
    h, a = e.head, e.args
    if h == "check":
        return Check(to_hf(_list(e, n=1).args[0]))
    if h == "gen":
        return Gen(_point(_list(e, n=1).args[0]))
    if h == "bullet":
        return Bullet(to_name(x) for x in a)
    if h == "opair":
        _list(e, n=2)
        return OPair(to_name(a[0]), to_name(a[1]))
    if h in ("raw", "mix"):
        entries = []
        for item in a:
            item = _list(item)
            if len(item.items) != 2:
                raise ParseError(f"{h} entries are (condition name)", item.pos)
            entries.append((to_condition(item.items[0]), to_name(item.items[1])))
        return Raw(entries) if h == "raw" else _wrap(lambda: Mix(entries), e)
    if h == "restrict":
        _list(e, n=2)
        return Restrict(to_name(a[0]), to_condition(a[1]))
    if h == "based":
        return BasedName(to_based(e))
    if h == "prec":
        return PrecName(to_domain(_list(e, n=1).args[0]))
    raise ParseError(f"unknown name form {h!r}", e.pos)


def to_formula(e):
    e = _list(e)
    h, a = e.head, e.args
    if h in ("elem", "eq"):
        _list(e, n=2)
        return (Elem if h == "elem" else Eq)(to_name(a[0]), to_name(a[1]))
    if h == "not":
        return Not(to_formula(_list(e, n=1).args[0]))
    if h in ("and", "or"):
        _list(e, n=2)
        return (And if h == "and" else Or)(to_formula(a[0]), to_formula(a[1]))
    if h == "isfun":
        if not a:
            raise ParseError("isfun needs a function name", e.pos)
        return IsFunctionOn(to_name(a[0]), tuple(to_name(x) for x in a[1:]))
    if h == "into":
        _list(e, n=3)
        return AppliesInto(to_name(a[0]), to_name(a[1]), to_name(a[2]))
    raise ParseError(f"unknown formula form {h!r}", e.pos)


def to_cut(e):
    """``(fin p ...)``, ``(le p)`` or ``(lt p)``."""
    e = _list(e)
    if e.head == "fin":
        return FiniteSet(frozenset(_point(x) for x in e.args))
    if e.head in ("le", "lt"):
        return InitialSegment(_point(_list(e, n=1).args[0]), e.head == "le")
    raise ParseError(f"unknown cut form {e.head!r}", e.pos)


def to_ascode(e) -> ASCode:
    e = _list(e, "ascode")
    S, comps = None, {}
    for item in e.args:
        item = _list(item)
        if item.head == "s":
            S = frozenset(_int(x) for x in item.args)
        elif item.head == "row":
            item = _list(item, "row", 2)
            r = _int(item.args[0])
            word = _list(item.args[1])
            comps[r] = SeqCode(tuple(_int(x) for x in word.items), r)
        else:
            raise ParseError(f"unknown ascode field {item.head!r}", item.pos)
    if S is None:
        S = frozenset(comps)
    return _wrap(lambda: ASCode(S, comps), e)


_NAME_HEADS = {"check", "gen", "bullet", "opair", "raw", "restrict", "mix", "based", "prec"}
_AUTO_HEADS = {"perm", "pl", "prodperm", "id"}
_FORMULA_HEADS = {"elem", "eq", "not", "and", "or", "isfun", "into"}


def parse(text: str):
    """Parse any supported object, dispatching on the head symbol."""
    e = read(text)
    if not isinstance(e, SList) or e.head is None:
        raise ParseError("expected a form like (head ...)", e.pos)
    h = e.head
    if h in _NAME_HEADS:
        return to_name(e)
    if h in _AUTO_HEADS:
        return to_automorphism(e)
    if h in _FORMULA_HEADS:
        return to_formula(e)
    if h == "cond":
        return to_condition(e)
    if h in ("fin", "le", "lt"):
        return to_cut(e)
    if h == "ascode":
        return to_ascode(e)
    raise ParseError(f"unknown form {h!r}", e.pos)


def parse_name(text: str):
    return to_name(read(text))


def parse_automorphism(text: str):
    return to_automorphism(read(text))


def parse_condition(text: str) -> Condition:
    return to_condition(read(text))


def parse_formula(text: str):
    return to_formula(read(text))
