"""Hereditarily finite sets with extensional equality."""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable


class HF:
    """A hereditarily finite set; members are HF sets, equality is extensional."""

    __slots__ = ("members", "_hash", "_key")

    def __init__(self, members: Iterable[HF] = ()):
        ms = frozenset(members)
        for m in ms:
            if not isinstance(m, HF):
                raise TypeError(f"HF member must be HF, got {m!r}")
        self.members = ms
        self._hash = hash(ms)
        self._key = None

    def __eq__(self, other):
        return isinstance(other, HF) and (self is other or self.members == other.members)

    def __hash__(self):
        return self._hash

    def __contains__(self, x):
        return x in self.members

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def key(self) -> tuple:
        """Canonical sortable form: sorted tuple of member keys, ranked by size first."""
        if self._key is None:
            self._key = tuple(sorted((m.key() for m in self.members), key=_key_order))
        return self._key

    def as_nat(self) -> int | None:
        """n if this set is the von Neumann ordinal n, else None."""
        n = len(self.members)
        return n if self == nat(n) else None

    def unpair(self) -> tuple[HF, HF] | None:
        """Decode a Kuratowski pair {{a}, {a, b}}; None if not a pair."""
        ms = list(self.members)
        if len(ms) == 1:
            (only,) = ms
            if len(only) == 1:
                (a,) = only.members
                return a, a
            return None
        if len(ms) != 2:
            return None
        small, big = sorted(ms, key=len)
        if len(small) != 1 or len(big) != 2 or not small.members <= big.members:
            return None
        (a,) = small.members
        (b,) = big.members - small.members
        return a, b

    def __str__(self):
        n = self.as_nat()
        if n is not None:
            return str(n)
        inner = sorted(self.members, key=lambda m: _key_order(m.key()))
        return "(set" + "".join(" " + str(m) for m in inner) + ")"

    __repr__ = __str__


def _key_order(k: tuple):
    return (_size(k), k)


def _size(k: tuple) -> int:
    return 1 + sum(_size(c) for c in k)


@lru_cache(maxsize=None)
def nat(n: int) -> HF:
    if n < 0:
        raise ValueError("von Neumann ordinals are natural numbers")
    if n == 0:
        return EMPTY
    prev = nat(n - 1)
    return HF(prev.members | {prev})


def pair(a: HF, b: HF) -> HF:
    return HF([HF([a]), HF([a, b])])


def hf_set(*members: HF) -> HF:
    return HF(members)


EMPTY = HF()
