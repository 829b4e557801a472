"""symx: a workbench for forcing names and symmetric systems on truncated
Cohen posets."""

from .errors import SymxError
from .order import Nat, Rat, Lex, Prod, FiniteSet, InitialSegment, cmp, between, cut_contains
from .group import (
    Condition, PlainPerm, PlMap, ProdPerm, IDENTITY, compose, invert, apply_condition,
    conjugate_fix, find_automorphism, Constraints, orbits,
)
from .names import Check, Gen, Bullet, OPair, Raw, Restrict, Mix, BasedName, PrecName, apply_name, support
from .forcing import TruncatedPoset, forces, forces_oracle, Elem, Eq, Not, And, Or, IsFunctionOn

__version__ = "0.1.0"
