"""Hypothesis strategies shared by the name and forcing tests."""
from hypothesis import strategies as st

from symx.group import Condition, PlainPerm
from symx.names import Bullet, Check, Gen, Mix, OPair, Raw, Restrict
from symx.order import Nat

PTS = [Nat(0), Nat(1), Nat(2)]
K = 1  # one slot keeps the reference oracle cheap at three coordinates


def cond_strategy(points=PTS, k=K, max_size=2):
    return st.dictionaries(st.tuples(st.sampled_from(points), st.integers(0, k - 1)),
                           st.integers(0, 1), max_size=max_size).map(Condition)


def antichain_strategy(points=PTS):
    """Conditions deciding a shared cell differently, so pairwise incompatible."""
    def build(cells_and_rows):
        cells, rows = cells_and_rows
        return [Condition(dict(zip(cells, row))) for row in rows]
    cells = st.lists(st.tuples(st.sampled_from(points), st.just(0)), min_size=1, max_size=2, unique=True)
    return cells.flatmap(lambda cs: st.tuples(
        st.just(cs), st.lists(st.tuples(*[st.integers(0, 1)] * len(cs)), min_size=1,
                              max_size=2 ** len(cs), unique=True))).map(build)


@st.composite
def names(draw, depth=2):
    if depth == 0 or draw(st.integers(0, 3)) == 0:
        if draw(st.booleans()):
            return Check(draw(st.integers(0, 2)))
        return Gen(draw(st.sampled_from(PTS)))
    kind = draw(st.sampled_from(["bullet", "opair", "raw", "restrict", "mix"]))
    sub = names(depth=depth - 1)
    if kind == "bullet":
        return Bullet(draw(st.lists(sub, max_size=2)))
    if kind == "opair":
        return OPair(draw(sub), draw(sub))
    if kind == "raw":
        return Raw(draw(st.lists(st.tuples(cond_strategy(), sub), min_size=1, max_size=2)))
    if kind == "restrict":
        return Restrict(draw(sub), draw(cond_strategy()))
    conds = draw(antichain_strategy())
    return Mix([(p, draw(sub)) for p in conds])


perms = st.permutations(range(3)).map(
    lambda img: PlainPerm(tuple((Nat(i), Nat(j)) for i, j in enumerate(img))))
