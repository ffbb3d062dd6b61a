"""Hypothesis strategies for Conway symbols."""

from hypothesis import strategies as st

from knotforge import conway as cw

nonzero = st.integers(-6, 6).filter(lambda k: k != 0)
positive = st.integers(1, 5)


def sequences(values=positive, min_size=2, max_size=5):
    return st.lists(values, min_size=min_size, max_size=max_size).map(
        lambda vs: cw.Sequence(tuple(cw.IntegerTangle(v) for v in vs)))


integers = nonzero.map(cw.IntegerTangle)

leaves = st.one_of(integers, sequences(positive))


def _ram(children):
    return st.lists(children, min_size=2, max_size=3).map(lambda cs: cw.Ramification(tuple(cs)))


def _product(children):
    return st.lists(children, min_size=2, max_size=3).map(lambda cs: cw.Product(tuple(cs)))


asts = st.recursive(
    leaves,
    lambda kids: st.one_of(
        _ram(kids),
        _product(st.one_of(integers, _ram(kids))),
        kids.map(cw.Negation),
        st.tuples(kids, st.one_of(st.none(), st.integers(1, 3).map(cw.IntegerTangle))).map(
            lambda bt: cw.Plus(bt[0], bt[1])),
    ),
    max_leaves=6,
)

# all-positive rational symbols: alternating, reduced knot or link diagrams
rational_symbols = st.lists(positive, min_size=1, max_size=5).map(
    lambda vs: " ".join(map(str, vs)))
