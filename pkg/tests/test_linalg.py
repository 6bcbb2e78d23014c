from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from dyshift._linalg import Echelon, rank_and_kernel

entries = st.integers(-3, 3)


def _dense(cols, nrows):
    return [[cols[j].get(i, 0) for j in range(len(cols))] for i in range(nrows)]


@st.composite
def sparse_columns(draw):
    nrows = draw(st.integers(1, 6))
    ncols = draw(st.integers(1, 7))
    cols = []
    for _ in range(ncols):
        col = {i: Fraction(draw(entries)) for i in range(nrows)}
        cols.append({i: c for i, c in col.items() if c})
    return nrows, cols


@settings(max_examples=150, deadline=None)
@given(sparse_columns())
def test_rank_matches_sympy(data):
    nrows, cols = data
    rank, kernel = rank_and_kernel(cols)
    dm = DomainMatrix([[QQ(x.numerator, x.denominator) if x else QQ(0) for x in row]
                       for row in _dense(cols, nrows)], (nrows, len(cols)), QQ)
    assert rank == dm.rank()
    assert len(kernel) == len(cols) - rank
    for v in kernel:
        tot: dict = {}
        for j, c in v.items():
            for i, x in cols[j].items():
                tot[i] = tot.get(i, 0) + c * x
        assert not any(tot.values())


@settings(max_examples=100, deadline=None)
@given(sparse_columns())
def test_echelon_reduce_certificate(data):
    _, cols = data
    ech = Echelon()
    for n, c in enumerate(cols[:-1]):
        ech.add(c, n)
    target = cols[-1]
    res, combo = ech.reduce(target)
    recon = dict(res)
    for n, c in combo.items():
        for i, x in cols[n].items():
            recon[i] = recon.get(i, 0) + c * x
    assert {k: v for k, v in recon.items() if v} == target


def test_dependent_row_relation():
    ech = Echelon()
    assert ech.add({0: Fraction(1), 1: Fraction(2)}, "a") is None
    assert ech.add({1: Fraction(1)}, "b") is None
    rel = ech.add({0: Fraction(2), 1: Fraction(1)}, "c")
    assert rel == {"c": 1, "a": -2, "b": 3}
