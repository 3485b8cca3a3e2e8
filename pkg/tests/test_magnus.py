import pytest
from hypothesis import given, strategies as st

from milnorhomfly.magnus import TruncNCSeries, subword_closure

N = 3


def series(q, coeffs):
    return TruncNCSeries(N, q, coeffs)


def one(q):
    return TruncNCSeries.one(N, q)


def X(i, q=3):
    return series(q, {(i,): 1})


@st.composite
def units(draw, q):
    words = st.lists(st.integers(1, N), min_size=1, max_size=q).map(tuple)
    coeffs = draw(st.dictionaries(words, st.integers(-3, 3), max_size=6))
    return series(q, {(): 1, **coeffs})


degrees = st.integers(1, 5)


def test_product_of_meridians():
    a = TruncNCSeries.meridian(1, N, 3) * TruncNCSeries.meridian(2, N, 3)
    assert a == series(3, {(): 1, (1,): 1, (2,): 1, (1, 2): 1})


def test_noncommutative_keys():
    assert X(1) * X(2) != X(2) * X(1)
    assert (X(1) * X(2)).coefficient((2, 1)) == 0


def test_geometric_inverse_cancels():
    a = TruncNCSeries.meridian(1, N, 2) * series(2, {(): 1, (1,): -1, (1, 1): 1})
    assert a == one(2)


@pytest.mark.parametrize("q", [1, 2, 3, 6])
def test_meridian_times_inverse(q):
    assert TruncNCSeries.meridian(1, N, q) * TruncNCSeries.meridian_inv(1, N, q) == one(q)


def test_meridian_inverse_terms():
    assert TruncNCSeries.meridian(2, N, 3) == series(3, {(): 1, (2,): 1})
    assert TruncNCSeries.meridian_inv(1, N, 3) == series(3, {(): 1, (1,): -1, (1, 1): 1, (1, 1, 1): -1})


def test_meridian_range():
    with pytest.raises(ValueError):
        TruncNCSeries.meridian(4, N, 2)


def test_invert_examples():
    assert one(3).invert() == one(3)
    a = series(2, {(): 1, (1,): 1, (2,): 1})
    expected = series(2, {(): 1, (1,): -1, (2,): -1, (1, 1): 1, (1, 2): 1, (2, 1): 1, (2, 2): 1})
    assert a.invert() == expected


def test_invert_rejects_nonunit():
    with pytest.raises(ValueError):
        series(2, {(): 2}).invert()


def test_conjugate_examples():
    m = TruncNCSeries.meridian(2, N, 2)
    assert one(2).conjugate(m) == m
    c = TruncNCSeries.meridian(1, N, 2).conjugate(m)
    assert c == series(2, {(): 1, (2,): 1, (1, 2): 1, (2, 1): -1})
    assert c.coefficient(()) == 1
    assert c.coefficient((2, 1)) == -1


def test_coefficient():
    a = series(2, {(): 1, (1, 2): 3})
    assert a.coefficient((1, 2)) == 3
    assert a.coefficient(()) == 1
    with pytest.raises(ValueError):
        a.coefficient((1, 2, 3))


def test_mismatched_bounds():
    with pytest.raises(ValueError):
        one(2) * one(3)


def test_render():
    assert str(series(2, {(): 1, (1, 2): 1, (2, 1): -1})) == "1 + X1 X2 - X2 X1"


def test_subword_closure():
    assert subword_closure([(1, 2, 3)]) == {(), (1,), (2,), (3,), (1, 2), (2, 3), (1, 2, 3)}


def test_restricted_product_matches_full():
    allowed = subword_closure([(1, 2, 1)])
    a = series(3, {(): 1, (1,): 2, (2,): -1, (1, 2): 1})
    b = series(3, {(): 1, (1,): 1, (2, 1): 4})
    full = a * b
    ra, rb = (TruncNCSeries(N, 3, s.coeffs, allowed) for s in (a, b))
    assert (ra * rb).coeffs == {w: c for w, c in full.coeffs.items() if w in allowed}


@given(degrees.flatmap(lambda q: st.tuples(units(q), units(q), units(q))))
def test_associativity(abc):
    a, b, c = abc
    assert (a * b) * c == a * (b * c)


@given(degrees.flatmap(units))
def test_inverse_and_identity(a):
    q = a.q
    assert a * a.invert() == one(q) == a.invert() * a
    assert a * one(q) == a == one(q) * a
    assert a.invert().invert() == a


@given(degrees.flatmap(lambda q: st.tuples(units(q), units(q))))
def test_inverse_of_product(ab):
    a, b = ab
    assert (a * b).invert() == b.invert() * a.invert()


@given(st.integers(1, 4).flatmap(lambda q: st.tuples(st.just(q), units(q + 2), units(q + 2))))
def test_truncation_consistency(args):
    q, a, b = args
    low_a, low_b = a.truncate(q), b.truncate(q)
    assert (a * b).truncate(q) == low_a * low_b
    assert a.invert().truncate(q) == low_a.invert()
    assert a.conjugate(b).truncate(q) == low_a.conjugate(low_b)
