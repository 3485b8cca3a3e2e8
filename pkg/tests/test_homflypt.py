import random
from concurrent.futures import ThreadPoolExecutor

import pytest
from hypothesis import given, settings, strategies as st

from milnorhomfly import corpus
from milnorhomfly.acceptance import skein_holds
from milnorhomfly.diagram.generators import random_diagram, random_knot
from milnorhomfly.diagram.link import connected_sum, disjoint_union, unknot_diagram
from milnorhomfly.errors import DiagramError
from milnorhomfly.homflypt import (SkeinMemo, check_lowest_identity, homflypt, homflypt_unsimplified,
                                   logp0_deriv, p0, p0_deriv, p_lowest, unlink_value)
from milnorhomfly.poly import BiLaurent, Laurent1, parse_poly

seeds = st.integers(0, 100_000)

# standard knot-table values, positive knots carrying positive powers of t
TABLE = {
    "unknot": "1",
    "trefoil": "2*t^2 - t^4 + t^2*z^2",
    "trefoil-left": "2*t^-2 - t^-4 + t^-2*z^2",
    "figure-eight": "t^2 - 1 + t^-2 - z^2",
    "cinquefoil": "3*t^4 - 2*t^6 + 4*t^4*z^2 - t^6*z^2 + t^4*z^4",
    "three-twist": "t^2 + t^4 - t^6 + t^2*z^2 + t^4*z^2",
}


def poly(text):
    return parse_poly(text)


def laurent(text):
    return parse_poly(text, bivariate=False)


def mirror_substitute(p: BiLaurent) -> BiLaurent:
    """``P(-1/t, z)``: the value on the mirror image."""
    return BiLaurent({(-a, b): (-1) ** a * c for a, b, c in p.terms()})


@pytest.mark.parametrize("name", TABLE)
def test_knot_table(name):
    assert homflypt(corpus.builtin(name)) == poly(TABLE[name])


def test_hopf_links():
    assert homflypt(corpus.hopf(1).closure()) == poly("t*z^-1 - t^3*z^-1 + t*z")
    assert homflypt(corpus.hopf(-1).closure()) == poly("t^-3*z^-1 - t^-1*z^-1 - t^-1*z")


def test_borromean_value():
    expected = "t^2*z^-2 - 2*z^-2 + t^-2*z^-2 - t^2*z^2 + 2*z^2 - t^-2*z^2 + z^4"
    assert homflypt(corpus.borromean().closure()) == poly(expected)


def test_unlinks():
    for r in (1, 2, 3, 4):
        assert homflypt(unknot_diagram(r)) == unlink_value(r)
    assert unlink_value(2) == poly("t^-1*z^-1 - t*z^-1")


def test_split_union_multiplies_with_unlink_factor():
    hopf = corpus.hopf(1).closure()
    split = corpus.split_hopf_pair().closure()
    assert homflypt(split) == homflypt(hopf) * homflypt(hopf) * unlink_value(2)
    a, b = corpus.trefoil(), corpus.figure_eight()
    assert homflypt(disjoint_union(a, b)) == homflypt(a) * homflypt(b) * unlink_value(2)


def test_lowest_coefficients():
    assert p0(corpus.trefoil()) == laurent("2*t^2 - t^4")
    assert p0(corpus.builtin("unknot")) == Laurent1.const(1)
    assert p_lowest(corpus.hopf(1).closure()) == laurent("t - t^3")
    with pytest.raises(DiagramError):
        p0(corpus.hopf(1).closure())


def test_derivatives():
    assert p0_deriv(corpus.trefoil(), 2) == -8
    unknot = corpus.builtin("unknot")
    assert all(p0_deriv(unknot, l) == 0 for l in range(1, 6))
    assert p0_deriv(corpus.kplus(2), 3) == 48
    assert logp0_deriv(corpus.trefoil(), 4) == -216


def test_kplus_one_is_left_trefoil():
    assert homflypt(corpus.kplus(1)) == poly(TABLE["trefoil-left"])


def test_lowest_identity_examples():
    assert check_lowest_identity(unknot_diagram(2))
    assert check_lowest_identity(corpus.hopf(1).closure())
    assert check_lowest_identity(corpus.split_hopf_pair().closure())


@pytest.mark.parametrize("name", list(TABLE) + ["kplus 2", "keps +-+-"])
def test_fast_p0_matches_skein(name):
    K = corpus.builtin(name)
    assert p0(K, method="fast", memo=SkeinMemo()) == p0(K, method="skein")


@given(seeds)
def test_fast_p0_matches_skein_on_random_knots(seed):
    K = random_knot(random.Random(seed), 8)
    assert p0(K, memo=SkeinMemo()) == p0(K, method="skein")


def test_unknown_p0_method():
    with pytest.raises(ValueError):
        p0(corpus.trefoil(), method="guess")


@settings(max_examples=40)
@given(seeds)
def test_skein_relation_at_every_crossing(seed):
    d = random_diagram(random.Random(seed), 7)
    for c in d.crossing_ids():
        assert skein_holds(d, c)


@settings(max_examples=40)
@given(seeds)
def test_memo_and_simplification_do_not_change_values(seed):
    d = random_diagram(random.Random(seed), 7)
    fresh = homflypt(d, SkeinMemo())
    assert fresh == homflypt(d) == homflypt_unsimplified(d)


@given(seeds)
def test_relabeling_invariance(seed):
    d = random_diagram(random.Random(seed), 8)
    assert homflypt(d.relabeled()) == homflypt(d)
    assert d.relabeled().canonical_key() == d.canonical_key()


@given(seeds)
def test_mirror_substitution(seed):
    d = random_diagram(random.Random(seed), 8)
    assert homflypt(d.mirror()) == mirror_substitute(homflypt(d))


@given(seeds)
def test_z_exponents_have_the_right_parity(seed):
    d = random_diagram(random.Random(seed), 8)
    r = d.num_components
    exps = homflypt(d).z_exponents()
    assert min(exps) == 1 - r
    assert all((e - 1 + r) % 2 == 0 for e in exps)


@given(seeds)
def test_value_at_unlink_specialization(seed):
    # t = 1, z = 0 on the lowest coefficient gives 1 for every link
    d = random_diagram(random.Random(seed), 8)
    r = d.num_components
    assert p_lowest(d).at_one() == (0 if r > 1 else 1)
    assert check_lowest_identity(d)


@settings(max_examples=30)
@given(seeds, seeds)
def test_connected_sum_multiplicative(s1, s2):
    K1, K2 = random_knot(random.Random(s1), 5), random_knot(random.Random(s2), 5)
    S = connected_sum(K1, K2)
    assert homflypt(S) == homflypt(K1) * homflypt(K2)
    for m in range(1, 5):
        assert logp0_deriv(S, m) == logp0_deriv(K1, m) + logp0_deriv(K2, m)


def test_plain_additivity_when_lower_derivatives_vanish():
    K1, K2 = corpus.kplus(2), corpus.keps((1, -1, 1, 1))
    S = connected_sum(K1, K2)
    assert all(p0_deriv(K, j) == 0 for K in (K1, K2) for j in (1, 2))
    assert p0_deriv(S, 3) == p0_deriv(K1, 3) + p0_deriv(K2, 3)


def test_concurrent_evaluation_shares_memo():
    memo = SkeinMemo()
    rng = random.Random(7)
    diagrams = [random_diagram(rng, 8) for _ in range(12)]
    serial = [homflypt(d, SkeinMemo()) for d in diagrams]
    with ThreadPoolExecutor(max_workers=4) as pool:
        parallel = list(pool.map(lambda d: homflypt(d, memo), diagrams))
    assert parallel == serial
