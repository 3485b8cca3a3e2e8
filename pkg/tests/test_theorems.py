import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from milnorhomfly import corpus
from milnorhomfly.diagram.fusion import COMB, MEANDER, FusionSpec
from milnorhomfly.diagram.generators import kink, perturb
from milnorhomfly.diagram.slices import StringLinkSlices
from milnorhomfly.milnor import mu
from milnorhomfly.theorems import (DISTINGUISHED, EQUAL, HYPOTHESIS_VIOLATED, INDISTINGUISHABLE,
                                   LINKING_MISMATCH, LOG, PASS, PLAIN, Comparison, divisor, f_fusion,
                                   link_homotopy_compare, milnor_equiv_compare, rhs_alternating_sum,
                                   vanishing_length, verify_theorem1, verify_theorem2, verify_theorem3)

SPLIT = FusionSpec((1, 3, 2, 4))


def stack_all(pieces):
    T = pieces[0]
    for P in pieces[1:]:
        T = T.stack(P)
    return T


def test_divisor():
    assert [divisor(m) for m in (1, 2, 3, 4)] == [2, 8, 48, 384]


# alternating sums -----------------------------------------------------------------------

@pytest.mark.parametrize("mode", [PLAIN, LOG])
def test_split_hopf_pair_sum(mode):
    # only the full subsequence contributes: the third derivative of 2t^2 - t^4 at 1
    assert rhs_alternating_sum(corpus.split_hopf_pair(), SPLIT, mode, 3) == -24


def test_identity_sum_vanishes():
    assert rhs_alternating_sum(StringLinkSlices.identity(4), FusionSpec((2, 1, 4)), PLAIN, 2) == 0


def test_borromean_sum():
    assert rhs_alternating_sum(corpus.borromean(), FusionSpec((1, 2, 3)), PLAIN, 2) == -8 * mu(
        corpus.borromean(), (1, 2, 3))


def test_sum_argument_validation():
    with pytest.raises(ValueError):
        rhs_alternating_sum(corpus.borromean(), FusionSpec((1, 2, 3)), "other", 2)
    with pytest.raises(ValueError):
        rhs_alternating_sum(corpus.borromean(), FusionSpec((1, 2, 3)), PLAIN, 1)


def test_parallel_sum_matches_serial():
    T, spec = corpus.vj((1, 2, 4)), FusionSpec((1, 2, 4))
    assert rhs_alternating_sum(T, spec, PLAIN, 2, jobs=2) == rhs_alternating_sum(T, spec, PLAIN, 2)


# fusion formula value ------------------------------------------------------------------------

@pytest.mark.parametrize("convention", [MEANDER, COMB])
def test_f_fusion_examples(convention):
    assert f_fusion(corpus.borromean(), FusionSpec((1, 2, 3), convention)) == 1
    assert f_fusion(StringLinkSlices.identity(3), FusionSpec((3, 1, 2), convention)) == 0


def test_f_fusion_split_hopf_pair_is_not_integral():
    assert f_fusion(corpus.split_hopf_pair(), SPLIT) == Fraction(1, 2)


# theorem 1 ------------------------------------------------------------------------------------

def test_theorem1_borromean():
    r = verify_theorem1(corpus.borromean(), FusionSpec((1, 2, 3)), 2)
    assert r.verdict == PASS and r.hypothesis_ok
    assert r.rhs == r.lhs.mu == 1


def test_theorem1_split_hopf_pair():
    r = verify_theorem1(corpus.split_hopf_pair(), SPLIT, 1)
    assert r.verdict == HYPOTHESIS_VIOLATED
    assert not r.hypothesis_ok and not r.rhs_exact
    assert r.rhs_sum == -24 and r.divisor == 48
    assert r.lhs.delta == 1 and r.lhs.mu_bar == 0
    assert any("does not divide" in note for note in r.notes)
    assert r.to_json()["verdict"] == HYPOTHESIS_VIOLATED


def test_theorem1_identity():
    r = verify_theorem1(StringLinkSlices.identity(4), FusionSpec((1, 2, 3, 4)), 2)
    assert r.verdict == PASS and r.rhs_sum == 0


def test_theorem1_argument_validation():
    with pytest.raises(ValueError):
        verify_theorem1(corpus.hopf(1), FusionSpec((1, 2)), 1)
    with pytest.raises(ValueError):
        verify_theorem1(corpus.borromean(), FusionSpec((1, 2, 3)), 0)


def test_theorem1_length_beyond_range_is_reported():
    r = verify_theorem1(StringLinkSlices.identity(4), FusionSpec((1, 2, 3, 4)), 1)
    assert r.verdict == HYPOTHESIS_VIOLATED


@pytest.mark.parametrize("pieces,I", [
    ([(1, 2, 3), (1, 2, 4)], (1, 2, 3, 4)),
    ([(1, 3, 4), (2, 3, 4), (1, 2, 3)], (1, 3, 2, 4)),
    ([(1, 2, 4), (1, 2, 4)], (2, 1, 4, 3)),
])
def test_theorem1_congruence_on_vj_stacks(pieces, I):
    T = stack_all([corpus.vj(J) for J in pieces])
    r = verify_theorem1(T, FusionSpec(I), 2)
    assert r.hypothesis_ok
    assert r.verdict == PASS, r.to_json()
    assert (r.divisor * r.lhs.mu + r.rhs_sum) % (r.divisor * r.lhs.delta or 1) == 0


# theorem 2 ------------------------------------------------------------------------------------

def test_theorem2_examples():
    r = verify_theorem2(corpus.borromean(), FusionSpec((1, 2, 3)), 2)
    assert r.verdict == PASS and r.rhs == 1
    r = verify_theorem2(corpus.vj((1, 2, 3, 4)), FusionSpec((1, 2, 3, 4)), 3)
    assert r.verdict == PASS and r.rhs == r.lhs.mu == 1
    r = verify_theorem2(StringLinkSlices.identity(3), FusionSpec((1, 2, 3)), 2)
    assert r.verdict == PASS and r.rhs == 0


def test_theorem2_hypothesis_failure():
    r = verify_theorem2(corpus.split_hopf_pair(), SPLIT, 3)
    assert r.verdict == HYPOTHESIS_VIOLATED and r.vanishing_length == 1


def test_theorem2_argument_validation():
    with pytest.raises(ValueError):
        verify_theorem2(corpus.borromean(), FusionSpec((1, 2, 3)), 3)
    with pytest.raises(ValueError):
        verify_theorem2(corpus.hopf(1), FusionSpec((1, 2)), 1)


@pytest.mark.parametrize("J", corpus.VJ_SEQUENCES)
@pytest.mark.parametrize("convention", [MEANDER, COMB])
def test_cross_engine_on_vj(J, convention):
    T = corpus.vj(J)
    k = len(J) - 1
    assert vanishing_length(T, k, repeating=False)[0] >= k
    for I in corpus.VJ_SEQUENCES:
        if len(I) == k + 1:
            assert mu(T, I) == f_fusion(T, FusionSpec(I, convention))


@settings(max_examples=15)
@given(st.integers(0, 100_000))
def test_cross_engine_on_random_borromean_stacks(seed):
    rng = random.Random(seed)
    blocks = [corpus.borromean(), corpus.borromean().mirror_reverse(), corpus.vj((1, 2, 3), 3)]
    T = perturb(rng, stack_all([rng.choice(blocks) for _ in range(rng.randint(1, 3))]), 3)
    I = rng.choice([(1, 2, 3), (2, 1, 3), (3, 2, 1)])
    r = verify_theorem2(T, FusionSpec(I), 2)
    assert r.hypothesis_ok and r.verdict == PASS
    assert r.rhs_sum % r.divisor == 0
    assert r.rhs == mu(T, I)


# theorem 3 ------------------------------------------------------------------------------------

def test_theorem3_whitehead():
    r = verify_theorem3(corpus.whitehead(), (1, 1, 2, 2), 3)
    assert r.verdict == PASS and r.mode == PLAIN
    assert r.fusion_sequence == (1, 2, 3, 4)
    assert r.rhs == r.lhs.mu == 1


def test_theorem3_without_repeats_equals_theorem2():
    T, I = corpus.borromean(), (1, 2, 3)
    r3 = verify_theorem3(T, I, 2)
    r2 = verify_theorem2(T, FusionSpec(I), 2)
    assert r3.to_json() | {"theorem": "2"} == r2.to_json()


def test_theorem3_identity():
    r = verify_theorem3(StringLinkSlices.identity(2), (1, 1, 2, 2), 3)
    assert r.verdict == PASS and r.rhs_sum == 0


def test_theorem3_range():
    with pytest.raises(ValueError):
        verify_theorem3(corpus.whitehead(), (1, 2), 3)
    with pytest.raises(ValueError):
        verify_theorem3(corpus.whitehead(), (1, 1, 2, 2, 1, 2), 2)


def test_theorem3_hypothesis_uses_repeated_sequences():
    # the Whitehead link has mu(1122) = 1, so vanishing up to length 4 fails
    r = verify_theorem3(corpus.whitehead(), (1, 1, 2, 2, 1), 4)
    assert not r.hypothesis_ok and r.first_nonzero is not None and len(r.first_nonzero) == 4


# comparators ---------------------------------------------------------------------------------

def test_link_homotopy_compare_examples():
    B = corpus.borromean()
    assert link_homotopy_compare(B, B).status == EQUAL
    r = link_homotopy_compare(B, StringLinkSlices.identity(3))
    assert r.status == DISTINGUISHED and r.witness == (1, 2, 3) and str(r) == "distinguished-by(123)"
    r = link_homotopy_compare(corpus.hopf(1), StringLinkSlices.identity(2))
    assert r.status == LINKING_MISMATCH and str(r) == "linking-mismatch(1,2)"
    with pytest.raises(ValueError):
        link_homotopy_compare(B, StringLinkSlices.identity(2))


def test_link_homotopy_ignores_self_crossings():
    # the Whitehead string link is link-homotopic to the trivial one
    assert link_homotopy_compare(corpus.whitehead(), StringLinkSlices.identity(2)).status == EQUAL


def test_milnor_equiv_compare_examples():
    r = milnor_equiv_compare(corpus.whitehead(), StringLinkSlices.identity(2), 4)
    assert r.status == DISTINGUISHED and r.witness == (1, 1, 2, 2)
    rng = random.Random(3)
    B = corpus.borromean()
    assert milnor_equiv_compare(B, perturb(rng, B, 4), 3).status == INDISTINGUISHABLE
    clasp = corpus.hopf(1)
    kinked = kink(clasp, 1, 2, -1)
    r = milnor_equiv_compare(clasp, kinked, 4)
    assert r.status == INDISTINGUISHABLE and r.checked_up_to == 4
    with pytest.raises(ValueError):
        milnor_equiv_compare(clasp, kinked, 1)


def test_comparison_rendering():
    assert str(Comparison(EQUAL)) == "equal"
    assert str(Comparison(DISTINGUISHED, (1, 12, 3))) == "distinguished-by(1,12,3)"
    assert Comparison(DISTINGUISHED, (1, 2, 3), Fraction(-1)).to_json()["value"] == "-1"
