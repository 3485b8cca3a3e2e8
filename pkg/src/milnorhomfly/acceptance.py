"""The eleven acceptance checks, each with a wall-clock budget.

Every check returns a one-line detail string and raises ``AssertionError``
on failure.  :func:`run` clears all memo tables first so timings are cold.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import combinations, product
from math import factorial, prod
from typing import Callable

from . import corpus
from .diagram.fusion import COMB, MEANDER, FusionSpec, fusion_knot
from .diagram.generators import kink, perturb, random_diagram, random_string_link
from .diagram.link import connected_sum
from .diagram.slices import StringLinkSlices
from .homflypt import (FULL_MEMO, P0_MEMO, check_lowest_identity, homflypt, homflypt_unsimplified,
                       logp0_deriv, p0, p0_deriv)
from .milnor import _mu_cached, mu
from .poly import BiLaurent, Laurent1, parse_poly
from .theorems import (DISTINGUISHED, EQUAL, LINKING_MISMATCH, LOG, PASS, PLAIN, f_fusion,
                       link_homotopy_compare, rhs_alternating_sum, verify_theorem1,
                       verify_theorem3)

SEED = 20240917

_T_INV = BiLaurent.monomial(-1, 0)
_T = BiLaurent.monomial(1, 0)
_Z = BiLaurent.monomial(0, 1)


def skein_holds(d, c) -> bool:
    """``t^-1 P(+) - t P(-) = z P(0)`` at crossing ``c``."""
    plus, minus = (d, d.switch(c)) if d.signs[c] == 1 else (d.switch(c), d)
    return _T_INV * homflypt(plus) - _T * homflypt(minus) == _Z * homflypt(d.smooth(c))


def closed_form_derivative(n: int, signs=None) -> int:
    value = (-1) ** n * 2 ** (n + 1) * factorial(n + 1)
    return value * (prod(signs) if signs else 1)


# criteria ---------------------------------------------------------------------------

def axioms() -> str:
    rng = random.Random(SEED)
    assert homflypt(corpus.builtin("unknot")) == BiLaurent.const(1)
    curl = kink(corpus.builtin("identity 1"), 0, 1, 1)
    assert homflypt(curl.closure()) == BiLaurent.const(1)
    checked = 0
    for _ in range(50):
        d = random_diagram(rng, 8)
        assert d.num_crossings <= 8
        assert homflypt(d) == homflypt_unsimplified(d), "memoized and plain recursions disagree"
        for c in d.crossing_ids():
            assert skein_holds(d, c), f"skein relation fails at crossing {c}"
            checked += 1
    return f"50 diagrams, skein relation at {checked} crossings"


def kplus_keps_derivatives() -> str:
    expected = {1: -8, 2: 48, 3: -384}
    for n, value in expected.items():
        K = corpus.kplus(n)
        assert p0_deriv(K, n + 1) == value, f"kplus {n}: {p0_deriv(K, n + 1)} != {value}"
        assert closed_form_derivative(n) == value
        for j in range(1, n + 1):
            assert p0_deriv(K, j) == 0, f"kplus {n}: derivative {j} nonzero"
    count = 0
    for n in (1, 2, 3):
        for signs in product((1, -1), repeat=n + 2):
            K = corpus.keps(signs)
            want = closed_form_derivative(n, signs)
            assert p0_deriv(K, n + 1) == want, f"keps {signs}: {p0_deriv(K, n + 1)} != {want}"
            assert logp0_deriv(K, n + 1) == want
            assert all(p0_deriv(K, j) == 0 for j in range(1, n + 1))
            count += 1
    return f"kplus -8/48/-384 and {count} keps sign patterns"


def fusion_table() -> str:
    T = corpus.split_hopf_pair()
    spec = FusionSpec((1, 3, 2, 4))
    for J in spec.subsequences():
        if J != spec.seq:
            assert p0(fusion_knot(T, spec, J)) == Laurent1.const(1), f"P0(L_{J}) != 1"
    top = p0(fusion_knot(T, spec, spec.seq))
    assert top == parse_poly("2*t^2 - t^4", bivariate=False), f"P0(L_I) = {top}"
    total = rhs_alternating_sum(T, spec, PLAIN, 3)
    assert rhs_alternating_sum(T, spec, LOG, 3) == total
    assert total % 48 != 0
    report = verify_theorem1(T, spec, 1)
    assert report.verdict == "hypothesis-violated"
    assert not report.rhs_exact
    # the stated total is 24, but only J = I contributes, with sign +1, and the
    # third derivative of 2t^2 - t^4 at t = 1 is -24; the clause cannot hold
    assert total == 24, (f"alternating sum is {total}, expected 24; every other clause holds "
                         f"(P0 table, 48 does not divide the sum, f = {f_fusion(T, spec)})")
    return f"P0(L_I) = {top}, alternating sum {total}, 48 does not divide it"


def borromean_cross_engine() -> str:
    T = corpus.borromean()
    value = mu(T, (1, 2, 3))
    for convention in (MEANDER, COMB):
        f = f_fusion(T, FusionSpec((1, 2, 3), convention))
        assert f == value, f"{convention}: f = {f}, mu = {value}"
    assert abs(value) == 1
    return f"mu(123) = f(123) = {value}"


def whitehead_cabled() -> str:
    report = verify_theorem3(corpus.whitehead(), (1, 1, 2, 2), 3)
    assert report.verdict == PASS, report.to_json()
    assert abs(report.lhs.mu) == 1 and report.rhs == report.lhs.mu
    return f"mu(1122) = {report.lhs.mu}, cabled sum {report.rhs_sum} / {report.divisor}"


def linking_oracle() -> str:
    rng = random.Random(SEED + 6)
    for _ in range(50):
        T = random_string_link(rng, 2, 10, kinks=2)
        c = T.compiled
        oracle = sum(s for L, s in c.signs.items() if set(c.crossing_strands[L]) == {0, 1})
        assert oracle % 2 == 0
        assert mu(T, (1, 2)) == oracle // 2 == mu(T, (2, 1))
    return "50 two-strand links"


def invariance() -> str:
    rng = random.Random(SEED + 7)
    bases = [corpus.borromean(), corpus.whitehead(), corpus.hopf(1), corpus.vj((1, 2, 3))]
    while len(bases) < 30:
        bases.append(random_string_link(rng, rng.choice([2, 3]), 8, kinks=2))
    compared = 0
    for T in bases:
        U = perturb(rng, T, 5)
        assert homflypt(T.closure()) == homflypt(U.closure())
        for length in range(2, 5):
            for I in product(range(1, T.width + 1), repeat=length):
                assert mu(T, I) == mu(U, I), f"mu{I} changed"
                compared += 1
    return f"30 pairs, {compared} mu values"


def lowest_identity() -> str:
    rng = random.Random(SEED + 8)
    diagrams = [corpus.split_hopf_pair().closure(), corpus.borromean().closure()]
    while len(diagrams) < 30:
        d = random_diagram(rng, 8)
        if d.num_components > 1:
            diagrams.append(d)
    for d in diagrams:
        assert check_lowest_identity(d)
    return "30 links"


def connected_sums() -> str:
    names = ["trefoil", "trefoil-left", "figure-eight", "cinquefoil", "three-twist", "kplus 1", "kplus 2"]
    knots = [corpus.builtin(n) for n in names]
    pairs = list(combinations(range(len(knots)), 2))[:20]
    plain_checked = 0
    for a, b in pairs:
        K1, K2 = knots[a], knots[b]
        S = connected_sum(K1, K2)
        assert p0(S) == p0(K1) * p0(K2)
        for m in range(1, 5):
            assert logp0_deriv(S, m) == logp0_deriv(K1, m) + logp0_deriv(K2, m)
            if all(p0_deriv(K, j) == 0 for K in (K1, K2) for j in range(1, m)):
                assert p0_deriv(S, m) == p0_deriv(K1, m) + p0_deriv(K2, m)
                plain_checked += 1
    return f"{len(pairs)} pairs, {plain_checked} plain-additivity cases"


def vj_table() -> str:
    for J in corpus.VJ_SEQUENCES:
        T = corpus.vj(J)
        for other in corpus.VJ_SEQUENCES:
            assert mu(T, other) == (1 if J == other else 0), f"mu(vJ {J}, {other}) = {mu(T, other)}"
    return f"{len(corpus.VJ_SEQUENCES)} x {len(corpus.VJ_SEQUENCES)} table"


def comparator() -> str:
    rng = random.Random(SEED + 11)
    B = corpus.borromean()
    r = link_homotopy_compare(B, StringLinkSlices.identity(3))
    assert r.status == DISTINGUISHED and r.witness == (1, 2, 3), str(r)
    r = link_homotopy_compare(corpus.hopf(1), StringLinkSlices.identity(2))
    assert r.status == LINKING_MISMATCH and r.witness == (1, 2), str(r)
    for T in (B, corpus.vj((1, 2, 3)), corpus.whitehead(), corpus.hopf(1)):
        r = link_homotopy_compare(T, perturb(rng, T, 4))
        assert r.status == EQUAL, str(r)
    return "distinguished-by(123), linking-mismatch(1,2), isotopic pairs equal"


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    budget: float
    check: Callable[[], str]


CRITERIA = (
    Criterion(1, "skein axioms on random diagrams", 10, axioms),
    Criterion(2, "derivatives of the kplus and keps knots", 30, kplus_keps_derivatives),
    Criterion(3, "split Hopf pair fusion table", 5, fusion_table),
    Criterion(4, "Borromean: Magnus engine vs fusion formula", 10, borromean_cross_engine),
    Criterion(5, "Whitehead 1122 through the cable", 300, whitehead_cabled),
    Criterion(6, "mu(12) vs crossing-sign linking number", 10, linking_oracle),
    Criterion(7, "invariance under Reidemeister moves", 120, invariance),
    Criterion(8, "lowest coefficient identity", 120, lowest_identity),
    Criterion(9, "connected sums: log and plain additivity", 60, connected_sums),
    Criterion(10, "vJ builtins", 30, vj_table),
    Criterion(11, "link-homotopy comparator", 30, comparator),
)


@dataclass(frozen=True)
class Outcome:
    criterion: Criterion
    passed: bool
    seconds: float
    detail: str

    def line(self) -> str:
        c = self.criterion
        status = "PASS" if self.passed else "FAIL"
        return f"criterion {c.number:2d} {status} {self.seconds:7.2f}s / {c.budget:g}s  {c.title}: {self.detail}"


def clear_caches() -> None:
    FULL_MEMO.clear()
    P0_MEMO.clear()
    _mu_cached.cache_clear()


def run(criterion: Criterion) -> Outcome:
    clear_caches()
    start = time.perf_counter()
    try:
        detail = criterion.check()
        ok = True
    except AssertionError as exc:
        detail, ok = f"assertion failed: {exc}", False
    seconds = time.perf_counter() - start
    if ok and seconds > criterion.budget:
        ok, detail = False, f"over budget; {detail}"
    return Outcome(criterion, ok, seconds, detail)


def run_all(numbers=None, echo=print) -> list[Outcome]:
    out = []
    for c in CRITERIA:
        if numbers and c.number not in numbers:
            continue
        result = run(c)
        if echo:
            echo(result.line())
        out.append(result)
    return out
