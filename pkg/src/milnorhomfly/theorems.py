"""Milnor invariants from HOMFLYPT data of band-sum knots, checked against the Magnus engine.

For a string link ``T`` and a fusion disk for a sequence ``I`` of ``m + 1``
distinct strands, every subsequence ``J`` gives a knot ``L_J``.  The
alternating sum ``sum_J (-1)^|J| D(L_J)``, with ``D`` the ``m``-th
derivative at ``t = 1`` of ``P_0`` (plain mode) or of ``log P_0`` (log mode),
divided by ``-m! 2^m``, recovers ``mu(I)`` when shorter invariants vanish.
Repeated indices are handled by cabling.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from math import factorial
from typing import Sequence

from .diagram.fusion import MEANDER, FusionSpec, fusion_knot
from .diagram.link import LinkDiagram
from .diagram.slices import StringLinkSlices, d_sequence, multiplicities
from .homflypt import logp0_deriv, p0_deriv
from .milnor import MilnorResult, mu, mu_bar

PLAIN = "plain"
LOG = "log"

PASS = "pass"
FAIL = "fail"
HYPOTHESIS_VIOLATED = "hypothesis-violated"


def divisor(m: int) -> int:
    return factorial(m) * 2 ** m


def _derivative(args: tuple[LinkDiagram, str, int]) -> int:
    knot, mode, m = args
    return logp0_deriv(knot, m) if mode == LOG else p0_deriv(knot, m)


def _map(jobs: int, func, items: list) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [func(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items))


def fusion_terms(T: StringLinkSlices, spec: FusionSpec, mode: str, m: int,
                 jobs: int = 1) -> list[tuple[tuple[int, ...], int]]:
    """``(J, D(L_J))`` for every nonempty subsequence ``J``, in bitmask order."""
    if mode not in (PLAIN, LOG):
        raise ValueError(f"mode must be {PLAIN!r} or {LOG!r}, got {mode!r}")
    if m < 2:
        raise ValueError("derivative order must be at least 2")
    subs = [J for J in spec.subsequences() if J]
    knots = [(fusion_knot(T, spec, J), mode, m) for J in subs]
    return list(zip(subs, _map(jobs, _derivative, knots)))


def rhs_alternating_sum(T: StringLinkSlices, spec: FusionSpec, mode: str, m: int,
                        jobs: int = 1) -> int:
    # the empty subsequence is the unknot and contributes 0
    return sum((-1) ** len(J) * value for J, value in fusion_terms(T, spec, mode, m, jobs))


def f_fusion(T: StringLinkSlices, spec: FusionSpec, jobs: int = 1) -> Fraction:
    m = len(spec.seq) - 1
    return Fraction(-rhs_alternating_sum(T, spec, PLAIN, m, jobs), divisor(m))


# hypotheses ----------------------------------------------------------------------

def _sequences(n: int, length: int, repeating: bool):
    if repeating:
        return product(range(1, n + 1), repeat=length)
    return permutations(range(1, n + 1), length)


def vanishing_length(T: StringLinkSlices, up_to: int, repeating: bool) -> tuple[int, tuple | None]:
    """Largest ``k <= up_to`` with every mu of length ``<= k`` zero, and the first nonzero sequence."""
    for length in range(2, up_to + 1):
        for s in _sequences(T.width, length, repeating):
            if mu(T, s):
                return length - 1, tuple(s)
    return max(up_to, 1), None


# reports --------------------------------------------------------------------------

@dataclass
class TheoremReport:
    theorem: str
    sequence: tuple[int, ...]
    fusion_sequence: tuple[int, ...]
    convention: str
    k: int
    mode: str
    lhs: MilnorResult
    rhs_sum: int
    divisor: int
    hypothesis_ok: bool
    vanishing_length: int
    first_nonzero: tuple[int, ...] | None
    verdict: str
    notes: list[str] = field(default_factory=list)

    @property
    def rhs(self) -> Fraction:
        return Fraction(-self.rhs_sum, self.divisor)

    @property
    def rhs_exact(self) -> bool:
        return self.rhs.denominator == 1

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "I": list(self.sequence),
            "fusion_sequence": list(self.fusion_sequence),
            "convention": self.convention,
            "k": self.k,
            "mode": self.mode,
            "lhs": self.lhs.to_json(),
            "rhs_sum": self.rhs_sum,
            "divisor": self.divisor,
            "rhs": str(self.rhs),
            "rhs_exact": self.rhs_exact,
            "hypothesis_ok": self.hypothesis_ok,
            "vanishing_length": self.vanishing_length,
            "first_nonzero": list(self.first_nonzero) if self.first_nonzero else None,
            "verdict": self.verdict,
            "notes": self.notes,
        }


def _check_distinct(I: Sequence[int]) -> tuple[int, ...]:
    I = tuple(I)
    if len(set(I)) != len(I):
        raise ValueError(f"sequence {I} repeats an index; use theorem 3 for repeated indices")
    return I


def _congruent(lhs: MilnorResult, rhs_sum: int, div: int) -> bool:
    """``lhs == -rhs_sum / div`` modulo ``lhs.delta``, after clearing the denominator."""
    diff = div * lhs.mu + rhs_sum
    modulus = div * lhs.delta
    return diff == 0 if modulus == 0 else diff % modulus == 0


def _report(theorem, T_for_fusion, spec, I, k, mode, lhs, hyp_ok, van, first, jobs, notes):
    m = len(spec.seq) - 1
    rhs_sum = rhs_alternating_sum(T_for_fusion, spec, mode, m, jobs)
    div = divisor(m)
    if mode == PLAIN:
        ok = rhs_sum % div == 0 and lhs.delta == 0 and -rhs_sum // div == lhs.mu
    else:
        ok = _congruent(lhs, rhs_sum, div)
    if rhs_sum % div:
        notes.append(f"{div} does not divide the alternating sum {rhs_sum}")
    if not hyp_ok:
        verdict = HYPOTHESIS_VIOLATED
    else:
        verdict = PASS if ok else FAIL
    return TheoremReport(theorem, tuple(I), spec.seq, spec.convention, k, mode, lhs, rhs_sum, div,
                         hyp_ok, van, first, verdict, notes)


def verify_theorem1(T: StringLinkSlices, spec: FusionSpec, k: int, jobs: int = 1) -> TheoremReport:
    """Log-derivative congruence for ``3 <= |I| <= 2k + 1``."""
    I = _check_distinct(spec.seq)
    if len(I) < 3:
        raise ValueError(f"theorem 1 needs |I| >= 3, got {len(I)}")
    if k < 1:
        raise ValueError("k must be at least 1")
    notes = []
    in_range = len(I) <= 2 * k + 1
    if not in_range:
        notes.append(f"|I| = {len(I)} exceeds 2k+1 = {2 * k + 1}")
    van, first = vanishing_length(T, max(k, len(I) - 1), repeating=False)
    hyp_ok = in_range and van >= k
    if van < k:
        notes.append(f"mu{first} = {mu(T, first)} is nonzero at length {len(first)} <= k")
    return _report("1", T, spec, I, k, LOG, mu_bar(T, I), hyp_ok, van, first, jobs, notes)


def verify_theorem2(T: StringLinkSlices, spec: FusionSpec, k: int, jobs: int = 1) -> TheoremReport:
    """Exact integer formula for ``|I| = k + 1``."""
    I = _check_distinct(spec.seq)
    if k < 2:
        raise ValueError("theorem 2 needs k >= 2")
    if len(I) != k + 1:
        raise ValueError(f"theorem 2 needs |I| = k+1 = {k + 1}, got {len(I)}")
    van, first = vanishing_length(T, k, repeating=False)
    notes = []
    if van < k:
        notes.append(f"mu{first} = {mu(T, first)} is nonzero at length {len(first)} <= k")
    return _report("2", T, spec, I, k, PLAIN, mu_bar(T, I), van >= k, van, first, jobs, notes)


def verify_theorem3(T: StringLinkSlices, I: Sequence[int], k: int, convention: str = MEANDER,
                    jobs: int = 1) -> TheoremReport:
    """Theorems 1 and 2 applied to the cable ``D_I(T)`` with the induced sequence."""
    I = tuple(I)
    if not 3 <= len(I) <= 2 * k + 1:
        raise ValueError(f"theorem 3 needs 3 <= |I| <= 2k+1 = {2 * k + 1}, got {len(I)}")
    cabled = T.cable(multiplicities(I, T.width))
    spec = FusionSpec(d_sequence(I), convention)
    van, first = vanishing_length(T, k, repeating=True)
    notes = []
    if van < k:
        notes.append(f"mu{first} = {mu(T, first)} is nonzero at length {len(first)} <= k")
    mode = PLAIN if len(I) == k + 1 else LOG
    return _report("3", cabled, spec, I, k, mode, mu_bar(T, I), van >= k, van, first, jobs, notes)


# comparators -------------------------------------------------------------------------

EQUAL = "equal"
DISTINGUISHED = "distinguished-by"
LINKING_MISMATCH = "linking-mismatch"
INDISTINGUISHABLE = "indistinguishable"


@dataclass(frozen=True)
class Comparison:
    status: str
    witness: tuple[int, ...] | None = None
    value: Fraction | None = None
    checked_up_to: int | None = None

    def __str__(self):
        if self.witness is None:
            return self.status
        if self.status == LINKING_MISMATCH or max(self.witness) > 9:
            return f"{self.status}({','.join(map(str, self.witness))})"
        return f"{self.status}({''.join(map(str, self.witness))})"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "witness": list(self.witness) if self.witness else None,
            "value": None if self.value is None else str(self.value),
            "checked_up_to": self.checked_up_to,
            "summary": str(self),
        }


def _linking_mismatch(T: StringLinkSlices, U: StringLinkSlices) -> Comparison | None:
    for i in range(1, T.width + 1):
        for j in range(i + 1, T.width + 1):
            if mu(T, (i, j)) != mu(U, (i, j)):
                return Comparison(LINKING_MISMATCH, (i, j))
    return None


def _check_widths(T: StringLinkSlices, U: StringLinkSlices):
    if T.width != U.width:
        raise ValueError(f"string links have different widths {T.width} and {U.width}")


def link_homotopy_compare(T: StringLinkSlices, U: StringLinkSlices, convention: str = MEANDER,
                          jobs: int = 1) -> Comparison:
    _check_widths(T, U)
    mismatch = _linking_mismatch(T, U)
    if mismatch:
        return mismatch
    product_link = T.stack(U.mirror_reverse())
    for length in range(3, T.width + 1):
        for I in permutations(range(1, T.width + 1), length):
            value = f_fusion(product_link, FusionSpec(I, convention), jobs)
            if value:
                return Comparison(DISTINGUISHED, I, value)
    return Comparison(EQUAL, checked_up_to=T.width)


def milnor_equiv_compare(T: StringLinkSlices, U: StringLinkSlices, max_length: int,
                         convention: str = MEANDER, jobs: int = 1) -> Comparison:
    """Semi-decision: only sequences up to ``max_length`` are examined."""
    _check_widths(T, U)
    if max_length < 2:
        raise ValueError("max_length must be at least 2")
    mismatch = _linking_mismatch(T, U)
    if mismatch:
        return mismatch
    product_link = T.stack(U.mirror_reverse())
    for length in range(3, max_length + 1):
        for I in product(range(1, T.width + 1), repeat=length):
            cabled = product_link.cable(multiplicities(I, T.width))
            value = f_fusion(cabled, FusionSpec(d_sequence(I), convention), jobs)
            if value:
                return Comparison(DISTINGUISHED, I, value)
    return Comparison(INDISTINGUISHABLE, checked_up_to=max_length)
