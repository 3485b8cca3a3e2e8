"""Milnor invariants of string links from Magnus expansions of longitudes.

Each strand is cut into arcs at its under passages.  The bottom arc of
strand ``j`` carries the meridian ``1 + X_j``.  Walking up strand ``j``, the
partial longitude ``w`` is multiplied on the right by ``x^eps`` at every
under passage (``x`` the meridian of the over arc, ``eps`` the crossing
sign), and the next arc carries ``w^-1 (1 + X_j) w``.  Over-arc meridians
depend on other strands, so the sweep is repeated until nothing changes;
modulo degree ``q`` this takes at most ``q + 1`` rounds.  The longitude is
finally corrected by ``(1 + X_j)^(-w_j)`` with ``w_j`` the self-writhe.

``mu(i_1 ... i_k)`` reads the longitude of strand ``i_k`` against the
reversed word ``X_{i_(k-1)} ... X_{i_1}``.  This orientation convention is
the one under which the band-sum formulas in ``theorems`` hold with a plus
sign; it agrees with the linking number at length 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from math import gcd
from typing import Sequence

from .diagram.slices import StringLinkSlices
from .magnus import TruncNCSeries, subword_closure


@dataclass(frozen=True)
class LongitudeSet:
    longitudes: tuple[TruncNCSeries, ...]
    writhes: tuple[int, ...]


@dataclass(frozen=True)
class MilnorResult:
    mu: int
    delta: int
    mu_bar: int

    def to_json(self) -> dict:
        return {"mu": self.mu, "delta": self.delta, "mu_bar": self.mu_bar}


def longitudes(T: StringLinkSlices, q: int, allowed: frozenset | None = None) -> LongitudeSet:
    if q < 1:
        raise ValueError("degree bound must be at least 1")
    comp = T.compiled
    n = T.width
    one = TruncNCSeries.one(n, q, allowed)
    base = [TruncNCSeries.meridian(j + 1, n, q, allowed) for j in range(n)]
    # meridian of the arc each over passage belongs to, keyed by crossing id
    over_meridian: dict[int, TruncNCSeries] = {}
    for s in range(n):
        for L, over in comp.passages[s]:
            if over:
                over_meridian[L] = base[s]
    partial = [one] * n
    for _ in range(q + 2):
        new_over: dict[int, TruncNCSeries] = {}
        new_partial = []
        for s in range(n):
            w = one
            current = base[s]
            for L, over in comp.passages[s]:
                if over:
                    new_over[L] = current
                else:
                    x = over_meridian[L]
                    w = w * (x if comp.signs[L] == 1 else x.invert())
                    current = w.invert() * base[s] * w
            new_partial.append(w)
        if new_over == over_meridian and new_partial == partial:
            break
        over_meridian, partial = new_over, new_partial
    else:
        raise RuntimeError("Wirtinger sweep did not stabilize")
    writhes = tuple(T.self_writhe(s + 1) for s in range(n))
    longs = tuple((base[s] ** (-writhes[s])) * partial[s] for s in range(n))
    return LongitudeSet(longs, writhes)


def _check_seq(T: StringLinkSlices, seq: Sequence[int]) -> tuple[int, ...]:
    seq = tuple(seq)
    if len(seq) < 2:
        raise ValueError("Milnor invariants need a sequence of length at least 2")
    for i in seq:
        if not 1 <= i <= T.width:
            raise ValueError(f"index {i} out of range 1..{T.width}")
    return seq


def mu(T: StringLinkSlices, seq: Sequence[int]) -> int:
    """Milnor invariant of a sequence of strand indices (1-based, length >= 2)."""
    seq = _check_seq(T, seq)
    return _mu_cached(T, seq)


@lru_cache(maxsize=65536)
def _mu_cached(T: StringLinkSlices, seq: tuple[int, ...]) -> int:
    word = seq[-2::-1]
    allowed = subword_closure([word])
    longs = longitudes(T, len(seq), allowed)
    return longs.longitudes[seq[-1] - 1].coefficient(word)


def reduced_sequences(seq: Sequence[int]) -> list[tuple[int, ...]]:
    """Cyclic permutations of every proper subsequence of length at least 2."""
    seq = tuple(seq)
    k = len(seq)
    out = set()
    for mask in range(1, (1 << k) - 1):
        sub = tuple(seq[i] for i in range(k) if mask >> i & 1)
        if len(sub) < 2:
            continue
        for r in range(len(sub)):
            out.add(sub[r:] + sub[:r])
    return sorted(out)


def delta(T: StringLinkSlices, seq: Sequence[int]) -> int:
    seq = _check_seq(T, seq)
    g = 0
    for sub in reduced_sequences(seq):
        g = gcd(g, abs(mu(T, sub)))
        if g == 1:
            break
    return g


def mu_bar(T: StringLinkSlices, seq: Sequence[int]) -> MilnorResult:
    value = mu(T, seq)
    d = delta(T, seq)
    return MilnorResult(value, d, value % d if d else value)


def all_sequences(n: int, length: int, repeating: bool) -> list[tuple[int, ...]]:
    """Every sequence of the given length over 1..n, in lexicographic order."""
    if repeating:
        return list(product(range(1, n + 1), repeat=length))
    return list(permutations(range(1, n + 1), length))


def first_nonvanishing(T: StringLinkSlices, max_length: int, repeating: bool = False):
    """Largest k <= max_length with all mu of length <= k vanishing, and a witness past it."""
    for length in range(2, max_length + 1):
        for s in all_sequences(T.width, length, repeating):
            if mu(T, s):
                return length - 1, s
    return max_length, None
