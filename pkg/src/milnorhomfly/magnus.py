"""Truncated power series in non-commuting variables X1..Xn with integer
coefficients.

A series is a map from words (tuples of variable indices) to integers;
the empty word is the constant term.  Products drop every word longer
than the degree bound ``q``.

An optional ``allowed`` word set restricts storage further.  It must be
closed under taking contiguous subwords, so that the discarded words span
a two-sided ideal and multiplication stays well defined on the quotient.
The Milnor engine uses this to keep only subwords of the one monomial it
is interested in.
"""

from __future__ import annotations

from typing import Iterable, Mapping

Word = tuple


def subword_closure(words: Iterable[Word]) -> frozenset:
    """Every contiguous subword of every word in ``words`` (including ``()``)."""
    out = {()}
    for w in words:
        w = tuple(w)
        for i in range(len(w)):
            for j in range(i + 1, len(w) + 1):
                out.add(w[i:j])
    return frozenset(out)


class TruncNCSeries:
    __slots__ = ("n", "q", "coeffs", "allowed")

    def __init__(self, n: int, q: int, coeffs: Mapping[Word, int] | None = None,
                 allowed: frozenset | None = None):
        self.n = n
        self.q = q
        self.allowed = allowed
        out = {}
        for w, c in (coeffs or {}).items():
            w = tuple(w)
            if c and len(w) <= q and (allowed is None or w in allowed):
                for i in w:
                    if not 1 <= i <= n:
                        raise ValueError(f"variable X{i} out of range 1..{n}")
                out[w] = int(c)
        self.coeffs = out

    # construction -----------------------------------------------------------

    def _like(self, coeffs) -> TruncNCSeries:
        return TruncNCSeries(self.n, self.q, coeffs, self.allowed)

    @classmethod
    def one(cls, n: int, q: int, allowed: frozenset | None = None) -> TruncNCSeries:
        return cls(n, q, {(): 1}, allowed)

    @classmethod
    def meridian(cls, i: int, n: int, q: int, allowed: frozenset | None = None) -> TruncNCSeries:
        """``1 + X_i``."""
        if not 1 <= i <= n:
            raise ValueError(f"meridian index {i} out of range 1..{n}")
        return cls(n, q, {(): 1, (i,): 1}, allowed)

    @classmethod
    def meridian_inv(cls, i: int, n: int, q: int, allowed: frozenset | None = None) -> TruncNCSeries:
        """``1 - X_i + X_i^2 - ...`` up to degree ``q``."""
        if not 1 <= i <= n:
            raise ValueError(f"meridian index {i} out of range 1..{n}")
        return cls(n, q, {(i,) * k: (-1) ** k for k in range(q + 1)}, allowed)

    # ring operations --------------------------------------------------------

    def _check(self, other: TruncNCSeries):
        if self.n != other.n or self.q != other.q:
            raise ValueError("series have different variable counts or degree bounds")

    def __add__(self, other: TruncNCSeries) -> TruncNCSeries:
        self._check(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0) + c
        return self._like(out)

    def __neg__(self) -> TruncNCSeries:
        return self._like({w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other: TruncNCSeries) -> TruncNCSeries:
        return self + (-other)

    def __mul__(self, other: TruncNCSeries) -> TruncNCSeries:
        if isinstance(other, int):
            return self._like({w: other * c for w, c in self.coeffs.items()})
        self._check(other)
        q = self.q
        allowed = self.allowed
        out: dict = {}
        for w1, c1 in self.coeffs.items():
            room = q - len(w1)
            for w2, c2 in other.coeffs.items():
                if len(w2) > room:
                    continue
                w = w1 + w2
                if allowed is not None and w not in allowed:
                    continue
                out[w] = out.get(w, 0) + c1 * c2
        return self._like(out)

    def __rmul__(self, other: int) -> TruncNCSeries:
        return self * other

    def __pow__(self, k: int) -> TruncNCSeries:
        base = self if k >= 0 else self.invert()
        k = abs(k)
        result = self._like({(): 1})
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def invert(self) -> TruncNCSeries:
        """Inverse of a unit (constant term 1) as the truncated geometric series."""
        if self.coeffs.get((), 0) != 1:
            raise ValueError("only series with constant term 1 are invertible here")
        # a = 1 + b, a^-1 = sum (-b)^k; b has no constant term so k <= q suffices
        minus_b = self._like({w: -c for w, c in self.coeffs.items() if w})
        result = self._like({(): 1})
        power = self._like({(): 1})
        for _ in range(self.q):
            power = power * minus_b
            if not power.coeffs:
                break
            result = result + power
        return result

    def conjugate(self, m: TruncNCSeries) -> TruncNCSeries:
        """``self * m * self^-1``."""
        return self * m * self.invert()

    def coefficient(self, word: Iterable[int]) -> int:
        word = tuple(word)
        if len(word) > self.q:
            raise ValueError(f"word of length {len(word)} exceeds degree bound {self.q}")
        return self.coeffs.get(word, 0)

    def truncate(self, q: int) -> TruncNCSeries:
        return TruncNCSeries(self.n, q, {w: c for w, c in self.coeffs.items() if len(w) <= q},
                             self.allowed)

    # comparison and display --------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, TruncNCSeries):
            return NotImplemented
        return (self.n, self.q, self.coeffs) == (other.n, other.q, other.coeffs)

    def __hash__(self):
        return hash((self.n, self.q, frozenset(self.coeffs.items())))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for w in sorted(self.coeffs, key=lambda w: (len(w), w)):
            c = self.coeffs[w]
            mono = " ".join(f"X{i}" for i in w)
            mag = abs(c)
            body = mono if mono and mag == 1 else (f"{mag} {mono}" if mono else str(mag))
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"TruncNCSeries(n={self.n}, q={self.q}, {self})"
