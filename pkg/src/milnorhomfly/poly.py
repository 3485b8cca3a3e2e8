"""Exact integer Laurent polynomials in ``t`` and in ``(t, z)``.

Both classes are immutable and store only non-zero coefficients. The text
format is ``c*t^a*z^b`` terms joined by ``+``/``-`` in decreasing
``(t, z)`` exponent order; :func:`parse_poly` reads it back exactly.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Mapping


def _clean(items: Iterable) -> dict:
    out: dict = {}
    for k, v in items:
        if v:
            out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


class Laurent1:
    """Laurent polynomial in ``t`` with integer coefficients."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self.coeffs = {int(e): int(c) for e, c in (coeffs or {}).items() if c}
        self._hash = None

    @classmethod
    def const(cls, c: int) -> Laurent1:
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> Laurent1:
        return cls({e: c})

    def __eq__(self, other):
        if isinstance(other, int):
            other = Laurent1.const(other)
        if not isinstance(other, Laurent1):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.coeffs.items()))
        return self._hash

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other):
        if isinstance(other, int):
            other = Laurent1.const(other)
        return Laurent1(_clean(list(self.coeffs.items()) + list(other.coeffs.items())))

    __radd__ = __add__

    def __neg__(self):
        return Laurent1({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = Laurent1.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scalar_mul(other)
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return Laurent1(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.coeffs) != 1:
                raise ValueError("only monomials have Laurent inverses")
            ((e, c),) = self.coeffs.items()
            if abs(c) != 1:
                raise ValueError("only unit monomials have Laurent inverses")
            return Laurent1({e * k: c ** (-k) if c == 1 else (-1) ** k})
        result = Laurent1.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scalar_mul(self, a: int) -> Laurent1:
        return Laurent1({e: a * c for e, c in self.coeffs.items()})

    def shift(self, k: int) -> Laurent1:
        """Multiply by ``t^k``."""
        return Laurent1({e + k: c for e, c in self.coeffs.items()})

    def evaluate(self, t: int | Fraction) -> Fraction:
        return sum((Fraction(c) * Fraction(t) ** e for e, c in self.coeffs.items()), Fraction(0))

    def at_one(self) -> int:
        return sum(self.coeffs.values())

    def terms(self) -> list[tuple[int, int]]:
        return sorted(self.coeffs.items(), reverse=True)

    def __repr__(self):
        return f"Laurent1({render_poly(self)!r})"

    def __str__(self):
        return render_poly(self)


class BiLaurent:
    """Laurent polynomial in ``(t, z)``; keys are ``(t_exp, z_exp)``."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Mapping[tuple[int, int], int] | None = None):
        self.coeffs = {(int(a), int(b)): int(c) for (a, b), c in (coeffs or {}).items() if c}
        self._hash = None

    @classmethod
    def const(cls, c: int) -> BiLaurent:
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, a: int, b: int, c: int = 1) -> BiLaurent:
        return cls({(a, b): c})

    @classmethod
    def from_laurent(cls, p: Laurent1, z_exp: int = 0) -> BiLaurent:
        return cls({(e, z_exp): c for e, c in p.coeffs.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = BiLaurent.const(other)
        if not isinstance(other, BiLaurent):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.coeffs.items()))
        return self._hash

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other):
        if isinstance(other, int):
            other = BiLaurent.const(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return BiLaurent(out)

    __radd__ = __add__

    def __neg__(self):
        return BiLaurent({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = BiLaurent.const(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scalar_mul(other)
        out: dict[tuple[int, int], int] = {}
        for (a1, b1), c1 in self.coeffs.items():
            for (a2, b2), c2 in other.coeffs.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, 0) + c1 * c2
        return BiLaurent(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = BiLaurent.const(1)
        for _ in range(k):
            result = result * self
        return result

    def scalar_mul(self, a: int) -> BiLaurent:
        return BiLaurent({k: a * c for k, c in self.coeffs.items()})

    def shift(self, dt: int, dz: int = 0) -> BiLaurent:
        """Multiply by ``t^dt z^dz``."""
        return BiLaurent({(a + dt, b + dz): c for (a, b), c in self.coeffs.items()})

    def z_exponents(self) -> list[int]:
        return sorted({b for _, b in self.coeffs})

    def terms(self) -> list[tuple[int, int, int]]:
        return [(a, b, c) for (a, b), c in sorted(self.coeffs.items(), reverse=True)]

    def to_json(self) -> dict:
        return {"terms": [{"t": a, "z": b, "c": c} for a, b, c in self.terms()]}

    @classmethod
    def from_json(cls, data: Mapping) -> BiLaurent:
        return cls({(d["t"], d["z"]): d["c"] for d in data["terms"]})

    def __repr__(self):
        return f"BiLaurent({render_poly(self)!r})"

    def __str__(self):
        return render_poly(self)


def z_coefficient(p: BiLaurent, e: int) -> Laurent1:
    """The Laurent polynomial in ``t`` multiplying ``z^e`` (zero if absent)."""
    return Laurent1({a: c for (a, b), c in p.coeffs.items() if b == e})


# ---------------------------------------------------------------- t = 1 + h

class TruncSeries1:
    """Power series in ``h`` with rational coefficients, truncated at ``h^q``."""

    __slots__ = ("q", "coeffs")

    def __init__(self, coeffs: Iterable, q: int):
        c = [Fraction(x) for x in coeffs][: q + 1]
        c += [Fraction(0)] * (q + 1 - len(c))
        self.q = q
        self.coeffs = tuple(c)

    @classmethod
    def from_laurent(cls, p: Laurent1, q: int) -> TruncSeries1:
        """Expand ``p(1 + h)`` up to ``h^q`` (generalized binomial series)."""
        out = [0] * (q + 1)
        for e, c in p.coeffs.items():
            for k in range(q + 1):
                out[k] += c * _gbinom(e, k)
        return cls(out, q)

    def __add__(self, other: TruncSeries1) -> TruncSeries1:
        return TruncSeries1([a + b for a, b in zip(self.coeffs, other.coeffs)], self.q)

    def __sub__(self, other: TruncSeries1) -> TruncSeries1:
        return TruncSeries1([a - b for a, b in zip(self.coeffs, other.coeffs)], self.q)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries1):
            return TruncSeries1([a * other for a in self.coeffs], self.q)
        q = min(self.q, other.q)
        out = [Fraction(0)] * (q + 1)
        for i, a in enumerate(self.coeffs[: q + 1]):
            if a:
                for j in range(q + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return TruncSeries1(out, q)

    __rmul__ = __mul__

    def log(self) -> TruncSeries1:
        if self.coeffs[0] != 1:
            raise ValueError("log of a truncated series needs constant term 1")
        b = TruncSeries1([0] + list(self.coeffs[1:]), self.q)
        result = TruncSeries1([], self.q)
        power = TruncSeries1([1], self.q)
        for k in range(1, self.q + 1):
            power = power * b
            result = result + power * Fraction((-1) ** (k + 1), k)
        return result


def _gbinom(e: int, k: int) -> int:
    if e >= 0:
        return comb(e, k)
    # binom(-m, k) = (-1)^k binom(m + k - 1, k)
    return (-1) ** k * comb(-e + k - 1, k)


def deriv_at_one(p: Laurent1, l: int) -> int:
    """The ``l``-th derivative of ``p`` at ``t = 1``."""
    total = 0
    for e, c in p.coeffs.items():
        f = 1
        for i in range(l):
            f *= e - i
        total += c * f
    return total


def log_deriv_at_one(p: Laurent1, m: int) -> int:
    """The ``m``-th derivative of ``log p`` at ``t = 1``; requires ``p(1) = 1``."""
    if p.at_one() != 1:
        raise ValueError(f"log derivative needs p(1) = 1, got p(1) = {p.at_one()}")
    if m < 1:
        raise ValueError("order must be positive")
    series = TruncSeries1.from_laurent(p, m).log()
    value = series.coeffs[m] * factorial(m)
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral log derivative {value}")
    return int(value)


# ---------------------------------------------------------------- text format

def render_poly(p: Laurent1 | BiLaurent) -> str:
    if isinstance(p, Laurent1):
        terms = [(e, None, c) for e, c in p.terms()]
    else:
        terms = p.terms()
    if not terms:
        return "0"
    parts = []
    for i, (a, b, c) in enumerate(terms):
        factors = []
        if a:
            factors.append("t" if a == 1 else f"t^{a}")
        if b:
            factors.append("z" if b == 1 else f"z^{b}")
        mag = abs(c)
        if factors:
            body = "*".join(([str(mag)] if mag != 1 else []) + factors)
        else:
            body = str(mag)
        if i == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


_TERM = re.compile(r"([+-]?)\s*(\d+)?\s*\*?\s*((?:[tz](?:\^-?\d+)?\s*\*?\s*)*)")
_FACTOR = re.compile(r"([tz])(?:\^(-?\d+))?")


def parse_poly(text: str, bivariate: bool = True) -> Laurent1 | BiLaurent:
    """Parse the rendering produced by :func:`render_poly`."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    coeffs: dict[tuple[int, int], int] = {}
    pos = 0
    first = True
    while pos < len(s):
        while pos < len(s) and s[pos].isspace():
            pos += 1
        if pos >= len(s):
            break
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at column {pos + 1}: {s[pos:]!r}")
        sign, num, facs = m.groups()
        if not first and not sign:
            raise ValueError(f"missing operator at column {pos + 1}")
        if num is None and not facs.strip():
            raise ValueError(f"empty term at column {pos + 1}")
        c = int(num) if num is not None else 1
        if sign == "-":
            c = -c
        a = b = 0
        for var, exp in _FACTOR.findall(facs):
            e = int(exp) if exp is not None and exp != "" else 1
            if var == "t":
                a += e
            else:
                b += e
        coeffs[(a, b)] = coeffs.get((a, b), 0) + c
        pos = m.end()
        first = False
    if bivariate:
        return BiLaurent(coeffs)
    if any(b for a, b in coeffs):
        raise ValueError("z appears in a univariate polynomial")
    return Laurent1({a: c for (a, _), c in coeffs.items()})


T = Laurent1.monomial(1)
T_INV = Laurent1.monomial(-1)
