"""Named example diagrams.

Knots are returned as :class:`LinkDiagram`, string links as
:class:`StringLinkSlices`.  Parametrized entries take an argument after a
space or a colon: ``kplus 2``, ``keps +-++``, ``vJ 1324``, ``identity 3``.

The commutator families are built from the pure braid generators
``A(i, j)`` (strand ``i`` encircling strand ``j``).  Two routings are used
for non-adjacent strands: passing in front of the strands in between, or
behind them.
"""

from __future__ import annotations

import re
from typing import Callable, Sequence

from .diagram.fusion import FusionSpec, fusion_knot
from .diagram.link import LinkDiagram, unknot_diagram
from .diagram.slices import Cap, Cross, Cup, StringLinkSlices
from .errors import ParseError

Word = list[int]


def _inverse(w: Word) -> Word:
    return [-g for g in reversed(w)]


def _commutator(a: Word, b: Word) -> Word:
    return a + b + _inverse(a) + _inverse(b)


def _power(w: Word, sign: int) -> Word:
    return w if sign > 0 else _inverse(w)


def pure_generator(i: int, j: int, behind: bool = False) -> Word:
    """Braid word for strand ``i`` going once around strand ``j > i``."""
    if not 1 <= i < j:
        raise ValueError(f"need 1 <= i < j, got {i}, {j}")
    between = list(range(j - 1, i, -1))
    if behind:
        return [-g for g in between] + [i, i] + list(reversed(between))
    return between + [i, i] + [-g for g in reversed(between)]


def _tangle(word: Sequence[int]) -> StringLinkSlices:
    """One strand with a cup and cap to its right, braided in between."""
    events = (Cup(2),) + tuple(Cross(abs(g), 1 if g > 0 else -1) for g in word) + (Cap(2),)
    return StringLinkSlices(1, events)


def _knot_from_tangle(word: Sequence[int]) -> LinkDiagram:
    return _tangle(word).closure().relabeled()


# string links -----------------------------------------------------------------

def identity(n: int) -> StringLinkSlices:
    return StringLinkSlices.identity(n)


def hopf(sign: int = 1) -> StringLinkSlices:
    return StringLinkSlices(2, (Cross(1, sign), Cross(1, sign)))


def borromean() -> StringLinkSlices:
    return StringLinkSlices.from_braid(3, [1, -2] * 3)


def whitehead() -> StringLinkSlices:
    word = (1, -2, 1, -2, 1)
    events = (Cup(3),) + tuple(Cross(abs(g), 1 if g > 0 else -1) for g in word) + (Cap(3),)
    return StringLinkSlices(2, events)


def split_hopf_pair() -> StringLinkSlices:
    return StringLinkSlices(4, (Cross(1, 1), Cross(1, 1), Cross(3, 1), Cross(3, 1)))


_VJ_WORDS: dict[tuple[int, ...], Word] = {
    (1, 2, 3): _commutator(pure_generator(1, 2), pure_generator(2, 3)),
    (2, 3, 4): _commutator(pure_generator(2, 3), pure_generator(3, 4)),
    (1, 2, 4): _commutator(pure_generator(1, 2), pure_generator(2, 4, behind=True)),
    (1, 3, 4): _commutator(pure_generator(1, 3, behind=True), pure_generator(3, 4)),
    (1, 2, 3, 4): _commutator(_commutator(pure_generator(1, 2), pure_generator(2, 3)),
                              pure_generator(3, 4)),
    (1, 3, 2, 4): _commutator(_commutator(pure_generator(1, 2), pure_generator(2, 3)),
                              _inverse(pure_generator(2, 4))),
}
VJ_SEQUENCES = tuple(_VJ_WORDS)


def vj(seq: Sequence[int], width: int = 4) -> StringLinkSlices:
    """Four-strand string link whose only nonzero mu among ``VJ_SEQUENCES`` is at ``seq``."""
    seq = tuple(seq)
    if seq not in _VJ_WORDS:
        raise KeyError(f"no vJ builtin for {''.join(map(str, seq))}; "
                       f"available: {', '.join(''.join(map(str, s)) for s in VJ_SEQUENCES)}")
    return StringLinkSlices.from_braid(width, _VJ_WORDS[seq])


def keps_string_link(signs: Sequence[int]) -> StringLinkSlices:
    """Iterated commutator on ``len(signs)`` strands with mu(1..n) equal to minus the sign product."""
    signs = tuple(signs)
    if len(signs) < 3 or any(s not in (1, -1) for s in signs):
        raise ValueError("need at least three signs, each +1 or -1")
    width = len(signs)
    word = _power(pure_generator(1, 2), signs[1])
    for i in range(2, width):
        word = _commutator(word, _power(pure_generator(i, i + 1), signs[i]))
    return StringLinkSlices.from_braid(width, _power(word, -signs[0]))


# knots --------------------------------------------------------------------------

def trefoil() -> LinkDiagram:
    return _knot_from_tangle([1, 1, 1])


def figure_eight() -> LinkDiagram:
    return _knot_from_tangle([1, 1, -2, 1])


def cinquefoil() -> LinkDiagram:
    return _knot_from_tangle([1, 1, 1, 1, 1])


def three_twist() -> LinkDiagram:
    return _knot_from_tangle([1, 1, -2, -2, 1])


def keps(signs: Sequence[int]) -> LinkDiagram:
    """Band sum of all strands of :func:`keps_string_link`; its degree n+1 derivative is fixed by the signs."""
    T = keps_string_link(signs)
    seq = tuple(range(1, T.width + 1))
    return fusion_knot(T, FusionSpec(seq), seq).relabeled()


def kplus(n: int) -> LinkDiagram:
    if n < 1:
        raise ValueError("kplus needs n >= 1")
    return keps((1,) * (n + 2))


# name lookup ------------------------------------------------------------------

def parse_sequence(text: str) -> tuple[int, ...]:
    """``1324`` or ``1,3,2,4`` (the comma form allows indices above 9)."""
    text = text.strip()
    if not text:
        raise ParseError("empty index sequence")
    parts = text.split(",") if "," in text else list(text)
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise ParseError(f"bad index sequence {text!r}") from None


def _parse_signs(text: str) -> tuple[int, ...]:
    if not text or any(ch not in "+-" for ch in text):
        raise ParseError(f"expected a string of + and -, got {text!r}")
    return tuple(1 if ch == "+" else -1 for ch in text)


def _int_arg(text: str) -> int:
    if not text.isdigit():
        raise ParseError(f"expected a positive integer, got {text!r}")
    return int(text)


_PLAIN: dict[str, Callable[[], LinkDiagram | StringLinkSlices]] = {
    "unknot": unknot_diagram,
    "trefoil": trefoil,
    "trefoil-left": lambda: trefoil().mirror(),  # mirror keeps labels
    "figure-eight": figure_eight,
    "cinquefoil": cinquefoil,
    "three-twist": three_twist,
    "hopf+": lambda: hopf(1),
    "hopf-": lambda: hopf(-1),
    "clasp": lambda: hopf(1),
    "borromean": borromean,
    "whitehead": whitehead,
    "split-hopf-pair": split_hopf_pair,
}

_PARAMETRIZED: dict[str, Callable[[str], LinkDiagram | StringLinkSlices]] = {
    "identity": lambda a: identity(_int_arg(a)),
    "kplus": lambda a: kplus(_int_arg(a)),
    "keps": lambda a: keps(_parse_signs(a)),
    "keps-string-link": lambda a: keps_string_link(_parse_signs(a)),
    "vJ": lambda a: vj(parse_sequence(a)),
}

KNOT_NAMES = ("unknot", "trefoil", "trefoil-left", "figure-eight", "cinquefoil", "three-twist")

# one representative per family, used by round-trip tests and `corpus --check`
CATALOG = tuple(_PLAIN) + (
    "identity 3", "kplus 1", "kplus 2", "kplus 3", "keps -+++", "keps-string-link +-+",
) + tuple("vJ " + "".join(map(str, s)) for s in VJ_SEQUENCES)

_NAME = re.compile(r"^([A-Za-z][A-Za-z+\-]*?)(?:[\s:]+(\S+))?$")


def builtin(name: str) -> LinkDiagram | StringLinkSlices:
    name = name.strip()
    if name in _PLAIN:
        return _PLAIN[name]()
    m = _NAME.match(name)
    if m and m.group(1) in _PARAMETRIZED and m.group(2):
        try:
            return _PARAMETRIZED[m.group(1)](m.group(2))
        except (KeyError, ValueError) as exc:
            raise ParseError(f"builtin {name!r}: {exc}") from exc
    known = sorted(_PLAIN) + [f"{k} <arg>" for k in sorted(_PARAMETRIZED)]
    raise ParseError(f"unknown builtin {name!r}; known: {', '.join(known)}")
