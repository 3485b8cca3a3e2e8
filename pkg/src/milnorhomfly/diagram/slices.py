"""String links presented as a bottom-to-top sequence of slice events.

Positions are 1-based.  ``Cross(i, e)`` exchanges positions ``i`` and
``i + 1``; ``e`` is the geometric type: ``+1`` when the strand running from
bottom-left to top-right passes over (the braid generator sigma_i),
``-1`` otherwise.  The oriented crossing sign also depends on the strand
directions and is worked out by :meth:`StringLinkSlices.compile`.
``Cap(i)`` joins positions ``i, i + 1`` and ``Cup(i)`` creates a new pair
there, so strands may run downward between a cup and a cap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from ..errors import DiagramError
from .link import LinkDiagram


@dataclass(frozen=True)
class Cross:
    i: int
    e: int

    def __post_init__(self):
        if self.e not in (1, -1):
            raise DiagramError(f"crossing type must be +1 or -1, got {self.e}")


@dataclass(frozen=True)
class Cap:
    i: int


@dataclass(frozen=True)
class Cup:
    i: int


Event = Cross | Cap | Cup


@dataclass(frozen=True)
class Piece:
    """Which strand occupies a position at some level, and which way it runs."""
    strand: int
    up: bool


@dataclass(frozen=True)
class CompiledStringLink:
    """Strand traces of a valid string link.

    ``passages[s]`` lists ``(event index, over)`` along strand ``s`` (0-based)
    in its direction of travel.  ``signs`` maps each crossing's event index
    to its oriented sign.  ``levels[L]`` gives the pieces at positions
    1..w_L just below event ``L`` (``levels[-1]`` is the top).
    """
    passages: tuple[tuple[tuple[int, bool], ...], ...]
    signs: dict
    levels: tuple[tuple[Piece, ...], ...]
    crossing_strands: dict  # event index -> (over strand, under strand)


@dataclass(frozen=True)
class StringLinkSlices:
    width: int
    events: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        if self.width < 0:
            raise DiagramError("width must be nonnegative")

    @classmethod
    def identity(cls, n: int) -> StringLinkSlices:
        return cls(n, ())

    @classmethod
    def from_braid(cls, n: int, word: Iterable[int]) -> StringLinkSlices:
        """Braid word as signed generator indices: ``2`` is sigma_2, ``-1`` is sigma_1^-1."""
        return cls(n, tuple(Cross(abs(g), 1 if g > 0 else -1) for g in word))

    def __len__(self):
        return len(self.events)

    # level widths --------------------------------------------------------------

    def widths(self) -> list[int]:
        w = self.width
        out = [w]
        for k, ev in enumerate(self.events):
            if isinstance(ev, Cross):
                if not 1 <= ev.i < w:
                    raise DiagramError(f"event {k + 1}: crossing at {ev.i} needs positions {ev.i},{ev.i + 1} of {w}")
            elif isinstance(ev, Cap):
                if not 1 <= ev.i < w:
                    raise DiagramError(f"event {k + 1}: cap at {ev.i} needs positions {ev.i},{ev.i + 1} of {w}")
                w -= 2
            elif isinstance(ev, Cup):
                if not 1 <= ev.i <= w + 1:
                    raise DiagramError(f"event {k + 1}: cup at {ev.i} is outside 1..{w + 1}")
                w += 2
            else:
                raise DiagramError(f"event {k + 1}: unknown event {ev!r}")
            out.append(w)
        if w != self.width:
            raise DiagramError(f"top has {w} positions, bottom has {self.width}")
        return out

    # tracing --------------------------------------------------------------------

    @cached_property
    def compiled(self) -> CompiledStringLink:
        return self._compile()

    def compile(self) -> CompiledStringLink:
        return self.compiled

    def validate(self) -> None:
        self.compiled

    def is_valid(self) -> bool:
        try:
            self.compiled
        except DiagramError:
            return False
        return True

    def _compile(self) -> CompiledStringLink:
        widths = self.widths()
        n_levels = len(self.events) + 1
        # every node (level, position) has an edge below (event level-1) and above (event level)
        up_edge: dict[tuple[int, int], tuple] = {}
        down_edge: dict[tuple[int, int], tuple] = {}
        for L, ev in enumerate(self.events):
            w = widths[L]
            if isinstance(ev, Cross):
                for p in range(1, w + 1):
                    if p == ev.i:
                        q, kind = p + 1, "bltr"
                    elif p == ev.i + 1:
                        q, kind = p - 1, "brtl"
                    else:
                        q, kind = p, None
                    up_edge[(L, p)] = ("v", L + 1, q, kind)
                    down_edge[(L + 1, q)] = ("v", L, p, kind)
            elif isinstance(ev, Cap):
                i = ev.i
                up_edge[(L, i)] = ("h", L, i + 1)
                up_edge[(L, i + 1)] = ("h", L, i)
                for p in range(1, w + 1):
                    if p < i:
                        up_edge[(L, p)] = ("v", L + 1, p, None)
                        down_edge[(L + 1, p)] = ("v", L, p, None)
                    elif p > i + 1:
                        up_edge[(L, p)] = ("v", L + 1, p - 2, None)
                        down_edge[(L + 1, p - 2)] = ("v", L, p, None)
            else:
                i = ev.i
                down_edge[(L + 1, i)] = ("h", L + 1, i + 1)
                down_edge[(L + 1, i + 1)] = ("h", L + 1, i)
                for p in range(1, w + 1):
                    q = p if p < i else p + 2
                    up_edge[(L, p)] = ("v", L + 1, q, None)
                    down_edge[(L + 1, q)] = ("v", L, p, None)

        top = n_levels - 1
        pieces: dict[tuple[int, int], Piece] = {}
        raw: list[list[tuple[int, str, bool]]] = []  # per strand: (event, kind, going up)
        for s in range(self.width):
            node = (0, s + 1)
            going_up = True
            trail = []
            visited = 0
            while True:
                if node in pieces:
                    raise DiagramError(f"strand {s + 1} runs into itself")
                pieces[node] = Piece(s, going_up)
                visited += 1
                L, p = node
                if going_up:
                    if L == top:
                        if p != s + 1:
                            raise DiagramError(
                                f"strand {s + 1} exits at top position {p}, not {s + 1}; not a string link")
                        break
                    edge = up_edge[node]
                    if edge[0] == "h":
                        node, going_up = (edge[1], edge[2]), False
                        continue
                    _, L2, q, kind = edge
                    if kind:
                        trail.append((L, kind, True))
                    node = (L2, q)
                else:
                    if L == 0:
                        raise DiagramError(f"strand {s + 1} exits through the bottom at position {p}")
                    edge = down_edge[node]
                    if edge[0] == "h":
                        node, going_up = (edge[1], edge[2]), True
                        continue
                    _, L2, q, kind = edge
                    if kind:
                        trail.append((L2, kind, False))
                    node = (L2, q)
            raw.append(trail)
        total = sum(widths)
        if len(pieces) != total:
            raise DiagramError("diagram contains a closed loop; not a string link")

        info: dict[int, list] = {}
        passages = []
        for s, trail in enumerate(raw):
            row = []
            for L, kind, up in trail:
                e = self.events[L].e
                over = (kind == "bltr") == (e == 1)
                if kind == "bltr":
                    vec = (1, 1) if up else (-1, -1)
                else:
                    vec = (-1, 1) if up else (1, -1)
                info.setdefault(L, []).append((s, over, vec))
                row.append((L, over))
            passages.append(tuple(row))
        signs = {}
        crossing_strands = {}
        for L, items in info.items():
            (o_s, _, o_v), = [x for x in items if x[1]]
            (u_s, _, u_v), = [x for x in items if not x[1]]
            cr = o_v[0] * u_v[1] - o_v[1] * u_v[0]
            signs[L] = 1 if cr > 0 else -1
            crossing_strands[L] = (o_s, u_s)
        levels = tuple(tuple(pieces[(L, p)] for p in range(1, widths[L] + 1)) for L in range(n_levels))
        return CompiledStringLink(tuple(passages), signs, levels, crossing_strands)

    # derived data ------------------------------------------------------------------

    def self_writhe(self, i: int) -> int:
        """Signed count of crossings of strand ``i`` (1-based) with itself."""
        c = self.compiled
        return sum(s for L, s in c.signs.items() if c.crossing_strands[L] == (i - 1, i - 1))

    def linking_number(self, i: int, j: int) -> int:
        """Linking number of strands ``i`` and ``j`` in the closure."""
        return self.closure().linking_number(i, j)

    def closure(self) -> LinkDiagram:
        """Close each strand with a crossing-free return arc on the right."""
        c = self.compiled
        comps = [tuple(2 * L + int(over) for L, over in row) for row in c.passages]
        return LinkDiagram(comps, dict(c.signs))

    # constructions --------------------------------------------------------------------

    def stack(self, other: StringLinkSlices) -> StringLinkSlices:
        """``self`` below, ``other`` on top."""
        if self.width != other.width:
            raise DiagramError(f"cannot stack widths {self.width} and {other.width}")
        return StringLinkSlices(self.width, self.events + other.events)

    def mirror_reverse(self) -> StringLinkSlices:
        """Reflect top to bottom and reverse every orientation."""
        out = []
        for ev in reversed(self.events):
            if isinstance(ev, Cross):
                out.append(Cross(ev.i, -ev.e))
            elif isinstance(ev, Cap):
                out.append(Cup(ev.i))
            else:
                out.append(Cap(ev.i))
        return StringLinkSlices(self.width, tuple(out))

    def delete_strands(self, keep: Iterable[int]) -> StringLinkSlices:
        """Keep only the listed strands (1-based); others and their crossings vanish."""
        keep0 = {k - 1 for k in keep}
        for k in keep0:
            if not 0 <= k < self.width:
                raise DiagramError(f"strand {k + 1} out of range 1..{self.width}")
        c = self.compiled
        levels = c.levels

        def newpos(L, p):  # 1-based old position -> 1-based new position
            return sum(1 for x in levels[L][:p - 1] if x.strand in keep0) + 1

        out = []
        for L, ev in enumerate(self.events):
            here = levels[L]
            if isinstance(ev, Cross):
                a, b = here[ev.i - 1].strand, here[ev.i].strand
                if a in keep0 and b in keep0:
                    out.append(Cross(newpos(L, ev.i), ev.e))
            elif isinstance(ev, Cap):
                if here[ev.i - 1].strand in keep0:
                    out.append(Cap(newpos(L, ev.i)))
            else:
                above = levels[L + 1]
                if above[ev.i - 1].strand in keep0:
                    out.append(Cup(newpos(L + 1, ev.i)))
        return StringLinkSlices(len(keep0), tuple(out))

    def cable(self, mult: Sequence[int]) -> StringLinkSlices:
        """Replace strand ``i`` by ``mult[i-1]`` zero-framed parallel copies."""
        if len(mult) != self.width:
            raise DiagramError(f"need {self.width} multiplicities, got {len(mult)}")
        if any(r < 0 for r in mult):
            raise DiagramError("multiplicities must be nonnegative")
        keep = [i + 1 for i, r in enumerate(mult) if r > 0]
        base = self.delete_strands(keep) if len(keep) < self.width else self
        rs = [mult[i - 1] for i in keep]
        writhes = [base.self_writhe(k + 1) for k in range(len(keep))]
        c = base.compiled
        levels = c.levels
        out: list[Event] = []

        def start(L, p):  # first new position of the block replacing old position p
            return sum(rs[x.strand] for x in levels[L][:p - 1]) + 1

        for L, ev in enumerate(base.events):
            here = levels[L]
            if isinstance(ev, Cross):
                P = start(L, ev.i)
                ra, rb = rs[here[ev.i - 1].strand], rs[here[ev.i].strand]
                for a in reversed(range(ra)):
                    for b in range(rb):
                        out.append(Cross(P + a + b, ev.e))
            elif isinstance(ev, Cap):
                P = start(L, ev.i)
                r = rs[here[ev.i - 1].strand]
                for k in range(r - 1, -1, -1):
                    out.append(Cap(P + k))
            else:
                P = start(L + 1, ev.i)
                r = rs[levels[L + 1][ev.i - 1].strand]
                for k in range(r):
                    out.append(Cup(P + k))
        # framing correction: -w full twists on each cable, at the top
        offset = 0
        for s, r in enumerate(rs):
            w = writhes[s]
            if r >= 2 and w:
                if w < 0:
                    twist = [Cross(offset + g, 1) for g in range(1, r)]
                else:
                    twist = [Cross(offset + g, -1) for g in range(r - 1, 0, -1)]
                out.extend(twist * (r * abs(w)))
            offset += r
        return StringLinkSlices(sum(rs), tuple(out))


def d_sequence(seq: Sequence[int]) -> tuple[int, ...]:
    """Nonrepeating sequence induced on the cable by a possibly repeating one."""
    # the k-th occurrence of i names copy (i, k); copies are then numbered lexicographically
    seen = []
    used: dict[int, int] = {}
    for i in seq:
        used[i] = used.get(i, 0) + 1
        seen.append((i, used[i]))
    order = sorted(seen)
    phi = {pair: k + 1 for k, pair in enumerate(order)}
    return tuple(phi[p] for p in seen)


def multiplicities(seq: Sequence[int], n: int) -> list[int]:
    out = [0] * n
    for i in seq:
        if not 1 <= i <= n:
            raise DiagramError(f"index {i} out of range 1..{n}")
        out[i - 1] += 1
    return out
