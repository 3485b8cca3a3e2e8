"""Band-sum knots obtained from a string link and a fusion disk.

Two disk conventions are available; the theorems hold for either, which
makes them a useful cross-check of each other.

``meander`` (default).  Close the string link, restricted to the ``m``
strands named in the sequence, with nested returns on the right.  The
return of the strand at position ``p`` has its bottom run at depth
``m + 1 - p`` below the string link, traversed right to left.  A vertical
test line just right of the last strand meets these runs at depths
``1..m``.  The disk lies in front of everything.  Its boundary crosses
the test line eastward along a short piece of each run (the edges shared
with the link) and westward at ``m`` gap points; elsewhere it consists of
lens-shaped connector arcs on both sides of the line, which pass over
every bottom run they meet.  Gap points and the two non-crossing
matchings come from an exhaustive search: the boundary must visit the
shared edges in the cyclic order of the sequence, and the least total
span wins, then the least span on the right side, then lexicographic
order.

``comb``.  The strands are first conjugated by a positive permutation
braid so that the sequence order becomes the left-to-right order.  The
disk then lies in the bottom plane of the cylinder as a comb whose teeth
are the bottom closure arcs, seen through a slight tilt of that plane.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from ..errors import DiagramError
from .link import LinkDiagram
from .slices import Cross, StringLinkSlices


MEANDER = "meander"
COMB = "comb"
CONVENTIONS = (MEANDER, COMB)


@dataclass(frozen=True)
class FusionSpec:
    """A sequence of distinct component indices; it fixes the fusion disk."""
    seq: tuple[int, ...]
    convention: str = "meander"

    def __post_init__(self):
        object.__setattr__(self, "seq", tuple(self.seq))
        if self.convention not in CONVENTIONS:
            raise DiagramError(f"unknown fusion disk convention {self.convention!r}")
        if not self.seq:
            raise DiagramError("fusion sequence must be nonempty")
        if len(set(self.seq)) != len(self.seq):
            raise DiagramError(f"fusion sequence {self.seq} repeats an index")

    def subsequences(self) -> list[tuple[int, ...]]:
        """All subsequences, ordered by bitmask of kept positions."""
        m = len(self.seq)
        return [tuple(self.seq[k] for k in range(m) if mask >> k & 1) for mask in range(1 << m)]


def is_subsequence(sub: Sequence[int], seq: Sequence[int]) -> bool:
    it = iter(seq)
    return all(any(x == y for y in it) for x in sub)


def _noncrossing_matchings(points: tuple[int, ...]) -> list[tuple[tuple[int, int], ...]]:
    if not points:
        return [()]
    out = []
    first = points[0]
    for k in range(1, len(points), 2):
        inner = points[1:k]
        outer = points[k + 1:]
        for a in _noncrossing_matchings(inner):
            for b in _noncrossing_matchings(outer):
                out.append(((first, points[k]),) + a + b)
    return out


@lru_cache(maxsize=None)
def _matchings(size: int):
    return _noncrossing_matchings(tuple(range(size)))


@lru_cache(maxsize=None)
def meander(depth_cycle: tuple[int, ...]):
    """Choose the disk boundary for shared edges at the given depths.

    ``depth_cycle`` lists the depths (a permutation of 1..m) in the cyclic
    order the boundary must visit them.  Returns ``(right, left)``: for each
    shared edge in cycle order, the right arc ``(edge depth, gap depth)``
    leaving it and the left arc ``(gap depth, next edge depth)`` entering
    the next one.  Depths of gap points are half-integers doubled, so all
    values here are doubled depths.
    """
    m = len(depth_cycle)
    best = None
    for pattern in (0, 1):
        # doubled depths along the line, top to bottom
        if pattern == 0:
            slots = [d for k in range(1, m + 1) for d in (2 * k - 1, 2 * k)]
        else:
            slots = [d for k in range(1, m + 1) for d in (2 * k, 2 * k + 1)]
        slot_of = {d: s for s, d in enumerate(slots)}
        matchings = _matchings(2 * m)
        for right in matchings:
            rmap = {}
            for a, b in right:
                rmap[a] = b
                rmap[b] = a
            for left in matchings:
                lmap = {}
                for a, b in left:
                    lmap[a] = b
                    lmap[b] = a
                pos = slot_of[2 * depth_cycle[0]]
                arcs = []
                ok = True
                for t in range(m):
                    w = rmap[pos]
                    nxt = lmap[w]
                    if slots[nxt] != 2 * depth_cycle[(t + 1) % m]:
                        ok = False
                        break
                    arcs.append(((slots[pos], slots[w]), (slots[w], slots[nxt])))
                    pos = nxt
                if not ok:
                    continue
                right_span = sum(abs(a - b) for (a, b), _ in arcs)
                span = right_span + sum(abs(a - b) for _, (a, b) in arcs)
                key = (span, right_span, pattern, tuple(arcs))
                if best is None or key < best[0]:
                    best = (key, arcs)
    if best is None:
        raise DiagramError(f"no fusion disk boundary found for {depth_cycle}")
    arcs = best[1]
    return tuple(r for r, _ in arcs), tuple(l for _, l in arcs)


def _comb(S: StringLinkSlices, J: set, start_id: int) -> LinkDiagram:
    m = S.width
    comp = S.compiled
    signs: dict = {}
    nxt = [start_id]

    def new(sign):
        c = nxt[0]
        nxt[0] += 1
        signs[c] = sign
        return c

    T = {(i, k): new(-1) for i in J for k in J if k > i}            # strand k over top tooth i
    B = {(j, i): new(-1) for j in range(1, m + 1) if j not in J for i in J if i < j}  # tooth j over return i
    C = {(k, i): new(1) for k in range(1, m) for i in J if i < k}   # connector k over return i
    D = {i: new(1) for i in J}                                       # closing connector over return i
    E = {k: new(-1) for k in J if k >= 2}                            # closing connector over strand k

    def under(c):
        return 2 * c

    def over(c):
        return 2 * c + 1

    code = []
    for i in range(1, m + 1):
        if i in J:
            if i >= 2:
                code.append(under(E[i]))
            for L, ov in comp.passages[i - 1]:
                o_s, u_s = comp.crossing_strands[L]
                if o_s + 1 in J and u_s + 1 in J:
                    code.append(2 * L + int(ov))
                    signs[L] = comp.signs[L]
            code += [over(T[(a, i)]) for a in sorted(J) if a < i]
            code += [under(T[(i, k)]) for k in sorted(J) if k > i]
            code.append(under(D[i]))
            for j in range(m, i, -1):
                if j < m:
                    code.append(under(C[(j, i)]))
                if j not in J:
                    code.append(under(B[(j, i)]))
        else:
            code += [over(B[(i, k)]) for k in sorted(J) if k < i]
        if i < m:
            code += [over(C[(i, k)]) for k in sorted(J, reverse=True) if k < i]
        else:
            code += [over(D[k]) for k in sorted(J, reverse=True)]
            code += [over(E[k]) for k in sorted(J, reverse=True) if k >= 2]
    return LinkDiagram([tuple(code)], signs)


def sorting_braid(targets: Sequence[int], e: int = 1) -> list[Cross]:
    """Bubble-sort crossings carrying bottom position k to top position targets[k]."""
    arr = list(targets)
    out = []
    changed = True
    while changed:
        changed = False
        for p in range(len(arr) - 1):
            if arr[p] > arr[p + 1]:
                arr[p], arr[p + 1] = arr[p + 1], arr[p]
                out.append(Cross(p + 1, e))
                changed = True
    return out


def _meander_knot(S: StringLinkSlices, seq: tuple, J: tuple) -> LinkDiagram:
    m = len(seq)
    ordered = sorted(seq)
    pos = {i: k for k, i in enumerate(ordered)}
    depth = {i: m - pos[i] for i in seq}  # position 1 is deepest (outermost return)
    members = set(J)
    comp = S.compiled
    right, left = meander(tuple(depth[i] for i in seq))

    next_id = len(S.events)
    signs: dict[int, int] = {}
    # hits on each bottom run, per side: (lens width, crossing id)
    run_hits: dict[tuple[int, str], list] = {(i, s): [] for i in J for s in ("L", "R")}
    arc_passages: dict[tuple[str, int], list] = {}
    for side, arcs in (("R", right), ("L", left)):
        for t, (a, b) in enumerate(arcs):
            lo, hi = min(a, b), max(a, b)
            going_deeper = b > a
            hits = []
            for j in J:
                d2 = 2 * depth[j]
                if lo < d2 < hi:
                    cid = next_id
                    next_id += 1
                    signs[cid] = -1 if going_deeper else 1
                    run_hits[(j, side)].append((hi - lo, cid))
                    hits.append((d2, cid))
            hits.sort(reverse=not going_deeper)
            arc_passages[(side, t)] = [2 * cid + 1 for _, cid in hits]

    code: list[int] = []
    for t, i in enumerate(seq):
        if i in members:
            # outward along the left part of the run: innermost lenses first
            code += [2 * cid for _, cid in sorted(run_hits[(i, "L")])]
            for L, over in comp.passages[pos[i]]:
                o_s, u_s = comp.crossing_strands[L]
                if ordered[o_s] in members and ordered[u_s] in members:
                    code.append(2 * L + int(over))
                    signs[L] = comp.signs[L]
            # inward along the right part: outermost lenses first
            code += [2 * cid for _, cid in sorted(run_hits[(i, "R")], reverse=True)]
        code += arc_passages[("R", t)]
        code += arc_passages[("L", t)]
    return LinkDiagram([tuple(code)], signs)


def _comb_knot(S: StringLinkSlices, seq: tuple, J: tuple) -> LinkDiagram:
    m = len(seq)
    ordered = sorted(seq)
    rank = {i: k + 1 for k, i in enumerate(ordered)}
    P = sorting_braid([rank[i] for i in seq])
    P_inv = [Cross(x.i, -x.e) for x in reversed(P)]
    conj = StringLinkSlices(m, tuple(P) + S.events + tuple(P_inv))
    members = {k + 1 for k, i in enumerate(seq) if i in set(J)}
    return _comb(conj, members, len(conj.events))


def fusion_knot(T: StringLinkSlices, spec: FusionSpec, J: Sequence[int]) -> LinkDiagram:
    """The knot obtained by band-summing the strands named in ``J`` along the disk."""
    seq = spec.seq
    J = tuple(J)
    if not is_subsequence(J, seq):
        raise DiagramError(f"{J} is not a subsequence of {seq}")
    for i in seq:
        if not 1 <= i <= T.width:
            raise DiagramError(f"index {i} out of range 1..{T.width}")
    if not J:
        return LinkDiagram([()], {})
    ordered = sorted(seq)
    restricted = T.delete_strands(ordered) if len(seq) < T.width else T
    if spec.convention == MEANDER:
        return _meander_knot(restricted, seq, J)
    return _comb_knot(restricted, seq, J)
