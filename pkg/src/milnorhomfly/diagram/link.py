"""Oriented link diagrams stored as signed Gauss codes.

Each component is a cyclic tuple of *passages*.  A passage encodes a
crossing id and whether the strand goes over there: ``cid * 2 + 1`` for
over, ``cid * 2`` for under.  Crossing signs live in a separate map.  A
component with no passages is a crossing-free circle.

PD codes are produced and consumed at the boundary (``to_pd`` /
``from_pd``).  In a PD record ``X(a, b, c, d; s)`` the arcs are listed
counterclockwise starting at the incoming under-arc, so ``c`` is the
outgoing under-arc; the over strand runs ``d -> b`` when ``s = +1`` and
``b -> d`` when ``s = -1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from ..errors import DiagramError


def cid_of(passage: int) -> int:
    return passage >> 1


def is_over(passage: int) -> bool:
    return bool(passage & 1)


@dataclass(frozen=True)
class PDCrossing:
    arcs: tuple[int, int, int, int]
    sign: int


class LinkDiagram:
    """Immutable oriented link diagram with ordered components."""

    __slots__ = ("components", "signs", "_key")

    def __init__(self, components: Iterable[Iterable[int]], signs: Mapping[int, int]):
        self.components = tuple(tuple(c) for c in components)
        self.signs = dict(signs)
        self._key = None

    # basic queries -----------------------------------------------------------

    @property
    def num_components(self) -> int:
        return len(self.components)

    @property
    def num_crossings(self) -> int:
        return len(self.signs)

    def crossing_ids(self) -> list[int]:
        return sorted(self.signs)

    def passage_index(self) -> dict[int, tuple[int, int]]:
        """Map passage -> (component index, position)."""
        out = {}
        for k, comp in enumerate(self.components):
            for pos, p in enumerate(comp):
                out[p] = (k, pos)
        return out

    def crossing_components(self, c: int) -> tuple[int, int]:
        """(component of the over passage, component of the under passage), 0-based."""
        idx = self.passage_index()
        return idx[2 * c + 1][0], idx[2 * c][0]

    def writhe(self) -> int:
        return sum(self.signs.values())

    def linking_number(self, i: int, j: int) -> int:
        """Linking number of components ``i`` and ``j`` (1-based)."""
        if i == j:
            raise ValueError("linking number needs two different components")
        a, b = i - 1, j - 1
        for k in (a, b):
            if not 0 <= k < self.num_components:
                raise ValueError(f"component {k + 1} out of range")
        idx = self.passage_index()
        total = 0
        for c, s in self.signs.items():
            pair = {idx[2 * c + 1][0], idx[2 * c][0]}
            if pair == {a, b}:
                total += s
        if total % 2:
            raise DiagramError("odd signed crossing count between two components")
        return total // 2

    def total_linking(self) -> int:
        idx = self.passage_index()
        total = sum(s for c, s in self.signs.items() if idx[2 * c + 1][0] != idx[2 * c][0])
        return total // 2

    def component_knot(self, k: int) -> LinkDiagram:
        """Component ``k`` (0-based) on its own, other components erased."""
        return self.sublink([k])

    def sublink(self, keep: Iterable[int]) -> LinkDiagram:
        """Keep the listed 0-based components (in the given order)."""
        keep = list(keep)
        comps = [self.components[k] for k in keep]
        counts: dict[int, int] = {}
        for comp in comps:
            for p in comp:
                counts[cid_of(p)] = counts.get(cid_of(p), 0) + 1
        live = {c for c, n in counts.items() if n == 2}
        return LinkDiagram(
            [tuple(p for p in comp if cid_of(p) in live) for comp in comps],
            {c: s for c, s in self.signs.items() if c in live},
        )

    # validation --------------------------------------------------------------

    def validate(self) -> None:
        """Raise :class:`DiagramError` naming the first violated invariant."""
        seen: dict[int, list[int]] = {}
        for comp in self.components:
            for p in comp:
                seen.setdefault(cid_of(p), []).append(p & 1)
        for c, bits in seen.items():
            if sorted(bits) != [0, 1]:
                raise DiagramError(f"crossing {c} must be passed once over and once under, got {bits}")
            if c not in self.signs:
                raise DiagramError(f"crossing {c} has no sign")
        for c, s in self.signs.items():
            if c not in seen:
                raise DiagramError(f"sign given for unused crossing {c}")
            if s not in (1, -1):
                raise DiagramError(f"crossing {c} has sign {s}, expected +1 or -1")
        self._check_planar()

    def is_valid(self) -> bool:
        try:
            self.validate()
        except DiagramError:
            return False
        return True

    def _check_planar(self) -> None:
        pd, _ = self.to_pd()
        if not pd:
            return
        slots: dict[int, list[tuple[int, int]]] = {}
        for k, x in enumerate(pd):
            for i, a in enumerate(x.arcs):
                slots.setdefault(a, []).append((k, i))
        for a, ends in slots.items():
            if len(ends) != 2:
                raise DiagramError(f"arc {a} has {len(ends)} crossing endpoints")
        other = {}
        for a, (e1, e2) in slots.items():
            other[e1] = e2
            other[e2] = e1
        # faces are orbits of: follow the arc, then turn to the next slot counterclockwise
        seen = set()
        faces = 0
        for start in other:
            if start in seen:
                continue
            faces += 1
            d = start
            while d not in seen:
                seen.add(d)
                k, i = other[d]
                d = (k, (i + 1) % 4)
        # connected pieces of the 4-valent graph
        parent = list(range(len(pd)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (k1, _), (k2, _) in slots.values():
            parent[find(k1)] = find(k2)
        pieces = len({find(k) for k in range(len(pd))})
        v = len(pd)
        if v - 2 * v + faces != 2 * pieces:
            raise DiagramError(
                f"diagram is not planar: V={v}, E={2 * v}, F={faces}, pieces={pieces}")

    # PD conversion -------------------------------------------------------------

    def to_pd(self) -> tuple[list[PDCrossing], list[list[int]]]:
        """PD crossings (ordered by crossing id) and per-component arc lists."""
        arc_in: dict[int, int] = {}
        arc_out: dict[int, int] = {}
        comp_arcs: list[list[int]] = []
        label = 1
        for comp in self.components:
            if not comp:
                comp_arcs.append([label])
                label += 1
                continue
            labels = list(range(label, label + len(comp)))
            label += len(comp)
            for pos, p in enumerate(comp):
                arc_in[p] = labels[pos]
                arc_out[p] = labels[(pos + 1) % len(comp)]
            # arc ``labels[pos]`` arrives at passage ``pos``
            comp_arcs.append(labels)
        out = []
        for c in sorted(self.signs):
            s = self.signs[c]
            u, o = 2 * c, 2 * c + 1
            if s == 1:
                arcs = (arc_in[u], arc_out[o], arc_out[u], arc_in[o])
            else:
                arcs = (arc_in[u], arc_in[o], arc_out[u], arc_out[o])
            out.append(PDCrossing(arcs, s))
        return out, comp_arcs

    @classmethod
    def from_pd(cls, crossings: Iterable[PDCrossing], components: Iterable[Iterable[int]]) -> LinkDiagram:
        crossings = list(crossings)
        heads: dict[int, tuple[int, int]] = {}  # arc -> (crossing, over bit) it arrives at
        tails: dict[int, tuple[int, int]] = {}  # arc -> (crossing, over bit) it leaves
        for k, x in enumerate(crossings):
            a, b, c, d = x.arcs
            if x.sign not in (1, -1):
                raise DiagramError(f"crossing {k + 1}: sign must be + or -")
            o_in, o_out = (d, b) if x.sign == 1 else (b, d)
            for arc, table, what in ((a, heads, (k, 0)), (c, tails, (k, 0)),
                                     (o_in, heads, (k, 1)), (o_out, tails, (k, 1))):
                if arc in table:
                    raise DiagramError(f"arc {arc} is oriented inconsistently at crossing {k + 1}")
                table[arc] = what
        if set(heads) != set(tails):
            raise DiagramError("some arc does not have both a start and an end crossing")
        out_arc = {v: arc for arc, v in tails.items()}
        comps = []
        used = set()
        for comp in components:
            comp = list(comp)
            if not comp:
                raise DiagramError("empty component line")
            first = comp[0]
            if first in used:
                raise DiagramError(f"arc {first} appears in two components")
            if first not in heads:
                if len(comp) != 1:
                    raise DiagramError(f"arc {first} touches no crossing but the component lists more arcs")
                used.add(first)
                comps.append(())
                continue
            passages = []
            arc = first
            traced = []
            while True:
                if arc in used:
                    raise DiagramError(f"arc {arc} is used twice")
                used.add(arc)
                traced.append(arc)
                k, bit = heads[arc]
                passages.append(2 * k + bit)
                arc = out_arc[(k, bit)]
                if arc == first:
                    break
            if set(traced) != set(comp):
                raise DiagramError(f"component listing {comp} does not match the traced cycle {traced}")
            comps.append(tuple(passages))
        missing = set(heads) - used
        if missing:
            raise DiagramError(f"arcs {sorted(missing)} belong to no component")
        d = cls(comps, {k: x.sign for k, x in enumerate(crossings)})
        d.validate()
        return d

    # local moves --------------------------------------------------------------

    def switch(self, c: int) -> LinkDiagram:
        """Change crossing ``c`` (sign negated, over and under exchanged)."""
        if c not in self.signs:
            raise KeyError(c)
        comps = [tuple(p ^ 1 if cid_of(p) == c else p for p in comp) for comp in self.components]
        signs = dict(self.signs)
        signs[c] = -signs[c]
        return LinkDiagram(comps, signs)

    def mirror(self) -> LinkDiagram:
        """Every crossing changed at once."""
        comps = [tuple(p ^ 1 for p in comp) for comp in self.components]
        return LinkDiagram(comps, {c: -s for c, s in self.signs.items()})

    def smooth(self, c: int) -> LinkDiagram:
        """Oriented smoothing of crossing ``c``."""
        if c not in self.signs:
            raise KeyError(c)
        idx = self.passage_index()
        (k1, i1), (k2, i2) = sorted((idx[2 * c], idx[2 * c + 1]))
        comps = list(self.components)
        signs = {x: s for x, s in self.signs.items() if x != c}
        if k1 == k2:
            comp = comps[k1]
            rot = comp[i1:] + comp[:i1]
            j = i2 - i1
            first, second = rot[1:j], rot[j + 1:]
            new = [first, second]
            comps[k1:k1 + 1] = new
        else:
            a = comps[k1][i1 + 1:] + comps[k1][:i1]
            b = comps[k2][i2 + 1:] + comps[k2][:i2]
            comps[k1] = a + b
            del comps[k2]
        return LinkDiagram(comps, signs)

    def simplify(self) -> LinkDiagram:
        """Remove Reidemeister I kinks and II bigons until none are left."""
        comps = [list(c) for c in self.components]
        signs = dict(self.signs)
        changed = True
        while changed:
            changed = False
            # R1: the same crossing twice in a row on one component
            for comp in comps:
                L = len(comp)
                for i in range(L):
                    if L >= 2 and cid_of(comp[i]) == cid_of(comp[(i + 1) % L]):
                        c = cid_of(comp[i])
                        comp[:] = [p for p in comp if cid_of(p) != c]
                        del signs[c]
                        changed = True
                        break
                if changed:
                    break
            if changed:
                continue
            # R2: an over-over pair and an under-under pair on the same two crossings
            pairs: dict[tuple[int, int, int], int] = {}
            for comp in comps:
                L = len(comp)
                if L < 2:
                    continue
                for i in range(L):
                    p, r = comp[i], comp[(i + 1) % L]
                    if L == 2 and i == 1:
                        break
                    c, d = cid_of(p), cid_of(r)
                    if c != d and (p & 1) == (r & 1):
                        key = (min(c, d), max(c, d), p & 1)
                        pairs[key] = pairs.get(key, 0) + 1
            for (c, d, bit) in pairs:
                if bit == 1 and (c, d, 0) in pairs and signs[c] == -signs[d]:
                    for comp in comps:
                        comp[:] = [p for p in comp if cid_of(p) not in (c, d)]
                    del signs[c], signs[d]
                    changed = True
                    break
        return LinkDiagram(comps, signs)

    # canonical form -----------------------------------------------------------

    def canonical_key(self) -> tuple:
        """A key equal for diagrams differing only by crossing relabeling,
        cyclic rotation of components and component order."""
        if self._key is not None:
            return self._key
        signs = self.signs
        reps = []
        for comp in self.components:
            L = len(comp)
            if L == 0:
                reps.append(((), ()))
                continue
            sig = [((p & 1), signs[cid_of(p)]) for p in comp]
            best = None
            for r in range(L):
                cand = tuple(sig[r:] + sig[:r])
                if best is None or cand < best[0]:
                    best = (cand, r)
            r = best[1]
            reps.append((best[0], comp[r:] + comp[:r]))
        reps.sort(key=lambda x: (len(x[0]), x[0]))
        relabel: dict[int, int] = {}
        code = []
        for _, comp in reps:
            row = []
            for p in comp:
                c = cid_of(p)
                if c not in relabel:
                    relabel[c] = len(relabel)
                row.append(relabel[c] * 2 + (p & 1))
            code.append(tuple(row))
        sign_row = tuple(signs[c] for c, _ in sorted(relabel.items(), key=lambda kv: kv[1]))
        self._key = (tuple(code), sign_row)
        return self._key

    def relabeled(self) -> LinkDiagram:
        """Same diagram with crossings numbered 0.. in order of appearance."""
        relabel: dict[int, int] = {}
        comps = []
        for comp in self.components:
            row = []
            for p in comp:
                c = cid_of(p)
                if c not in relabel:
                    relabel[c] = len(relabel)
                row.append(relabel[c] * 2 + (p & 1))
            comps.append(tuple(row))
        return LinkDiagram(comps, {relabel[c]: s for c, s in self.signs.items()})

    # misc ----------------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, LinkDiagram):
            return NotImplemented
        return self.components == other.components and self.signs == other.signs

    def __hash__(self):
        return hash((self.components, tuple(sorted(self.signs.items()))))

    def __repr__(self):
        return (f"LinkDiagram(components={len(self.components)}, "
                f"crossings={len(self.signs)})")


def disjoint_union(*diagrams: LinkDiagram) -> LinkDiagram:
    comps = []
    signs = {}
    offset = 0
    for d in diagrams:
        d = d.relabeled()
        for comp in d.components:
            comps.append(tuple(p + 2 * offset for p in comp))
        for c, s in d.signs.items():
            signs[c + offset] = s
        offset += len(d.signs)
    return LinkDiagram(comps, signs)


def connected_sum(k1: LinkDiagram, k2: LinkDiagram) -> LinkDiagram:
    """Connected sum of two knot diagrams, joined at their basepoints."""
    if k1.num_components != 1 or k2.num_components != 1:
        raise ValueError("connected sum is defined here for knot diagrams only")
    u = disjoint_union(k1, k2)
    return LinkDiagram([u.components[0] + u.components[1]], u.signs)


def unknot_diagram(r: int = 1) -> LinkDiagram:
    """Crossing-free diagram of the r-component unlink."""
    return LinkDiagram([()] * r, {})
