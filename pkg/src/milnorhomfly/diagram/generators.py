"""Seeded random string links, diagrams and Reidemeister perturbations."""

from __future__ import annotations

import random

from .link import LinkDiagram
from .slices import Cap, Cross, Cup, StringLinkSlices


def _cross(g: int) -> Cross:
    return Cross(abs(g), 1 if g > 0 else -1)


def random_pure_braid(rng: random.Random, width: int, length: int) -> StringLinkSlices:
    """Random braid word followed by crossings that bring every strand home."""
    if width < 2:
        return StringLinkSlices.identity(width)
    word = [rng.choice([1, -1]) * rng.randint(1, width - 1) for _ in range(length)]
    perm = list(range(width))  # perm[p] = strand at position p
    for g in word:
        i = abs(g) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    changed = True
    while changed:
        changed = False
        for p in range(width - 1):
            if perm[p] > perm[p + 1]:
                perm[p], perm[p + 1] = perm[p + 1], perm[p]
                word.append(rng.choice([1, -1]) * (p + 1))
                changed = True
    return StringLinkSlices.from_braid(width, word)


def kink(T: StringLinkSlices, level: int, position: int, e: int, left: bool = False) -> StringLinkSlices:
    """Insert a Reidemeister I curl on the piece at ``position`` just above event ``level``."""
    if left:
        curl = (Cup(position), Cross(position + 1, e), Cap(position))
    else:
        curl = (Cup(position + 1), Cross(position, e), Cap(position + 1))
    events = T.events[:level] + curl + T.events[level:]
    return StringLinkSlices(T.width, events)


def random_string_link(rng: random.Random, width: int, max_crossings: int,
                       kinks: int = 1) -> StringLinkSlices:
    """Random pure braid with a few curls and clasps, at most ``max_crossings`` crossings."""
    while True:
        length = rng.randint(0, max(0, max_crossings - kinks))
        T = random_pure_braid(rng, width, length)
        for _ in range(rng.randint(0, kinks)):
            widths = T.widths()
            level = rng.randint(0, len(T.events))
            T = kink(T, level, rng.randint(1, widths[level]), rng.choice([1, -1]), rng.random() < 0.5)
        if sum(isinstance(e, Cross) for e in T.events) <= max_crossings and T.is_valid():
            return T


def random_knot(rng: random.Random, max_crossings: int) -> LinkDiagram:
    """Closure of a one-strand tangle braided with a cup-cap pair on its right."""
    while True:
        n = rng.randint(1, max_crossings)
        word = [rng.choice([1, -1]) * rng.randint(1, 2) for _ in range(n)]
        events = (Cup(2),) + tuple(_cross(g) for g in word) + (Cap(2),)
        T = StringLinkSlices(1, events)
        if T.is_valid():
            return T.closure()


def random_diagram(rng: random.Random, max_crossings: int) -> LinkDiagram:
    """A knot or a 2- or 3-component link diagram with at most ``max_crossings`` crossings."""
    if rng.random() < 0.4:
        return random_knot(rng, max_crossings)
    return random_string_link(rng, rng.choice([2, 2, 3]), max_crossings).closure()


# Reidemeister perturbations ------------------------------------------------------------

def _r2(rng, T):
    widths = T.widths()
    level = rng.randint(0, len(T.events))
    if widths[level] < 2:
        return None
    i = rng.randint(1, widths[level] - 1)
    e = rng.choice([1, -1])
    return StringLinkSlices(T.width, T.events[:level] + (Cross(i, e), Cross(i, -e)) + T.events[level:])


def _r1(rng, T):
    widths = T.widths()
    level = rng.randint(0, len(T.events))
    return kink(T, level, rng.randint(1, widths[level]), rng.choice([1, -1]), rng.random() < 0.5)


def _r3(rng, T):
    ev = T.events
    spots = []
    for k in range(len(ev) - 2):
        a, b, c = ev[k:k + 3]
        if all(isinstance(x, Cross) for x in (a, b, c)) and a == c and a.e == b.e and abs(a.i - b.i) == 1:
            spots.append(k)
    if not spots:
        return None
    k = rng.choice(spots)
    a, b = ev[k], ev[k + 1]
    return StringLinkSlices(T.width, ev[:k] + (b, a, b) + ev[k + 3:])


def _far_commute(rng, T):
    ev = T.events
    spots = [k for k in range(len(ev) - 1)
             if isinstance(ev[k], Cross) and isinstance(ev[k + 1], Cross) and abs(ev[k].i - ev[k + 1].i) > 1]
    if not spots:
        return None
    k = rng.choice(spots)
    return StringLinkSlices(T.width, ev[:k] + (ev[k + 1], ev[k]) + ev[k + 2:])


def _cancel(rng, T):
    """Undo an adjacent inverse pair (an R2 move in the other direction)."""
    ev = T.events
    spots = [k for k in range(len(ev) - 1)
             if isinstance(ev[k], Cross) and isinstance(ev[k + 1], Cross)
             and ev[k].i == ev[k + 1].i and ev[k].e == -ev[k + 1].e]
    if not spots:
        return None
    k = rng.choice(spots)
    return StringLinkSlices(T.width, ev[:k] + ev[k + 2:])


_MOVES = (_r1, _r2, _r3, _far_commute, _cancel)


def perturb(rng: random.Random, T: StringLinkSlices, moves: int = 3) -> StringLinkSlices:
    """Apply random isotopy moves (R1, R2, R3 and planar commutations) to a string link."""
    done = 0
    while done < moves:
        out = rng.choice(_MOVES)(rng, T)
        if out is not None and out.is_valid():
            T = out
            done += 1
    return T
