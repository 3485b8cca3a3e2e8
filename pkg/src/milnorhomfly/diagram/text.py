"""Text formats: the slice language and PD text.

Slice language, one event per line, ``#`` starts a comment::

    width 3
    x+ 1
    x- 2
    cup 2
    cap 2

PD text: one ``X(a,b,c,d;+)`` per crossing and ``comp k: a,b,c`` per
component, listing its arcs in travel order.
"""

from __future__ import annotations

import re

from ..errors import DiagramError, ParseError
from .link import LinkDiagram, PDCrossing
from .slices import Cap, Cross, Cup, StringLinkSlices

_EVENT = re.compile(r"^(x\+|x-|cap|cup)\s+(\d+)$")
_X = re.compile(r"^X\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*;\s*([+-])\s*\)$")
_COMP = re.compile(r"^comp\s+(\d+)\s*:\s*(\d+(?:\s*,\s*\d+)*)$")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_slices(text: str) -> StringLinkSlices:
    width = None
    events = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        if line.startswith("width"):
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError(f"expected 'width <n>', got {raw.strip()!r}", no)
            if width is not None:
                raise ParseError("width given twice", no)
            if events:
                raise ParseError("width must come before the first event", no)
            width = int(parts[1])
            continue
        m = _EVENT.match(line)
        if not m:
            raise ParseError(f"unrecognized slice event {raw.strip()!r}", no)
        if width is None:
            raise ParseError("event before 'width' line", no)
        kind, pos = m.group(1), int(m.group(2))
        if kind == "x+":
            events.append(Cross(pos, 1))
        elif kind == "x-":
            events.append(Cross(pos, -1))
        elif kind == "cap":
            events.append(Cap(pos))
        else:
            events.append(Cup(pos))
    if width is None:
        raise ParseError("missing 'width' line")
    T = StringLinkSlices(width, tuple(events))
    try:
        T.validate()
    except DiagramError as exc:
        raise ParseError(f"invalid string link: {exc}") from exc
    return T


def render_slices(T: StringLinkSlices) -> str:
    lines = [f"width {T.width}"]
    for ev in T.events:
        if isinstance(ev, Cross):
            lines.append(f"x{'+' if ev.e == 1 else '-'} {ev.i}")
        elif isinstance(ev, Cap):
            lines.append(f"cap {ev.i}")
        else:
            lines.append(f"cup {ev.i}")
    return "\n".join(lines) + "\n"


def parse_pd(text: str) -> LinkDiagram:
    crossings = []
    comps: dict[int, list[int]] = {}
    for no, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        m = _X.match(line)
        if m:
            a, b, c, d = (int(g) for g in m.groups()[:4])
            crossings.append(PDCrossing((a, b, c, d), 1 if m.group(5) == "+" else -1))
            continue
        m = _COMP.match(line)
        if m:
            k = int(m.group(1))
            if k in comps:
                raise ParseError(f"component {k} listed twice", no)
            comps[k] = [int(x) for x in m.group(2).split(",")]
            continue
        raise ParseError(f"unrecognized PD line {raw.strip()!r}", no)
    if not comps:
        raise ParseError("no component lines")
    if sorted(comps) != list(range(1, len(comps) + 1)):
        raise ParseError(f"components must be numbered 1..{len(comps)}")
    try:
        return LinkDiagram.from_pd(crossings, [comps[k] for k in sorted(comps)])
    except DiagramError as exc:
        raise ParseError(f"invalid PD code: {exc}") from exc


def render_pd(d: LinkDiagram) -> str:
    pd, comps = d.to_pd()
    lines = [f"X({a},{b},{c},{e};{'+' if x.sign == 1 else '-'})" for x in pd for a, b, c, e in [x.arcs]]
    lines += [f"comp {k}: {','.join(map(str, arcs))}" for k, arcs in enumerate(comps, 1)]
    return "\n".join(lines) + "\n"


def parse_any(text: str) -> StringLinkSlices | LinkDiagram:
    """Slice language if a ``width`` line is present, PD text otherwise."""
    for raw in text.splitlines():
        line = _strip(raw)
        if line:
            if line.startswith("width"):
                return parse_slices(text)
            return parse_pd(text)
    raise ParseError("empty input")
