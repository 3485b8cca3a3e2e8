from .fusion import FusionSpec, fusion_knot, is_subsequence, meander
from .link import LinkDiagram, PDCrossing, connected_sum, disjoint_union, unknot_diagram
from .slices import (Cap, CompiledStringLink, Cross, Cup, Piece, StringLinkSlices, d_sequence,
                     multiplicities)
from .text import parse_any, parse_pd, parse_slices, render_pd, render_slices

__all__ = [
    "Cap", "CompiledStringLink", "Cross", "Cup", "FusionSpec", "LinkDiagram", "PDCrossing",
    "Piece", "StringLinkSlices", "connected_sum", "d_sequence", "disjoint_union",
    "fusion_knot", "is_subsequence", "meander", "multiplicities", "parse_any", "parse_pd",
    "parse_slices", "render_pd", "render_slices", "unknot_diagram",
]
