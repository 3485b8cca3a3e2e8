"""HOMFLYPT polynomials, Milnor invariants of string links, and the band-sum formulas relating them."""

__version__ = "0.1.0"
