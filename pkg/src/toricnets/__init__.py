"""Toric vector bundles on smooth complete toric surfaces, built from
2-fold tropical multi-section data through spectral networks and
non-abelianization, with every algebraic identity checked in exact
rational arithmetic."""

__version__ = "0.1.0"
